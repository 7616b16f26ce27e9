"""Sparse exact multivariate polynomials with weighted gradings.

Monomials are packed into single Python ints, eight bits per variable, so that
multiplication is integer addition and divisibility is a two-instruction guard
trick.  Exponents are therefore capped at 127, far beyond anything the ideals
here produce.  Monomial orders are weighted degree-reverse-lexicographic, with
an optional two-block elimination variant; order keys are memoized per ring so
comparisons inside Buchberger loops are plain int comparisons.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .fields import QQ, FieldError

EXP_BITS = 8
EXP_MASK = 0xFF
EXP_MAX = 127

DEGREVLEX = ("degrevlex",)


def elim_order(n_eliminated: int):
    """Two-block order: the first n_eliminated variables dominate."""
    return ("elim", n_eliminated)


@dataclass(frozen=True)
class RingContext:
    """An ordered polynomial ring: named variables, positive integer weights,
    a graded monomial order, and the coefficient field."""

    names: tuple
    weights: tuple
    order: tuple = DEGREVLEX
    field: object = QQ

    def __post_init__(self):
        if len(self.names) != len(self.weights):
            raise ValueError("one weight per variable required")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        if self.order[0] == "elim" and not 0 < self.order[1] < len(self.names):
            raise ValueError("elimination block must be a proper nonempty prefix")

    # -- derived helpers (cached per instance) --------------------------------

    @property
    def n(self) -> int:
        return len(self.names)

    @cached_property
    def var_index(self) -> dict:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def guard_mask(self) -> int:
        g = 0
        for i in range(self.n):
            g |= 0x80 << (EXP_BITS * i)
        return g

    @cached_property
    def _key_blocks(self):
        if self.order[0] == "degrevlex":
            return (tuple(range(self.n)),)
        k = self.order[1]
        return (tuple(range(k)), tuple(range(k, self.n)))

    @cached_property
    def _key_cache(self) -> dict:
        return {}

    def sort_key(self, m: int) -> int:
        """Total-order key: key(a) > key(b) iff a > b in the ring's order."""
        cache = self._key_cache
        k = cache.get(m)
        if k is None:
            k = 0
            w = self.weights
            for block in self._key_blocks:
                d = 0
                rev = 0
                for pos, i in enumerate(block):
                    e = (m >> (EXP_BITS * i)) & EXP_MASK
                    d += w[i] * e
                    rev |= (EXP_MAX - e) << (EXP_BITS * pos)
                k = (k << (16 + EXP_BITS * len(block))) | (d << (EXP_BITS * len(block))) | rev
            cache[m] = k
        return k

    # -- packed monomials ------------------------------------------------------

    def pack(self, exps) -> int:
        m = 0
        for i, e in enumerate(exps):
            if not 0 <= e <= EXP_MAX:
                raise ValueError(f"exponent {e} out of range [0, {EXP_MAX}]")
            m |= e << (EXP_BITS * i)
        return m

    def unpack(self, m: int) -> tuple:
        return tuple((m >> (EXP_BITS * i)) & EXP_MASK for i in range(self.n))

    def wdeg(self, m: int) -> int:
        return sum(w * e for w, e in zip(self.weights, self.unpack(m)))

    def monomial_divides(self, a: int, b: int) -> bool:
        """True iff monomial a divides monomial b."""
        g = self.guard_mask
        return ((b | g) - a) & g == g

    def monomial_lcm(self, a: int, b: int) -> int:
        m = 0
        for i in range(self.n):
            s = EXP_BITS * i
            m |= max((a >> s) & EXP_MASK, (b >> s) & EXP_MASK) << s
        return m

    def monomials_coprime(self, a: int, b: int) -> bool:
        for i in range(self.n):
            s = EXP_BITS * i
            if (a >> s) & EXP_MASK and (b >> s) & EXP_MASK:
                return False
        return True

    # -- element constructors --------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {0: self.field.one})

    def constant(self, c) -> "Polynomial":
        c = self.field.of(c)
        return Polynomial(self, {} if self.field.is_zero(c) else {0: c})

    def gen(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.var_index[name_or_index]
        return Polynomial(self, {1 << (EXP_BITS * i): self.field.one})

    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.n))

    def from_terms(self, pairs) -> "Polynomial":
        """Build from (exponent tuple, coefficient) pairs; repeats accumulate."""
        fld = self.field
        terms = {}
        for exps, c in pairs:
            c = fld.of(c)
            m = self.pack(exps)
            acc = fld.add(terms.get(m, fld.zero), c)
            if fld.is_zero(acc):
                terms.pop(m, None)
            else:
                terms[m] = acc
        return Polynomial(self, terms)

    def coerce(self, f: "Polynomial") -> "Polynomial":
        """Reinterpret a polynomial from a ring with the same variable names
        (possibly different weights/order/field) in this ring."""
        if f.ring == self:
            return f
        if f.ring.names != self.names:
            raise FieldError("cannot coerce: variable names differ")
        fld = self.field
        terms = {}
        for m, c in f.terms.items():
            c2 = fld.of(c)
            if not fld.is_zero(c2):
                terms[m] = c2
        return Polynomial(self, terms)

    # -- canonical text format -------------------------------------------------

    _FACTOR_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*?)(?:\^([0-9]+))?$")

    def parse(self, text: str) -> "Polynomial":
        """Parse the canonical polynomial format `c*v1^a1*...*vk^ak` joined by
        `+`/`-`.  Round-trips exactly with str()."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return self.zero()
        # split into signed terms
        chunks = re.findall(r"[+-]?[^+-]+", s)
        if "".join(chunks) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pairs = []
        for chunk in chunks:
            sign = 1
            if chunk[0] == "+":
                chunk = chunk[1:]
            elif chunk[0] == "-":
                sign = -1
                chunk = chunk[1:]
            factors = chunk.split("*")
            coeff = Fraction(sign)
            exps = [0] * self.n
            for j, fac in enumerate(factors):
                if j == 0 and re.fullmatch(r"[0-9]+(?:/[0-9]+)?", fac):
                    coeff *= Fraction(fac)
                    continue
                m = self._FACTOR_RE.match(fac)
                if not m or m.group(1) not in self.var_index:
                    raise ValueError(f"bad factor {fac!r} in {text!r}")
                exps[self.var_index[m.group(1)]] += int(m.group(2) or 1)
            pairs.append((exps, self.field.of(coeff)))
        return self.from_terms(pairs)

    def format_term(self, m: int, c) -> str:
        fld = self.field
        facs = []
        for i in range(self.n):
            e = (m >> (EXP_BITS * i)) & EXP_MASK
            if e == 1:
                facs.append(self.names[i])
            elif e > 1:
                facs.append(f"{self.names[i]}^{e}")
        cs = fld.to_str(c)
        if not facs:
            return cs
        if cs == "1":
            return "*".join(facs)
        if cs == "-1":
            return "-" + "*".join(facs)
        return cs + "*" + "*".join(facs)

    def __repr__(self):
        kind = "degrevlex" if self.order[0] == "degrevlex" else f"elim({self.order[1]})"
        return f"Ring({','.join(self.names)}; weights={list(self.weights)}; {kind}; {self.field!r})"


class Polynomial:
    """Immutable sparse polynomial over a RingContext.

    `terms` maps packed monomials to nonzero field scalars.  Never mutate it.
    """

    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring: RingContext, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lead = None

    # -- basic queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def lead_monomial(self) -> int:
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            self._lead = max(self.terms, key=self.ring.sort_key)
        return self._lead

    def lead_coeff(self):
        return self.terms[self.lead_monomial()]

    def wdegree(self) -> int:
        """Maximum weighted degree over the terms (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(self.ring.wdeg(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.wdeg(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self) -> int:
        degs = {self.ring.wdeg(m) for m in self.terms}
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def coefficient(self, exps):
        return self.terms.get(self.ring.pack(exps), self.ring.field.zero)

    def sorted_terms(self) -> list:
        key = self.ring.sort_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise FieldError("polynomials from different rings")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return self + self.ring.constant(other)
        self._check(other)
        fld = self.ring.field
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for m, c in b.items():
            acc = fld.add(out.get(m, fld.zero), c)
            if fld.is_zero(acc):
                out.pop(m, None)
            else:
                out[m] = acc
        return Polynomial(self.ring, out)

    def __neg__(self):
        fld = self.ring.field
        return Polynomial(self.ring, {m: fld.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return self - self.ring.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        ring = self.ring
        fld = ring.field
        guard = ring.guard_mask
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        if fld is QQ:
            for m1, c1 in a.items():
                for m2, c2 in b.items():
                    m = m1 + m2
                    if m & guard:
                        raise OverflowError("monomial exponent overflow (cap 127)")
                    acc = out.get(m, 0) + c1 * c2
                    if acc:
                        out[m] = acc
                    else:
                        out.pop(m, None)
        else:
            p = fld.p
            for m1, c1 in a.items():
                for m2, c2 in b.items():
                    m = m1 + m2
                    if m & guard:
                        raise OverflowError("monomial exponent overflow (cap 127)")
                    acc = (out.get(m, 0) + c1 * c2) % p
                    if acc:
                        out[m] = acc
                    else:
                        out.pop(m, None)
        return Polynomial(ring, out)

    __rmul__ = __mul__
    __radd__ = __add__

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        fld = self.ring.field
        c = fld.of(c)
        if fld.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {m: fld.mul(v, c) for m, v in self.terms.items()})

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lead_coeff()))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_term(self, m_shift: int, c):
        """Multiply by the single term c*x^m_shift."""
        fld = self.ring.field
        guard = self.ring.guard_mask
        out = {}
        for m, v in self.terms.items():
            mm = m + m_shift
            if mm & guard:
                raise OverflowError("monomial exponent overflow (cap 127)")
            out[mm] = fld.mul(v, c)
        return Polynomial(self.ring, out)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if not self.terms and other == 0:
                return True
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.terms.items())))

    # -- evaluation ------------------------------------------------------------

    def evaluate(self, values):
        """Evaluate at a full vector of field scalars."""
        ring = self.ring
        fld = ring.field
        if len(values) != ring.n:
            raise ValueError("need one value per variable")
        vals = [fld.of(v) for v in values]
        total = fld.zero
        for m, c in self.terms.items():
            t = c
            for i in range(ring.n):
                e = (m >> (EXP_BITS * i)) & EXP_MASK
                if e:
                    v = vals[i]
                    for _ in range(e):
                        t = fld.mul(t, v)
            total = fld.add(total, t)
        return total

    def evaluate_float(self, values) -> float:
        total = 0.0
        for m, c in self.terms.items():
            t = float(c)
            for i in range(self.ring.n):
                e = (m >> (EXP_BITS * i)) & EXP_MASK
                if e:
                    t *= float(values[i]) ** e
            total += t
        return total

    def derivative(self, var) -> "Polynomial":
        ring = self.ring
        fld = ring.field
        i = var if isinstance(var, int) else ring.var_index[var]
        shift = EXP_BITS * i
        out = {}
        for m, c in self.terms.items():
            e = (m >> shift) & EXP_MASK
            if e:
                c2 = fld.mul(c, fld.of(e))
                if not fld.is_zero(c2):
                    out[m - (1 << shift)] = c2
        return Polynomial(ring, out)

    def content_normalized(self):
        """Over Q: scale so coefficients are coprime integers with positive
        leading coefficient.  Over GF(p): monic."""
        if not self.terms:
            return self
        fld = self.ring.field
        if fld is not QQ:
            return self.monic()
        from math import gcd

        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        scale = Fraction(den, num)
        if self.lead_coeff() < 0:
            scale = -scale
        return self.scale(scale)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            s = self.ring.format_term(m, c)
            if not parts:
                parts.append(s)
            elif s.startswith("-"):
                parts.append(" - " + s[1:])
            else:
                parts.append(" + " + s)
        return "".join(parts)

    def __repr__(self):
        return f"<{self}>"


class RingMap:
    """A ring homomorphism determined by one target image per source variable."""

    def __init__(self, source: RingContext, target: RingContext, images):
        if len(images) != source.n:
            raise ValueError("one image per source variable required")
        if source.field is not target.field:
            raise FieldError("ring maps require matching coefficient fields")
        for img in images:
            if img.ring != target:
                raise FieldError("image not in the target ring")
        self.source = source
        self.target = target
        self.images = tuple(images)
        self._pow_cache = {}

    def graded_degree(self):
        """If every image is homogeneous of degree k*weight(source var), return k."""
        k = None
        for i, img in enumerate(self.images):
            if img.is_zero():
                continue
            d = img.homogeneous_degree()
            w = self.source.weights[i]
            if d % w:
                return None
            if k is None:
                k = d // w
            elif k != d // w:
                return None
        return k

    def _power(self, i: int, e: int) -> Polynomial:
        key = (i, e)
        f = self._pow_cache.get(key)
        if f is None:
            if e == 1:
                f = self.images[i]
            elif e % 2:
                f = self._power(i, e - 1) * self.images[i]
            else:
                h = self._power(i, e // 2)
                f = h * h
            self._pow_cache[key] = f
        return f

    def __call__(self, f: Polynomial) -> Polynomial:
        if f.ring != self.source:
            raise FieldError("polynomial not in the source ring")
        tgt = self.target
        acc = tgt.zero()
        for m, c in f.terms.items():
            t = tgt.constant(c)
            for i in range(self.source.n):
                e = (m >> (EXP_BITS * i)) & EXP_MASK
                if e:
                    t = t * self._power(i, e)
            acc = acc + t
        return acc


def poly_arith(op: str, f: Polynomial, g) -> Polynomial:
    """Dispatch basic exact arithmetic: add, sub, mul, scale."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown op {op!r}")


def apply_ring_map(phi: RingMap, f: Polynomial) -> Polynomial:
    """Image of f under the substitution homomorphism, fully expanded."""
    return phi(f)
