"""Reduced Groebner bases, normal forms, elimination, and Hilbert data.

Buchberger with the Gebauer-Moeller pair criteria and normal (lowest-degree)
selection.  Reduction is heap-driven with a versioned reducer cache; basis
elements are kept monic over GF(p) and content-normalized over Q during the
run.  The reduced basis is unique for a fixed order, so output is
bit-reproducible regardless of internal scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from heapq import heapify, heappop, heappush

from .fields import QQ, FieldError
from .rings import DEGREVLEX, Polynomial, RingContext, elim_order


class BudgetExceeded(RuntimeError):
    """Raised when a Groebner run exceeds its step budget."""


class Ideal:
    """A homogeneous ideal with cached reduced Groebner bases per order."""

    __slots__ = ("ring", "generators", "_gb", "_hilbert")

    def __init__(self, ring: RingContext, generators):
        gens = []
        for g in generators:
            if g.ring != ring:
                g = ring.coerce(g)
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise ValueError(f"inhomogeneous generator: {g}")
            gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb = {}
        self._hilbert = None

    def groebner_basis(self, order=None, max_steps=None):
        order = tuple(order) if order is not None else self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            gb = buchberger(self, order, max_steps=max_steps)
            self._gb[order] = gb
        return gb

    def seed_groebner_cache(self, order, gb):
        self._gb[tuple(order)] = tuple(gb)

    def __add__(self, other):
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise FieldError("ideals from different rings")
            return Ideal(self.ring, self.generators + other.generators)
        return Ideal(self.ring, self.generators + tuple(other))

    def contains_point(self, coords) -> bool:
        """Exact test that every generator vanishes at the coordinate vector."""
        return all(self.ring.field.is_zero(g.evaluate(coords)) for g in self.generators)

    def __repr__(self):
        return f"Ideal({len(self.generators)} gens in {self.ring!r})"


@dataclass(frozen=True)
class HilbertData:
    """Projective dimension, degree, Hilbert polynomial (ascending rational
    coefficients), and the arithmetic genus when the scheme is a curve."""

    dimension: int
    degree: int
    hilbert_polynomial: tuple
    arithmetic_genus: int | None = None

    def triple(self):
        return (self.dimension, self.degree, self.arithmetic_genus)


# ---------------------------------------------------------------------------
# Buchberger engine
# ---------------------------------------------------------------------------


def _spair_parts(ring, leads, i, j):
    lcm = ring.monomial_lcm(leads[i], leads[j])
    return lcm, lcm - leads[i], lcm - leads[j]


def _normalize_qq(terms):
    """Scale a Fraction term dict to coprime integers, positive lead left to caller."""
    from math import gcd

    num, den = 0, 1
    for c in terms.values():
        num = gcd(num, c.numerator)
        den = den * c.denominator // gcd(den, c.denominator)
    if num == 0:
        return terms
    scale = Fraction(den, num)
    return {m: c * scale for m, c in terms.items()}


def _gb_engine(seed_polys, ring, max_steps=None):
    """Compute the reduced Groebner basis of homogeneous seed polynomials.

    Returns a list of term dicts, monic, sorted by increasing leading
    monomial; deterministic.
    """
    key = ring.sort_key
    modp = ring.field is not QQ
    p = ring.field.p if modp else None
    guard = ring.guard_mask

    leads = []      # leading monomial per basis element
    tails = []      # list of (monomial, coeff) pairs, excluding the lead
    lcoeffs = []    # leading coefficient (1 over GF(p))
    cache = {}      # reducer cache: monomial -> (scanned_upto, index or None)

    def find_reducer(m):
        ent = cache.get(m)
        if ent is None:
            start, idx = 0, None
        else:
            start, idx = ent
            if idx is not None:
                return idx
        nb = len(leads)
        if start < nb:
            divides = ring.monomial_divides
            for i in range(start, nb):
                if ((m | guard) - leads[i]) & guard == guard:
                    idx = i
                    break
            cache[m] = (nb, idx)
        return idx

    def full_reduce(work):
        """Full normal form of a term dict against the current basis."""
        out = {}
        heap = [(-key(m), m) for m in work]
        heapify(heap)
        if modp:
            while heap:
                m = heappop(heap)[1]
                c = work.pop(m, 0)
                if not c:
                    continue
                idx = find_reducer(m)
                if idx is None:
                    out[m] = c
                    continue
                shift = m - leads[idx]
                for e, ce in tails[idx]:
                    mm = e + shift
                    prev = work.get(mm)
                    if prev is None:
                        v = -c * ce % p
                        if v:
                            work[mm] = v
                            heappush(heap, (-key(mm), mm))
                    else:
                        v = (prev - c * ce) % p
                        if v:
                            work[mm] = v
                        else:
                            del work[mm]
        else:
            while heap:
                m = heappop(heap)[1]
                c = work.pop(m, None)
                if not c:
                    continue
                idx = find_reducer(m)
                if idx is None:
                    out[m] = c
                    continue
                t = c / lcoeffs[idx]
                shift = m - leads[idx]
                for e, ce in tails[idx]:
                    mm = e + shift
                    prev = work.get(mm)
                    if prev is None:
                        v = -t * ce
                        if v:
                            work[mm] = v
                            heappush(heap, (-key(mm), mm))
                    else:
                        v = prev - t * ce
                        if v:
                            work[mm] = v
                        else:
                            del work[mm]
        return out

    def insert(terms):
        """Normalize and append a new basis element; return its index."""
        lm = max(terms, key=key)
        if modp:
            inv = pow(terms[lm], p - 2, p)
            terms = {m: c * inv % p for m, c in terms.items()}
            lc = 1
        else:
            terms = _normalize_qq(terms)
            lc = terms[lm]
        leads.append(lm)
        tails.append([(m, c) for m, c in terms.items() if m != lm])
        lcoeffs.append(lc)
        return len(leads) - 1

    # seed basis: interreduce the input generators first
    pending = sorted((dict(f.terms) for f in seed_polys), key=lambda t: key(max(t, key=key)))
    pairs = []  # heap of (lcm_key, i, j, lcm)
    pair_set = {}

    def gm_update(t):
        """Gebauer-Moeller pair update for the new element with index t."""
        lt = leads[t]
        lcm = ring.monomial_lcm
        # prune old pairs (criterion B)
        survivors = []
        for entry in pairs:
            _, i, j, lij = entry
            if i == t or j == t:
                survivors.append(entry)
                continue
            if (
                ring.monomial_divides(lt, lij)
                and lcm(leads[i], lt) != lij
                and lcm(leads[j], lt) != lij
            ):
                continue
            survivors.append(entry)
        # candidate new pairs, pruned by M/F, then the coprime criterion
        cands = {}
        for i in range(t):
            lij = lcm(leads[i], lt)
            cands.setdefault(lij, []).append(i)
        kept = []
        lijs = list(cands)
        for lij in lijs:
            for other in lijs:
                if other != lij and ring.monomial_divides(other, lij):
                    break
            else:
                kept.append((lij, min(cands[lij])))
        for lij, i in kept:
            if ring.monomials_coprime(leads[i], lt):
                continue
            survivors.append((key(lij), i, t, lij))
        pairs[:] = survivors
        heapify(pairs)

    steps = 0
    # insert seed polynomials one at a time, reducing against what exists
    for terms in pending:
        red = full_reduce(dict(terms))
        if red:
            t = insert(red)
            gm_update(t)

    while pairs:
        _, i, j, lij = heappop(pairs)
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise BudgetExceeded(
                f"S-pair budget exhausted: {steps} reductions, basis size {len(leads)}, "
                f"current lcm degree {ring.wdeg(lij)}"
            )
        si, sj = lij - leads[i], lij - leads[j]
        if modp:
            s = {e + si: c for e, c in tails[i]}
            for e, c in tails[j]:
                mm = e + sj
                v = (s.get(mm, 0) - c) % p
                if v:
                    s[mm] = v
                else:
                    s.pop(mm, None)
        else:
            ci, cj = lcoeffs[i], lcoeffs[j]
            s = {e + si: c * cj for e, c in tails[i]}
            for e, c in tails[j]:
                mm = e + sj
                v = s.get(mm, 0) - c * ci
                if v:
                    s[mm] = v
                else:
                    s.pop(mm, None)
        if not s:
            continue
        red = full_reduce(s)
        if red:
            t = insert(red)
            gm_update(t)

    # minimal basis: drop elements whose lead is divisible by another lead
    order_idx = sorted(range(len(leads)), key=lambda i: key(leads[i]))
    minimal = []
    for i in order_idx:
        if any(ring.monomial_divides(leads[k], leads[i]) for k in minimal if k != i):
            continue
        minimal.append(i)

    # reduced basis: tails fully reduced against the minimal leads, monic
    red_leads = [leads[i] for i in minimal]
    red_polys = []
    for i in minimal:
        if modp:
            terms = {leads[i]: 1}
            terms.update(dict(tails[i]))
        else:
            inv = 1 / lcoeffs[i]
            terms = {leads[i]: Fraction(1)}
            terms.update({m: c * inv for m, c in tails[i]})
        red_polys.append(terms)

    cache2 = {}

    def find_min_reducer(m):
        ent = cache2.get(m)
        if ent is not None:
            return ent
        idx = None
        for k, lm in enumerate(red_leads):
            if ((m | guard) - lm) & guard == guard:
                idx = k
                break
        cache2[m] = idx
        return idx

    final = []
    for k, terms in enumerate(red_polys):
        lm = red_leads[k]
        out = {lm: terms[lm]}
        work = {m: c for m, c in terms.items() if m != lm}
        heap = [(-key(m), m) for m in work]
        heapify(heap)
        while heap:
            m = heappop(heap)[1]
            c = work.pop(m, None)
            if not c:
                continue
            idx = find_min_reducer(m)
            if idx is None:
                out[m] = c
                continue
            g = red_polys[idx]
            glm = red_leads[idx]
            t = c / g[glm] if not modp else c * pow(g[glm], p - 2, p) % p
            shift = m - glm
            for e, ce in g.items():
                if e == glm:
                    continue
                mm = e + shift
                prev = work.get(mm)
                if prev is None:
                    v = (-t * ce % p) if modp else -t * ce
                    if v:
                        work[mm] = v
                        heappush(heap, (-key(mm), mm))
                else:
                    v = ((prev - t * ce) % p) if modp else prev - t * ce
                    if v:
                        work[mm] = v
                    else:
                        del work[mm]
        final.append(out)

    return final


def buchberger(ideal_or_polys, order=None, max_steps=None):
    """Reduced Groebner basis as a tuple of monic Polynomials, sorted by
    increasing leading monomial.  `order` defaults to the ring's own order."""
    if isinstance(ideal_or_polys, Ideal):
        ring = ideal_or_polys.ring
        gens = ideal_or_polys.generators
    else:
        gens = tuple(ideal_or_polys)
        if not gens:
            raise ValueError("cannot infer ring from an empty generator list")
        ring = gens[0].ring
    order = tuple(order) if order is not None else ring.order
    work_ring = ring if order == ring.order else RingContext(ring.names, ring.weights, order, ring.field)
    work_gens = [work_ring.coerce(g) for g in gens if not g.is_zero()]
    for g in work_gens:
        if not g.is_homogeneous():
            raise ValueError("buchberger requires homogeneous generators")
    if not work_gens:
        return ()
    dicts = _gb_engine(work_gens, work_ring, max_steps=max_steps)
    key = work_ring.sort_key
    polys = [Polynomial(work_ring, d) for d in dicts]
    polys.sort(key=lambda f: key(f.lead_monomial()))
    return tuple(polys)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """The S-polynomial of two nonzero polynomials in the same ring."""
    if f.ring != g.ring:
        raise FieldError("polynomials from different rings")
    ring = f.ring
    fld = ring.field
    lf, lg = f.lead_monomial(), g.lead_monomial()
    lcm = ring.monomial_lcm(lf, lg)
    return f.mul_term(lcm - lf, fld.inv(f.lead_coeff())) - g.mul_term(
        lcm - lg, fld.inv(g.lead_coeff())
    )


def normal_form(f: Polynomial, ideal: Ideal) -> Polynomial:
    """Remainder of f modulo the reduced Groebner basis of the ideal."""
    if f.ring != ideal.ring:
        raise FieldError("polynomial and ideal from different rings")
    gb = ideal.groebner_basis()
    return reduce_by_basis(f, gb)


def reduce_by_basis(f: Polynomial, basis) -> Polynomial:
    """Full normal form of f against an explicit list of nonzero polynomials."""
    if not basis or f.is_zero():
        return f
    ring = f.ring
    key = ring.sort_key
    fld = ring.field
    guard = ring.guard_mask
    leads = [g.lead_monomial() for g in basis]
    lcs = [g.lead_coeff() for g in basis]
    work = dict(f.terms)
    out = {}
    heap = [(-key(m), m) for m in work]
    heapify(heap)
    while heap:
        m = heappop(heap)[1]
        c = work.pop(m, None)
        if c is None or fld.is_zero(c):
            continue
        idx = None
        for k, lm in enumerate(leads):
            if ((m | guard) - lm) & guard == guard:
                idx = k
                break
        if idx is None:
            out[m] = c
            continue
        t = fld.div(c, lcs[idx])
        shift = m - leads[idx]
        for e, ce in basis[idx].terms.items():
            if e == leads[idx]:
                continue
            mm = e + shift
            prev = work.get(mm)
            if prev is None:
                v = fld.neg(fld.mul(t, ce))
                if not fld.is_zero(v):
                    work[mm] = v
                    heappush(heap, (-key(mm), mm))
            else:
                v = fld.sub(prev, fld.mul(t, ce))
                if fld.is_zero(v):
                    del work[mm]
                else:
                    work[mm] = v
    return Polynomial(ring, out)


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------


def eliminate(ideal: Ideal, drop_vars, max_steps=None, single_block=False) -> Ideal:
    """I intersected with the subring omitting drop_vars.

    Each step uses a two-block elimination order (dropped block dominates).
    Variables are eliminated one at a time in the listed order: intersection
    with a subring is transitive, and iterated single-variable blocks run far
    faster on the ideals here than one wide block (pass single_block=True to
    force the one-shot order).  The result lives in the smaller ring with its
    degrevlex Groebner cache pre-seeded (elimination theorem)."""
    drop_list = list(dict.fromkeys(drop_vars))
    if set(drop_list) - set(ideal.ring.names):
        raise ValueError(f"unknown variables: {set(drop_list) - set(ideal.ring.names)}")
    if not drop_list:
        return ideal
    if not single_block and len(drop_list) > 1:
        # late-ring variables are cheapest to eliminate first under degrevlex
        pos = ideal.ring.var_index
        out = ideal
        for v in sorted(drop_list, key=lambda n: -pos[n]):
            out = _eliminate_block(out, [v], max_steps)
        return out
    return _eliminate_block(ideal, drop_list, max_steps)


def _eliminate_block(ideal: Ideal, drop, max_steps) -> Ideal:
    ring = ideal.ring
    drop = [v for v in ring.names if v in set(drop)]
    keep = [v for v in ring.names if v not in set(drop)]
    if not keep:
        raise ValueError("cannot eliminate every variable")
    perm_names = tuple(drop + keep)
    perm = [ring.var_index[v] for v in perm_names]
    elim_ring = RingContext(
        perm_names,
        tuple(ring.weights[i] for i in perm),
        elim_order(len(drop)),
        ring.field,
    )

    def permute(f, src, dst, positions):
        out = []
        for m, c in f.terms.items():
            exps = src.unpack(m)
            out.append(([exps[i] for i in positions], c))
        return dst.from_terms(out)

    gens = [permute(g, ring, elim_ring, perm) for g in ideal.generators]
    gb = buchberger(gens, order=elim_ring.order, max_steps=max_steps)

    kept_ring = RingContext(
        tuple(keep),
        tuple(ring.weights[ring.var_index[v]] for v in keep),
        DEGREVLEX,
        ring.field,
    )
    k = len(drop)
    block_mask = 0
    for i in range(k):
        block_mask |= 0xFF << (8 * i)
    down_positions = [elim_ring.var_index[v] for v in keep]
    result = []
    for g in gb:
        if all((m & block_mask) == 0 for m in g.terms):
            result.append(permute(g, elim_ring, kept_ring, down_positions))
    out = Ideal(kept_ring, result)
    out.seed_groebner_cache(DEGREVLEX, tuple(result))
    return out


def linear_part(ideal: Ideal):
    """Basis of the degree-1 graded piece: the weighted-degree-1 elements of
    the reduced Groebner basis."""
    gb = ideal.groebner_basis()
    return [g for g in gb if g.homogeneous_degree() == 1]


# ---------------------------------------------------------------------------
# Hilbert series
# ---------------------------------------------------------------------------


def _minimalize(gens):
    """Minimal generators of a monomial ideal given as exponent tuples."""
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    out = []
    for g in gens:
        if not any(all(h[i] <= g[i] for i in range(len(g))) for h in out):
            out.append(g)
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_add(a, b, scale=1, shift=0):
    out = list(a) + [0] * max(0, shift + len(b) - len(a))
    for j, y in enumerate(b):
        out[shift + j] += scale * y
    return out


def _one_minus_t_power(d):
    out = [0] * (d + 1)
    out[0] = 1
    out[d] = -1
    return out


def _hilbert_numerator(gens):
    """Numerator of the Hilbert series of R/I for a monomial ideal I, over the
    standard grading: HS = N(t) / (1-t)^n.  gens: minimal exponent tuples."""
    gens = _minimalize(gens)
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]  # unit ideal
    pure = []
    mixed = []
    for g in gens:
        nz = [e for e in g if e]
        (pure if len(nz) == 1 else mixed).append(g)
    if len(mixed) <= 1:
        num = [1]
        for g in pure:
            num = _poly_mul(num, _one_minus_t_power(sum(g)))
        if mixed:
            m = mixed[0]
            colon = [1]
            for g in pure:
                d = sum(g) - min(sum(g), sum(min(a, b) for a, b in zip(g, m)))
                if d == 0:
                    colon = [0]
                    break
                colon = _poly_mul(colon, _one_minus_t_power(d))
            num = _poly_add(num, colon, scale=-1, shift=sum(m))
        return num
    # pivot: most frequent variable among mixed generators, median exponent
    n = len(gens[0])
    counts = [0] * n
    for g in mixed:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    j = max(range(n), key=lambda i: counts[i])
    exps = sorted(g[j] for g in mixed if g[j])
    e = exps[len(exps) // 2]
    pivot = tuple(e if i == j else 0 for i in range(n))
    # I + <pivot>
    plus = [g for g in gens if not all(p <= a for p, a in zip(pivot, g))]
    plus.append(pivot)
    # I : pivot
    colon = [tuple(max(a - p, 0) for a, p in zip(g, pivot)) for g in gens]
    return _poly_add(
        _hilbert_numerator(plus), _hilbert_numerator(colon), scale=1, shift=e
    )


def hilbert_data(ideal: Ideal, max_steps=None) -> HilbertData:
    """Dimension, degree, Hilbert polynomial and (for curves) arithmetic genus
    of a homogeneous ideal in a weight-1 ring."""
    ring = ideal.ring
    if any(w != 1 for w in ring.weights):
        raise ValueError("hilbert_data requires a weight-1 ring")
    if ideal._hilbert is not None:
        return ideal._hilbert
    n = ring.n
    gb = ideal.groebner_basis(max_steps=max_steps)
    lead_exps = [ring.unpack(g.lead_monomial()) for g in gb]
    num = _hilbert_numerator(lead_exps)
    # strip factors of (1 - t); num(1) == 0 iff divisible
    s = 0
    while any(num) and sum(num) == 0:
        q = [0] * (len(num) - 1)
        carry = 0
        for i in range(len(num) - 1):
            carry += num[i]
            q[i] = carry
        num = q or [0]
        s += 1
    if not any(num):
        # unit ideal: empty projective scheme
        data = HilbertData(-1, 0, (Fraction(0),), None)
        ideal._hilbert = data
        return data
    dim_affine = n - s
    degree = sum(num)
    proj_dim = dim_affine - 1
    # Hilbert polynomial: HS = num(t)/(1-t)^dim_affine,
    # HP(t) = sum_j num_j * binom(t - j + D - 1, D - 1) with D = dim_affine
    D = dim_affine
    hp = [Fraction(0)] * max(D, 1)
    if D >= 1:
        for j, c in enumerate(num):
            if c == 0:
                continue
            # binom(t - j + D - 1, D - 1) as a polynomial in t
            term = [Fraction(1)]
            for i in range(D - 1):
                term = _polyfrac_mul_linear(term, Fraction(D - 1 - i - j))
            scale = Fraction(c, 1)
            for i in range(1, D):
                scale /= i
            for i, v in enumerate(term):
                hp[i] += scale * v
    genus = None
    if proj_dim == 1:
        hp0 = hp[0] if hp else Fraction(0)
        genus = int(1 - hp0)
    data = HilbertData(proj_dim, degree, tuple(hp), genus)
    ideal._hilbert = data
    return data


def _polyfrac_mul_linear(poly, const):
    """Multiply an ascending-coefficient polynomial in t by (t + const)."""
    out = [Fraction(0)] * (len(poly) + 1)
    for i, v in enumerate(poly):
        out[i + 1] += v
        out[i] += const * v
    return out


def hilbert_function(ideal: Ideal, t: int) -> int:
    """dim_k (R/I)_t: the number of degree-t standard monomials."""
    ring = ideal.ring
    if any(w != 1 for w in ring.weights):
        raise ValueError("hilbert_function requires a weight-1 ring")
    gb = ideal.groebner_basis()
    leads = [g.lead_monomial() for g in gb]
    return sum(1 for _ in _standard_monomials(ring, leads, t))


def standard_monomials(ideal: Ideal, t: int):
    """Degree-t monomials not divisible by any GB leading term, sorted."""
    ring = ideal.ring
    gb = ideal.groebner_basis()
    leads = [g.lead_monomial() for g in gb]
    ms = list(_standard_monomials(ring, leads, t))
    ms.sort(key=ring.sort_key)
    return ms


def _standard_monomials(ring, leads, t):
    n = ring.n
    guard = ring.guard_mask

    def is_std(m):
        for lm in leads:
            if ((m | guard) - lm) & guard == guard:
                return False
        return True

    def rec(i, rem, m):
        if i == n - 1:
            mm = m | (rem << (8 * i))
            if rem <= 127 and is_std(mm):
                yield mm
            return
        for e in range(rem + 1):
            mm = m | (e << (8 * i))
            if not is_std(mm):
                continue
            yield from rec(i + 1, rem - e, mm)

    yield from rec(0, t, 0)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def ideal_to_json(ideal: Ideal) -> dict:
    return {
        "field": ideal.ring.field.descriptor,
        "ring": {"vars": list(ideal.ring.names), "weights": list(ideal.ring.weights)},
        "generators": [str(g) for g in ideal.generators],
    }


def ideal_from_json(data: dict) -> Ideal:
    from .fields import field_from_descriptor

    field = field_from_descriptor(data.get("field", "q"))
    ring = RingContext(
        tuple(data["ring"]["vars"]),
        tuple(data["ring"].get("weights") or [1] * len(data["ring"]["vars"])),
        DEGREVLEX,
        field,
    )
    return Ideal(ring, [ring.parse(s) for s in data["generators"]])
