"""The sphere-condition pairings between configuration space and leg space,
and the linear algebra of the induced dualities.

The pairing evaluated on (an isometry point, a leg point) vanishes exactly
when the leg length is compatible with the configuration:

    l h + z00 r - 2 sum_i z_i0 x_i - 2 sum_j z_0j y_j - 2 sum_ij m_ij z_ji = 0

This is the corrected form: re-deriving ||sigma(a) - b||^2 = d^2 through
x = -M^t y gives -2<b, y> where older write-ups print -2<b, x>, and the m_ij
coordinate pairs with z_ji (base index contracts with M's column).  The
Cayley-transform oracle in the test suite is the arbiter for both signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .fields import QQ, FieldError
from .models import (
    Leg,
    LegPoint,
    IsometryPoint,
    X_NAMES,
    XP_NAMES,
    XINV_NAMES,
    XPINV_NAMES,
    Y_NAMES,
    YP_NAMES,
    YINV_NAMES,
    YPINV_NAMES,
    sum_,
)


class DualityError(ValueError):
    """Degenerate pairing or subspace input."""


class ComplexLegError(ValueError):
    """A leg pair exists only over a quadratic extension of the reals."""


@dataclass(frozen=True)
class BilinearForm:
    """An exact pairing matrix between two named coordinate spaces."""

    kind: str
    left_names: tuple
    right_names: tuple
    entries: tuple  # tuple of rows of ints, len(left) x len(right)

    def matrix(self, field):
        return [[field.of(c) for c in row] for row in self.entries]

    def evaluate(self, left_coords, right_coords, field):
        if len(left_coords) != len(self.left_names) or len(right_coords) != len(self.right_names):
            raise DualityError("coordinate length mismatch")
        acc = field.zero
        for i, row in enumerate(self.entries):
            li = field.of(left_coords[i])
            if field.is_zero(li):
                continue
            for j, c in enumerate(row):
                if c:
                    acc = field.add(acc, field.mul(li, field.mul(field.of(c), field.of(right_coords[j]))))
        return acc

    def left_form_of_point(self, right_coords, field):
        """The covector B(. , w) on the left space induced by a right point."""
        return tuple(
            sum_(field, (field.mul(field.of(c), field.of(right_coords[j])) for j, c in enumerate(row) if c))
            for row in self.entries
        )

    def right_form_of_point(self, left_coords, field):
        """The covector B(v, .) on the right space induced by a left point."""
        n = len(self.right_names)
        out = []
        for j in range(n):
            acc = field.zero
            for i, row in enumerate(self.entries):
                if row[j]:
                    acc = field.add(acc, field.mul(field.of(row[j]), field.of(left_coords[i])))
            out.append(acc)
        return tuple(out)


def _pair_matrix(left, right, pairs):
    rows = [[0] * len(right) for _ in left]
    li = {n: i for i, n in enumerate(left)}
    ri = {n: i for i, n in enumerate(right)}
    for ln, rn, c in pairs:
        rows[li[ln]][ri[rn]] = c
    return tuple(tuple(r) for r in rows)


def bsc17() -> BilinearForm:
    """The full bilinear sphere condition between the two P^16."""
    pairs = [("h", "l", 1), ("r", "z00", 1)]
    for i in (1, 2, 3):
        pairs.append((f"x{i}", f"z{i}0", -2))
        pairs.append((f"y{i}", f"z0{i}", -2))
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            pairs.append((f"m{i}{j}", f"z{j}{i}", -2))
    return BilinearForm("bsc17", X_NAMES, Y_NAMES, _pair_matrix(X_NAMES, Y_NAMES, pairs))


def sbsc11() -> BilinearForm:
    """The symmetric bilinear sphere condition between the two P^10."""
    pairs = [("h", "l", 1), ("r", "z00", 1)]
    for i in (1, 2, 3):
        pairs.append((f"x{i}", f"s0{i}", -2))
        pairs.append((f"m{i}{i}", f"z{i}{i}", -2))
    for i, j in ((1, 2), (1, 3), (2, 3)):
        pairs.append((f"m{i}{j}", f"s{i}{j}", -2))
    return BilinearForm("sbsc11", XINV_NAMES, YINV_NAMES, _pair_matrix(XINV_NAMES, YINV_NAMES, pairs))


def bsc_planar10() -> BilinearForm:
    """The planar bilinear sphere condition between the two P^9."""
    pairs = [("h", "l", 1), ("r", "z00", 1)]
    for i in (1, 2):
        pairs.append((f"x{i}", f"z{i}0", -2))
        pairs.append((f"y{i}", f"z0{i}", -2))
    for i in (1, 2):
        for j in (1, 2):
            pairs.append((f"m{i}{j}", f"z{j}{i}", -2))
    return BilinearForm("bsc_planar10", XP_NAMES, YP_NAMES, _pair_matrix(XP_NAMES, YP_NAMES, pairs))


def sbsc_planar7() -> BilinearForm:
    """The planar symmetric sphere condition between the two P^6."""
    pairs = [
        ("h", "l", 1),
        ("r", "z00", 1),
        ("x1", "s01", -2),
        ("x2", "s02", -2),
        ("m11", "z11", -2),
        ("m22", "z22", -2),
        ("m12", "s12", -2),
    ]
    return BilinearForm("sbsc_planar7", XPINV_NAMES, YPINV_NAMES, _pair_matrix(XPINV_NAMES, YPINV_NAMES, pairs))


FORMS = {
    "bsc17": bsc17,
    "sbsc11": sbsc11,
    "bsc_planar10": bsc_planar10,
    "sbsc_planar7": sbsc_planar7,
}


# ---------------------------------------------------------------------------
# Legs <-> points
# ---------------------------------------------------------------------------


def sphere_value(leg: Leg, sigma: IsometryPoint):
    """l h + r - 2<a,x> - 2<b,y> - 2<Ma,b>; zero iff the leg fits the
    configuration (exactly, when h is normalized to 1)."""
    f = sigma.field
    if leg.field is not f:
        raise FieldError("leg and isometry over different fields")
    c = sigma.coords
    M = [[c[3 * i + j] for j in range(3)] for i in range(3)]
    x, y, r, h = c[9:12], c[12:15], c[15], c[16]
    a = [f.of(v) for v in leg.a]
    b = [f.of(v) for v in leg.b]
    l = leg.corrected_length()
    ax = sum_(f, (f.mul(a[i], x[i]) for i in range(3)))
    by = sum_(f, (f.mul(b[i], y[i]) for i in range(3)))
    Mab = sum_(f, (f.mul(f.mul(M[i][j], a[j]), b[i]) for i in range(3) for j in range(3)))
    total = f.add(f.mul(l, h), r)
    for t in (ax, by, Mab):
        total = f.sub(total, f.add(t, t))
    return total


def leg_to_point(leg: Leg) -> LegPoint:
    """z_ij = a~_i b~_j with a~ = (1, a), b~ = (1, b); l the corrected length."""
    f = leg.field
    at = (f.one,) + tuple(f.of(v) for v in leg.a)
    bt = (f.one,) + tuple(f.of(v) for v in leg.b)
    z = tuple(tuple(f.mul(at[i], bt[j]) for j in range(4)) for i in range(4))
    return LegPoint(z, leg.corrected_length(), f)


def point_to_leg(pt: LegPoint) -> Leg:
    """Invert leg_to_point.  Requires affine anchors (z00 != 0) and a rank-1
    coordinate matrix."""
    f = pt.field
    z = pt.z
    if f.is_zero(z[0][0]):
        raise DualityError("anchor at infinity (z00 = 0)")
    for i in range(4):
        for k in range(i + 1, 4):
            for j in range(4):
                for m in range(j + 1, 4):
                    minor = f.sub(f.mul(z[i][j], z[k][m]), f.mul(z[i][m], z[k][j]))
                    if not f.is_zero(minor):
                        raise DualityError("not a leg point (rank > 1)")
    inv00 = f.inv(z[0][0])
    a = tuple(f.mul(z[i][0], inv00) for i in (1, 2, 3))
    b = tuple(f.mul(z[0][j], inv00) for j in (1, 2, 3))
    l_affine = f.mul(pt.l, inv00)
    aa = sum_(f, (f.mul(v, v) for v in a))
    bb = sum_(f, (f.mul(v, v) for v in b))
    return Leg(a, b, f.sub(f.add(aa, bb), l_affine), f)


def leg_sym_coords(leg: Leg) -> tuple:
    """Coordinates of the leg on the symmetric P^10:
    (z11, z22, z33, s12, s13, s23, s01, s02, s03, z00, l)."""
    f = leg.field
    at = (f.one,) + tuple(f.of(v) for v in leg.a)
    bt = (f.one,) + tuple(f.of(v) for v in leg.b)

    def s(i, j):
        return f.add(f.mul(at[i], bt[j]), f.mul(at[j], bt[i]))

    return (
        f.mul(at[1], bt[1]),
        f.mul(at[2], bt[2]),
        f.mul(at[3], bt[3]),
        s(1, 2),
        s(1, 3),
        s(2, 3),
        s(0, 1),
        s(0, 2),
        s(0, 3),
        f.mul(at[0], bt[0]),
        leg.corrected_length(),
    )


def leg_p_coords(leg: Leg) -> tuple:
    """Coordinates of a planar leg on the planar cone P^9."""
    if not leg.is_planar():
        raise DualityError("leg is not planar (a3 = b3 = 0 required)")
    pt = leg_to_point(leg)
    return pt.planar_coords()


def leg_pinv_coords(leg: Leg) -> tuple:
    """Coordinates of a planar leg on the planar symmetric cone P^6:
    (z00, z11, z22, s01, s02, s12, l)."""
    if not leg.is_planar():
        raise DualityError("leg is not planar (a3 = b3 = 0 required)")
    sym = leg_sym_coords(leg)
    z11, z22, _, s12, _, _, s01, s02, _, z00, l = sym
    return (z00, z11, z22, s01, s02, s12, l)


# ---------------------------------------------------------------------------
# Linear subspaces and duals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearSubspace:
    """A linear subspace of a named coordinate space, represented either by
    spanning points or by cutting linear forms."""

    ambient: tuple
    kind: str  # "points" | "forms"
    basis: tuple  # tuple of coordinate tuples
    field: object = QQ

    def __post_init__(self):
        if self.kind not in ("points", "forms"):
            raise DualityError(f"bad representation tag {self.kind!r}")
        for v in self.basis:
            if len(v) != len(self.ambient):
                raise DualityError("basis vector length mismatch")

    def dim(self) -> int:
        """Projective-space-free dimension of the subspace as a vector space."""
        r = linalg.rank([list(v) for v in self.basis], self.field)
        if r != len(self.basis):
            raise DualityError("basis is not linearly independent")
        return r if self.kind == "points" else len(self.ambient) - r

    def reduced(self) -> "LinearSubspace":
        """Canonical RREF basis (deterministic representative)."""
        rows = linalg.row_space_basis([list(v) for v in self.basis], self.field)
        return LinearSubspace(self.ambient, self.kind, tuple(tuple(r) for r in rows), self.field)

    def converted(self) -> "LinearSubspace":
        """The same subspace in the other representation (annihilator swap)."""
        ker = linalg.matrix_kernel([list(v) for v in self.basis], self.field)
        other = "forms" if self.kind == "points" else "points"
        return LinearSubspace(self.ambient, other, tuple(tuple(v) for v in ker), self.field)

    def point_basis(self):
        return self.basis if self.kind == "points" else self.converted().basis

    def form_basis(self):
        return self.basis if self.kind == "forms" else self.converted().basis


def same_subspace(s1: LinearSubspace, s2: LinearSubspace) -> bool:
    if s1.ambient != s2.ambient or s1.field is not s2.field:
        return False
    b1 = linalg.row_space_basis([list(v) for v in s1.point_basis()], s1.field)
    b2 = linalg.row_space_basis([list(v) for v in s2.point_basis()], s2.field)
    return b1 == b2


def dual_space(space: LinearSubspace, form: BilinearForm, side: str) -> LinearSubspace:
    """Transport a subspace across the pairing.

    * points on one side become the cutting forms B(v, .) on the other;
    * forms on one side become the points w with B(., w) in their span
      (so dimensions are preserved basis-for-basis, and for a nondegenerate
      form dual_space is an involution).
    """
    field = space.field
    if side == "left":
        if space.ambient != form.left_names:
            raise DualityError("subspace ambient does not match the form's left space")
        mat = form.matrix(field)
        other_names = form.right_names
    elif side == "right":
        if space.ambient != form.right_names:
            raise DualityError("subspace ambient does not match the form's right space")
        mat = linalg._transpose(form.matrix(field))
        other_names = form.left_names
    else:
        raise DualityError("side must be 'left' or 'right'")

    if space.kind == "points":
        basis = tuple(tuple(linalg.mat_vec(linalg._transpose(mat), list(v), field)) for v in space.basis)
        return LinearSubspace(other_names, "forms", basis, field)

    # forms: solve M w = f for each basis form f
    try:
        minv = linalg.mat_inverse(mat, field)
    except ValueError:
        raise DualityError(
            f"form {form.kind} is degenerate; dual of a forms-space is ill-posed"
        ) from None
    basis = tuple(tuple(linalg.mat_vec(minv, list(f), field)) for f in space.basis)
    return LinearSubspace(other_names, "points", basis, field)


def form_determinant(form: BilinearForm, field=QQ):
    m = form.matrix(field)
    if len(m) != len(m[0]):
        raise DualityError("pairing matrix is not square")
    return linalg.det(m, field)


# ---------------------------------------------------------------------------
# Rank-two factorization: recovering leg pairs from symmetric points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LegPairRecovery:
    """Result of factoring S = a~ b~^t + b~ a~^t on the symmetric cone."""

    legs: tuple | None  # ((a,b) leg, (b,a) leg) or None
    degenerate: bool = False  # a = b (coincident anchors)
    extension_disc: object = None  # discriminant when no rational square root


def _sym_matrix_from_coords(coords, field):
    z11, z22, z33, s12, s13, s23, s01, s02, s03, z00, _l = [field.of(c) for c in coords]
    two = field.of(2)
    return [
        [field.mul(two, z00), s01, s02, s03],
        [s01, field.mul(two, z11), s12, s13],
        [s02, s12, field.mul(two, z22), s23],
        [s03, s13, s23, field.mul(two, z33)],
    ]


def _qq_sqrt(x: Fraction):
    if x < 0:
        return None
    from math import isqrt

    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def recover_leg_pairs(sym_coords, field=QQ) -> LegPairRecovery:
    """Factor a symmetric-cone point into the unordered pair of legs
    {(a,b), (b,a)} it represents.

    Exact over Q or GF(p) when the discriminant is a square; otherwise the
    quadratic extension data (the discriminant) is returned.  Coincident
    anchors are flagged degenerate.  A negative rational discriminant means
    the pair is complex."""
    f = field
    coords = [f.of(c) for c in sym_coords]
    S = _sym_matrix_from_coords(coords, f)
    if all(f.is_zero(S[i][j]) for i in range(4) for j in range(4)):
        raise DualityError("zero matrix: the cone vertex carries no legs")
    # rank <= 2 test: all 3x3 minors vanish
    import itertools

    for rows in itertools.combinations(range(4), 3):
        for cols in itertools.combinations(range(4), 3):
            a = [[S[r][c] for c in cols] for r in rows]
            d3 = f.sub(
                f.add(
                    f.mul(a[0][0], f.sub(f.mul(a[1][1], a[2][2]), f.mul(a[1][2], a[2][1]))),
                    f.mul(a[0][2], f.sub(f.mul(a[1][0], a[2][1]), f.mul(a[1][1], a[2][0]))),
                ),
                f.mul(a[0][1], f.sub(f.mul(a[1][0], a[2][2]), f.mul(a[1][2], a[2][0]))),
            )
            if not f.is_zero(d3):
                raise DualityError("matrix rank exceeds two: not a leg-pair point")
    if f.is_zero(S[0][0]):
        raise DualityError("anchor at infinity (z00 = 0)")
    # normalize projective scale so that a~_0 = b~_0 = 1, i.e. S_00 = 2
    scale = f.div(f.of(2), S[0][0])
    S = [[f.mul(scale, S[i][j]) for j in range(4)] for i in range(4)]
    l_affine = f.mul(scale, coords[10])
    u = [S[0][j] for j in (1, 2, 3)]  # a + b
    # T_ij = v_i v_j with v = a - b
    T = [
        [f.sub(f.mul(u[i], u[j]), f.mul(f.of(2), S[i + 1][j + 1])) for j in range(3)]
        for i in range(3)
    ]
    if all(f.is_zero(T[i][j]) for i in range(3) for j in range(3)):
        a = tuple(f.div(ui, f.of(2)) for ui in u)
        aa = sum_(f, (f.mul(v, v) for v in a))
        d2 = f.sub(f.add(aa, aa), l_affine)
        leg = Leg(a, a, d2, f)
        return LegPairRecovery((leg, leg), degenerate=True)
    k = next(i for i in range(3) if not f.is_zero(T[i][i]))
    disc = T[k][k]
    if f is QQ:
        root = _qq_sqrt(disc)
        if root is None:
            if disc < 0:
                raise ComplexLegError(f"complex leg pair (discriminant {disc})")
            return LegPairRecovery(None, extension_disc=disc)
    else:
        root = f.sqrt(disc)
        if root is None:
            return LegPairRecovery(None, extension_disc=disc)
        if root == 0:
            raise DualityError("inconsistent rank data")
    v = [f.div(T[k][j], root) for j in range(3)]
    # consistency: T must be exactly v v^t
    for i in range(3):
        for j in range(3):
            if not f.is_zero(f.sub(T[i][j], f.mul(v[i], v[j]))):
                raise DualityError("matrix is not a leg-pair point (T not rank one)")
    half = f.div(f.one, f.of(2))
    a = tuple(f.mul(half, f.add(u[i], v[i])) for i in range(3))
    b = tuple(f.mul(half, f.sub(u[i], v[i])) for i in range(3))
    aa = sum_(f, (f.mul(c, c) for c in a))
    bb = sum_(f, (f.mul(c, c) for c in b))
    d2 = f.sub(f.add(aa, bb), l_affine)
    return LegPairRecovery((Leg(a, b, d2, f), Leg(b, a, d2, f)))


def recover_leg_pairs_float(sym_coords) -> tuple:
    """Float-mode factorization via eigendecomposition of the rank-2 part
    (signature (1,1)).  Returns (a, b, d2) as float arrays/values."""
    import numpy as np

    c = [float(v) for v in sym_coords]
    S = np.array(
        [
            [2 * c[9], c[6], c[7], c[8]],
            [c[6], 2 * c[0], c[3], c[4]],
            [c[7], c[3], 2 * c[1], c[5]],
            [c[8], c[4], c[5], 2 * c[2]],
        ]
    )
    scale = max(1.0, float(np.max(np.abs(S))))
    w, V = np.linalg.eigh(S)
    idx = np.argsort(-np.abs(w))
    w1, w2 = w[idx[0]], w[idx[1]]
    if abs(w2) < 1e-12 * scale:
        raise DualityError("rank below two: degenerate float leg point")
    if w1 * w2 > 0:
        raise ComplexLegError("complex leg pair (definite rank-2 part)")
    lam_pos, lam_neg = (w1, w2) if w1 > 0 else (w2, w1)
    wp = V[:, idx[0] if w[idx[0]] > 0 else idx[1]]
    wn = V[:, idx[1] if w[idx[0]] > 0 else idx[0]]
    p = np.sqrt(lam_pos / 2.0) * wp
    q = np.sqrt(-lam_neg / 2.0) * wn
    at, bt = p + q, p - q
    if abs(at[0]) < 1e-12 * scale or abs(bt[0]) < 1e-12 * scale:
        raise DualityError("anchor at infinity (float)")
    a = at[1:] / at[0]
    b = bt[1:] / bt[0]
    l_affine = c[10] * 2.0 / S[0][0]
    d2 = float(a @ a + b @ b - l_affine)
    return a, b, d2
