"""Field scalars, sparse polynomials, ring maps, and exact kernels."""

import random
from fractions import Fraction

import pytest

from podforge.fields import GF, QQ, FieldError, field_from_descriptor
from podforge.rings import DEGREVLEX, RingContext, RingMap, apply_ring_map, poly_arith
from podforge.linalg import matrix_kernel, rank
from podforge.models import EULER_NAMES, X_NAMES, ring_euler, ring_X
from podforge.constructions import draw_seed, rho_quadric_matrix
from podforge.models import euler_rho


@pytest.fixture
def ring_xyz():
    return RingContext(("x", "y", "z"), (1, 1, 1), DEGREVLEX, QQ)


def test_field_descriptors():
    assert field_from_descriptor("q") is QQ
    assert field_from_descriptor("fp:101").p == 101
    with pytest.raises(FieldError):
        field_from_descriptor("fp:100")


def test_gf_canonical_representatives():
    f5 = GF(5)
    assert f5.of(-3) == 2
    assert f5.of(Fraction(1, 2)) == 3  # 2 * 3 = 6 = 1 mod 5
    assert f5.sqrt(4) == 2
    assert f5.sqrt(2) is None  # 2 is not a square mod 5


def test_add_additive_inverse(ring_xyz):
    x, _, _ = ring_xyz.gens()
    assert poly_arith("add", x, -x).is_zero()


def test_mul_difference_of_squares():
    ring = ring_euler(QQ)
    e1, e2, _ = ring.gens()
    assert poly_arith("mul", e1 + e2, e1 - e2) == e1 * e1 - e2 * e2


def test_scale_over_gf5():
    ring = ring_euler(GF(5))
    e1 = ring.gen("e1")
    # 2 * 3 = 6 = 1 mod 5
    assert poly_arith("scale", e1.scale(2), 3) == e1


def test_field_mixing_rejected(ring_xyz):
    other = RingContext(("x", "y", "z"), (1, 1, 1), DEGREVLEX, GF(7))
    with pytest.raises(FieldError):
        poly_arith("add", ring_xyz.gen("x"), other.gen("x"))


def test_homogeneous_sum_stays_homogeneous(ring_xyz):
    x, y, z = ring_xyz.gens()
    f = x * y + z * z
    g = x * x - y * z
    assert (f + g).is_homogeneous()
    assert (f - g).homogeneous_degree() == 2


def test_ring_axioms_randomized(ring_xyz):
    rng = random.Random(5)

    def rand_poly():
        return ring_xyz.from_terms(
            ((rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)),
             Fraction(rng.randint(-5, 5)))
            for _ in range(4)
        )

    for _ in range(50):
        f, g, h = rand_poly(), rand_poly(), rand_poly()
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f + g == g + f


def test_weighted_degree():
    ring = RingContext(("e", "p"), (1, 2), DEGREVLEX, QQ)
    e, p = ring.gens()
    assert (e * e * p).homogeneous_degree() == 4
    assert (e * e + p).is_homogeneous()


def test_parse_print_roundtrip(ring_xyz):
    rng = random.Random(11)
    for _ in range(100):
        f = ring_xyz.from_terms(
            ((rng.randint(0, 4), rng.randint(0, 4), rng.randint(0, 4)),
             Fraction(rng.randint(-30, 30), rng.randint(1, 9)))
            for _ in range(5)
        )
        assert ring_xyz.parse(str(f)) == f


def test_parse_print_roundtrip_gf():
    ring = RingContext(("x", "y"), (1, 1), DEGREVLEX, GF(101))
    rng = random.Random(3)
    for _ in range(100):
        f = ring.from_terms(
            ((rng.randint(0, 5), rng.randint(0, 5)), rng.randint(0, 100)) for _ in range(4)
        )
        assert ring.parse(str(f)) == f


# -- ring maps ---------------------------------------------------------------


def test_rho_image_of_h():
    seed = draw_seed(1, QQ)
    rho = euler_rho(*seed.P, seed.U)
    ring = ring_euler(QQ)
    e1, e2, e3 = ring.gens()
    h = ring_X(QQ).gen("h")
    assert apply_ring_map(rho, h) == e1 * e1 + e2 * e2 + e3 * e3


def test_rho_image_of_m11_and_m12():
    seed = draw_seed(2, QQ)
    rho = euler_rho(*seed.P, seed.U)
    ring = ring_euler(QQ)
    e1, e2, e3 = ring.gens()
    rx = ring_X(QQ)
    assert rho(rx.gen("m11")) == e1 * e1 - e2 * e2 - e3 * e3
    assert rho(rx.gen("m12")) == (e1 * e2).scale(2)


def test_identity_map(ring_xyz):
    ident = RingMap(ring_xyz, ring_xyz, list(ring_xyz.gens()))
    rng = random.Random(2)
    for _ in range(20):
        f = ring_xyz.from_terms(
            ((rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3)),
             Fraction(rng.randint(-9, 9)))
            for _ in range(4)
        )
        assert ident(f) == f


def test_ring_map_is_homomorphism(ring_xyz):
    target = ring_euler(QQ)
    e1, e2, e3 = target.gens()
    phi = RingMap(ring_xyz, target, [e1 + e2, e2 * 1, e3 - e1])
    rng = random.Random(7)
    for _ in range(25):
        f = ring_xyz.from_terms(
            ((rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)),
             Fraction(rng.randint(-5, 5)))
            for _ in range(3)
        )
        g = ring_xyz.from_terms(
            ((rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)),
             Fraction(rng.randint(-5, 5)))
            for _ in range(3)
        )
        assert phi(f * g) == phi(f) * phi(g)
        assert phi(f + g) == phi(f) + phi(g)


def test_graded_degree_of_rho():
    seed = draw_seed(3, QQ)
    rho = euler_rho(*seed.P, seed.U)
    assert rho.graded_degree() == 2


# -- kernels -----------------------------------------------------------------


def test_kernel_of_identity():
    assert matrix_kernel([[1, 0, 0], [0, 1, 0], [0, 0, 1]], QQ) == []


def test_kernel_of_single_row():
    assert matrix_kernel([[1, 1]], QQ) == [[Fraction(-1), Fraction(1)]]


def test_kernel_ragged_rows_rejected():
    with pytest.raises(ValueError):
        matrix_kernel([[1, 2], [1]], QQ)


def test_rho_linear_matrix_kernel_dim_11():
    # the lift map on linear forms has rank 6 (image curve spans a P^5), so
    # the kernel of the 6 x 17 matrix has dimension 11; cross-checked by
    # explicit row reduction
    for s in (1, 4, 9):
        seed = draw_seed(s, GF(101))
        field = seed.field
        quarter = field.inv(field.of(4))
        rho = euler_rho(seed.P[0], seed.P[1], seed.P[2], seed.U.scale(quarter))
        mat = rho_quadric_matrix(rho)
        assert len(mat) == 6 and len(mat[0]) == 17
        assert rank(mat, field) == 6
        kernel = matrix_kernel(mat, field)
        assert len(kernel) == 11
        for v in kernel:
            for row in mat:
                acc = field.zero
                for c, x in zip(row, v):
                    acc = field.add(acc, field.mul(field.of(c), x))
                assert field.is_zero(acc)


def test_kernel_rank_nullity():
    rng = random.Random(13)
    for _ in range(20):
        rows = [[Fraction(rng.randint(-4, 4)) for _ in range(6)] for _ in range(4)]
        r = rank(rows, QQ)
        k = matrix_kernel(rows, QQ)
        assert r + len(k) == 6
