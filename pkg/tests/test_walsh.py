import random
from fractions import Fraction

import pytest

from hods.errors import InvalidInputError
from hods.genmat import niederreiter_set, zero_set
from hods.points import DyadicValue, PointSet, net_points
from hods.duality import dual_elements, dual_set_basis, _stacked_transpose
from hods.walsh import (
    character_sum,
    delta_walsh_coefficient,
    delta_walsh_midpoint,
    indicator_walsh_integral,
    linear_walsh_integral,
    wal,
    wal_point,
    walsh_inner_product,
)
from hods.discrepancy import l2_exact


def test_wal_examples():
    assert wal(0, DyadicValue(0b1011, 4)) == 1
    assert wal(1, DyadicValue(0b1, 1)) == -1  # x = 1/2
    assert wal(3, DyadicValue(0b01, 2)) == -1  # x = 1/4
    assert wal_point((1, 1), (DyadicValue(1, 1), DyadicValue(1, 1))) == 1


def test_wal_piecewise_constant_scale():
    # wal_k is constant on cells of width 2^-bitlen(k).
    rng = random.Random(3)
    for _ in range(200):
        k = rng.randrange(1, 64)
        a = k.bit_length()
        cell = rng.randrange(1 << a)
        base = wal(k, DyadicValue(cell, a))
        for extra in range(4):
            x = DyadicValue((cell << 4) | rng.randrange(16), a + 4)
            assert wal(k, x) == base or x.numerator >> 4 != cell


def test_orthogonality_small():
    for k in range(16):
        for l in range(16):
            expected = Fraction(1 if k == l else 0)
            assert walsh_inner_product(k, l) == expected


def brute_cell_integral(x: DyadicValue, l: int, resolution: int) -> Fraction:
    """Literal cell sum of wal_l over [x, 1) at width 2^-resolution."""
    total = Fraction(0)
    start = x.numerator << (resolution - x.precision)
    for cell in range(start, 1 << resolution):
        total += wal(l, DyadicValue(cell, resolution))
    return total / (1 << resolution)


def test_indicator_integral_matches_cell_sum():
    rng = random.Random(17)
    for _ in range(300):
        w = rng.randrange(1, 7)
        x = DyadicValue(rng.randrange(1 << w), w)
        l = rng.randrange(0, 64)
        resolution = max(w, l.bit_length(), 1)
        assert indicator_walsh_integral(x, l) == brute_cell_integral(x, l, resolution)


def test_linear_integral_closed_forms():
    assert linear_walsh_integral(0) == Fraction(1, 2)
    assert linear_walsh_integral(1) == Fraction(-1, 4)
    assert linear_walsh_integral(4) == Fraction(-1, 16)  # single bit a = 3
    assert linear_walsh_integral(6) == 0
    # Oracle: midpoint-free exact sum of theta * wal_l over cells, using the
    # cell average of theta, which integrates theta exactly per cell.
    for l in range(1, 32):
        a = max(l.bit_length(), 1)
        total = Fraction(0)
        for cell in range(1 << a):
            avg_theta = Fraction(2 * cell + 1, 1 << (a + 1))
            total += avg_theta * wal(l, DyadicValue(cell, a))
        assert total / (1 << a) == linear_walsh_integral(l), l


def test_character_sum_examples():
    vdc = niederreiter_set(1, 2, 1)
    assert character_sum(vdc, (0,)) == 1
    assert character_sum(vdc, (1,)) == 0
    assert character_sum(vdc, (2,)) == 1


def test_character_dichotomy_and_dual_agreement():
    rng = random.Random(23)
    for s, m in ((1, 4), (2, 3)):
        gen = niederreiter_set(s, 2 * m, m)
        basis = dual_set_basis(gen)
        dual = {e.k for e in dual_elements(basis)}
        for e in list(dual)[:64]:
            assert character_sum(gen, e) == 1
        stacked = _stacked_transpose(gen, m)
        for _ in range(50):
            ks = tuple(rng.randrange(1 << (2 * m)) for _ in range(s))
            packed = 0
            for j, k in enumerate(ks):
                packed |= k << (2 * m * j)
            expected = 1 if stacked.mul_vector(packed) == 0 else 0
            assert character_sum(gen, ks) == expected


def test_delta_coefficient_singletons():
    origin = PointSet(1, 1, 1, [(0,)])
    assert delta_walsh_coefficient(origin, (0,)) == Fraction(1, 2)
    assert delta_walsh_coefficient(origin, (1,)) == Fraction(1, 4)


def test_delta_coefficient_zero_volume_term():
    # Indices with two or more bits kill the volume product.
    origin = PointSet(2, 1, 2, [(0, 0)])
    ls = (6, 5)
    value = delta_walsh_coefficient(origin, ls)
    expected = indicator_walsh_integral(DyadicValue(0, 2), 6) * indicator_walsh_integral(
        DyadicValue(0, 2), 5
    )
    assert value == expected


def test_delta_matches_midpoint_oracle():
    gen = niederreiter_set(1, 4, 2)
    pts = net_points(gen)
    for l in range(8):
        resolution = max(pts.precision, l.bit_length())
        exact = delta_walsh_coefficient(pts, (l,))
        oracle = delta_walsh_midpoint(pts, (l,), resolution)
        assert abs(exact - oracle) <= Fraction(1, 1 << resolution)
    two = net_points(niederreiter_set(2, 4, 2))
    for ls in ((0, 0), (1, 2), (3, 1), (5, 0)):
        resolution = max(two.precision, max(l.bit_length() for l in ls))
        exact = delta_walsh_coefficient(two, ls)
        oracle = delta_walsh_midpoint(two, ls, resolution)
        assert abs(exact - oracle) <= Fraction(1, 1 << resolution)


def test_delta_zero_coefficient_is_mean_identity():
    # At index 0 the coefficient is the plain integral of delta:
    # (1/N) sum (1 - x_n) - 1/2.
    pts = net_points(niederreiter_set(1, 8, 4))
    value = delta_walsh_coefficient(pts, (0,))
    mean = sum(Fraction(num, 1 << 8) for (num,) in pts.nums) / 16
    assert value == (1 - mean) - Fraction(1, 2)


def test_parseval_partial_sum_bounded_by_l2():
    # Bessel: the coefficient energy in any finite index box is at most the
    # squared L2 discrepancy, with equality in the limit.
    for s, m in ((1, 2), (2, 2)):
        pts = net_points(niederreiter_set(s, 2 * m, m))
        l2_squared = l2_exact(pts) ** 2
        box = range(8)
        if s == 1:
            indices = [(l,) for l in box]
        else:
            indices = [(a, b) for a in box for b in box]
        total = Fraction(0)
        for ls in indices:
            total += delta_walsh_coefficient(pts, ls) ** 2
        assert float(total) <= l2_squared * (1 + 1e-9)
        # The box already captures most of the energy at this scale.
        assert float(total) >= 0.5 * l2_squared


def test_walsh_input_validation():
    with pytest.raises(InvalidInputError):
        wal(-1, DyadicValue(0, 1))
    with pytest.raises(InvalidInputError):
        character_sum(zero_set(2, 4, 2), (1,))
    with pytest.raises(InvalidInputError):
        delta_walsh_coefficient(PointSet(1, 1, 1, [(0,)]), (-1,))
