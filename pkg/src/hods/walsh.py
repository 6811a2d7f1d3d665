"""Dyadic Walsh functions, character sums, and exact Walsh coefficients.

Every integral in this module is an exact rational: Walsh functions are
piecewise constant on dyadic cells, so integrals collapse to finite cell
sums.  Floating point never enters; the test suite can therefore tell an
exact 0 from 1e-16.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInputError, ResourceLimitError
from .genmat import GeneratingMatrixSet
from .points import DyadicValue, PointSet, net_points

MAX_INDEX_BITS = 20
MAX_NET_LEVEL = 20


def _reverse_bits(word: int, width: int) -> int:
    out = 0
    for _ in range(width):
        out = (out << 1) | (word & 1)
        word >>= 1
    return out


def wal(k: int, x: DyadicValue) -> int:
    """The k-th Walsh function at x: the sign (-1)**(digit dot product).

    Digits of x beyond its precision are zero, so any index is admissible.
    """
    if k < 0:
        raise InvalidInputError("Walsh index must be nonnegative")
    w = x.precision
    rev = _reverse_bits(k & ((1 << w) - 1), w)
    return -1 if (x.numerator & rev).bit_count() & 1 else 1


def wal_point(ks: Sequence[int], xs: Sequence[DyadicValue]) -> int:
    """Product of per-coordinate Walsh functions."""
    if len(ks) != len(xs):
        raise InvalidInputError("index vector and point dimension differ")
    sign = 1
    for k, x in zip(ks, xs):
        sign *= wal(k, x)
    return sign


def walsh_inner_product(k: int, l: int) -> Fraction:
    """Exact integral of wal_k * wal_l over [0, 1): 1 if k = l, else 0.

    Both factors are constant on cells of width 2**-R for
    R = max(bit lengths), so the integral is a finite cell sum.
    """
    if k < 0 or l < 0:
        raise InvalidInputError("Walsh indices must be nonnegative")
    r = max(k.bit_length(), l.bit_length(), 1)
    if r > MAX_INDEX_BITS:
        raise ResourceLimitError(f"cell grid 2^{r} exceeds the 2^{MAX_INDEX_BITS} budget")
    rev_k = _reverse_bits(k, r)
    rev_l = _reverse_bits(l, r)
    total = 0
    for cell in range(1 << r):
        parity = ((cell & rev_k).bit_count() + (cell & rev_l).bit_count()) & 1
        total += -1 if parity else 1
    return Fraction(total, 1 << r)


def character_sum(gen: GeneratingMatrixSet, ks: Sequence[int]) -> int:
    """Average of wal_k over the digital net: exactly 1 on the dual set,
    exactly 0 off it.  Integer accumulation, no rounding."""
    if len(ks) != gen.s:
        raise InvalidInputError(f"index vector has {len(ks)} entries, net has {gen.s}")
    m = gen.cols
    if m > MAX_NET_LEVEL:
        raise ResourceLimitError(f"net level {m} exceeds cap {MAX_NET_LEVEL}")
    pts = net_points(gen)
    w = pts.precision
    mask = (1 << w) - 1
    revs = [_reverse_bits(k & mask, w) for k in ks]
    total = 0
    for row in pts.nums:
        parity = 0
        for num, rev in zip(row, revs):
            parity ^= (num & rev).bit_count() & 1
        total += -1 if parity else 1
    if total not in (0, len(pts.nums)):
        raise AssertionError(f"character sum {total} is not 0 or 2^m")
    return 1 if total else 0


def linear_walsh_integral(l: int) -> Fraction:
    """Exact integral of theta * wal_l(theta) over [0, 1).

    1/2 at l = 0; -2**-(a+1) when l is the single bit 2**(a-1); 0 otherwise.
    """
    if l < 0:
        raise InvalidInputError("Walsh index must be nonnegative")
    if l == 0:
        return Fraction(1, 2)
    if l & (l - 1):
        return Fraction(0)
    a = l.bit_length()
    return Fraction(-1, 1 << (a + 1))


def indicator_walsh_integral(x: DyadicValue, l: int) -> Fraction:
    """Exact integral of wal_l over [x, 1), i.e. of 1_[0,theta)(x) wal_l(theta).

    Equal to the full cell sum at any resolution >= max(x.precision,
    bit length of l): aligned blocks of width 2**-(a-1) integrate to zero,
    so only the short stub above x contributes.
    """
    if l < 0:
        raise InvalidInputError("Walsh index must be nonnegative")
    if l.bit_length() > MAX_INDEX_BITS:
        raise ResourceLimitError(f"Walsh index above the 2^{MAX_INDEX_BITS} cap")
    xf = x.as_fraction()
    if l == 0:
        return 1 - xf

    def ceil_frac(q: Fraction) -> int:
        return -(-q.numerator // q.denominator)

    a = l.bit_length()
    cell = Fraction(1, 1 << a)
    block = Fraction(1, 1 << (a - 1))
    first_full = ceil_frac(xf / cell)
    block_end = ceil_frac(xf / block)
    total = Fraction(0)
    # Partial a-cell on which wal_l is constant and equals its value at x.
    if first_full * cell != xf:
        total += wal(l, x) * (first_full * cell - xf)
    # Whole a-cells up to the next (a-1)-aligned boundary; at most two.
    for d in range(first_full, 2 * block_end):
        total += wal(l, DyadicValue(d, a)) * cell
    return total


def delta_walsh_midpoint(points: PointSet, ls: Sequence[int], resolution: int) -> Fraction:
    """Independent route to the same coefficient: sample the local
    discrepancy at the midpoints of the 2**-resolution grid, weight by the
    cell-constant Walsh value, and average.

    The indicator part matches delta_walsh_coefficient exactly; the volume
    part is midpoint quadrature of a polynomial, so the two routes agree to
    within 2**-resolution.
    """
    s = points.s
    if len(ls) != s:
        raise InvalidInputError(f"index vector has {len(ls)} entries, points have {s}")
    if not points.is_dyadic():
        raise InvalidInputError("Walsh coefficients require purely dyadic coordinates")
    if resolution < points.precision or resolution < max(
        (l.bit_length() for l in ls), default=0
    ):
        raise InvalidInputError("resolution must cover point precision and index bit lengths")
    if resolution * s > 20:
        raise ResourceLimitError(f"grid 2^{resolution * s} exceeds the 2^20 cell budget")
    w = points.precision
    grid = 1 << resolution
    shift = resolution + 1 - w  # compare num * 2^(R+1-W) against 2c + 1
    revs = [_reverse_bits(l, resolution) for l in ls]
    cells = [0] * s
    total = Fraction(0)
    volume_den = 1 << (resolution + 1)
    for flat in range(grid**s):
        rest = flat
        for j in range(s):
            cells[j] = rest % grid
            rest //= grid
        # Count points strictly below the midpoint in every coordinate.
        count = 0
        for row in points.nums:
            if all((num << shift) < 2 * c + 1 for num, c in zip(row, cells)):
                count += 1
        delta = Fraction(count, points.n_points) - math.prod(
            Fraction(2 * c + 1, volume_den) for c in cells
        )
        parity = 0
        for c, rev in zip(cells, revs):
            parity ^= (c & rev).bit_count() & 1
        total += -delta if parity else delta
    return total / grid**s


def delta_walsh_coefficient(points: PointSet, ls: Sequence[int]) -> Fraction:
    """Exact Walsh coefficient of the local discrepancy function at index
    vector ls: the point-average of products of indicator integrals minus
    the product of linear integrals."""
    if len(ls) != points.s:
        raise InvalidInputError(f"index vector has {len(ls)} entries, points have {points.s}")
    if not points.is_dyadic():
        raise InvalidInputError("Walsh coefficients require purely dyadic coordinates")
    for l in ls:
        if l < 0:
            raise InvalidInputError("Walsh indices must be nonnegative")
        if l.bit_length() > MAX_INDEX_BITS:
            raise ResourceLimitError(f"Walsh index above the 2^{MAX_INDEX_BITS} cap")
    w = points.precision
    total = Fraction(0)
    for row in points.nums:
        prod = Fraction(1)
        for num, l in zip(row, ls):
            prod *= indicator_walsh_integral(DyadicValue(num, w), l)
            if prod == 0:
                break
        total += prod
    volume = Fraction(1)
    for l in ls:
        volume *= linear_walsh_integral(l)
    return total / points.n_points - volume
