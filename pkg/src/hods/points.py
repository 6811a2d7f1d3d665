"""Digital net and sequence points as exact dyadic rationals.

A coordinate is (numerator, precision W) with value numerator / 2**W; all
construction arithmetic is integer XOR and parity, never floating point.
Point order is always generation order (the index n); nothing reorders
silently.  The propagation-rule point set carries an exact rational scale
on its first coordinate instead of rounding it to a dyadic value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInputError, ResourceLimitError
from .genmat import GeneratingMatrixSet, upper_left_set

MAX_PRECISION = 64
MAX_NET_LEVEL = 32

PROVENANCE_NET = "net"
PROVENANCE_SHIFTED = "shifted net"
PROVENANCE_SEQUENCE = "sequence"
PROVENANCE_INTERLACED = "interlaced"
PROVENANCE_PROPAGATED = "propagated"


@dataclass(frozen=True)
class DyadicValue:
    """numerator / 2**precision, in [0, 1)."""

    numerator: int
    precision: int

    def __post_init__(self):
        if not 0 <= self.precision <= MAX_PRECISION:
            raise InvalidInputError(f"precision must be in [0, {MAX_PRECISION}]")
        if not 0 <= self.numerator < (1 << self.precision):
            raise InvalidInputError("numerator out of range for precision")

    def digit(self, k: int) -> int:
        """Digit k of the expansion, i.e. the coefficient of 2**-k (k >= 1)."""
        if not 1 <= k <= self.precision:
            return 0
        return (self.numerator >> (self.precision - k)) & 1

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.precision)

    def __float__(self) -> float:
        return self.numerator / (1 << self.precision)


@dataclass(frozen=True)
class ShiftVector:
    """One dyadic shift per coordinate, all at the same precision."""

    values: tuple[DyadicValue, ...]

    def __post_init__(self):
        if not self.values:
            raise InvalidInputError("shift vector must have at least one coordinate")
        w = self.values[0].precision
        if any(v.precision != w for v in self.values):
            raise InvalidInputError("shift coordinates must share one precision")

    @property
    def s(self) -> int:
        return len(self.values)

    @property
    def precision(self) -> int:
        return self.values[0].precision

    @classmethod
    def zero(cls, s: int, precision: int) -> "ShiftVector":
        return cls(tuple(DyadicValue(0, precision) for _ in range(s)))

    @classmethod
    def from_numerators(cls, nums, precision: int) -> "ShiftVector":
        return cls(tuple(DyadicValue(n, precision) for n in nums))


@dataclass
class PointSet:
    """N points in [0, 1)^s with shared dyadic precision.

    ``nums[n][j]`` is the numerator of coordinate j of point n.  For
    propagated sets ``coord1_scale`` multiplies the first coordinate; all
    other sets have scale 1.
    """

    s: int
    n_points: int
    precision: int
    nums: list[tuple[int, ...]]
    provenance: str = PROVENANCE_NET
    coord1_scale: Fraction = field(default_factory=lambda: Fraction(1))

    def __post_init__(self):
        if self.n_points < 1 or len(self.nums) != self.n_points:
            raise InvalidInputError("point count mismatch")

    def point(self, n: int) -> tuple[DyadicValue, ...]:
        """Point n before the first-coordinate scale is applied."""
        return tuple(DyadicValue(v, self.precision) for v in self.nums[n])

    def fractions(self, n: int) -> tuple[Fraction, ...]:
        """Exact coordinate values of point n, scale included."""
        row = self.nums[n]
        denom = 1 << self.precision
        vals = [Fraction(v, denom) for v in row]
        vals[0] *= self.coord1_scale
        return tuple(vals)

    def is_dyadic(self) -> bool:
        return self.coord1_scale == 1


def _column_masks(matrix, w: int) -> list[int]:
    """Pack column l of the matrix as a numerator: bit (w - k) holds row k."""
    masks = [0] * matrix.cols
    for k in range(1, min(matrix.rows, w) + 1):
        word = matrix.data[k - 1]
        bit = 1 << (w - k)
        while word:
            low = word & -word
            masks[low.bit_length() - 1] |= bit
            word ^= low
    return masks


def net_points(gen: GeneratingMatrixSet) -> PointSet:
    """All 2**cols points of the digital net, at precision W = rows.

    Digit k of coordinate j of point n is the parity of the row-k entries
    selected by the binary digits of n.
    """
    m = gen.cols
    w = gen.rows
    if m > MAX_NET_LEVEL:
        raise ResourceLimitError(f"net level {m} exceeds cap {MAX_NET_LEVEL}")
    if w > MAX_PRECISION:
        raise InvalidInputError(f"precision {w} exceeds cap {MAX_PRECISION}")
    n_points = 1 << m
    per_coord = []
    for mat in gen.matrices:
        masks = _column_masks(mat, w)
        nums = [0] * n_points
        for n in range(1, n_points):
            low = n & -n
            nums[n] = nums[n ^ low] ^ masks[low.bit_length() - 1]
        per_coord.append(nums)
    rows = [tuple(per_coord[j][n] for j in range(gen.s)) for n in range(n_points)]
    return PointSet(gen.s, n_points, w, rows, PROVENANCE_NET)


def sequence_point(gen: GeneratingMatrixSet, n: int, w: int) -> tuple[DyadicValue, ...]:
    """Point n of the digital sequence, to w digits per coordinate.

    The truncation must cover the request: rows >= w and cols >= bit length
    of n.  Insufficient truncation raises; digits are never silently cut.
    """
    if n < 0:
        raise InvalidInputError("sequence index must be nonnegative")
    if w > MAX_PRECISION:
        raise InvalidInputError(f"precision {w} exceeds cap {MAX_PRECISION}")
    if gen.rows < w or gen.cols < n.bit_length():
        raise InvalidInputError(
            f"truncation {gen.rows}x{gen.cols} too small for index {n} at {w} digits"
        )
    out = []
    for mat in gen.matrices:
        num = 0
        for k in range(1, w + 1):
            num = (num << 1) | ((mat.data[k - 1] & n).bit_count() & 1)
        out.append(DyadicValue(num, w))
    return tuple(out)


def sequence_points(gen: GeneratingMatrixSet, count: int, w: int) -> PointSet:
    """The first ``count`` sequence points as a point set."""
    if count < 1:
        raise InvalidInputError("need at least one point")
    rows = [
        tuple(v.numerator for v in sequence_point(gen, n, w)) for n in range(count)
    ]
    return PointSet(gen.s, count, w, rows, PROVENANCE_SEQUENCE)


def digital_shift(points: PointSet, shift: ShiftVector) -> PointSet:
    """XOR every coordinate's digits with the shift; an involution."""
    if shift.s != points.s:
        raise InvalidInputError(f"shift has {shift.s} coordinates, points have {points.s}")
    if shift.precision != points.precision:
        raise InvalidInputError(
            f"shift precision {shift.precision} != point precision {points.precision}"
        )
    if not points.is_dyadic():
        raise InvalidInputError("cannot digitally shift a rescaled point set")
    sigma = [v.numerator for v in shift.values]
    rows = [tuple(x ^ sg for x, sg in zip(row, sigma)) for row in points.nums]
    return PointSet(points.s, points.n_points, points.precision, rows, PROVENANCE_SHIFTED)


def block_shift_vector(gen: GeneratingMatrixSet, m: int, beta: int) -> ShiftVector:
    """The fixed digital shift that maps the level-m net onto sequence block
    beta, i.e. points beta*2^m .. (beta+1)*2^m - 1, at precision 2m.

    Digit k of coordinate j is the parity of columns m+1.. of row k against
    the binary digits of beta.
    """
    if m < 0 or beta < 0:
        raise InvalidInputError("level and block index must be nonnegative")
    w = 2 * m
    if gen.rows < w or gen.cols < m + beta.bit_length():
        raise InvalidInputError(
            f"truncation {gen.rows}x{gen.cols} too small for level {m}, block {beta}"
        )
    nums = []
    for mat in gen.matrices:
        num = 0
        for k in range(1, w + 1):
            num = (num << 1) | (((mat.data[k - 1] >> m) & beta).bit_count() & 1)
        nums.append(num)
    return ShiftVector.from_numerators(nums, w)


def interlace_value(a: DyadicValue, b: DyadicValue) -> DyadicValue:
    """Merge two coordinates digit by digit: odd output digits from the
    first, even from the second."""
    if a.precision != b.precision:
        raise InvalidInputError("interlaced pair must share precision")
    w_out = min(2 * a.precision, MAX_PRECISION)
    num = 0
    for r in range(1, w_out + 1):
        d, rem = divmod(r - 1, 2)
        num = (num << 1) | (a.digit(d + 1) if rem == 0 else b.digit(d + 1))
    return DyadicValue(num, w_out)


def interlace_points(points: PointSet) -> PointSet:
    """Apply digit interlacing to consecutive coordinate pairs, halving the
    coordinate count and doubling the precision (capped at 64)."""
    if points.s % 2 != 0:
        raise InvalidInputError(f"interlacing needs an even coordinate count, got {points.s}")
    if not points.is_dyadic():
        raise InvalidInputError("cannot interlace a rescaled point set")
    w_in = points.precision
    w_out = min(2 * w_in, MAX_PRECISION)
    rows = []
    for row in points.nums:
        out_row = []
        for j in range(points.s // 2):
            pair = interlace_value(
                DyadicValue(row[2 * j], w_in), DyadicValue(row[2 * j + 1], w_in)
            )
            out_row.append(pair.numerator)
        rows.append(tuple(out_row))
    return PointSet(points.s // 2, points.n_points, w_out, rows, PROVENANCE_INTERLACED)


def propagation_point_set(gen: GeneratingMatrixSet, n_points: int, s: int | None = None) -> PointSet:
    """Exactly n_points points from an order-2 net, for any count >= 2.

    Takes the level-m net (m minimal with n_points <= 2^m) of the interlaced
    matrices, keeps the points with first coordinate below n_points / 2^m,
    and rescales that coordinate by 2^m / n_points in exact arithmetic.
    """
    if n_points < 2:
        raise InvalidInputError(f"need at least 2 points, got {n_points}")
    if s is None:
        s = gen.s
    if not 1 <= s <= gen.s:
        raise InvalidInputError(f"projection onto {s} of {gen.s} coordinates")
    m = (n_points - 1).bit_length()  # minimal m with n_points <= 2^m
    if gen.rows < 2 * m or gen.cols < m:
        raise InvalidInputError(
            f"truncation {gen.rows}x{gen.cols} too small for level {m}"
        )
    net = net_points(upper_left_set(gen, 2 * m, m))
    cut = n_points << m  # x1 < n_points / 2^m  <=>  numerator < n_points * 2^m
    rows = [row[:s] for row in net.nums if row[0] < cut]
    if len(rows) != n_points:
        raise InvalidInputError(
            f"first coordinate is not stratified at level {m}: kept {len(rows)}"
        )
    return PointSet(
        s,
        n_points,
        2 * m,
        rows,
        PROVENANCE_PROPAGATED,
        coord1_scale=Fraction(1 << m, n_points),
    )
