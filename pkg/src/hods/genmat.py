"""Generating matrices for digital nets and sequences.

Builds the generalized Niederreiter matrices from Laurent expansions of
rational functions over F2, the row-interlaced matrices that raise a
construction to order 2, and finite truncations of both.  Entries never
depend on the truncation size, so "infinite" matrices are realized by
regenerating at a larger (rows, cols) when needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError
from .gf2core import BitMatrix, irreducible_sequence, laurent_coefficients

KIND_NIEDERREITER = "niederreiter"
KIND_INTERLACED = "interlaced"
KIND_CUSTOM = "custom"


@dataclass(frozen=True)
class GeneratingMatrixSet:
    """One generating matrix per coordinate, all of the same shape."""

    s: int
    rows: int
    cols: int
    matrices: tuple[BitMatrix, ...]
    kind: str = KIND_CUSTOM

    def __post_init__(self):
        if self.s != len(self.matrices):
            raise InvalidInputError("coordinate count does not match matrix count")
        for mat in self.matrices:
            if mat.rows != self.rows or mat.cols != self.cols:
                raise InvalidInputError("all matrices must share (rows, cols)")

    @property
    def column_zero_factor(self) -> int:
        """Entries (k, l) vanish for k > factor * l (1-based); 0 if unknown."""
        if self.kind == KIND_NIEDERREITER:
            return 1
        if self.kind == KIND_INTERLACED:
            return 2
        return 0


def niederreiter_matrix(j: int, rows: int, cols: int) -> BitMatrix:
    """Generating matrix of coordinate j of the generalized Niederreiter
    sequence, truncated to rows x cols.

    Row k (1-based) holds the first ``cols`` expansion coefficients of
    x**(e-z-1) / p_j**i where k-1 = (i-1)*e + z, 0 <= z < e = deg(p_j).
    The result is upper triangular: entry (k, l) is 0 for k > l.
    """
    if rows < 1 or cols < 1:
        raise InvalidInputError("matrix truncation must have rows, cols >= 1")
    p = irreducible_sequence(j)
    e = p.degree
    data = []
    for k in range(1, rows + 1):
        i, z = divmod(k - 1, e)
        coeffs = laurent_coefficients(p, i + 1, z, cols)
        data.append(sum(bit << c for c, bit in enumerate(coeffs)))
    return BitMatrix(rows, cols, data)


def niederreiter_set(s: int, rows: int, cols: int) -> GeneratingMatrixSet:
    """Niederreiter matrices for coordinates 1..s at a common truncation."""
    if s < 1:
        raise InvalidInputError(f"need s >= 1 coordinates, got {s}")
    mats = tuple(niederreiter_matrix(j, rows, cols) for j in range(1, s + 1))
    return GeneratingMatrixSet(s, rows, cols, mats, KIND_NIEDERREITER)


def interlace_matrix_set(src: GeneratingMatrixSet, rows: int) -> GeneratingMatrixSet:
    """Row-interlace pairs of matrices: row 2u+v of output j is row u+1 of
    source matrix 2(j-1)+v, for u >= 0 and v in {1, 2}.

    Halves the coordinate count and interleaves rows, so a source with
    entries vanishing for k > l yields entries vanishing for k > 2l.
    """
    if src.s % 2 != 0:
        raise InvalidInputError(f"interlacing needs an even coordinate count, got {src.s}")
    needed = (rows + 1) // 2
    if src.rows < needed:
        raise InvalidInputError(
            f"source truncation too small: {rows} output rows need {needed} source rows"
        )
    out = []
    for j in range(1, src.s // 2 + 1):
        data = []
        for k in range(1, rows + 1):
            u, v = divmod(k - 1, 2)  # k = 2u + v + 1, source row u+1 of pair member v+1
            data.append(src.matrices[2 * (j - 1) + v].data[u])
        out.append(BitMatrix(rows, src.cols, data))
    return GeneratingMatrixSet(src.s // 2, rows, src.cols, tuple(out), KIND_INTERLACED)


def interlaced_niederreiter_set(s: int, rows: int, cols: int) -> GeneratingMatrixSet:
    """Order-2 construction: interlace the 2s-coordinate Niederreiter set."""
    src = niederreiter_set(2 * s, (rows + 1) // 2, cols)
    return interlace_matrix_set(src, rows)


def zero_set(s: int, rows: int, cols: int) -> GeneratingMatrixSet:
    return GeneratingMatrixSet(
        s, rows, cols, tuple(BitMatrix.zero(rows, cols) for _ in range(s))
    )


def upper_left(matrix: BitMatrix, u: int, v: int) -> BitMatrix:
    """The left-upper u x v submatrix, bit exact."""
    if not (0 <= u <= matrix.rows and 0 <= v <= matrix.cols):
        raise InvalidInputError(
            f"submatrix {u}x{v} exceeds matrix {matrix.rows}x{matrix.cols}"
        )
    mask = (1 << v) - 1
    return BitMatrix(u, v, [matrix.data[r] & mask for r in range(u)])


def upper_left_set(src: GeneratingMatrixSet, u: int, v: int) -> GeneratingMatrixSet:
    mats = tuple(upper_left(m, u, v) for m in src.matrices)
    return GeneratingMatrixSet(src.s, u, v, mats, src.kind)


def niederreiter_t_bound(s: int) -> int:
    """Quality parameter bound for the s-coordinate Niederreiter construction:
    the sum of deg(p_j) - 1 over coordinates."""
    return sum(irreducible_sequence(j).degree - 1 for j in range(1, s + 1))


def interlaced_t_bound(s: int) -> int:
    """Order-2 quality bound for s interlaced coordinates: s + 2 * (bound of
    the underlying 2s-coordinate construction)."""
    return s + 2 * niederreiter_t_bound(2 * s)
