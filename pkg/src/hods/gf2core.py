"""Polynomial and linear algebra over F2.

Polynomials are stored as nonnegative integers: bit ``l`` of the word is the
coefficient of ``x**l``, so ``x**2 + x + 1`` is ``0b111 == 7``.  Matrices
store one integer per row with bit ``c`` holding the entry in column ``c``.
Everything here is exact integer arithmetic; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError

MAX_POLY_DEGREE = 63


def _poly_mul(a: int, b: int) -> int:
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def _poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    n = b.bit_length() - 1
    q = 0
    while a.bit_length() - 1 >= n and a:
        shift = a.bit_length() - 1 - n
        q ^= 1 << shift
        a ^= b << shift
    return q, a


@dataclass(frozen=True)
class Gf2Poly:
    """A polynomial over F2 as a coefficient bit word."""

    coeffs: int

    def __post_init__(self):
        if self.coeffs < 0:
            raise InvalidInputError("polynomial word must be nonnegative")
        if self.coeffs.bit_length() - 1 > MAX_POLY_DEGREE:
            raise InvalidInputError(f"polynomial degree exceeds cap {MAX_POLY_DEGREE}")

    @property
    def degree(self) -> int:
        """Degree of the polynomial; the zero polynomial reports -1."""
        return self.coeffs.bit_length() - 1

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_poly_mul(self.coeffs, other.coeffs))

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_poly_divmod(self.coeffs, other.coeffs)[1])

    def __pow__(self, n: int) -> "Gf2Poly":
        result = 1
        for _ in range(n):
            result = _poly_mul(result, self.coeffs)
        return Gf2Poly(result)

    def to_hex(self) -> str:
        return hex(self.coeffs)

    @classmethod
    def from_hex(cls, text: str) -> "Gf2Poly":
        return cls(int(text, 16))

    def __str__(self) -> str:
        if self.coeffs == 0:
            return "0"
        terms = []
        for l in range(self.degree, -1, -1):
            if (self.coeffs >> l) & 1:
                terms.append("1" if l == 0 else ("x" if l == 1 else f"x^{l}"))
        return " + ".join(terms)


X = Gf2Poly(2)
ONE = Gf2Poly(1)


def poly_is_irreducible(p: Gf2Poly) -> bool:
    """Exhaustive trial division by every polynomial of degree <= deg(p)/2.

    Constants are units, never irreducible.  Raises on the zero polynomial.
    """
    if p.coeffs == 0:
        raise InvalidInputError("irreducibility is undefined for the zero polynomial")
    if p.degree == 0:
        return False
    half = p.degree // 2
    for word in range(2, 1 << (half + 1)):
        if _poly_divmod(p.coeffs, word)[1] == 0:
            return False
    return True


_IRREDUCIBLES: list[Gf2Poly] = []  # excluding x, ordered by (degree, word)


def _extend_irreducibles(count: int) -> None:
    word = _IRREDUCIBLES[-1].coeffs + 1 if _IRREDUCIBLES else 3
    while len(_IRREDUCIBLES) < count:
        p = Gf2Poly(word)
        if word != X.coeffs and poly_is_irreducible(p):
            _IRREDUCIBLES.append(p)
        word += 1


def irreducible_sequence(j: int) -> Gf2Poly:
    """The j-th modulus polynomial: x for j=1, then the irreducibles
    excluding x, sorted by (degree, coefficient word)."""
    if j < 1:
        raise InvalidInputError(f"coordinate index must be >= 1, got {j}")
    if j == 1:
        return X
    _extend_irreducibles(j - 1)
    return _IRREDUCIBLES[j - 2]


def laurent_coefficients(p: Gf2Poly, i: int, z: int, count: int) -> list[int]:
    """First ``count`` coefficients a_1..a_count of the expansion of
    x**(deg(p)-z-1) / p**i into powers x**-1, x**-2, ...

    Computed by formal long division: the quotient of x**(deg(p)-z-1+count)
    by p**i carries a_l in its coefficient of x**(count-l).
    """
    e = p.degree
    if e < 1:
        raise InvalidInputError("expansion requires deg(p) >= 1")
    if i < 1:
        raise InvalidInputError(f"power must be >= 1, got {i}")
    if not 0 <= z < e:
        raise InvalidInputError(f"shift must satisfy 0 <= z < deg(p) = {e}, got {z}")
    if count < 1:
        raise InvalidInputError(f"count must be >= 1, got {count}")
    numerator = 1 << (e - z - 1 + count)
    q, _ = _poly_divmod(numerator, (p ** i).coeffs)
    return [(q >> (count - l)) & 1 for l in range(1, count + 1)]


class BitMatrix:
    """A rows x cols matrix over F2, one integer bit array per row."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: list[int] | None = None):
        if rows < 0 or cols < 0:
            raise InvalidInputError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [0] * rows
        if len(data) != rows:
            raise InvalidInputError(f"expected {rows} rows, got {len(data)}")
        mask = (1 << cols) - 1
        for r in data:
            if r < 0 or r & ~mask:
                raise InvalidInputError("row has bits outside the column range")
        self.data = list(data)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @classmethod
    def from_rows(cls, rows_of_bits: list[list[int]]) -> "BitMatrix":
        rows = len(rows_of_bits)
        cols = len(rows_of_bits[0]) if rows else 0
        data = []
        for bits in rows_of_bits:
            if len(bits) != cols:
                raise InvalidInputError("ragged rows")
            data.append(sum((b & 1) << c for c, b in enumerate(bits)))
        return cls(rows, cols, data)

    def entry(self, r: int, c: int) -> int:
        """Entry in row r, column c (0-based)."""
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise InvalidInputError(f"index ({r}, {c}) out of range")
        return (self.data[r] >> c) & 1

    def row_bits(self, r: int) -> list[int]:
        return [(self.data[r] >> c) & 1 for c in range(self.cols)]

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for r, word in enumerate(self.data):
            while word:
                low = word & -word
                out[low.bit_length() - 1] |= 1 << r
                word ^= low
        return BitMatrix(self.cols, self.rows, out)

    def mul_vector(self, v: int) -> int:
        """Matrix-vector product over F2; bit c of v multiplies column c."""
        out = 0
        for r, word in enumerate(self.data):
            out |= ((word & v).bit_count() & 1) << r
        return out

    def to_text(self) -> str:
        """One line per row, '0'/'1' characters, column 0 first."""
        return "\n".join(
            "".join(str((word >> c) & 1) for c in range(self.cols)) for word in self.data
        )

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        return cls.from_rows([[int(ch) for ch in ln.strip()] for ln in lines])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.data)))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


def rank(matrix: BitMatrix) -> int:
    """Rank over F2 by Gaussian elimination."""
    return len(_row_echelon(matrix.data)[0])


def _row_echelon(rows: list[int]) -> tuple[list[int], list[int]]:
    """Reduce to row echelon form; returns (pivot rows, pivot column indices)."""
    echelon: list[int] = []
    pivot_cols: list[int] = []
    for word in rows:
        for piv_row, piv_col in zip(echelon, pivot_cols):
            if (word >> piv_col) & 1:
                word ^= piv_row
        if word:
            echelon.append(word)
            pivot_cols.append(word.bit_length() - 1)
    return echelon, pivot_cols


def kernel_basis(matrix: BitMatrix) -> list[int]:
    """Basis of the right kernel {v : M v = 0}, vectors packed as integers.

    The basis has exactly cols - rank(M) vectors, produced by back-substituting
    each free column of the reduced echelon form.
    """
    echelon, pivot_cols = _row_echelon(matrix.data)
    # Reduce above the pivots so each pivot column appears in one row only.
    for idx in range(len(echelon) - 1, -1, -1):
        piv = pivot_cols[idx]
        for above in range(idx):
            if (echelon[above] >> piv) & 1:
                echelon[above] ^= echelon[idx]
    pivot_set = set(pivot_cols)
    basis = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for piv_row, piv_col in zip(echelon, pivot_cols):
            if (piv_row >> free) & 1:
                v |= 1 << piv_col
        basis.append(v)
    return basis
