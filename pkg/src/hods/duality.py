"""Dual-set weights and equidistribution strength of generating matrices.

The dual set of a level-m net collects the integer vectors whose digit
vectors lie in the kernel of the stacked transposed generating matrices.
Its minimal weight under the NRT weight (order 1) or the two-bit weight
(order 2) determines the exact quality parameter t.  Enumeration walks the
kernel as XOR combinations of a basis; the walk is budgeted, never
silently truncated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidInputError, ResourceLimitError, budget_bits
from .gf2core import BitMatrix, kernel_basis, _row_echelon
from .genmat import GeneratingMatrixSet


def nrt_weight(k) -> int:
    """Bit length of k, or the sum of bit lengths over a vector; 0 for 0."""
    if isinstance(k, int):
        if k < 0:
            raise InvalidInputError("weights are defined for nonnegative integers")
        return k.bit_length()
    return sum(nrt_weight(kj) for kj in k)


def order2_weight(k) -> int:
    """Sum of the positions of the two most significant one bits of k
    (one position if k is a power of two, 0 for 0); summed over vectors."""
    if isinstance(k, int):
        if k < 0:
            raise InvalidInputError("weights are defined for nonnegative integers")
        if k == 0:
            return 0
        a1 = k.bit_length()
        rest = k ^ (1 << (a1 - 1))
        return a1 + rest.bit_length()
    return sum(order2_weight(kj) for kj in k)


@dataclass(frozen=True)
class DualElement:
    """A dual-set member with its weights cached."""

    k: tuple[int, ...]
    mu1: int
    mu2: int

    @classmethod
    def from_vector(cls, k: Sequence[int]) -> "DualElement":
        k = tuple(k)
        return cls(k, nrt_weight(k), order2_weight(k))


@dataclass(frozen=True)
class DualBasis:
    """Kernel basis of the stacked transposed matrices at level m.

    Vectors are packed integers of 2m*s bits; bits 2m*(j-1) .. 2m*j - 1
    encode coordinate j's digits, least significant digit first.
    """

    vectors: tuple[int, ...]
    s: int
    m: int

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def decode(self, packed: int) -> tuple[int, ...]:
        mask = (1 << (2 * self.m)) - 1
        return tuple((packed >> (2 * self.m * j)) & mask for j in range(self.s))


def _stacked_transpose(gen: GeneratingMatrixSet, m: int) -> BitMatrix:
    """m x (2m*s) matrix whose column (j-1)*2m + r is row r+1 of C_j."""
    two_m = 2 * m
    data = [0] * m
    for j, mat in enumerate(gen.matrices):
        for r in range(two_m):
            word = mat.data[r]
            col = j * two_m + r
            for l in range(m):
                if (word >> l) & 1:
                    data[l] |= 1 << col
    return BitMatrix(m, two_m * gen.s, data)


def dual_set_basis(gen: GeneratingMatrixSet) -> DualBasis:
    """Kernel basis of the dual-set membership map for a 2m x m truncation."""
    if gen.rows != 2 * gen.cols:
        raise InvalidInputError(
            f"dual set needs a 2m x m truncation, got {gen.rows}x{gen.cols}"
        )
    m = gen.cols
    if 2 * m * gen.s - m > budget_bits():
        raise ResourceLimitError(
            f"kernel dimension >= {2 * m * gen.s - m} exceeds budget {budget_bits()}"
        )
    basis = kernel_basis(_stacked_transpose(gen, m))
    return DualBasis(tuple(basis), gen.s, m)


def dual_elements(basis: DualBasis) -> Iterator[DualElement]:
    """All 2^dim dual-set members (including zero), by Gray-code XOR walk."""
    if basis.dim > budget_bits():
        raise ResourceLimitError(
            f"kernel dimension {basis.dim} exceeds budget {budget_bits()}"
        )
    current = 0
    yield DualElement.from_vector(basis.decode(0))
    for i in range(1, 1 << basis.dim):
        flip = (i & -i).bit_length() - 1
        current ^= basis.vectors[flip]
        yield DualElement.from_vector(basis.decode(current))


def _min_weights_python(basis: DualBasis) -> tuple[float, float]:
    rho1 = rho2 = math.inf
    current = 0
    for i in range(1, 1 << basis.dim):
        flip = (i & -i).bit_length() - 1
        current ^= basis.vectors[flip]
        k = basis.decode(current)
        rho1 = min(rho1, nrt_weight(k))
        rho2 = min(rho2, order2_weight(k))
    return rho1, rho2


def _min_weights_numpy(basis: DualBasis) -> tuple[float, float]:
    """Vectorized kernel walk: all subset XORs of a low half of the basis,
    scanned once per Gray step through the high half."""
    lo = min(basis.dim, 16)
    table = np.zeros(1, dtype=np.uint64)
    for v in basis.vectors[:lo]:
        table = np.concatenate([table, table ^ np.uint64(v)])

    two_m = 2 * basis.m
    mask = np.uint64((1 << two_m) - 1)

    def weights(packed: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        mu1 = np.zeros(packed.shape, dtype=np.int64)
        mu2 = np.zeros(packed.shape, dtype=np.int64)
        for j in range(basis.s):
            kj = ((packed >> np.uint64(two_m * j)) & mask).astype(np.float64)
            a1 = np.frexp(kj)[1].astype(np.int64)  # bit length, exact below 2^52
            top = np.ldexp(1.0, np.maximum(a1 - 1, 0))
            a2 = np.frexp(np.where(kj > 0, kj - top, 0.0))[1].astype(np.int64)
            mu1 += a1
            mu2 += np.where(kj > 0, a1 + a2, 0)
        return mu1, mu2

    rho1 = rho2 = math.inf
    current = 0
    for i in range(1 << (basis.dim - lo)):
        if i > 0:
            flip = (i & -i).bit_length() - 1
            current ^= basis.vectors[lo + flip]
        block = table ^ np.uint64(current)
        mu1, mu2 = weights(block)
        nonzero = block != 0
        if nonzero.any():
            rho1 = min(rho1, int(mu1[nonzero].min()))
            rho2 = min(rho2, int(mu2[nonzero].min()))
    return rho1, rho2


def minimal_weights(basis: DualBasis) -> tuple[float, float]:
    """Minimum NRT and order-2 weights over the nonzero dual set.

    Walks all 2^dim kernel elements; returns (inf, inf) when the dual set
    is trivial.  Raises when the kernel dimension exceeds the budget.
    """
    if basis.dim > budget_bits():
        raise ResourceLimitError(
            f"kernel dimension {basis.dim} exceeds budget {budget_bits()}"
        )
    if basis.dim == 0:
        return math.inf, math.inf
    if basis.dim > 16 and 2 * basis.m <= 52:
        return _min_weights_numpy(basis)
    return _min_weights_python(basis)


def _independent(rows: list[int]) -> bool:
    echelon, _ = _row_echelon(rows)
    return len(echelon) == len(rows)


def _selection_shapes(two_m: int, budget: int):
    """Per-coordinate row selections and their two-largest-index cost.

    Shapes: nothing, one row i, or row i1 plus all rows 1..i2 for i2 < i1
    (the maximal selection for a given top pair; subsets follow from it).
    """
    shapes = [(0, ())]
    for i in range(1, min(two_m, budget) + 1):
        shapes.append((i, (i,)))
    for i1 in range(2, two_m + 1):
        for i2 in range(1, i1):
            if i1 + i2 > budget:
                break
            shapes.append((i1 + i2, (i1,) + tuple(range(1, i2 + 1))))
    return shapes


def verify_order2_net(gen: GeneratingMatrixSet, t: int) -> bool:
    """Row-independence test for the order-2 net property with parameter t.

    Checks every admissible row selection: per coordinate up to two leading
    row indices count toward the budget 2m - t, deeper rows come for free
    but still enter the independence requirement.
    """
    if gen.rows != 2 * gen.cols:
        raise InvalidInputError(
            f"order-2 verification needs a 2m x m truncation, got {gen.rows}x{gen.cols}"
        )
    m = gen.cols
    if not 0 <= t <= 2 * m:
        raise InvalidInputError(f"t must be in [0, {2 * m}], got {t}")
    if gen.s > 3 or m > 8:
        raise ResourceLimitError("row-selection search is limited to s <= 3, m <= 8")
    budget = 2 * m - t
    shapes = _selection_shapes(2 * m, budget)

    def search(j: int, remaining: int, rows: list[int]) -> bool:
        if j == gen.s:
            return not rows or _independent(rows)
        mat = gen.matrices[j]
        for cost, selection in shapes:
            if cost > remaining:
                continue
            extended = rows + [mat.data[i - 1] for i in selection]
            if len(extended) > m:
                return False  # more than m vectors of length m are dependent
            if not search(j + 1, remaining - cost, extended):
                return False
        return True

    return search(0, budget, [])


def exact_t_value(gen: GeneratingMatrixSet, order: int) -> int:
    """Smallest valid quality parameter t from the dual minimal weight.

    Order 1: t = m - rho1 + 1 clamped to [0, m]; order 2: t = 2m - rho2 + 1
    clamped to [0, 2m].
    """
    if order not in (1, 2):
        raise InvalidInputError(f"order must be 1 or 2, got {order}")
    m = gen.cols
    rho1, rho2 = minimal_weights(dual_set_basis(gen))
    if order == 1:
        t = m - rho1 + 1
        hi = m
    else:
        t = 2 * m - rho2 + 1
        hi = 2 * m
    return int(min(max(t, 0), hi))  # an infinite rho clamps to t = 0
