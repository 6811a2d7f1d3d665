import random

import pytest

from hods.errors import InvalidInputError
from hods.gf2core import (
    BitMatrix,
    Gf2Poly,
    X,
    _poly_divmod,
    _poly_mul,
    irreducible_sequence,
    kernel_basis,
    laurent_coefficients,
    poly_is_irreducible,
    rank,
)


def test_irreducible_examples():
    assert poly_is_irreducible(Gf2Poly(0b10))  # x
    assert poly_is_irreducible(Gf2Poly(0b111))  # x^2+x+1
    assert not poly_is_irreducible(Gf2Poly(0b101))  # x^2+1 = (x+1)^2
    assert not poly_is_irreducible(Gf2Poly(1))  # unit
    with pytest.raises(InvalidInputError):
        poly_is_irreducible(Gf2Poly(0))


def test_irreducible_counts_match_necklace_formula():
    # Number of monic irreducibles of degree d over F2, via Moebius counting.
    expected = {1: 2, 2: 1, 3: 2, 4: 3, 5: 6, 6: 9}
    for d, want in expected.items():
        got = sum(
            poly_is_irreducible(Gf2Poly(w)) for w in range(1 << d, 1 << (d + 1))
        )
        assert got == want, f"degree {d}"


def test_irreducible_sequence_prefix():
    words = [irreducible_sequence(j).coeffs for j in range(1, 9)]
    assert words == [0b10, 0b11, 0b111, 0b1011, 0b1101, 0b10011, 0b11001, 0b11111]


def test_irreducible_sequence_properties():
    polys = [irreducible_sequence(j) for j in range(1, 41)]
    assert len({p.coeffs for p in polys}) == 40
    for a, b in zip(polys[1:], polys[2:]):
        assert a.degree <= b.degree
    assert X not in polys[1:]
    with pytest.raises(InvalidInputError):
        irreducible_sequence(0)


def test_laurent_examples():
    assert laurent_coefficients(Gf2Poly(0b10), 1, 0, 4) == [1, 0, 0, 0]
    assert laurent_coefficients(Gf2Poly(0b11), 1, 0, 4) == [1, 1, 1, 1]
    assert laurent_coefficients(Gf2Poly(0b111), 1, 1, 5) == [0, 1, 1, 0, 1]


def test_laurent_defining_recurrence():
    # The partial series q = sum a_l x^(L-l) must satisfy
    # x^(e-z-1+L) - q * p^i = remainder of degree < deg(p^i).
    rng = random.Random(11)
    for _ in range(200):
        j = rng.randrange(1, 8)
        p = irreducible_sequence(j)
        i = rng.randrange(1, 4)
        z = rng.randrange(p.degree)
        count = rng.randrange(1, 12)
        coeffs = laurent_coefficients(p, i, z, count)
        q = sum(bit << (count - l) for l, bit in enumerate(coeffs, start=1))
        pi = (p**i).coeffs
        residue = (1 << (p.degree - z - 1 + count)) ^ _poly_mul(q, pi)
        assert residue.bit_length() <= pi.bit_length() - 1


def test_laurent_input_validation():
    with pytest.raises(InvalidInputError):
        laurent_coefficients(Gf2Poly(0b111), 1, 2, 4)  # z >= deg(p)
    with pytest.raises(InvalidInputError):
        laurent_coefficients(Gf2Poly(0b111), 1, 0, 0)
    with pytest.raises(InvalidInputError):
        laurent_coefficients(Gf2Poly(1), 1, 0, 4)


def test_poly_divmod_roundtrip():
    rng = random.Random(5)
    for _ in range(300):
        a = rng.randrange(0, 1 << 20)
        b = rng.randrange(1, 1 << 10)
        q, r = _poly_divmod(a, b)
        assert _poly_mul(q, b) ^ r == a
        assert r.bit_length() < b.bit_length()


def test_bitmatrix_text_roundtrip():
    m = BitMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
    assert m.to_text() == "101\n011"
    assert BitMatrix.from_text(m.to_text()) == m
    assert m.entry(0, 2) == 1 and m.entry(1, 0) == 0


def test_bitmatrix_transpose_and_mul():
    m = BitMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
    t = m.transpose()
    assert t.rows == 3 and t.cols == 2
    assert [t.row_bits(r) for r in range(3)] == [[1, 0], [0, 1], [1, 1]]
    # v = (1, 1, 0) -> rows dot v = (1, 1)
    assert m.mul_vector(0b011) == 0b11


def test_kernel_examples():
    assert kernel_basis(BitMatrix.identity(3)) == []
    assert len(kernel_basis(BitMatrix.zero(2, 3))) == 3
    basis = kernel_basis(BitMatrix.from_rows([[1, 0, 1], [0, 1, 1]]))
    assert basis == [0b111]


def test_kernel_properties_random():
    rng = random.Random(99)
    for _ in range(150):
        rows = rng.randrange(1, 7)
        cols = rng.randrange(1, 9)
        m = BitMatrix(rows, cols, [rng.randrange(1 << cols) for _ in range(rows)])
        basis = kernel_basis(m)
        assert len(basis) == cols - rank(m)
        for v in basis:
            assert m.mul_vector(v) == 0
        # Independence: all 2^dim XOR combinations are distinct.
        if len(basis) <= 10:
            seen = set()
            for mask in range(1 << len(basis)):
                acc = 0
                for i, v in enumerate(basis):
                    if (mask >> i) & 1:
                        acc ^= v
                seen.add(acc)
            assert len(seen) == 1 << len(basis)


def test_bitmatrix_validation():
    with pytest.raises(InvalidInputError):
        BitMatrix(1, 2, [0b100])  # bit outside column range
    with pytest.raises(InvalidInputError):
        BitMatrix(2, 2, [0])  # wrong row count
