import math
import random

import pytest

from hods.errors import ResourceLimitError
from hods.gf2core import BitMatrix
from hods.genmat import (
    GeneratingMatrixSet,
    interlaced_niederreiter_set,
    niederreiter_set,
    niederreiter_t_bound,
    zero_set,
)
from hods.duality import (
    DualElement,
    _stacked_transpose,
    dual_elements,
    dual_set_basis,
    exact_t_value,
    minimal_weights,
    nrt_weight,
    order2_weight,
    verify_order2_net,
)


def test_weight_examples():
    assert [nrt_weight(k) for k in (0, 1, 6)] == [0, 1, 3]
    assert [order2_weight(k) for k in (0, 4, 6)] == [0, 3, 5]
    assert nrt_weight((3, 0, 5)) == 2 + 0 + 3
    assert order2_weight((6, 1)) == 5 + 1


def test_weight_invariants_random():
    rng = random.Random(31)
    for _ in range(2000):
        k = rng.randrange(0, 1 << 20)
        mu1, mu2 = nrt_weight(k), order2_weight(k)
        assert mu1 <= mu2 <= 2 * mu1
        assert (mu1 == mu2) == (k.bit_count() <= 1)


def brute_force_dual(gen: GeneratingMatrixSet) -> set[tuple[int, ...]]:
    """Syndrome-check every k in [0, 2^2m)^s; independent of kernel_basis."""
    m = gen.cols
    two_m = 2 * m
    out = set()
    for packed in range(1 << (two_m * gen.s)):
        ks = tuple((packed >> (two_m * j)) & ((1 << two_m) - 1) for j in range(gen.s))
        syndrome = 0
        for mat, k in zip(gen.matrices, ks):
            for r in range(two_m):
                if (k >> r) & 1:
                    syndrome ^= mat.data[r]
        if syndrome == 0:
            out.add(ks)
    return out


@pytest.mark.parametrize(
    "gen",
    [
        niederreiter_set(1, 4, 2),
        niederreiter_set(2, 4, 2),
        interlaced_niederreiter_set(1, 4, 2),
        zero_set(1, 4, 2),
        GeneratingMatrixSet(1, 2, 1, (BitMatrix.from_rows([[1], [0]]),)),
    ],
)
def test_dual_enumeration_matches_brute_force(gen):
    basis = dual_set_basis(gen)
    enumerated = {e.k for e in dual_elements(basis)}
    assert enumerated == brute_force_dual(gen)


def test_hand_kernel_example():
    gen = GeneratingMatrixSet(1, 2, 1, (BitMatrix.from_rows([[1], [0]]),))
    assert {e.k[0] for e in dual_elements(dual_set_basis(gen))} == {0, 2}


def test_van_der_corput_minimal_weight():
    for m in (1, 2, 3, 4, 6):
        gen = niederreiter_set(1, 2 * m, m)
        basis = dual_set_basis(gen)
        rho1, rho2 = minimal_weights(basis)
        assert rho1 == m + 1  # smallest dual element is k = 2^m
        assert basis.dim == m
        for element in dual_elements(basis):
            assert element.k[0] % (1 << m) == 0


def test_zero_matrices_minimal_weight():
    rho1, rho2 = minimal_weights(dual_set_basis(zero_set(2, 4, 2)))
    assert rho1 == 1 and rho2 == 1


def test_trivial_dual_gives_infinite_weights():
    # s=1, m=1 with full-rank columns and only the zero kernel element in
    # range cannot happen at 2m x m (dim >= m); use the direct basis type.
    from hods.duality import DualBasis

    assert minimal_weights(DualBasis((), 1, 1)) == (math.inf, math.inf)


def increasing_weight_minimum(gen: GeneratingMatrixSet, weight) -> int:
    """Independent search: try all k by increasing weight until a dual
    element appears.  Only usable at toy sizes."""
    m = gen.cols
    two_m = 2 * m
    stacked = _stacked_transpose(gen, m)
    for w in range(1, 2 * two_m * gen.s + 1):
        for packed in range(1 << (two_m * gen.s)):
            if packed == 0:
                continue
            ks = tuple(
                (packed >> (two_m * j)) & ((1 << two_m) - 1) for j in range(gen.s)
            )
            if weight(ks) == w and stacked.mul_vector(packed) == 0:
                return w
    raise AssertionError("no dual element found")


@pytest.mark.parametrize(
    "gen",
    [
        niederreiter_set(1, 4, 2),
        niederreiter_set(2, 4, 2),
        interlaced_niederreiter_set(1, 6, 3),
    ],
)
def test_minimal_weights_against_independent_search(gen):
    rho1, rho2 = minimal_weights(dual_set_basis(gen))
    assert rho1 == increasing_weight_minimum(gen, nrt_weight)
    assert rho2 == increasing_weight_minimum(gen, order2_weight)


def test_numpy_walk_agrees_with_python_walk():
    from hods.duality import _min_weights_numpy, _min_weights_python

    gen = niederreiter_set(3, 8, 4)  # dim = 20
    basis = dual_set_basis(gen)
    assert basis.dim == 20
    assert _min_weights_numpy(basis) == _min_weights_python(basis)


def test_dual_closed_under_xor():
    rng = random.Random(7)
    gen = niederreiter_set(2, 8, 4)
    basis = dual_set_basis(gen)
    elements = [e for e in dual_elements(basis)]
    stacked = _stacked_transpose(gen, gen.cols)
    for _ in range(100):
        a, b = rng.choice(elements), rng.choice(elements)
        combined = tuple(x ^ y for x, y in zip(a.k, b.k))
        packed = 0
        for j, k in enumerate(combined):
            packed |= k << (2 * gen.cols * j)
        assert stacked.mul_vector(packed) == 0


def test_verify_order2_examples():
    gen = interlaced_niederreiter_set(1, 8, 4)
    assert verify_order2_net(gen, 8)  # t = 2m is vacuous
    assert verify_order2_net(gen, 1)
    zero = zero_set(1, 8, 4)
    assert verify_order2_net(zero, 8)
    assert not verify_order2_net(zero, 7)


def test_verify_agrees_with_dual_criterion():
    cases = [
        interlaced_niederreiter_set(1, 8, 4),
        interlaced_niederreiter_set(2, 6, 3),
        niederreiter_set(1, 8, 4),
        niederreiter_set(2, 6, 3),
        zero_set(2, 6, 3),
    ]
    for gen in cases:
        m = gen.cols
        _, rho2 = minimal_weights(dual_set_basis(gen))
        for t in range(2 * m + 1):
            assert verify_order2_net(gen, t) == (rho2 > 2 * m - t), (gen.kind, m, t)


def test_exact_t_value_examples():
    for m in (2, 4, 6):
        assert exact_t_value(niederreiter_set(1, 2 * m, m), 1) == 0
        assert exact_t_value(zero_set(1, 2 * m, m), 1) == m
        assert exact_t_value(interlaced_niederreiter_set(1, 2 * m, m), 2) <= 1


def test_t_value_within_construction_bound():
    for s in (1, 2, 3):
        t_bound = niederreiter_t_bound(s)
        for m in (2, 3, 4):
            t = exact_t_value(niederreiter_set(s, 2 * m, m), 1)
            assert t <= t_bound, (s, m, t)


def test_budget_errors(monkeypatch):
    monkeypatch.setenv("HODS_BUDGET_BITS", "3")
    gen = niederreiter_set(2, 8, 4)
    with pytest.raises(ResourceLimitError):
        dual_set_basis(gen)


def test_dual_element_caches_weights():
    e = DualElement.from_vector((6, 1))
    assert (e.mu1, e.mu2) == (4, 6)
