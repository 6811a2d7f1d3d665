"""Local discrepancy, exact L2 discrepancy, Monte-Carlo Lq estimation,
theorem envelopes, and convergence studies.

This is the one module where coordinates become floating point, via
(numerator, W) -> numerator * 2**-W.  The conversion is exact for W <= 52;
beyond that doubles round, effectively capping output precision at 52 bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InvalidInputError, ResourceLimitError
from .genmat import interlaced_niederreiter_set, niederreiter_set
from .points import PointSet, net_points, propagation_point_set

MAX_WARNOCK_POINTS = 1 << 15
_PAIR_CHUNK = 256

TEST_FUNCTIONS = ("one", "product-linear", "product-quadratic")


def to_float_array(points: PointSet) -> np.ndarray:
    """Coordinates as an (N, s) float64 array, first-coordinate scale applied."""
    arr = np.ldexp(np.array(points.nums, dtype=np.float64), -points.precision)
    if points.coord1_scale != 1:
        denom = 1 << points.precision
        scale = points.coord1_scale
        arr[:, 0] = [float(Fraction(row[0], denom) * scale) for row in points.nums]
    return arr


def local_discrepancy(points: PointSet, theta: Sequence) -> float | Fraction:
    """Signed difference between the share of points in [0, theta) and its
    volume.  Exact rational for rational theta, float otherwise."""
    if len(theta) != points.s:
        raise InvalidInputError(f"theta has {len(theta)} entries, points have {points.s}")
    exact_input = all(isinstance(t, (int, Fraction)) for t in theta)
    bounds = [Fraction(t) for t in theta]
    if any(t < 0 or t > 1 for t in bounds):
        raise InvalidInputError("theta must lie in [0, 1]^s")
    count = 0
    for n in range(points.n_points):
        if all(x < t for x, t in zip(points.fractions(n), bounds)):
            count += 1
    volume = math.prod(bounds)
    value = Fraction(count, points.n_points) - volume
    return value if exact_input else float(value)


def l2_exact(points: PointSet) -> float:
    """L2 discrepancy by the closed-form pairwise expansion of the integral
    of delta squared (O(N^2 s) work)."""
    n = points.n_points
    if n > MAX_WARNOCK_POINTS:
        raise ResourceLimitError(f"{n} points exceed the pairwise budget {MAX_WARNOCK_POINTS}")
    x = to_float_array(points)
    s = points.s
    term_single = np.prod(1.0 - x * x, axis=1).sum() * (2.0 ** (1 - s)) / n
    term_pair = 0.0
    for start in range(0, n, _PAIR_CHUNK):
        block = x[start : start + _PAIR_CHUNK]
        pair_max = np.maximum(block[:, None, :], x[None, :, :])
        term_pair += np.prod(1.0 - pair_max, axis=2).sum()
    term_pair /= n * n
    value = 3.0**-s - term_single + term_pair
    return math.sqrt(max(value, 0.0))


def lq_estimate(
    points: PointSet, q: int, samples: int, seed: int
) -> tuple[float, float]:
    """Monte-Carlo Lq discrepancy estimate and its standard error.

    Averages |delta|^q over uniform anchors from a counter-based generator
    keyed by the seed, so runs are reproducible and order independent.
    Only even q is admitted; that is where the theory lives.
    """
    if q < 2 or q % 2 != 0:
        raise InvalidInputError(f"q must be an even integer >= 2, got {q}")
    if samples < 1000:
        raise InvalidInputError(f"need at least 1000 samples, got {samples}")
    x = to_float_array(points)
    n = points.n_points
    rng = np.random.Generator(np.random.Philox(key=seed))
    powers = np.empty(samples)
    chunk = max(1, (1 << 22) // max(n, 1))
    done = 0
    while done < samples:
        take = min(chunk, samples - done)
        theta = rng.random((take, points.s))
        inside = np.all(x[None, :, :] < theta[:, None, :], axis=2)
        delta = inside.sum(axis=1) / n - np.prod(theta, axis=1)
        powers[done : done + take] = np.abs(delta) ** q
        done += take
    mean = powers.mean()
    se_mean = powers.std(ddof=1) / math.sqrt(samples)
    estimate = mean ** (1.0 / q)
    std_error = se_mean * estimate / (q * mean) if mean > 0 else 0.0
    return estimate, std_error


def dyadic_exponents(n: int) -> list[int]:
    """Exponents of the binary expansion of n, largest first."""
    if n < 1:
        raise InvalidInputError(f"need a positive integer, got {n}")
    return [i for i in range(n.bit_length() - 1, -1, -1) if (n >> i) & 1]


def lq_discrepancy_bound(n: int, s: int, q: int) -> float:
    """Envelope r^(3/2 - 1/q) / N * sqrt(sum of m_v^(s-1)) over the dyadic
    expansion N = 2^m_1 + ... + 2^m_r (constant omitted; 0^0 = 1)."""
    if n < 2:
        raise InvalidInputError(f"bound needs N >= 2, got {n}")
    if q < 2:
        raise InvalidInputError(f"bound needs q >= 2, got {q}")
    exponents = dyadic_exponents(n)
    r = len(exponents)
    weight = sum(float(m) ** (s - 1) if m > 0 else (1.0 if s == 1 else 0.0) for m in exponents)
    return r ** (1.5 - 1.0 / q) * math.sqrt(weight) / n


@dataclass(frozen=True)
class StudyRow:
    kind: str
    s: int
    m: int
    n_points: int
    q: int
    value: float
    bound: float
    normalized: float
    seed: int

    def csv(self) -> str:
        return ",".join(
            [
                self.kind,
                str(self.s),
                str(self.m),
                str(self.n_points),
                str(self.q),
                format(self.value, ".17g"),
                format(self.bound, ".17g"),
                format(self.normalized, ".17g"),
                str(self.seed),
            ]
        )


STUDY_HEADER = "kind,s,m,N,q,value,bound,normalized,seed"


def _net_for_study(s: int, m: int, source: str) -> PointSet:
    if source == "order1":
        return net_points(niederreiter_set(s, 2 * m, m))
    if source == "order2":
        return net_points(interlaced_niederreiter_set(s, 2 * m, m))
    raise InvalidInputError(f"unknown study source {source!r}")


def convergence_study(
    s: int,
    m_range: Sequence[int],
    source: str,
    q: int = 2,
    mc_samples: int = 0,
    seed: int = 0,
    n_values: Sequence[int] | None = None,
) -> list[StudyRow]:
    """Measured discrepancy against the theorem envelope.

    Sources order1/order2 sweep net levels from m_range; source propagated
    sweeps the point counts in n_values.  The value column is exact-formula
    L2 unless mc_samples > 0, which switches to the Monte-Carlo Lq estimate.
    """
    rows = []
    if source == "propagated":
        if not n_values:
            raise InvalidInputError("propagated studies need n_values")
        m_max = max((n - 1).bit_length() for n in n_values)
        gen = interlaced_niederreiter_set(s, 2 * m_max, m_max)
        for n in n_values:
            pts = propagation_point_set(gen, n, s)
            m = (n - 1).bit_length()
            value = _study_value(pts, q, mc_samples, seed)
            bound = math.log2(n) ** ((s - 1) / 2) / n
            normalized = value / bound
            rows.append(StudyRow("propagated", s, m, n, q, value, bound, normalized, seed))
        return rows

    for m in m_range:
        pts = _net_for_study(s, m, source)
        value = _study_value(pts, q, mc_samples, seed)
        n = pts.n_points
        bound = float(m) ** ((s - 1) / 2) / n
        normalized = value * n / float(m) ** ((s - 1) / 2)
        rows.append(StudyRow(source, s, m, n, q, value, bound, normalized, seed))
    return rows


def _study_value(pts: PointSet, q: int, mc_samples: int, seed: int) -> float:
    if mc_samples > 0:
        return lq_estimate(pts, q, mc_samples, seed)[0]
    if q != 2:
        raise InvalidInputError("exact evaluation covers q = 2; pass mc_samples for q > 2")
    return l2_exact(pts)


def qmc_integrate(points: PointSet, f_id: str) -> tuple[float, float]:
    """Equal-weight quadrature of a tagged test integrand; returns the
    estimate and its absolute error against the known integral."""
    x = to_float_array(points)
    s = points.s
    if f_id == "one":
        values = np.ones(points.n_points)
        exact = 1.0
    elif f_id == "product-linear":
        values = np.prod(x, axis=1)
        exact = 2.0**-s
    elif f_id == "product-quadratic":
        values = np.prod(x * x + 2.0 / 3.0, axis=1)
        exact = 1.0
    else:
        raise InvalidInputError(f"unknown test function {f_id!r}; known: {TEST_FUNCTIONS}")
    estimate = float(values.mean())
    return estimate, abs(estimate - exact)
