"""The limiting law of the scaled hook length, and goodness-of-fit tools.

The limit of pi * Z_n / sqrt(6 n) has density 6u / (pi^2 (e^u - 1)) on
(0, inf).  The CDF is evaluated through the exponential expansion of
1/(e^u - 1), integrated term by term, because the Kolmogorov-Smirnov
statistic evaluates it tens of thousands of times per report; adaptive
quadrature of the density is kept in the tests as the independent oracle
for that series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .asymptotics import ZETA2, limit_shape, zeta
from .partitions import Partition

SIX_OVER_PI2 = 6.0 / math.pi**2
LIMIT_MEAN = 12.0 * zeta(3) / math.pi**2  # ~ 1.4616


def density(u: float) -> float:
    """6u / (pi^2 (e^u - 1)) for u > 0, zero at and below 0.

    The singularity at 0 is removable; below 1e-8 the limit value 6/pi^2
    is returned directly.
    """
    if u <= 0.0:
        return 0.0
    if u < 1e-8:
        return SIX_OVER_PI2
    if u > 700.0:  # e^u overflows a double; the density is ~ u e^-u here
        return 0.0
    return SIX_OVER_PI2 * u / math.expm1(u)


def cdf(y: float) -> float:
    """(6/pi^2) * integral of u/(e^u - 1) from 0 to y.

    Expanding 1/(e^u - 1) into exp(-k u) and integrating term by term gives
    (6/pi^2) * sum_k [1/k^2 - e^{-ky}(y/k + 1/k^2)]; with the closed value
    of sum 1/k^2 only the exponentially decaying part needs truncation, at
    k ~ 40/y with a certified geometric tail below 1e-12.  Tiny arguments
    (y < 0.01) use the alternating Taylor polynomial of the integrand
    instead, whose next omitted term is already below 1e-12 there.
    """
    if y <= 0.0:
        return 0.0
    if y < 0.01:
        return SIX_OVER_PI2 * (y - y * y / 4.0 + y**3 / 36.0 - y**5 / 3600.0)
    kmax = int(40.0 / y) + 10
    k = np.arange(1.0, kmax + 1.0)
    remainder = float(np.sum(np.exp(-k * y) * (y / k + 1.0 / (k * k))))
    # geometric tail certificate
    knext = kmax + 1.0
    tail = math.exp(-knext * y) * (y / knext + 1.0 / (knext * knext))
    tail /= -math.expm1(-y)
    assert tail <= 1e-12, f"cdf tail bound {tail} not below 1e-12 at y={y}"
    return 1.0 - SIX_OVER_PI2 * remainder


def limit_moment(m: int) -> float:
    """m-th moment of the limit law: (m+1)! zeta(m+2) / zeta(2)."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return math.factorial(m + 1) * zeta(m + 2) / ZETA2


def quantile(prob: float, tol: float = 1e-12) -> float:
    """Inverse CDF by bisection; the bracket [0, 120] covers all of (0, 1)
    doubles since 1 - cdf(120) underflows."""
    if not 0.0 < prob < 1.0:
        raise ValueError(f"quantile needs a probability in (0,1), got {prob}")
    lo, hi = 0.0, 120.0
    while hi - lo > tol * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if cdf(mid) < prob:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class GofReport:
    """Goodness-of-fit summary of a batch of scaled hook observations."""

    n: int | None
    sample_count: int
    ks_distance: float
    ks_location: float
    mean_scaled: float
    moment_ratios: tuple[float, ...]

    def __post_init__(self) -> None:
        if not 0.0 <= self.ks_distance <= 1.0:
            raise ValueError(f"KS distance must be in [0,1], got {self.ks_distance}")


def ks_statistic(sample: Sequence[float], n: int | None = None) -> GofReport:
    """Two-sided Kolmogorov-Smirnov distance between the empirical law of
    the sample and the limit CDF, with the location of the supremum and the
    first two sample-to-limit moment ratios.

    No p-value is attached: at finite n the sample is not drawn from the
    limit law, so the report leaves significance to the caller (the
    reference line 1.95/sqrt(count) is easy to compare against).
    """
    if len(sample) == 0:
        raise ValueError("ks_statistic requires a nonempty sample")
    data = np.asarray(sample, dtype=float)
    count = data.size
    values, multiplicity = np.unique(data, return_counts=True)
    ecdf_hi = np.cumsum(multiplicity) / count
    ecdf_lo = ecdf_hi - multiplicity / count
    model = np.array([cdf(v) for v in values])
    gaps = np.maximum(np.abs(model - ecdf_hi), np.abs(model - ecdf_lo))
    at = int(np.argmax(gaps))
    mean = float(data.mean())
    msq = float(np.mean(data**2))
    return GofReport(
        n=n,
        sample_count=count,
        ks_distance=float(gaps[at]),
        ks_location=float(values[at]),
        mean_scaled=mean,
        moment_ratios=(mean / limit_moment(1), msq / limit_moment(2)),
    )


DEFAULT_GRID = (0.05, 8.0, 400)


def shape_grid(lo: float = 0.05, hi: float = 8.0, points: int = 400) -> np.ndarray:
    """Log-spaced abscissas on which diagram profiles are compared to the
    limit curve; s(t) spans ~2.2 down to ~3e-5 over the default range."""
    return np.geomspace(lo, hi, points)


def shape_distance(p: Partition, grid: np.ndarray | None = None) -> float:
    """Sup over the grid of |X(t sqrt(n))/sqrt(n) - s(t)|: the scaled
    diagram profile against the limit-shape curve."""
    if p.n < 1:
        raise ValueError("shape_distance requires a nonempty partition")
    if grid is None:
        grid = shape_grid(*DEFAULT_GRID)
    root = math.sqrt(p.n)
    parts_asc = np.asarray(p.parts[::-1], dtype=float)
    # profile(t') = number of parts >= t' for t' = t * sqrt(n)
    heights = len(parts_asc) - np.searchsorted(parts_asc, grid * root, side="left")
    curve = np.array([limit_shape(t) for t in grid])
    return float(np.max(np.abs(heights / root - curve)))
