"""Normality and growth diagnostics for weight samples."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateSampleError, DomainError
from .samplers import count_uniform, log10_count_uniform, make_rng

# Acklam's rational approximation coefficients
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def normal_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def _acklam(q: float) -> float:
    if q < _P_LOW:
        t = math.sqrt(-2.0 * math.log(q))
        return (((((_C[0] * t + _C[1]) * t + _C[2]) * t + _C[3]) * t + _C[4]) * t + _C[5]) / (
            (((_D[0] * t + _D[1]) * t + _D[2]) * t + _D[3]) * t + 1.0
        )
    if q > 1.0 - _P_LOW:
        return -_acklam(1.0 - q)
    r = q - 0.5
    t = r * r
    return (((((_A[0] * t + _A[1]) * t + _A[2]) * t + _A[3]) * t + _A[4]) * t + _A[5]) * r / (
        ((((_B[0] * t + _B[1]) * t + _B[2]) * t + _B[3]) * t + _B[4]) * t + 1.0
    )


def inverse_normal_cdf(q: float) -> float:
    """Standard normal quantile: rational approximation plus one Halley step."""
    if not 0.0 < q < 1.0:
        raise DomainError(f"quantile level must lie in (0, 1), got {q}")
    z = _acklam(q)
    # refine against the erfc-based CDF; the upper tail is handled by symmetry
    if q > 0.5:
        e = normal_cdf(-z) - (1.0 - q)
        z = -z
        sign = -1.0
    else:
        e = normal_cdf(z) - q
        sign = 1.0
    u = e * math.sqrt(2.0 * math.pi) * math.exp(z * z / 2.0)
    z = z - u / (1.0 + z * u / 2.0)
    return sign * z


@dataclass(frozen=True)
class QQData:
    theoretical: np.ndarray
    observed: np.ndarray

    @property
    def n(self) -> int:
        return self.theoretical.size

    def correlation(self) -> float:
        return float(np.corrcoef(self.theoretical, self.observed)[0, 1])

    def tail_deviation(self, fraction: float = 0.1) -> tuple:
        """Mean (observed - theoretical) over the lowest and highest ``fraction`` of points."""
        k = max(1, int(round(fraction * self.n)))
        diff = self.observed - self.theoretical
        return float(diff[:k].mean()), float(diff[-k:].mean())


def qq_data(samples: Sequence[float]) -> QQData:
    """Sorted standardised samples against normal quantiles at (i + 0.5) / n."""
    x = np.asarray(samples, dtype=float).ravel()
    n = x.size
    if n < 3:
        raise DegenerateSampleError(f"Q-Q data needs at least 3 samples, got {n}")
    sd = x.std(ddof=1)
    if not sd > 0:
        raise DegenerateSampleError("samples have zero variance")
    observed = np.sort((x - x.mean()) / sd)
    theoretical = np.array([inverse_normal_cdf((i + 0.5) / n) for i in range(n)])
    return QQData(theoretical, observed)


def pick_one_per_row(weights: np.ndarray, seed=0) -> np.ndarray:
    """One component per weight vector, chosen by a fair coin (uniform index for p > 2)."""
    weights = np.asarray(weights, dtype=float)
    rng = make_rng(seed)
    idx = rng.integers(0, weights.shape[1], size=weights.shape[0])
    return weights[np.arange(weights.shape[0]), idx]


def summary_stats(samples: Sequence[float], unbiased: bool = True) -> dict:
    """Mean, variance, skewness and excess kurtosis.

    With ``unbiased`` the sample-size corrected estimators are used (variance
    with n-1, adjusted Fisher-Pearson skewness G1, kurtosis G2); otherwise the
    plain moment ratios g1 and g2.
    """
    x = np.asarray(samples, dtype=float).ravel()
    n = x.size
    if n < 4:
        raise DegenerateSampleError(f"need at least 4 samples, got {n}")
    mean = x.mean()
    dev = x - mean
    m2 = np.mean(dev**2)
    if not m2 > 0:
        raise DegenerateSampleError("samples have zero variance; higher moments undefined")
    m3 = np.mean(dev**3)
    m4 = np.mean(dev**4)
    g1 = m3 / m2**1.5
    g2 = m4 / m2**2 - 3.0
    if not unbiased:
        return {"mean": float(mean), "variance": float(m2), "skewness": float(g1),
                "excess_kurtosis": float(g2)}
    var = m2 * n / (n - 1)
    skew = g1 * math.sqrt(n * (n - 1)) / (n - 2)
    kurt = ((n + 1) * g2 + 6.0) * (n - 1) / ((n - 2) * (n - 3))
    return {"mean": float(mean), "variance": float(var), "skewness": float(skew),
            "excess_kurtosis": float(kurt)}


def growth_table(p_values: Sequence[int], d_values: Sequence[int]) -> list:
    """Rows ``(p, d, count, log10_count)``; ``count`` is None where it overflows int64."""
    if not p_values or not d_values:
        raise DegenerateSampleError("growth table needs nonempty p and d ranges")
    rows = []
    for p in p_values:
        for d in d_values:
            try:
                count = count_uniform(p, d)
                log_count = math.log10(count)
            except OverflowError:
                count, log_count = None, log10_count_uniform(p, d)
            rows.append((p, d, count, log_count))
    return rows
