"""Descriptive statistics for qualification-round analyses.

Five-number summaries, Spearman rank correlation with a Fisher-z interval,
and conditional qualification rates with a two-proportion difference CI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import stats as _scipy_stats

from .dominance import ApplicationRecord
from .thresholds import MedianSet, Standing, classify

Z95 = float(_scipy_stats.norm.ppf(0.975))


@dataclass(frozen=True)
class FiveNumberSummary:
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.minimum, self.q1, self.median, self.q3, self.maximum)


def five_number_summary(values: Iterable[float]) -> FiveNumberSummary:
    """Min, quartiles and max; quartiles by linear interpolation of order statistics."""
    data = np.asarray(list(values), dtype=float)
    if data.size == 0:
        raise ValueError("cannot summarize an empty sample")
    if not np.isfinite(data).all():
        raise ValueError("sample contains non-finite values")
    mn, q1, med, q3, mx = np.percentile(data, [0, 25, 50, 75, 100])
    return FiveNumberSummary(float(mn), float(q1), float(med), float(q3), float(mx))


def _average_ranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..n with ties sharing the average of their rank positions."""
    order = np.argsort(values, kind="mergesort")
    ranks = np.empty(values.size, dtype=float)
    sorted_vals = values[order]
    i = 0
    while i < values.size:
        j = i
        while j + 1 < values.size and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


@dataclass(frozen=True)
class CorrelationResult:
    rho: float
    n: int
    ci_low: float
    ci_high: float
    p_value_zero_corr: float


def spearman_rho(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    """Spearman correlation: Pearson correlation of average ranks.

    The 95% interval comes from the Fisher z-transform with standard error
    1/sqrt(n-3), so it is NaN for n = 3; the p-value for the
    zero-correlation null from the t approximation with n-2 degrees of
    freedom.
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.shape != ya.shape or xa.ndim != 1:
        raise ValueError("x and y must be one-dimensional and equally long")
    n = xa.size
    if n < 3:
        raise ValueError(f"need at least 3 pairs, got {n}")
    rx = _average_ranks(xa)
    ry = _average_ranks(ya)
    rx -= rx.mean()
    ry -= ry.mean()
    denom = math.sqrt(float(rx @ rx) * float(ry @ ry))
    if denom == 0:
        raise ValueError("rank variance is zero, correlation undefined")
    rho = float(rx @ ry) / denom
    rho = max(-1.0, min(1.0, rho))
    if n < 4:
        ci_low = ci_high = math.nan
    elif abs(rho) == 1.0:
        ci_low = ci_high = rho
    else:
        z = math.atanh(rho)
        half = Z95 / math.sqrt(n - 3)
        ci_low = math.tanh(z - half)
        ci_high = math.tanh(z + half)
    if abs(rho) == 1.0:
        p_value = 0.0
    else:
        t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
        p_value = 2.0 * float(_scipy_stats.t.sf(abs(t), df=n - 2))
    return CorrelationResult(rho, n, ci_low, ci_high, p_value)


@dataclass(frozen=True)
class ConditionalRates:
    """Qualification rates split by median standing.

    pq is the overall rate, pqo the rate among over-median applicants and
    pqu among under-median ones; a rate over an empty subset is NaN.
    """

    n_total: int
    n_over: int
    n_under: int
    pq: float
    pqo: float
    pqu: float


def rates_from_flags(qualified: Sequence[bool], over_median: Sequence[bool]) -> ConditionalRates:
    q = np.asarray(qualified, dtype=bool)
    o = np.asarray(over_median, dtype=bool)
    if q.shape != o.shape or q.ndim != 1:
        raise ValueError("flag sequences must be one-dimensional and equally long")
    n = q.size
    n_over = int(o.sum())
    n_under = n - n_over
    pq = float(q.mean()) if n else math.nan
    pqo = float(q[o].mean()) if n_over else math.nan
    pqu = float(q[~o].mean()) if n_under else math.nan
    return ConditionalRates(n, n_over, n_under, pq, pqo, pqu)


def conditional_rates(apps: Sequence[ApplicationRecord], m: MedianSet) -> ConditionalRates:
    """Overall and per-standing qualification rates against one median set."""
    for app in apps:
        if app.discipline.code != m.discipline.code or app.role is not m.role:
            raise ValueError(
                f"application {app.applicant_id} does not belong to "
                f"{m.discipline.code} role {m.role.name.lower()}"
            )
    qualified = [app.qualified for app in apps]
    over = [classify(app.indicators, m) is Standing.OVER_MEDIAN for app in apps]
    return rates_from_flags(qualified, over)


def proportion_diff_ci(
    successes_a: int, n_a: int, successes_b: int, n_b: int
) -> tuple[float, float, float]:
    """Wald 95% interval for the difference of two independent proportions.

    Returns (difference, low, high) for p_a - p_b, clamped to [-1, 1].
    """
    for label, k, n in (("a", successes_a, n_a), ("b", successes_b, n_b)):
        if n <= 0:
            raise ValueError(f"sample {label} is empty")
        if not 0 <= k <= n:
            raise ValueError(f"sample {label}: successes {k} outside 0..{n}")
    pa = successes_a / n_a
    pb = successes_b / n_b
    diff = pa - pb
    se = math.sqrt(pa * (1 - pa) / n_a + pb * (1 - pb) / n_b)
    low = max(-1.0, diff - Z95 * se)
    high = min(1.0, diff + Z95 * se)
    return (diff, low, high)
