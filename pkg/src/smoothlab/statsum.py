"""Monte Carlo summaries, exponent fits, and dyadic-shell reductions shared
by the experiment modules."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np


@dataclass(frozen=True)
class FitResult:
    """Least-squares line y = intercept + slope * x with residual RMS."""

    kind: str
    slope: float
    intercept: float
    residual: float


@dataclass(frozen=True)
class RungStats:
    rung_index: int
    n_value: int
    trials: int
    mean: float
    variance: float
    std_error: float
    minimum: float
    median: float
    maximum: float


@dataclass(frozen=True)
class StatSummary:
    """Per-rung Monte Carlo statistics plus an optional fitted growth model."""

    experiment: str
    rungs: tuple
    fit: FitResult | None = None
    extras: dict = field(default_factory=dict)
    master_seed: int = 0
    config_hash: str = ""

    def rung_means(self) -> np.ndarray:
        return np.array([r.mean for r in self.rungs])

    def last_rung_ratio(self) -> float:
        """Ratio of the last two rung means (plateau statistic)."""
        if len(self.rungs) < 2:
            raise ValueError("need at least two rungs for a ratio")
        return self.rungs[-1].mean / self.rungs[-2].mean

    def to_dict(self) -> dict:
        d = asdict(self)
        d["rungs"] = [asdict(r) for r in self.rungs]
        d["fit"] = asdict(self.fit) if self.fit is not None else None
        return d


def rung_stats(rung_index: int, n_value: int, values) -> RungStats:
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        raise ValueError("empty rung")
    var = float(np.var(v, ddof=1)) if v.size > 1 else 0.0
    se = float(np.sqrt(var / v.size)) if v.size > 1 else 0.0
    return RungStats(
        rung_index=rung_index,
        n_value=int(n_value),
        trials=int(v.size),
        mean=float(np.mean(v)),
        variance=var,
        std_error=se,
        minimum=float(np.min(v)),
        median=float(np.median(v)),
        maximum=float(np.max(v)),
    )


def fit_line(x, y, kind: str) -> FitResult:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.size < 2:
        raise ValueError("need at least two points to fit a line")
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (intercept + slope * x)) ** 2)))
    return FitResult(kind=kind, slope=float(slope), intercept=float(intercept), residual=resid)


def fit_log_growth(n_values, means) -> FitResult:
    """Fit value = intercept + slope * ln(n) (logarithmic growth model)."""
    return fit_line(np.log(np.asarray(n_values, dtype=float)), means, "value_vs_log_n")


def fit_power_law(n_values, means) -> FitResult:
    """Fit ln(value) = intercept + slope * ln(n) (power-law model)."""
    means = np.asarray(means, dtype=float)
    if np.any(means <= 0):
        raise ValueError("power-law fit needs positive values")
    return fit_line(np.log(np.asarray(n_values, dtype=float)), np.log(means), "log_value_vs_log_n")


def dyadic_shells(n_max: int, upper_half: bool = True) -> list[tuple[int, int, int]]:
    """Full dyadic shells (j, lo, hi) with lo = 2^j, hi = min(2^{j+1}, n_max+1).

    With ``upper_half`` the shells are restricted to the top half of the
    resolved spectrum in log scale: j >= floor(log2(n_max) / 2).
    """
    big_j = int(np.floor(np.log2(n_max)))
    j_min = big_j // 2 if upper_half else 0
    shells = []
    for j in range(j_min, big_j + 1):
        lo, hi = 2 ** j, min(2 ** (j + 1), n_max + 1)
        if hi - lo >= 2:
            shells.append((j, lo, hi))
    return shells


def shell_median_slope(amplitudes: np.ndarray, upper_half: bool = True) -> float:
    """Least-squares decay exponent of positive-frequency amplitudes.

    ``amplitudes[n]`` is |uhat(n)| for n = 0..n_max.  Per dyadic shell the
    median amplitude is regressed against the median bracket <n> in log-log
    coordinates; medians are robust to the O(1) fluctuations of Gaussian
    coefficients.
    """
    n_max = amplitudes.shape[0] - 1
    xs, ys = [], []
    for _, lo, hi in dyadic_shells(n_max, upper_half):
        med = float(np.median(amplitudes[lo:hi]))
        if med <= 0.0:
            raise ValueError(f"zero shell median in [{lo}, {hi})")
        xs.append(np.log(1.0 + np.median(np.arange(lo, hi))))
        ys.append(np.log(med))
    if len(xs) < 2:
        raise ValueError(f"not enough dyadic shells on a lattice with n_max = {n_max}")
    return fit_line(xs, ys, "shell_median").slope
