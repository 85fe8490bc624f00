"""The cubic Szego second iterate, its truncated H^s growth, and an exact
Wick-expectation oracle for the trilinear term.

The trilinear term is Pi(u1 conj(u2) u3) on the non-negative frequencies;
for time-independent data the Duhamel integral is just t times that term,
so the whole growth analysis reduces to spatial lattice sums.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import next_fast_len

from .sampling import derive_trial_seed, sample_szego_data, szego_weight
from .spectral import (
    ANALYTIC_NONNEG,
    LatticeSpec,
    ModeVector,
    bracket,
    sobolev_norm,
)
from .statsum import StatSummary, fit_log_growth, rung_stats


def _require_analytic(u: ModeVector, op: str) -> None:
    if u.lattice.symmetry != ANALYTIC_NONNEG:
        raise ValueError(f"{op} needs analytic_nonneg input, got {u.lattice.symmetry}")


def szego_trilinear(u1: ModeVector, u2: ModeVector, u3: ModeVector) -> ModeVector:
    """Pi(u1 conj(u2) u3) truncated to 0 <= n <= n_max.

    Computed as a pointwise physical-space product on a grid of at least
    3 n_max + 1 points; the product frequencies span [-n_max, 2 n_max], so
    on such a grid every one of them occupies its own bin and the retained
    modes are alias-free.
    """
    _require_analytic(u1, "szego_trilinear")
    _require_analytic(u2, "szego_trilinear")
    _require_analytic(u3, "szego_trilinear")
    if not (u1.n_max == u2.n_max == u3.n_max):
        raise ValueError("lattice mismatch between trilinear arguments")
    m_modes = u1.n_max
    m = next_fast_len(3 * m_modes + 1)
    def grid(u):
        bins = np.zeros(m, dtype=np.complex128)
        bins[:m_modes + 1] = u.coeffs[m_modes:]
        return m * np.fft.ifft(bins)
    w = grid(u1) * np.conj(grid(u2)) * grid(u3)
    what = np.fft.fft(w) / m
    out = np.zeros(u1.lattice.size, dtype=np.complex128)
    out[m_modes:] = what[:m_modes + 1]
    return ModeVector(LatticeSpec(m_modes, ANALYTIC_NONNEG), out)


def szego_trilinear_direct(u1: ModeVector, u2: ModeVector, u3: ModeVector) -> ModeVector:
    """Triple-sum oracle: out(n) = sum_{n = n1 - n2 + n3} u1(n1) conj(u2(n2)) u3(n3)
    over 0 <= n_i <= n_max.  O(n_max^3); for tests and small lattices."""
    _require_analytic(u1, "szego_trilinear_direct")
    _require_analytic(u2, "szego_trilinear_direct")
    _require_analytic(u3, "szego_trilinear_direct")
    if not (u1.n_max == u2.n_max == u3.n_max):
        raise ValueError("lattice mismatch between trilinear arguments")
    m = u1.n_max
    a1 = u1.coeffs[m:]
    a2 = np.conj(u2.coeffs[m:])
    a3 = u3.coeffs[m:]
    out = np.zeros(u1.lattice.size, dtype=np.complex128)
    for n in range(m + 1):
        acc = 0.0 + 0.0j
        for n1 in range(m + 1):
            for n2 in range(m + 1):
                n3 = n - n1 + n2
                if 0 <= n3 <= m:
                    acc += a1[n1] * a2[n2] * a3[n3]
        out[m + n] = acc
    return ModeVector(LatticeSpec(m, ANALYTIC_NONNEG), out)


def szego_second_iterate(u0: ModeVector, t: float) -> ModeVector:
    """z(t) = u0 - i t Pi(|u0|^2 u0); the integrand is time-independent so
    the Duhamel integral factors into t times the trilinear term."""
    _require_analytic(u0, "szego_second_iterate")
    return u0 + (-1j * t) * szego_trilinear(u0, u0, u0)


def hs_growth_curve(
    alpha: float,
    s: float,
    ladder,
    trials: int,
    master_seed: int = 0,
) -> StatSummary:
    """Monte Carlo mean/variance of ||Pi(|u0|^2 u0)||_{H^s}^2 across a
    lattice ladder, with a fitted value-vs-log(N) growth model."""
    if len(ladder) == 0:
        raise ValueError("empty lattice ladder")
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError(f"ladder must be strictly increasing, got {ladder}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    values = np.empty((len(ladder), trials))
    for i, n_max in enumerate(ladder):
        for k in range(trials):
            u0 = sample_szego_data(n_max, alpha, derive_trial_seed(master_seed, k)).coeffs
            values[i, k] = sobolev_norm(szego_trilinear(u0, u0, u0), s) ** 2
    rungs = tuple(rung_stats(i, n, values[i]) for i, n in enumerate(ladder))
    fit = fit_log_growth(ladder, [r.mean for r in rungs]) if len(ladder) > 1 else None
    return StatSummary("szego_growth", rungs, fit=fit, master_seed=master_seed)


@dataclass(frozen=True)
class WickReport:
    """Exact expectation of ||Pi(|u0|^2 u0)||_{H^s}^2 split by how many of
    the three Gaussian contractions couple the two conjugate triples
    (cross pairs).  Matchings with an unpaired Gaussian vanish, so the
    no-pair class is exactly zero."""

    n_max: int
    alpha: float
    s: float
    exact_expectation: float
    contributions: dict

    def __post_init__(self):
        total = sum(self.contributions.values())
        if not np.isfinite(total):
            raise ValueError("non-finite Wick contribution")
        if abs(total - self.exact_expectation) > 1e-10 * max(1.0, abs(total)):
            raise ValueError("class contributions do not add up to the total")


def wick_expectation_exact(alpha: float, s: float, n_max: int) -> WickReport:
    """Exact E ||Pi(|u0|^2 u0)||_{H^s}^2 by Wick's theorem.

    The squared H^s mass expands into six Gaussians g_{n1} conj(g_{n2})
    g_{n3} conj(g_{m1}) g_{m2} conj(g_{m3}) under the two frequency
    constraints n = n1 - n2 + n3 = m1 - m2 + m3.  The expectation is the
    sum over the 3! matchings of unbarred to barred slots, each contraction
    contributing 2 / (1 + k^{2 alpha}) at its collapsed index k.  Collapsing
    the constraints leaves:

    * two matchings with three cross pairs, both equal to the triple sum
      sum_{p,q,r} <p - r + q>^{2s} v_p v_q v_r over 0 <= p-r+q <= n_max
      (evaluated with two linear convolutions, O(n_max^2));
    * four matchings with one cross pair, all equal to
      (sum_a v_a)^2 * sum_n <n>^{2s} v_n;
    * no matching with zero cross pairs,

    where v_k = 2 / (1 + k^{2 alpha}).  The degenerate anchor n_max = 0
    gives 16 + 32 = 48 = 3! * 2^3, the sixth moment of one standard
    complex Gaussian.
    """
    if n_max > 512:
        raise ValueError(f"n_max = {n_max} exceeds the O(n_max^3) guard of 512")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    k = np.arange(0, n_max + 1, dtype=np.float64)
    v = 2.0 * szego_weight(k, alpha) ** 2
    jb2s = bracket(k) ** (2.0 * s)
    # three cross pairs: sum over k = p + q of conv(v, v)[k] * conv(v, jb2s)[k],
    # the second convolution ranging over output frequencies p - r + q in [0, n_max]
    cvv = np.convolve(v, v)                 # index k = p + q in [0, 2 n_max]
    cvw = np.convolve(v, jb2s)              # index k = r + n in [0, 2 n_max]
    three_pair = 2.0 * float(np.sum(cvv * cvw))
    one_pair = 4.0 * float(np.sum(v)) ** 2 * float(np.sum(jb2s * v))
    contributions = {
        "three_pair": three_pair,
        "one_pair": one_pair,
        "no_pair": 0.0,
    }
    return WickReport(
        n_max=n_max,
        alpha=alpha,
        s=s,
        exact_expectation=three_pair + one_pair,
        contributions=contributions,
    )


def wick_expectation_mc(
    alpha: float, s: float, n_max: int, trials: int, master_seed: int = 0
) -> tuple[float, float]:
    """Monte Carlo estimate (mean, standard error) of the same quantity,
    for crosschecking the exact oracle."""
    vals = np.empty(trials)
    for k in range(trials):
        u0 = sample_szego_data(n_max, alpha, derive_trial_seed(master_seed, k)).coeffs
        vals[k] = sobolev_norm(szego_trilinear(u0, u0, u0), s) ** 2
    se = float(np.std(vals, ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return float(np.mean(vals)), se
