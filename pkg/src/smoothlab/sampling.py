"""Seeded sampling of Gaussian random Fourier data and the probabilistic
diagnostics built on it.

RNG contract
------------
The Gaussian attached to mode ``n`` of a draw with master seed ``seed`` comes
from its own counter-based Philox stream keyed by the 128-bit word
``(seed, n)``, transformed by numpy's ziggurat (``standard_normal``).  Both
choices are frozen.  Consequences:

* identical ``(seed, lattice, alpha)`` gives a bit-identical draw, in any
  thread, in any call order;
* mode ``n`` never sees ``n_max``, so enlarging the lattice extends a draw
  without touching existing coefficients (a draw truncated to a smaller
  lattice equals the draw sampled on that lattice).

Normalization: each g_n has independent standard-normal real and imaginary
parts, so E|g_n|^2 = 2.  Every expectation-based test in this package
depends on that factor of 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spectral import (
    ANALYTIC_NONNEG,
    REAL_MEAN_ZERO,
    LatticeSpec,
    ModeVector,
    bracket,
)


def mode_gaussian(seed: int, n: int) -> complex:
    """The standard complex Gaussian attached to (seed, mode n)."""
    gen = np.random.Generator(np.random.Philox(key=np.array([seed, n], dtype=np.uint64)))
    x, y = gen.standard_normal(2)
    return complex(x, y)


def mode_gaussians(seed: int, n_values) -> np.ndarray:
    """Vector of mode Gaussians for the given frequencies (one stream each)."""
    return np.array([mode_gaussian(seed, int(n)) for n in n_values], dtype=np.complex128)


def derive_trial_seed(master_seed: int, trial: int) -> int:
    """Documented per-trial seed split: SeedSequence(master_seed, spawn=(trial,)).

    Trials are exchangeable and independent of how many trials run, of the
    thread count, and of the lattice ladder (the same trial seed is reused
    across ladder rungs, so each trial traces a coupled curve)."""
    ss = np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(trial),))
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class GaussianDraw:
    """One realization of random Fourier data.

    ``coeffs`` holds the weighted data uhat(n); ``gaussians`` holds the raw
    g_n on the same index range (conjugate-filled on the negative side for
    the KdV law, zero there for the Szego law).
    """

    seed: int
    lattice: LatticeSpec
    alpha: float
    coeffs: ModeVector
    gaussians: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.gaussians, dtype=np.complex128)
        if arr.shape != (self.lattice.size,):
            raise ValueError("gaussians array does not match the lattice")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "gaussians", arr)

    def gaussian(self, n: int) -> complex:
        return complex(self.gaussians[n + self.lattice.n_max])


def sample_kdv_data(n_max: int, alpha: float, seed: int) -> GaussianDraw:
    """Random real-valued mean-zero data: uhat(n) = g_n / |n|^alpha for
    1 <= |n| <= n_max, uhat(0) = 0, uhat(-n) = conj(uhat(n)).

    Any real alpha is accepted; alpha = 0 is the white-noise case.
    """
    lattice = LatticeSpec(n_max, REAL_MEAN_ZERO)
    pos = mode_gaussians(seed, range(1, n_max + 1))
    g = np.zeros(lattice.size, dtype=np.complex128)
    g[n_max + 1:] = pos
    g[:n_max] = np.conj(pos)[::-1]
    n = np.arange(1, n_max + 1, dtype=np.float64)
    weighted = pos / n ** alpha
    c = np.zeros(lattice.size, dtype=np.complex128)
    c[n_max + 1:] = weighted
    c[:n_max] = np.conj(weighted)[::-1]
    return GaussianDraw(seed, lattice, alpha, ModeVector(lattice, c), g)


def szego_weight(n, alpha: float) -> np.ndarray:
    """The Szego data weight 1 / sqrt(1 + |n|^{2 alpha}), with the n = 0
    weight fixed to 1 for every alpha."""
    n = np.asarray(n, dtype=np.float64)
    power = np.where(n == 0, 0.0, np.abs(n) ** (2.0 * alpha))
    return 1.0 / np.sqrt(1.0 + power)


def sample_szego_data(n_max: int, alpha: float, seed: int) -> GaussianDraw:
    """Random analytic data: uhat(n) = g_n / sqrt(1 + |n|^{2 alpha}) for
    0 <= n <= n_max, zero for n < 0; independent g_n, no conjugate pairing.
    """
    lattice = LatticeSpec(n_max, ANALYTIC_NONNEG)
    nonneg = mode_gaussians(seed, range(0, n_max + 1))
    g = np.zeros(lattice.size, dtype=np.complex128)
    g[n_max:] = nonneg
    c = np.zeros(lattice.size, dtype=np.complex128)
    c[n_max:] = nonneg * szego_weight(np.arange(0, n_max + 1), alpha)
    return GaussianDraw(seed, lattice, alpha, ModeVector(lattice, c), g)


def dyadic_average(draw: GaussianDraw, j: int) -> float:
    """Shell average F_j = 2^{-j} sum_{2^j <= n < 2^{j+1}} |g_n|^2 over
    positive n only (conjugate pairs would just duplicate)."""
    lo, hi = 2 ** j, 2 ** (j + 1)
    if hi > draw.lattice.n_max:
        raise ValueError(
            f"shell [{lo}, {hi}) exceeds lattice n_max = {draw.lattice.n_max}"
        )
    m = draw.lattice.n_max
    shell = draw.gaussians[m + lo: m + hi]
    return float(np.sum(shell.real ** 2 + shell.imag ** 2) / 2 ** j)


def tail_statistic(draw: GaussianDraw, eps: float) -> float:
    """sup over n != 0 of <n>^{-eps} |g_n|."""
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    m = draw.lattice.n_max
    n = draw.lattice.n_values
    mags = np.abs(draw.gaussians) * bracket(n) ** (-eps)
    mags[m] = 0.0
    return float(np.max(mags))


# -- columnar text fixtures ------------------------------------------------

def modes_to_text(u: ModeVector) -> str:
    """Columnar text (n, Re, Im), one mode per line; repr-exact floats."""
    lines = ["# n re im"]
    for n, c in zip(u.lattice.n_values, u.coeffs):
        lines.append(f"{n} {float(c.real)!r} {float(c.imag)!r}")
    return "\n".join(lines) + "\n"


def modes_from_text(text: str, symmetry: str = "general") -> ModeVector:
    entries = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        n_str, re_str, im_str = line.split()
        entries[int(n_str)] = float(re_str) + 1j * float(im_str)
    n_max = max(abs(n) for n in entries)
    lattice = LatticeSpec(n_max, symmetry)
    c = np.zeros(lattice.size, dtype=np.complex128)
    for n, v in entries.items():
        c[n + n_max] = v
    return ModeVector(lattice, c)
