"""Frequency-space representation of periodic functions and the elementary
operations every other module builds on.

Conventions, fixed once for the whole package:

* A periodic function is ``u(x) = sum_n uhat(n) e^{inx}`` with no 2*pi
  factors anywhere.
* The Japanese bracket is ``<n> = 1 + |n|``.
* Coefficients live on the truncated lattice ``|n| <= n_max`` and are stored
  as a complex128 array of length ``2*n_max + 1`` with index ``n + n_max``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

REAL_MEAN_ZERO = "real_mean_zero"
ANALYTIC_NONNEG = "analytic_nonneg"
GENERAL = "general"

_SYMMETRIES = (REAL_MEAN_ZERO, ANALYTIC_NONNEG, GENERAL)


def bracket(n):
    """Japanese bracket <n> = 1 + |n| (scalar or array)."""
    return 1.0 + np.abs(n)


@dataclass(frozen=True)
class LatticeSpec:
    """Truncated frequency lattice |n| <= n_max with a symmetry class.

    ``real_mean_zero``: uhat(-n) = conj(uhat(n)) and uhat(0) = 0, both exact.
    ``analytic_nonneg``: uhat(n) = 0 for n < 0.
    ``general``: no constraint.
    """

    n_max: int
    symmetry: str = GENERAL

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        if self.symmetry not in _SYMMETRIES:
            raise ValueError(f"unknown symmetry class {self.symmetry!r}")

    @property
    def size(self) -> int:
        return 2 * self.n_max + 1

    @property
    def n_values(self) -> np.ndarray:
        return np.arange(-self.n_max, self.n_max + 1)


def _check_symmetry(lattice: LatticeSpec, coeffs: np.ndarray) -> None:
    m = lattice.n_max
    if lattice.symmetry == REAL_MEAN_ZERO:
        if coeffs[m] != 0:
            raise ValueError("real_mean_zero vector has nonzero mean coefficient")
        neg = coeffs[:m][::-1]          # n = -1 .. -n_max
        pos = coeffs[m + 1:]            # n = +1 .. +n_max
        if not np.array_equal(neg, np.conj(pos)):
            raise ValueError("real_mean_zero vector violates conjugate symmetry")
    elif lattice.symmetry == ANALYTIC_NONNEG:
        if np.any(coeffs[:m] != 0):
            raise ValueError("analytic_nonneg vector has nonzero negative-frequency modes")


@dataclass(frozen=True)
class ModeVector:
    """Complex Fourier coefficients on a truncated lattice.

    The coefficient array is copied on construction and frozen; all
    operations in this package are pure functions returning new vectors.
    """

    lattice: LatticeSpec
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.complex128)
        if arr.shape != (self.lattice.size,):
            raise ValueError(
                f"coefficient array has shape {arr.shape}, "
                f"lattice needs ({self.lattice.size},)"
            )
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError("non-finite coefficient")
        _check_symmetry(self.lattice, arr)
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    # -- constructors -------------------------------------------------
    @staticmethod
    def zeros(lattice: LatticeSpec) -> "ModeVector":
        return ModeVector(lattice, np.zeros(lattice.size, dtype=np.complex128))

    @staticmethod
    def delta(lattice: LatticeSpec, n: int, amplitude=1.0) -> "ModeVector":
        """Single-mode vector: amplitude at frequency n, zero elsewhere."""
        c = np.zeros(lattice.size, dtype=np.complex128)
        c[n + lattice.n_max] = amplitude
        return ModeVector(lattice, c)

    @staticmethod
    def from_pairs(lattice: LatticeSpec, pairs: dict) -> "ModeVector":
        c = np.zeros(lattice.size, dtype=np.complex128)
        for n, v in pairs.items():
            c[n + lattice.n_max] = v
        return ModeVector(lattice, c)

    # -- access -------------------------------------------------------
    @property
    def n_max(self) -> int:
        return self.lattice.n_max

    def coeff(self, n: int) -> complex:
        if abs(n) > self.n_max:
            raise IndexError(f"frequency {n} outside lattice |n| <= {self.n_max}")
        return complex(self.coeffs[n + self.n_max])

    def with_symmetry(self, symmetry: str) -> "ModeVector":
        """Same coefficients, relabelled symmetry class (checked)."""
        return ModeVector(LatticeSpec(self.n_max, symmetry), self.coeffs)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "ModeVector") -> "ModeVector":
        _require_same_lattice_size(self, other)
        sym = self.lattice.symmetry if self.lattice.symmetry == other.lattice.symmetry else GENERAL
        return ModeVector(LatticeSpec(self.n_max, sym), self.coeffs + other.coeffs)

    def __sub__(self, other: "ModeVector") -> "ModeVector":
        _require_same_lattice_size(self, other)
        sym = self.lattice.symmetry if self.lattice.symmetry == other.lattice.symmetry else GENERAL
        return ModeVector(LatticeSpec(self.n_max, sym), self.coeffs - other.coeffs)

    def __mul__(self, scalar) -> "ModeVector":
        sym = self.lattice.symmetry
        if sym == REAL_MEAN_ZERO and (np.iscomplexobj(scalar) and np.imag(scalar) != 0):
            sym = GENERAL
        return ModeVector(LatticeSpec(self.n_max, sym), self.coeffs * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True)
class NormParams:
    """Parameters of the weighted coefficient norms: Sobolev exponent s and
    Lebesgue index p, with the bracket convention <n> = 1 + |n| fixed."""

    s: float
    p: float = 2.0

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"Lebesgue index p must be >= 1, got {self.p}")


def _require_same_lattice_size(u: ModeVector, v: ModeVector) -> None:
    if u.n_max != v.n_max:
        raise ValueError(f"lattice mismatch: n_max {u.n_max} vs {v.n_max}")


def convolve(u: ModeVector, v: ModeVector) -> ModeVector:
    """Coefficient convolution w(n) = sum_{n1+n2=n} u(n1) v(n2), truncated.

    Output modes outside |n| <= n_max are discarded (Galerkin truncation).
    Direct summation via numpy's exact convolution; no aliasing enters.
    """
    _require_same_lattice_size(u, v)
    full = np.convolve(u.coeffs, v.coeffs)          # length 4*n_max + 1
    m = u.n_max
    out = full[m:3 * m + 1]
    if u.lattice.symmetry == ANALYTIC_NONNEG and v.lattice.symmetry == ANALYTIC_NONNEG:
        sym = ANALYTIC_NONNEG
        out = out.copy()
        out[:m] = 0.0   # exact zeros; direct convolution leaves them 0 already
    else:
        sym = GENERAL
    return ModeVector(LatticeSpec(m, sym), out)


def derivative(u: ModeVector) -> ModeVector:
    """d/dx in coefficients: n-th mode multiplied by i*n."""
    out = 1j * u.lattice.n_values * u.coeffs
    return ModeVector(u.lattice, out)


def project_szego(u: ModeVector) -> ModeVector:
    """Projection onto non-negative frequencies; output class analytic_nonneg."""
    out = u.coeffs.copy()
    out[:u.n_max] = 0.0
    return ModeVector(LatticeSpec(u.n_max, ANALYTIC_NONNEG), out)


def remove_mean(u: ModeVector) -> ModeVector:
    """Zero the n = 0 coefficient, all else unchanged."""
    out = u.coeffs.copy()
    out[u.n_max] = 0.0
    return ModeVector(u.lattice, out)


def sobolev_norm(u: ModeVector, s: float) -> float:
    """H^s norm ( sum_n <n>^{2s} |u(n)|^2 )^{1/2} with <n> = 1 + |n|."""
    w = bracket(u.lattice.n_values) ** (2.0 * s)
    return float(np.sqrt(np.sum(w * np.abs(u.coeffs) ** 2)))


def fl_norm(u: ModeVector, s: float, p: float) -> float:
    """Fourier-Lebesgue norm: l^p norm of <n>^s u(n); p = inf gives the sup."""
    if p < 1:
        raise ValueError(f"Lebesgue index p must be >= 1, got {p}")
    weighted = bracket(u.lattice.n_values) ** s * np.abs(u.coeffs)
    if np.isinf(p):
        return float(np.max(weighted))
    return float(np.sum(weighted ** p) ** (1.0 / p))


def sup_fourier(u: ModeVector) -> float:
    """max_n |u(n)|."""
    return float(np.max(np.abs(u.coeffs)))


def to_physical(u: ModeVector, m: int) -> np.ndarray:
    """Samples u(x_k), x_k = 2 pi k / m, k = 0..m-1.

    Requires m >= 2*n_max + 2 so that every retained mode occupies its own
    FFT bin (dealiased sampling).
    """
    if m < 2 * u.n_max + 2:
        raise ValueError(f"grid size {m} too small; need m >= {2 * u.n_max + 2}")
    bins = np.zeros(m, dtype=np.complex128)
    n = u.lattice.n_values
    bins[n % m] = u.coeffs
    return m * np.fft.ifft(bins)


def from_physical(samples: np.ndarray, lattice: LatticeSpec) -> ModeVector:
    """Inverse of to_physical on the retained modes."""
    samples = np.asarray(samples, dtype=np.complex128)
    m = samples.shape[0]
    if m < 2 * lattice.n_max + 2:
        raise ValueError(f"grid size {m} too small; need m >= {2 * lattice.n_max + 2}")
    bins = np.fft.fft(samples) / m
    n = lattice.n_values
    return ModeVector(LatticeSpec(lattice.n_max, GENERAL), bins[n % m])
