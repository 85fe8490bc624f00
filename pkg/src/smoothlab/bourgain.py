"""Discrete Bourgain-space calculus on space-time lattices: the X^{s,b},
Y^{s,b} and Z^{s,b} norms, the smooth time cutoff, the modulation-region
decomposition of the KdV bilinear term, and the Strichartz-ratio diagnostic.

Discretization: a field lives on frequencies |n| <= n_max and a uniform
time grid of m_t points on [-2T, 2T).  The dual grid carries tau_j =
2 pi j / (4T) in FFT ordering; temporal transforms use the convention
Fhat(tau) = dt * DFT and all tau integrals carry the measure dtau / (2 pi),
so the X^{0,0} norm reproduces the discrete space-time L2 norm and no
stray 2 pi factors appear.  Every value is a grid-dependent estimator; the
Nyquist demand of the n^3 phases (m_t >= 4 T n_max^3 / pi) caps practical
lattices at n_max around 24-32.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.fft import next_fast_len

from .spectral import REAL_MEAN_ZERO, LatticeSpec, ModeVector, bracket


@dataclass(frozen=True)
class TimeWindow:
    """Uniform grid of m_t samples on [-2T, 2T), m_t a power of two >= 16."""

    half_width: float
    m_t: int

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")
        if self.m_t < 16 or self.m_t & (self.m_t - 1) != 0:
            raise ValueError(f"m_t must be a power of two >= 16, got {self.m_t}")

    @property
    def dt(self) -> float:
        return 4.0 * self.half_width / self.m_t

    @property
    def times(self) -> np.ndarray:
        return -2.0 * self.half_width + self.dt * np.arange(self.m_t)

    @property
    def taus(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.m_t, d=self.dt)

    @property
    def dtau(self) -> float:
        return 2.0 * np.pi / (4.0 * self.half_width)

    def nyquist_adequate(self, n_max: int) -> bool:
        """Whether the dual grid resolves the fastest phase n_max^3."""
        return self.m_t >= 4.0 * self.half_width * n_max ** 3 / np.pi


@dataclass(frozen=True)
class SpaceTimeField:
    """Mode coefficients sampled on the window grid: values[n + n_max, k]."""

    lattice: LatticeSpec
    window: TimeWindow
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.complex128)
        if arr.shape != (self.lattice.size, self.window.m_t):
            raise ValueError(
                f"field shape {arr.shape} does not match "
                f"({self.lattice.size}, {self.window.m_t})"
            )
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError("non-finite field entry")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)


def eta_bump(x) -> np.ndarray:
    """Frozen cutoff profile: 1 on |x| <= 1, 0 on |x| >= 2 and
    exp(1 - 1/(1 - (|x| - 1)^2)) in between."""
    x = np.abs(np.asarray(x, dtype=np.float64))
    out = np.zeros_like(x)
    out[x <= 1.0] = 1.0
    mid = (x > 1.0) & (x < 2.0)
    y = x[mid] - 1.0
    out[mid] = np.exp(1.0 - 1.0 / (1.0 - y * y))
    return out


def cutoff_eta(T: float, window: TimeWindow) -> np.ndarray:
    """Samples of eta_T(t) = eta(t / T) on the window grid."""
    if T <= 0:
        raise ValueError("T must be positive")
    if 2.0 * T > 2.0 * window.half_width:
        raise ValueError(
            f"window [-{2 * window.half_width}, {2 * window.half_width}) "
            f"does not cover the cutoff support [-{2 * T}, {2 * T}]"
        )
    return eta_bump(window.times / T)


def type_one_field(u0: ModeVector, window: TimeWindow, T: float) -> SpaceTimeField:
    """Windowed linear evolution eta_T(t) exp(i n^3 t) uhat0(n): the rough
    random part of a candidate solution."""
    n3 = u0.lattice.n_values.astype(np.float64) ** 3
    phases = np.exp(1j * np.outer(n3, window.times))
    vals = cutoff_eta(T, window)[None, :] * phases * u0.coeffs[:, None]
    return SpaceTimeField(u0.lattice, window, vals)


def field_tau(F: SpaceTimeField) -> np.ndarray:
    """Temporal transform Fhat(n, tau_j) = dt * DFT, FFT ordering.

    The grid offset contributes only a unimodular phase per tau bin, which
    none of the norms below see.
    """
    return F.window.dt * np.fft.fft(F.values, axis=1)


def sigma_table(lattice: LatticeSpec, window: TimeWindow) -> np.ndarray:
    """Modulation weights sigma[n + n_max, j] = <tau_j - n^3> (always >= 1)."""
    n3 = lattice.n_values.astype(np.float64) ** 3
    return bracket(window.taus[None, :] - n3[:, None])


def xsb_norm(F: SpaceTimeField, s: float, b: float) -> float:
    """|| <n>^s <tau - n^3>^b Fhat ||_{l2_n L2_tau} with the dtau/(2 pi)
    measure; at (0, 0) this is the discrete space-time L2 norm."""
    fhat = np.abs(field_tau(F)) ** 2
    sig = sigma_table(F.lattice, F.window) ** (2.0 * b)
    wn = bracket(F.lattice.n_values) ** (2.0 * s)
    total = np.sum(wn[:, None] * sig * fhat) * F.window.dtau / (2.0 * np.pi)
    return float(np.sqrt(total))


def ysb_norm(F: SpaceTimeField, s: float, b: float) -> float:
    """l2_n of the L1_tau norms of <tau - n^3>^b Fhat, <n>^s weighted."""
    fhat = np.abs(field_tau(F))
    sig = sigma_table(F.lattice, F.window) ** b
    per_n = np.sum(sig * fhat, axis=1) * F.window.dtau / (2.0 * np.pi)
    wn = bracket(F.lattice.n_values) ** (2.0 * s)
    return float(np.sqrt(np.sum(wn * per_n ** 2)))


def zsb_norm(F: SpaceTimeField, s: float, b: float) -> float:
    """Z^{s,b} = X^{s,b} plus Y^{s,b-1/2}."""
    return xsb_norm(F, s, b) + ysb_norm(F, s, b - 0.5)


def region_decompose(n: int, n1: int, tau: float, tau1: float) -> int:
    """Index of the maximal modulation among
    sigma_0 = <tau - n^3>, sigma_1 = <tau1 - n1^3>,
    sigma_2 = <(tau - tau1) - (n - n1)^3>; ties go to the smallest index."""
    n2 = n - n1
    sig = (
        1.0 + abs(tau - float(n) ** 3),
        1.0 + abs(tau1 - float(n1) ** 3),
        1.0 + abs((tau - tau1) - float(n2) ** 3),
    )
    return int(np.argmax(sig))


def _masked_bilinear(F: SpaceTimeField):
    """All region-masked pieces of the weighted bilinear term at once.

    Returns (B, sigma0) where B[j_region, n + n_max, tau index] collects
    i n * sum over n = n1 + n2, tau = tau1 + tau2 (circular on the dual
    grid) of Fhat(n1, tau1) Fhat(n2, tau2) dtau/(2 pi), restricted to the
    (n1, tau1) contributions whose maximal modulation index is j_region.
    """
    m = F.lattice.n_max
    size = F.lattice.size
    m_t = F.window.m_t
    fhat = field_tau(F)
    sig = sigma_table(F.lattice, F.window)
    wrap = (np.arange(m_t)[:, None] - np.arange(m_t)[None, :]) % m_t
    B = np.zeros((3, size, m_t), dtype=np.complex128)
    for i_n, n in enumerate(range(-m, m + 1)):
        sig0 = sig[i_n][:, None]                      # over output tau_j
        for n1 in range(max(-m, n - m), min(m, n + m) + 1):
            i1 = n1 + m
            i2 = n - n1 + m
            sig1 = sig[i1][None, :]                   # over tau1 index k
            sig2 = sig[i2][wrap]                      # tau2 = tau_j - tau_k
            stack = np.broadcast_arrays(sig0, sig1, sig2)
            region = np.argmax(np.stack(stack), axis=0)
            prod = fhat[i1][None, :] * fhat[i2][wrap]
            for j in range(3):
                B[j, i_n] += np.sum(np.where(region == j, prod, 0.0), axis=1)
    B *= (1j * F.lattice.n_values.astype(np.float64))[None, :, None]
    B *= F.window.dtau / (2.0 * np.pi)
    return B, sig


def bilinear_term_direct(F: SpaceTimeField) -> np.ndarray:
    """The unrestricted weighted bilinear term computed down an independent
    route: spatial convolution per time sample, then the temporal transform.

    Equals the sum of the three region-masked pieces up to rounding, which
    is exactly the partition property of the masks (the dtau/(2 pi) measure
    times the dt transform weight collapses the circular tau convolution
    onto the transform of the pointwise product).
    """
    m = F.lattice.n_max
    conv = np.empty_like(F.values)
    for k in range(F.window.m_t):
        conv[:, k] = np.convolve(F.values[:, k], F.values[:, k])[m:3 * m + 1]
    G = SpaceTimeField(LatticeSpec(m, "general"), F.window, conv)
    return (1j * F.lattice.n_values.astype(np.float64))[:, None] * field_tau(G)


def restricted_bilinear_norm(F: SpaceTimeField, s: float, b: float, region=None) -> float:
    """X^{s,b} norm of the bilinear term d/dx(u^2) restricted to one
    modulation region, with the Duhamel weight 1/sigma_0 applied.

    ``region`` is 0, 1 or 2, or None for the unrestricted term.
    """
    if F.lattice.symmetry != REAL_MEAN_ZERO:
        raise ValueError("restricted_bilinear_norm expects real_mean_zero fields")
    B, sig = _masked_bilinear(F)
    term = B.sum(axis=0) if region is None else B[region]
    weighted = term / sig
    wn = bracket(F.lattice.n_values) ** (2.0 * s)
    total = np.sum(wn[:, None] * sig ** (2.0 * b) * np.abs(weighted) ** 2)
    return float(np.sqrt(total * F.window.dtau / (2.0 * np.pi)))


def restricted_bilinear_masses(F: SpaceTimeField, s: float, b: float, masked: bool = True):
    """Squared X^{s,b}-weighted mass of the Duhamel-weighted bilinear
    integrand over the convolution set {(n, n1, tau, tau1)}.

    With ``masked`` the mass is summed separately over each modulation
    region and a length-3 array comes back; the three add up to the
    ``masked=False`` total exactly, because the regions partition the set.
    """
    if F.lattice.symmetry != REAL_MEAN_ZERO:
        raise ValueError("restricted_bilinear_masses expects real_mean_zero fields")
    m = F.lattice.n_max
    m_t = F.window.m_t
    fhat = field_tau(F)
    sig = sigma_table(F.lattice, F.window)
    wrap = (np.arange(m_t)[:, None] - np.arange(m_t)[None, :]) % m_t
    wn = bracket(F.lattice.n_values) ** (2.0 * s)
    masses = np.zeros(3)
    total = 0.0
    scale = (F.window.dtau / (2.0 * np.pi)) ** 2
    for i_n, n in enumerate(range(-m, m + 1)):
        sig0 = sig[i_n][:, None]
        for n1 in range(max(-m, n - m), min(m, n + m) + 1):
            i1 = n1 + m
            i2 = n - n1 + m
            integrand = (
                wn[i_n] * sig0 ** (2.0 * b - 2.0) * float(n) ** 2
                * np.abs(fhat[i1][None, :] * fhat[i2][wrap]) ** 2 * scale
            )
            if not masked:
                total += float(np.sum(integrand))
                continue
            sig1 = sig[i1][None, :]
            sig2 = sig[i2][wrap]
            region = np.argmax(np.stack(np.broadcast_arrays(sig0, sig1, sig2)), axis=0)
            for j in range(3):
                masses[j] += float(np.sum(integrand[region == j]))
    return masses if masked else total


def strichartz_ratio(F: SpaceTimeField) -> float:
    """Discrete L4(x, t) norm over X^{0,1/3} norm; homogeneity degree zero.

    The spatial grid uses 4*n_max + 2 points so |u|^4 is integrated exactly
    for the retained trigonometric degree.
    """
    den = xsb_norm(F, 0.0, 1.0 / 3.0)
    if den == 0.0:
        raise ValueError("zero field: Strichartz ratio undefined")
    m_modes = F.lattice.n_max
    m_x = next_fast_len(4 * m_modes + 2)
    bins = np.zeros((m_x, F.window.m_t), dtype=np.complex128)
    bins[F.lattice.n_values % m_x, :] = F.values
    phys = m_x * np.fft.ifft(bins, axis=0)
    l4 = np.sum(np.abs(phys) ** 4) * (2.0 * np.pi / m_x) * F.window.dt
    return float(l4 ** 0.25 / den)
