import numpy as np
import pytest

from smoothlab.spectral import (
    ANALYTIC_NONNEG,
    GENERAL,
    REAL_MEAN_ZERO,
    LatticeSpec,
    ModeVector,
    NormParams,
    convolve,
    derivative,
    fl_norm,
    from_physical,
    project_szego,
    remove_mean,
    sobolev_norm,
    sup_fourier,
    to_physical,
)


def random_vector(n_max, seed, symmetry=GENERAL):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(2 * n_max + 1) + 1j * rng.standard_normal(2 * n_max + 1)
    if symmetry == REAL_MEAN_ZERO:
        c[n_max] = 0.0
        c[:n_max] = np.conj(c[n_max + 1:])[::-1]
    elif symmetry == ANALYTIC_NONNEG:
        c[:n_max] = 0.0
    return ModeVector(LatticeSpec(n_max, symmetry), c)


def convolve_oracle(u, v):
    """Independent double-sum: w(n) = sum over n1 of u(n1) v(n - n1)."""
    m = u.n_max
    out = np.zeros(2 * m + 1, dtype=complex)
    for n in range(-m, m + 1):
        for n1 in range(-m, m + 1):
            n2 = n - n1
            if abs(n2) <= m:
                out[n + m] += u.coeff(n1) * v.coeff(n2)
    return out


class TestLattice:
    def test_n_max_positive(self):
        with pytest.raises(ValueError):
            LatticeSpec(0)

    def test_unknown_symmetry(self):
        with pytest.raises(ValueError):
            LatticeSpec(4, "weird")

    def test_mean_zero_enforced_exactly(self):
        c = np.zeros(9, dtype=complex)
        c[4] = 1e-300
        with pytest.raises(ValueError):
            ModeVector(LatticeSpec(4, REAL_MEAN_ZERO), c)

    def test_conjugate_symmetry_enforced(self):
        c = np.zeros(9, dtype=complex)
        c[5] = 1.0 + 1j
        c[3] = 1.0 - 1.0000000001j
        with pytest.raises(ValueError):
            ModeVector(LatticeSpec(4, REAL_MEAN_ZERO), c)

    def test_nonneg_enforced(self):
        c = np.zeros(9, dtype=complex)
        c[0] = 1.0
        with pytest.raises(ValueError):
            ModeVector(LatticeSpec(4, ANALYTIC_NONNEG), c)

    def test_non_finite_rejected(self):
        c = np.zeros(9, dtype=complex)
        c[2] = np.nan
        with pytest.raises(ValueError):
            ModeVector(LatticeSpec(4), c)


class TestConvolve:
    def test_identity_element(self):
        lat = LatticeSpec(5)
        v = random_vector(5, 1)
        w = convolve(ModeVector.delta(lat, 0), v)
        assert np.array_equal(w.coeffs, v.coeffs)

    def test_single_mode_product(self):
        lat = LatticeSpec(4)
        w = convolve(ModeVector.delta(lat, 1), ModeVector.delta(lat, 2))
        expect = np.zeros(9, dtype=complex)
        expect[3 + 4] = 1.0
        assert np.array_equal(w.coeffs, expect)

    def test_against_double_sum_oracle(self):
        u = random_vector(8, 2)
        v = random_vector(8, 3)
        w = convolve(u, v)
        oracle = convolve_oracle(u, v)
        assert np.max(np.abs(w.coeffs - oracle)) < 1e-12 * np.max(np.abs(oracle))

    def test_bilinear_and_commutative(self):
        u, v, w = (random_vector(6, s) for s in (4, 5, 6))
        left = convolve(u + v, w)
        right = convolve(u, w) + convolve(v, w)
        assert np.allclose(left.coeffs, right.coeffs, atol=1e-12)
        assert np.allclose(convolve(u, v).coeffs, convolve(v, u).coeffs, atol=1e-13)

    def test_real_mean_zero_inputs_give_conjugate_symmetric_output(self):
        u = random_vector(8, 7, REAL_MEAN_ZERO)
        v = random_vector(8, 8, REAL_MEAN_ZERO)
        w = convolve(u, v)
        assert w.lattice.symmetry == GENERAL
        assert np.allclose(w.coeffs[:8], np.conj(w.coeffs[9:])[::-1], atol=1e-13)

    def test_analytic_class_closed(self):
        u = random_vector(8, 9, ANALYTIC_NONNEG)
        v = random_vector(8, 10, ANALYTIC_NONNEG)
        assert convolve(u, v).lattice.symmetry == ANALYTIC_NONNEG

    def test_lattice_mismatch(self):
        with pytest.raises(ValueError):
            convolve(random_vector(4, 0), random_vector(5, 0))


class TestDerivative:
    def test_single_mode(self):
        w = derivative(ModeVector.delta(LatticeSpec(4), 2))
        assert w.coeff(2) == 2j
        assert np.count_nonzero(w.coeffs) == 1

    def test_zero(self):
        lat = LatticeSpec(3)
        assert not np.any(derivative(ModeVector.zeros(lat)).coeffs)

    def test_preserves_real_mean_zero(self):
        for seed in range(5):
            u = random_vector(8, 20 + seed, REAL_MEAN_ZERO)
            w = derivative(u)
            assert w.lattice.symmetry == REAL_MEAN_ZERO


class TestProjections:
    def test_cosine(self):
        u = ModeVector.from_pairs(LatticeSpec(2), {1: 0.5, -1: 0.5})
        w = project_szego(u)
        assert w.coeff(1) == 0.5 and w.coeff(-1) == 0.0

    def test_idempotent_and_class(self):
        u = random_vector(6, 11)
        once = project_szego(u)
        twice = project_szego(once)
        assert once.lattice.symmetry == ANALYTIC_NONNEG
        assert np.array_equal(once.coeffs, twice.coeffs)

    def test_norm_nonincreasing_every_s(self):
        u = random_vector(10, 12)
        for s in (-1.0, -0.3, 0.0, 0.7, 2.0):
            assert sobolev_norm(project_szego(u), s) <= sobolev_norm(u, s)

    def test_remove_mean(self):
        lat = LatticeSpec(3)
        assert not np.any(remove_mean(ModeVector.delta(lat, 0)).coeffs)
        u = random_vector(5, 13, REAL_MEAN_ZERO)
        assert np.array_equal(remove_mean(u).coeffs, u.coeffs)
        v = random_vector(5, 14)
        assert np.array_equal(remove_mean(remove_mean(v)).coeffs, remove_mean(v).coeffs)


class TestNorms:
    def test_zero(self):
        z = ModeVector.zeros(LatticeSpec(4))
        assert sobolev_norm(z, 1.3) == 0.0
        assert fl_norm(z, 0.5, 3.0) == 0.0
        assert sup_fourier(z) == 0.0

    def test_single_mode_bracket(self):
        u = ModeVector.delta(LatticeSpec(4), 1)
        assert sobolev_norm(u, 1.0) == pytest.approx(2.0, rel=1e-15)

    def test_sobolev_direct_sum_oracle(self):
        u = random_vector(9, 15)
        s = -0.3
        oracle = np.sqrt(sum((1 + abs(n)) ** (2 * s) * abs(u.coeff(n)) ** 2
                             for n in range(-9, 10)))
        assert sobolev_norm(u, s) == pytest.approx(oracle, rel=1e-12)

    def test_fl_norm_single_mode(self):
        u = ModeVector.delta(LatticeSpec(3), 1)
        for p in (1.0, 2.0, 7.0, np.inf):
            assert fl_norm(u, 0.0, p) == pytest.approx(1.0)

    def test_fl_matches_sobolev_at_p2(self):
        u = random_vector(7, 16)
        assert fl_norm(u, 0.4, 2.0) == pytest.approx(sobolev_norm(u, 0.4), rel=1e-12)

    def test_fl_rejects_small_p(self):
        with pytest.raises(ValueError):
            fl_norm(random_vector(3, 17), 0.0, 0.5)
        with pytest.raises(ValueError):
            NormParams(s=0.0, p=0.9)

    def test_sup_fourier(self):
        u = ModeVector.delta(LatticeSpec(4), 3, 2.0 + 1j)
        assert sup_fourier(u) == pytest.approx(np.sqrt(5.0), rel=1e-15)
        v = random_vector(6, 18)
        assert sup_fourier(v) == pytest.approx(max(abs(v.coeff(n)) for n in range(-6, 7)))


class TestPhysicalGrid:
    def test_constant_mode(self):
        samples = to_physical(ModeVector.delta(LatticeSpec(2), 0), 8)
        assert np.allclose(samples, 1.0)

    def test_plane_wave_direct_evaluation(self):
        m = 16
        samples = to_physical(ModeVector.delta(LatticeSpec(3), 1), m)
        x = 2 * np.pi * np.arange(m) / m
        assert np.max(np.abs(samples - np.exp(1j * x))) < 1e-12

    def test_round_trip(self):
        u = random_vector(10, 19)
        back = from_physical(to_physical(u, 32), u.lattice)
        assert np.max(np.abs(back.coeffs - u.coeffs)) < 1e-12

    def test_grid_too_small(self):
        u = random_vector(8, 20)
        with pytest.raises(ValueError):
            to_physical(u, 17)
        with pytest.raises(ValueError):
            from_physical(np.zeros(17), u.lattice)

    def test_parseval(self):
        u = random_vector(12, 21)
        m = 2 * 12 + 2
        samples = to_physical(u, m)
        lhs = np.sum(np.abs(u.coeffs) ** 2)
        rhs = np.sum(np.abs(samples) ** 2) / m
        assert abs(lhs - rhs) < 1e-10 * lhs

    def test_kdv_class_real_samples(self):
        u = random_vector(8, 22, REAL_MEAN_ZERO)
        samples = to_physical(u, 20)
        assert np.max(np.abs(samples.imag)) < 1e-12
