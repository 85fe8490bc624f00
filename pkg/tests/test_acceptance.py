"""Acceptance gate: one test per primary criterion, each printing a
pass/fail line with its measured numbers and runtime.

Run with `pytest tests/test_acceptance.py -v -s` to see the report.
"""

import time

import numpy as np
import pytest

from smoothlab.evolution import IntegratorConfig, evolve_kdv, evolve_szego, smoothing_profile
from smoothlab.experiments import ExperimentConfig, run
from smoothlab.kdv import (
    expected_paired_sum,
    harmonic_number,
    kdv_constants,
    l2_bound_scan,
    paired_sum_divergence,
    paired_sum_from_gaussians,
    second_iterate_closed_form,
    second_iterate_quadrature,
)
from smoothlab.bourgain import (
    SpaceTimeField,
    TimeWindow,
    _masked_bilinear,
    bilinear_term_direct,
    restricted_bilinear_masses,
    strichartz_ratio,
    type_one_field,
    xsb_norm,
)
from smoothlab.sampling import derive_trial_seed, sample_kdv_data, sample_szego_data
from smoothlab.spectral import GENERAL, REAL_MEAN_ZERO, LatticeSpec, ModeVector, sobolev_norm
from smoothlab.statsum import fit_log_growth
from smoothlab.szego import wick_expectation_exact, wick_expectation_mc


def report(number, name, ok, detail, elapsed, budget):
    status = "PASS" if ok and elapsed < budget else "FAIL"
    print(f"[{status}] criterion {number} ({name}): {detail} [{elapsed:.1f}s / "
          f"budget {budget}s]")
    assert ok, f"criterion {number}: {detail}"
    assert elapsed < budget, f"criterion {number} exceeded its {budget}s budget"


def test_criterion_1_algebraic_identities():
    t0 = time.perf_counter()
    n1, n2 = np.meshgrid(np.arange(-64, 65), np.arange(-64, 65), indexing="ij")
    n = n1 + n2
    ok = np.array_equal(n ** 3 - n1 ** 3 - n2 ** 3, 3 * n * n1 * n2)
    r = np.arange(-32, 33)
    a2, a3, a4 = np.meshgrid(r, r, r, indexing="ij")
    m = a2 + a3 + a4
    ok &= np.array_equal(
        m ** 3 - a2 ** 3 - a3 ** 3 - a4 ** 3,
        3 * (a2 + a3) * (a3 + a4) * (a4 + a2),
    )
    report(1, "algebraic identities", bool(ok),
           "cubic and second-order resonance identities exact on the full ranges",
           time.perf_counter() - t0, 5.0)


def test_criterion_2_constants():
    t0 = time.perf_counter()
    c = kdv_constants()
    checks = {
        "root": abs(c.a0 ** 2 + (5.0 / 3.0) * c.a0 - 1.0) < 1e-15,
        "alpha0": abs(c.alpha0 - (c.a0 - 0.5)) < 1e-15,
        "s0": abs(c.s0 - (c.alpha0 - 0.5)) < 1e-15,
        "a0_printed": abs(c.a0 - 0.4684) < 5e-5,
        "s0_printed": abs(c.s0 - (-0.5316)) < 5e-5,
    }
    report(2, "constants", all(checks.values()),
           f"a0 = {c.a0:.6f}, s0 = {c.s0:.6f}; {checks}",
           time.perf_counter() - t0, 5.0)


def test_criterion_3_second_iterate_oracle():
    t0 = time.perf_counter()
    errs = []
    for k in range(10):
        u0 = sample_kdv_data(16, 3.0, derive_trial_seed(0, k)).coeffs
        closed = second_iterate_closed_form(u0, 0.3)
        quad = second_iterate_quadrature(u0, 0.3, 2048)
        errs.append(sobolev_norm(closed - quad, 0.0) / sobolev_norm(closed, 0.0))
    worst = max(errs)
    report(3, "second-iterate oracle equivalence", worst < 1e-8,
           f"max relative L2 error over 10 seeds = {worst:.2e} (< 1e-8)",
           time.perf_counter() - t0, 10.0)


def test_criterion_4_l2_boundedness():
    t0 = time.perf_counter()
    ladder = [16, 32, 64, 128, 256, 512, 1024]
    det = l2_bound_scan(-0.5, ladder, t=1.0, mode="deterministic")
    det_ratio = det.extras["plateau_ratio"]
    rnd = l2_bound_scan(-0.5, ladder, t=1.0, mode="random", trials=32, master_seed=0)
    rnd_ratio = rnd.extras["mean_seed_ratio"]
    ok = 0.98 <= det_ratio <= 1.05 and 0.95 <= rnd_ratio <= 1.10
    report(4, "L2 boundedness of the second iterate", ok,
           f"deterministic last-two-rung ratio = {det_ratio:.5f} in [0.98, 1.05]; "
           f"random mean seed ratio = {rnd_ratio:.5f} in [0.95, 1.10]",
           time.perf_counter() - t0, 60.0)


def test_criterion_5_paired_divergence():
    t0 = time.perf_counter()
    stub_ok = True
    for n_max in (4, 8, 16):
        g = np.full(n_max, 1.0 + 1.0j)
        stub_ok &= paired_sum_from_gaussians(g) == (4.0 * harmonic_number(n_max)) ** 2
    vals = [paired_sum_divergence(8, derive_trial_seed(9, k)) for k in range(1000)]
    exact = expected_paired_sum(8)
    mc_gap = abs(np.mean(vals) - exact) / exact
    mono = all(
        all(b > a for a, b in zip(ds, ds[1:]))
        for ds in (
            [paired_sum_divergence(n, derive_trial_seed(10, k)) for n in (4, 8, 16, 32)]
            for k in range(50)
        )
    )
    ok = stub_ok and mc_gap < 0.10 and mono
    report(5, "paired-sum divergence", ok,
           f"stub exact = {stub_ok}; MC gap at N=8 over 1000 seeds = {mc_gap:.3%} "
           f"(< 10%); strictly increasing per seed = {mono}",
           time.perf_counter() - t0, 30.0)


def test_criterion_6_szego_dichotomy():
    t0 = time.perf_counter()
    ladder = [32, 64, 128, 256, 512]
    grow = [wick_expectation_exact(1.0, 0.5, n).exact_expectation for n in ladder]
    incr = np.diff(grow)
    fit = fit_log_growth(ladder, grow)
    # growth side: strictly increasing, positive fitted log rate, and every
    # doubling adds at least the witnessed rate c * log 2 with
    # c = min(increments) / log 2 > 0; no plateau (last ratio stays > 1.02)
    c_witness = float(np.min(incr)) / np.log(2.0)
    grow_ok = (
        np.all(incr > 0.0)
        and fit.slope > 0.0
        and c_witness > 0.0
        and grow[-1] / grow[-2] > 1.02
    )
    flat = [wick_expectation_exact(1.0, 0.25, n).exact_expectation for n in ladder]
    flat_ratio = flat[-1] / flat[-2]
    flat_ok = abs(flat_ratio - 1.0) <= 0.02
    mc_ok = True
    mc_detail = []
    for n_max in (8, 16):
        exact = wick_expectation_exact(1.0, 0.5, n_max).exact_expectation
        mc, se = wick_expectation_mc(1.0, 0.5, n_max, 64, master_seed=0)
        mc_ok &= abs(mc - exact) <= 3.0 * se
        mc_detail.append(f"n={n_max}: |mc-exact|/se = {abs(mc - exact) / se:.2f}")
    anchor = wick_expectation_exact(1.0, 0.5, 0).exact_expectation
    gen = np.random.Generator(np.random.Philox(key=np.array([5, 0], dtype=np.uint64)))
    z = gen.standard_normal((100_000, 2))
    mag6 = (z[:, 0] ** 2 + z[:, 1] ** 2) ** 3
    anchor_ok = anchor == pytest.approx(48.0, rel=1e-14) and (
        abs(mag6.mean() - 48.0) <= 3.0 * mag6.std(ddof=1) / np.sqrt(mag6.size)
    )
    ok = grow_ok and flat_ok and mc_ok and anchor_ok
    report(6, "Szego growth dichotomy", ok,
           f"s=0.5: increments {np.round(incr, 2).tolist()}, fitted c = "
           f"{fit.slope:.1f}, witness c = {c_witness:.1f} > 0; s=0.25 last ratio = "
           f"{flat_ratio:.4f} (within 2%); MC {mc_detail}; anchor = {anchor}",
           time.perf_counter() - t0, 120.0)


def test_criterion_7_conservation():
    t0 = time.perf_counter()
    n_max = 128
    c = np.zeros(2 * n_max + 1, dtype=complex)
    n = np.arange(1, n_max + 1, dtype=float)
    w = np.exp(-n)
    c[n_max + 1:] = w
    c[:n_max] = w[::-1]
    u0 = ModeVector(LatticeSpec(n_max, REAL_MEAN_ZERO), c)
    traj = evolve_kdv(u0, IntegratorConfig(dt=1e-3, t_final=0.1, record_every=25))
    l2 = traj.conserved["l2_sq"]
    kdv_drift = abs(np.sqrt(l2[-1] / l2[0]) - 1.0)
    mean_ok = bool(np.all(traj.conserved["mean"] == 0.0))
    us = sample_szego_data(n_max, 1.0, 11).coeffs
    trs = evolve_szego(us, IntegratorConfig(dt=1e-3, t_final=0.1, scheme="rk4",
                                            record_every=25))
    mass = trs.conserved["l2_sq"]
    hh = trs.conserved["h_half_sq"]
    sz_mass = abs(mass[-1] / mass[0] - 1.0)
    sz_hh = abs(hh[-1] / hh[0] - 1.0)
    ok = kdv_drift < 1e-6 and mean_ok and sz_mass < 1e-6 and sz_hh < 1e-6
    report(7, "conservation", ok,
           f"KdV L2 drift = {kdv_drift:.1e}, mean exact = {mean_ok}; Szego mass "
           f"drift = {sz_mass:.1e}, weighted-H^(1/2) drift = {sz_hh:.1e} (all < 1e-6)",
           time.perf_counter() - t0, 30.0)


def test_criterion_8_smoothing_dichotomy():
    t0 = time.perf_counter()
    kdv_gaps, sz_gaps = [], []
    for k in range(32):
        u0 = sample_kdv_data(256, 0.0, derive_trial_seed(0, k)).coeffs
        traj = evolve_kdv(u0, IntegratorConfig(dt=1e-4, t_final=0.01,
                                               scheme="exponential_picard2",
                                               record_every=10 ** 9))
        p_lin, p_nl = smoothing_profile(traj, traj.times[-1], "kdv")
        kdv_gaps.append(p_lin - p_nl)
        us = sample_szego_data(256, 1.0, derive_trial_seed(0, k)).coeffs
        trs = evolve_szego(us, IntegratorConfig(dt=1e-4, t_final=0.01, scheme="rk4",
                                                record_every=10 ** 9))
        q_lin, q_nl = smoothing_profile(trs, trs.times[-1], "szego")
        sz_gaps.append(q_lin - q_nl)
    kdv_med = float(np.median(kdv_gaps))
    sz_med = float(np.median(sz_gaps))
    ok = kdv_med >= 0.3 and sz_med <= 0.1
    report(8, "smoothing dichotomy", ok,
           f"KdV median p_lin - p_nl = {kdv_med:.3f} (>= 0.3: nonlinear part "
           f"smoother); Szego median = {sz_med:.3f} (<= 0.1: no gain)",
           time.perf_counter() - t0, 120.0)


def test_criterion_9_xsb_estimator():
    t0 = time.perf_counter()
    # quadrature convergence under m_t doubling
    u0 = sample_kdv_data(16, 0.0, derive_trial_seed(0, 0)).coeffs
    quad_vals = [
        xsb_norm(type_one_field(u0, TimeWindow(0.01, m_t), 0.01), -0.5, 0.5)
        for m_t in (256, 512)
    ]
    quad_ok = abs(quad_vals[1] - quad_vals[0]) < 0.01 * quad_vals[0]
    # b-monotonicity on 100 random fields
    mono_ok = True
    for seed in range(100):
        rng = np.random.default_rng(seed)
        win = TimeWindow(0.05, 32)
        vals = rng.standard_normal((9, 32)) + 1j * rng.standard_normal((9, 32))
        F = SpaceTimeField(LatticeSpec(4, GENERAL), win, vals)
        bs = sorted(rng.uniform(-1.0, 1.0, 3))
        xs = [xsb_norm(F, 0.0, b) for b in bs]
        mono_ok &= xs[0] <= xs[1] <= xs[2]
    # region masks partition the convolution set exactly
    Ft = type_one_field(sample_kdv_data(6, 0.0, derive_trial_seed(0, 1)).coeffs,
                        TimeWindow(0.05, 64), 0.05)
    masses = restricted_bilinear_masses(Ft, -0.5, -0.5)
    total = restricted_bilinear_masses(Ft, -0.5, -0.5, masked=False)
    B, _ = _masked_bilinear(Ft)
    direct = bilinear_term_direct(Ft)
    part_ok = (
        abs(masses.sum() - total) < 1e-10 * total
        and np.linalg.norm(B.sum(axis=0) - direct) < 1e-10 * np.linalg.norm(direct)
    )
    # discrete max-modulation bound, exhaustive at |n_i| <= 32
    r = np.arange(-32, 33)
    n1g, n2g = np.meshgrid(r, r, indexing="ij")
    ng = n1g + n2g
    sigma2 = 1.0 + np.abs(3.0 * ng * n1g * n2g)
    maxmax_ok = bool(np.all(3.0 * np.maximum(1.0, sigma2) >= 1.0 + np.abs(3.0 * ng * n1g * n2g)))
    # Strichartz ratio growth under lattice doubling
    win = TimeWindow(0.01, 1024)
    maxima = {}
    for n_max in (16, 32):
        ratios = [
            strichartz_ratio(type_one_field(
                sample_kdv_data(n_max, 0.0, derive_trial_seed(0, k)).coeffs, win, 0.01))
            for k in range(100)
        ]
        maxima[n_max] = max(ratios)
    stri_ok = maxima[32] < 1.05 * maxima[16]
    ok = quad_ok and mono_ok and part_ok and maxmax_ok and stri_ok
    report(9, "X^{s,b} estimator", ok,
           f"quadrature change {abs(quad_vals[1] - quad_vals[0]) / quad_vals[0]:.2%} "
           f"(< 1%); b-monotone on 100 fields = {mono_ok}; partition exact = "
           f"{part_ok}; max-modulation bound exhaustive = {maxmax_ok}; Strichartz "
           f"max 16 -> 32 factor = {maxima[32] / maxima[16]:.4f} (< 1.05)",
           time.perf_counter() - t0, 60.0)


def test_criterion_10_determinism(tmp_path):
    t0 = time.perf_counter()
    texts = []
    for threads, sub in ((1, "a"), (1, "b"), (4, "c")):
        out = tmp_path / sub
        run(ExperimentConfig(experiment="szego_growth", n_ladder=(4,), trials=1,
                             master_seed=7, out_dir=str(out), threads=threads))
        texts.append((out / "szego_growth.csv").read_bytes())
    ok = texts[0] == texts[1] == texts[2]
    report(10, "determinism", ok,
           "CSV byte-identical across repeated runs and threads in {1, 4}",
           time.perf_counter() - t0, 30.0)
