"""Walk through the KdV second iterate: the closed form from the resonance
identity, its agreement with direct quadrature, and the L2 plateau that
shows the iterate stays bounded for data decaying like |n|^{-1/2}.
"""

import numpy as np

from smoothlab import (
    l2_bound_scan,
    sample_kdv_data,
    second_iterate_closed_form,
    second_iterate_quadrature,
    sobolev_norm,
)

print("== closed form vs Simpson quadrature ==")
u0 = sample_kdv_data(16, 3.0, seed=42).coeffs
t = 0.3
closed = second_iterate_closed_form(u0, t)
for steps in (256, 512, 1024, 2048):
    quad = second_iterate_quadrature(u0, t, steps)
    rel = sobolev_norm(closed - quad, 0.0) / sobolev_norm(closed, 0.0)
    print(f"  steps = {steps:5d}: relative L2 gap = {rel:.3e}")
print("  (each doubling gains ~16x: the quadrature is 4th order, the")
print("   closed form is exact)")

print()
print("== L2 boundedness across the lattice ladder ==")
ladder = [16, 32, 64, 128, 256, 512, 1024]
summ = l2_bound_scan(-0.5, ladder, t=1.0, mode="deterministic")
for rung in summ.rungs:
    print(f"  n_max = {rung.n_value:5d}: ||second iterate||_L2 = {rung.mean:.6f}")
print(f"  last-two-rung ratio = {summ.extras['plateau_ratio']:.6f} (plateau: the")
print("  iterate converges although the data only decays like |n|^{-1/2})")
