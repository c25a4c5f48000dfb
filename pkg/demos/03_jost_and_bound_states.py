"""Jost function, bound states, and spectral weights.

For the rank-one Jacobi perturbation b_1 = 1.5 the Jost polynomial is
1 - 1.5 z with one zero inside the disk; its Joukowski image is the lone
eigenvalue outside [-2, 2], and the residue at the zero gives the
eigenvalue weight.  All three are checked against an eigensolver.
The script also evaluates the boundary identity |u|^2 Im M = sin(theta)
and shows why decaying Verblunsky input never produces disk zeros.
"""

import numpy as np

from szegojost.analysis import canonical_weight_check
from szegojost.jost import e_from_z, jost_g_ell, m_finite_range, u_from_dinv
from szegojost.oprl import JacobiParams, carmona_density, spectral_measure_oracle
from szegojost.opuc import VerblunskyCoeffs

params = JacobiParams(a=[1.0], b=[1.5], free_after=1)
u = jost_g_ell(params)
print("Jost polynomial coefficients:", np.round(u.coeffs.real, 12))

z0 = 2.0 / 3.0
print(f"disk zero z0 = {z0:.6f}, eigenvalue E = z0 + 1/z0 = {e_from_z(z0):.6f}")

oracle = spectral_measure_oracle(params, 400)
outside = oracle.nodes[np.abs(oracle.nodes) > 2.0]
print(f"eigensolver finds E = {outside[0]:.6f}"
      f" with weight {oracle.weights[np.abs(oracle.nodes) > 2.0][0]:.6f}"
      f" (closed form 5/9 = {5/9:.6f})")

report = canonical_weight_check(params)
print("weight-vs-residue check passed:", report.passed,
      " worst relative deviation:", f"{report.value('worst_relative_deviation'):.2e}")

# on the unit circle the Jost modulus fixes the a.c. density
thetas = np.linspace(0.3, np.pi - 0.3, 5)
zb = np.exp(1j * thetas)
lhs = np.abs(u(zb)) ** 2 * m_finite_range(params, zb).imag
print("boundary identity |u|^2 Im M vs sin(theta):")
for t, v in zip(thetas, lhs):
    print(f"  theta = {t:.3f}:  {v:.12f}  vs  {np.sin(t):.12f}")

# the free first-order approximant has density 1/(pi (x^2 + 1))
xs = np.array([-1.0, 0.0, 1.0])
print("free Carmona density at -1, 0, 1:",
      np.round(carmona_density(JacobiParams.free(), 1, xs), 10),
      " closed form:", np.round(1.0 / (np.pi * (xs**2 + 1.0)), 10))

# decaying Verblunsky coefficients give a purely a.c. circle measure, so the
# Jost series built from 1/D is zero-free in the disk: no bound states
data = u_from_dinv(VerblunskyCoeffs.finitely_supported([0.9, -0.9]), order=32)
print("disk zeros from alpha = (0.9, -0.9):", data.zeros_in_disk,
      " eigenvalues:", data.eigenvalues)
