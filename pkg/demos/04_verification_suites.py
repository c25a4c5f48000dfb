"""Running the five verification suites and the singularity probes.

Each suite takes coefficient input, builds both sides of an analyticity
statement, and reports measured radii against the predicted ones.  The
geometric family alpha_n = 0.5 * 2^-n exercises every suite; the gset
and Pade probes then locate the actual singularities of S and 1/D.
"""

import numpy as np

from szegojost.analysis import (
    canonical_weight_check,
    gset,
    pade_pole_probe,
    verify_damanik_simon,
    verify_jost_b_combination,
    verify_nevai_totik,
    verify_r_minus_s,
)
from szegojost.oprl import JacobiParams
from szegojost.opuc import VerblunskyCoeffs
from szegojost.szego import dinv_from_alphas, s_series

alphas = VerblunskyCoeffs(alpha=0.5 * 2.0 ** -np.arange(97.0))

for name, report in [
    ("nevai-totik", verify_nevai_totik(alphas, order=64)),
    ("damanik-simon", verify_damanik_simon(alphas, order=64)),
    ("r-minus-s", verify_r_minus_s(alphas, order=96)),
    ("jost-combination", verify_jost_b_combination(alphas, order=64)),
    ("canonical-weights", canonical_weight_check(
        JacobiParams(a=[1.0], b=[1.5], free_after=1))),
]:
    print(f"{name}: {'pass' if report.passed else 'FAIL'}")
    for key, value in report.measured:
        print(f"    {key} = {value}")
    if report.notes:
        print(f"    notes: {report.notes}")

# where can singularities live?  products of reflected eigenvalue images
gs = gset([2.0], 40.0)
print("candidate singularity set for generator 2, cutoff 40:",
      [f"{e.real:g}" for e in gs.elements])

# Pade probes sit the actual poles of S and 1/D on that set
s_pole = pade_pole_probe(s_series(alphas, order=64), (8, 1))[0]
print(f"S probe: pole at {s_pole.z.real:.8f}, stable={s_pole.stable}")
for p in pade_pole_probe(dinv_from_alphas(alphas, order=64), (12, 2)):
    print(f"1/D probe: pole at {p.z.real:.6f}, stable={p.stable},"
          f" distance to gset {gs.nearest(p.z):.2e}")
