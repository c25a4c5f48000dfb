"""Measure ingestion round trips.

Builds a circle measure from known Verblunsky coefficients, runs the
orthogonalization recurrence on the sampled weight, and recovers the
coefficients.  Then does the line-side analogue: a declarative measure
document is discretized and its Jacobi rows are compared against the
direct coefficient map.  Ends with a weight the ingester must refuse.
"""

import numpy as np

from szegojost.errors import PreconditionError
from szegojost.jost import geronimus_map
from szegojost.measures import MeasureSpec, ingest_circle, ingest_line
from szegojost.opuc import VerblunskyCoeffs, bernstein_szego

# circle: weight 1/|phi_3|^2 carries exactly these three coefficients
alphas = np.array([0.4, -0.25, 0.1])
measure = bernstein_szego(VerblunskyCoeffs.finitely_supported(alphas), 3, 4096)
recovered = ingest_circle(measure, 3)
print("circle round trip")
print("  alpha in :", alphas)
print("  alpha out:", np.round(recovered.alpha.real, 12))
print(f"  worst gap: {np.max(np.abs(recovered.alpha - alphas)):.3e}")

# line: the szego-mapped family is the pushforward of the circle weight
spec = MeasureSpec(kind="line", family="szego-mapped", family_params=(0.3, -0.2))
params = ingest_line(spec, 4)
direct = geronimus_map(VerblunskyCoeffs.finitely_supported([0.3, -0.2]))
print("line ingestion vs direct map")
for n in range(1, 5):
    print(f"  a_{n} = {params.a_entry(n):+.10f} vs {direct.a_entry(n):+.10f}"
          f"   b_{n} = {params.b_entry(n):+.10f} vs {direct.b_entry(n):+.10f}")

# the semicircle weight is the free case: a = 1, b = 0
free = ingest_line(MeasureSpec(kind="line", family="semicircle-free"), 3)
print("semicircle rows:", np.round(free.a, 10), np.round(free.b, 10))

# a flat weight on [-2, 2] fails the endpoint integrability test
try:
    ingest_line(MeasureSpec(kind="line", family="uniform"), 3)
except PreconditionError as exc:
    print("uniform weight refused:", exc)
