"""Sweep the two degenerating families and watch beta's regularized limits.

Separating: Omega_t couples two elliptic blocks through 2 pi i t; adding
4 log t to beta(Omega_t) produces a finite limit with a closed form in
||eta|| and Im(omega).  Non-separating: one diagonal entry climbs to i*inf;
the regularizer is 2 log|q| + 10 log(-log|q|).  Here one exactly-known
finite-height term (the det deficit) decays like 1/y and must be removed to
see the e^{-2 pi y} convergence underneath; the sweep does that before
extrapolating, and the demo prints both the raw and corrected gaps.
"""

import numpy as np

from deginv import (
    NonSeparatingFamily,
    SeparatingFamily,
    SweepGrid,
    UpperHalfPoint,
    chi10_leading_ratio,
    nonsep_det_deficit,
    run_sweep,
)

print("== separating family: omega1 = i, omega2 = 1.5i ==")
fam = SeparatingFamily(UpperHalfPoint(0, 1), UpperHalfPoint(0, 1.5))
grid = SweepGrid("separating", tuple(np.geomspace(1e-2, 1e-5, 7)))
report = run_sweep(grid, fam)
print(f"  {'t':>12s} {'beta + 4 log t':>18s} {'gap to rhs':>12s}")
for t, value in report.samples:
    print(f"  {t:12.3e} {value:18.12f} {value - report.closed_form_rhs:12.2e}")
print(f"  closed form        {report.closed_form_rhs:+.12f}")
print(f"  extrapolated limit {report.extrapolated_limit:+.12f}")
print(f"  discrepancy {report.discrepancy:.2e}, fitted order {report.estimated_order:.3f}")
ratio = chi10_leading_ratio("separating", fam, 1e-4)
print(f"  chi10 / leading term at t = 1e-4: {ratio:.6f} (tends to 1 like O(t))")

print("\n== non-separating family: omega = i, u = 0.2 + 0.3i ==")
nfam = NonSeparatingFamily(UpperHalfPoint(0, 1), 0.2 + 0.3j)
ngrid = SweepGrid("nonseparating", (2.0, 3.0, 4.0, 5.0, 6.0))
nreport = run_sweep(ngrid, nfam)
rhs = nreport.closed_form_rhs
print(f"  {'y':>4s} {'raw gap':>12s} {'det deficit':>12s} {'corrected gap':>14s}")
for y, value in nreport.samples:
    deficit = nonsep_det_deficit(nfam, y)
    print(f"  {y:4.1f} {value - rhs:12.4e} {deficit:12.4e} {value - deficit - rhs:14.2e}")
print("  the raw combination converges only like 1/y; the deficit is the whole")
print("  story, and removing it exposes the O(e^{-2 pi y}) remainder")
print(f"  closed form        {rhs:+.12f}")
print(f"  extrapolated limit {nreport.extrapolated_limit:+.12f}")
print(f"  discrepancy {nreport.discrepancy:.2e}")
nratio = chi10_leading_ratio("nonseparating", nfam, 5.0)
print(f"  chi10 / leading term at y = 5: |ratio - 1| = {abs(nratio - 1):.2e}")
