"""
Cross-check in the full two-particle space.

The analytic amplitudes are products of single-atom matrix elements. The
oracle instead builds the symmetrised two-atom vector, applies U x U as a
dense matrix and projects onto each final state. Both must agree.
"""
from twoatom import Statistics
from twoatom.oracle import run_suite

for stats in Statistics:
    reports = run_suite(n_instances=20, stats=stats, n_points=64, seed=7)
    worst = max(r.max_residual for r in reports)
    print(f"{stats.name.lower():8s} {sum(r.passed for r in reports)}/20 PASS, worst residual {worst:.2e}")

r = reports[0]
print("one instance:", {k: round(v, 3) if isinstance(v, float) else v for k, v in r.params.items()})
