"""
Delay-controlled release of two Rb-87 atoms, with emission counting.

The later atom lags in position and velocity, so the release delay tunes the
overlap. Each run absorbs with the computed probability, and emissions are
counted with detection efficiency eta.
"""
from dataclasses import replace

from twoatom import Statistics
from twoatom.experiment import DelayScanConfig, run_delay_scan

base = DelayScanConfig(shots=20_000, seed=3)
for stats in Statistics:
    for finals in ("default", "orthogonal"):
        print(f"\n{stats.name.lower()}, {finals} final packets")
        print(f"{'delay/us':>8} {'overlap':>8} {'p':>8} {'counts':>7}  status")
        for r in run_delay_scan(replace(base, stats=stats, finals=finals))[::4]:
            print(f"{r.delay * 1e6:8.0f} {r.overlap_sq:8.4f} {r.p_analytic:8.4f} {r.detected:7d}  {r.status} {r.regime}")
