"""
Temperature as the overlap knob (two-atom proxy for a trapped cloud).

Colder atoms have a longer thermal wavelength, so neighbours a fixed distance
apart overlap more and the exchange effect grows.
"""
from twoatom.experiment import RB87, qualitative_temperature_scan

temps = [1e-9 * 2**i for i in range(12)]
print(f"{'T/nK':>8} {'lambda_T/um':>12} {'overlap':>10} {'boson':>8} {'fermion':>8}")
for r in qualitative_temperature_scan(temps, RB87, density_spacing=1e-6):
    print(f"{r.T * 1e9:8.0f} {r.lambda_T * 1e6:12.4f} {r.overlap_sq:10.3e} {r.ratio_boson:8.4f} {r.ratio_fermion:8.4f}")
