import math
from dataclasses import replace

import numpy as np
import pytest

from twoatom import NonpositiveTemperature, PulseModel, Statistics, inner
from twoatom.exchange import ratio_law
from twoatom.experiment import (
    RB87,
    AtomSpecies,
    DelayScanConfig,
    count_detections,
    delay_to_states,
    qualitative_temperature_scan,
    run_delay_scan,
    thermal_overlap,
    thermal_wavelength,
)

# CODATA 2018 exact SI values
H = 6.62607015e-34
KB = 1.380649e-23


class TestThermalWavelength:
    def test_rb87_one_microkelvin(self):
        oracle = H / math.sqrt(2 * math.pi * 1.44316e-25 * KB * 1e-6)
        lam = thermal_wavelength(1e-6, RB87)
        assert lam == pytest.approx(oracle, rel=1e-12)
        assert lam == pytest.approx(1.87e-7, rel=5e-3)

    def test_square_root_laws(self):
        lam = thermal_wavelength(3e-6, RB87)
        assert thermal_wavelength(12e-6, RB87) == pytest.approx(lam / 2, rel=1e-12)
        heavy = AtomSpecies("x4", 4 * RB87.mass)
        assert thermal_wavelength(3e-6, heavy) == pytest.approx(lam / 2, rel=1e-12)

    @pytest.mark.parametrize("T", [0.0, -1.0])
    def test_nonpositive(self, T):
        with pytest.raises(NonpositiveTemperature):
            thermal_wavelength(T)


class TestDelayToStates:
    def test_zero_delay_equal(self):
        phi, psi = delay_to_states(DelayScanConfig(), 0.0)
        assert abs(inner(phi, psi)) ** 2 == pytest.approx(1, abs=1e-12)

    def test_pure_displacement(self):
        # g = 0 and v_mean chosen so that dx = 2 sigma0 at delay 1e-4
        cfg = DelayScanConfig(g_accel=0.0, v_mean=2e-6 / 1e-4, delays=(1e-4,))
        phi, psi = delay_to_states(cfg, 1e-4)
        assert abs(inner(phi, psi)) ** 2 == pytest.approx(math.exp(-1), abs=1e-9)

    def test_overlap_matches_gaussian_formula_and_is_monotone(self):
        cfg = DelayScanConfig()
        xs = []
        for d in cfg.delays:
            phi, psi = delay_to_states(cfg, d)
            dx, dk = cfg.offsets(d)
            x = abs(inner(phi, psi)) ** 2
            assert x == pytest.approx(math.exp(-(dx**2) / 4 - dk**2), abs=1e-9)
            xs.append(x)
        assert np.all(np.diff(xs) <= 1e-15)
        assert xs[0] == pytest.approx(1) and xs[-1] < 0.01


class TestRunDelayScan:
    def test_determinism(self):
        cfg = DelayScanConfig(seed=42)
        assert run_delay_scan(cfg) == run_delay_scan(cfg)
        other = run_delay_scan(replace(cfg, seed=43))
        assert [r.detected for r in other] != [r.detected for r in run_delay_scan(cfg)]

    def test_zero_efficiency(self):
        assert all(r.detected == 0 for r in run_delay_scan(DelayScanConfig(eta=0.0)))

    def test_routing(self):
        b = run_delay_scan(DelayScanConfig(delays=(0.0, 5e-5)))
        assert b[0].status == "equal-state" and b[1].status == "ok"
        f = run_delay_scan(DelayScanConfig(delays=(0.0, 5e-5), stats=Statistics.FERMION))
        assert f[0].status == "PauliViolation" and f[0].detected == 0
        assert f[1].status == "ok"

    def test_counts_bounded(self):
        for r in run_delay_scan(DelayScanConfig(shots=500)):
            assert 0 <= r.detected <= r.shots

    def test_monotone_link_in_crossed_negligible_regime(self):
        delays = tuple(np.linspace(1e-5, 2e-4, 20))
        for stats in (Statistics.BOSON, Statistics.FERMION):
            recs = run_delay_scan(DelayScanConfig(delays=delays, stats=stats, finals="orthogonal"))
            assert all(r.regime == "crossed-negligible" for r in recs)
            x = np.array([r.overlap_sq for r in recs])
            p = np.array([r.p_analytic for r in recs])
            assert np.all(np.diff(x) <= 0)
            if stats is Statistics.BOSON:
                assert np.all(np.diff(p) >= 0)
            else:
                assert np.all(np.diff(p) <= 1e-12)

    def test_binomial_concentration(self):
        p, shots, eta = 0.3, 100_000, 0.7
        hits = 0
        for seed in range(100):
            k = count_detections(p, shots, eta, np.random.default_rng(seed))
            hits += abs(k / (shots * eta) - p) <= 3 * math.sqrt(p * (1 - p) / shots) / eta
        assert hits >= 99


class TestTemperatureScan:
    def test_columns_and_limits(self):
        T = [1e-9 * 2**i for i in range(14)]
        rows = qualitative_temperature_scan(T, RB87, 1e-6)
        for r in rows:
            assert r.lambda_T == thermal_wavelength(r.T, RB87)
            assert r.ratio_boson <= 1 + 1e-12 and r.ratio_fermion >= 1 - 1e-12
            assert r.ratio_boson == pytest.approx(ratio_law(r.overlap_sq, Statistics.BOSON), rel=1e-6)
            assert r.ratio_fermion == pytest.approx(ratio_law(r.overlap_sq, Statistics.FERMION), rel=1e-6)
        hot = rows[-1]
        assert hot.lambda_T < 1e-6 / 5
        assert hot.ratio_boson == pytest.approx(1, abs=1e-6)
        assert hot.ratio_fermion == pytest.approx(1, abs=1e-6)

    def test_overlap_proxy(self):
        lam = 2e-6
        sigma_t = lam / math.sqrt(8 * math.pi)
        assert thermal_overlap(lam, 1e-6) == pytest.approx(math.exp(-1e-12 / (4 * sigma_t**2)))

    def test_invalid(self):
        with pytest.raises(NonpositiveTemperature):
            qualitative_temperature_scan([1e-6, 0.0], RB87, 1e-6, PulseModel(0.5))
