"""Statistical model of the two-atom release / absorption / emission-counting experiment.

SI units live only here. The kernel works in units where hbar = 1, the
packet width ``sigma0`` is the length unit and the atomic mass is 1, so the
kernel time unit is ``m sigma0**2 / hbar``.

Overlap control: two atoms leave the trap after two release pulses separated
by ``delay``. At the laser the earlier atom is ahead by
``dx = v_mean*delay + g*delay**2/2`` and faster by ``dk = m*g*delay/hbar``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import constants

from .errors import (
    IndistinguishableFinals,
    NonpositiveTemperature,
    PacketTruncated,
    PauliViolation,
    ZeroAmplitude,
)
from .evolution import PulseModel
from .exchange import (
    EPS_DISTINGUISH,
    EPS_PAULI,
    Statistics,
    TwoParticleProblem,
    equal_state_probability,
    overlap_sq,
    probability_decomposition,
    ratio,
    total_absorption_probability,
)
from .hilbert import CMWaveFunction, GridSpec, make_gaussian


@dataclass(frozen=True)
class AtomSpecies:
    name: str
    mass: float  # kg

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError("mass must be positive")


RB87 = AtomSpecies("Rb-87", 1.44316e-25)
SPECIES = {"rb87": RB87, "rb-87": RB87}


def thermal_wavelength(T: float, species: AtomSpecies = RB87) -> float:
    """h / sqrt(2 pi m k_B T) in metres."""
    if not T > 0:
        raise NonpositiveTemperature(f"T must be positive, got {T}")
    return constants.h / math.sqrt(2 * math.pi * species.mass * constants.k * T)


@dataclass(frozen=True)
class DelayScanConfig:
    species: AtomSpecies = RB87
    sigma0: float = 1e-6  # m
    v_mean: float = 0.01  # m/s
    g_accel: float = constants.g
    delays: tuple[float, ...] = tuple(np.linspace(0, 200e-6, 21))
    model: PulseModel = field(default_factory=lambda: PulseModel(np.pi / 6, k_recoil=8.0))
    stats: Statistics = Statistics.BOSON
    shots: int = 10_000
    seed: int = 0
    eta: float = 1.0
    n_points: int = 1024
    finals: str = "default"

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if any(d < 0 for d in self.delays):
            raise ValueError("delays must be >= 0")
        if not 0 <= self.eta <= 1:
            raise ValueError("eta must lie in [0, 1]")

    def offsets(self, delay: float) -> tuple[float, float]:
        """Relative (displacement, wavenumber) in kernel units."""
        dx = self.v_mean * delay + 0.5 * self.g_accel * delay**2
        dk = self.species.mass * self.g_accel * delay / constants.hbar
        return dx / self.sigma0, dk * self.sigma0

    def grid(self) -> GridSpec:
        far = max(self.offsets(d)[0] for d in self.delays) if self.delays else 0.0
        half = max(16.0, far / 2 + 16.0)
        return GridSpec(self.n_points, -half, half)


@dataclass(frozen=True)
class CountRecord:
    delay: float
    overlap_sq: float
    p_analytic: float
    detected: int
    shots: int
    regime: str
    status: str


def delay_to_states(cfg: DelayScanConfig, delay: float) -> tuple[CMWaveFunction, CMWaveFunction]:
    """Packets of the earlier (phi) and later (psi) released atom, centred symmetrically."""
    grid = cfg.grid()
    dx, dk = cfg.offsets(delay)
    if abs(dk) / 2 + 10 > np.pi / grid.dx:
        raise PacketTruncated(f"relative momentum {dk:.3g} not resolved by dx={grid.dx:.3g}")
    phi = make_gaussian(grid, dx / 2, 1.0, dk / 2)
    psi = make_gaussian(grid, -dx / 2, 1.0, -dk / 2)
    return phi, psi


def analyze_delay(cfg: DelayScanConfig, delay: float) -> tuple[float, float, str, str]:
    """Return (overlap_sq, p_analytic, regime, status) for one delay."""
    phi, psi = delay_to_states(cfg, delay)
    x = overlap_sq(phi, psi)
    if cfg.stats is Statistics.FERMION and x > 1 - EPS_PAULI:
        return x, math.nan, "", "PauliViolation"
    equal = x > 1 - EPS_DISTINGUISH
    if not equal:
        try:
            p = TwoParticleProblem.build(cfg.model, phi, psi, cfg.stats, cfg.finals)
            p_an = total_absorption_probability(p)
        except (IndistinguishableFinals, ZeroAmplitude):
            equal = True
    if equal:
        if cfg.stats is Statistics.FERMION:
            return x, math.nan, "", "PauliViolation"
        return x, equal_state_probability(cfg.model, phi), "full", "equal-state"
    regimes = {probability_decomposition(q).regime for q in (p, p.swapped())}
    regime = "crossed-negligible" if regimes == {"crossed-negligible"} else "full"
    return x, p_an, regime, "ok"


def count_detections(p: float, shots: int, eta: float, rng: np.random.Generator) -> int:
    """Emission counts: each run absorbs with probability p, each emission seen with eta."""
    return int(rng.binomial(shots, min(max(p * eta, 0.0), 1.0)))


def run_delay_scan(cfg: DelayScanConfig) -> list[CountRecord]:
    records = []
    for i, delay in enumerate(cfg.delays):
        x, p, regime, status = analyze_delay(cfg, delay)
        if math.isnan(p):
            detected = 0
        else:
            rng = np.random.default_rng([cfg.seed, i])
            detected = count_detections(p, cfg.shots, cfg.eta, rng)
        records.append(CountRecord(float(delay), x, p, detected, cfg.shots, regime, status))
    return records


@dataclass(frozen=True)
class ThermalRow:
    T: float
    lambda_T: float
    overlap_sq: float
    ratio_boson: float
    ratio_fermion: float


def thermal_overlap(lambda_T: float, spacing: float) -> float:
    """Two-atom proxy for exchange overlap at spacing d: exp(-2 pi d^2 / lambda_T^2).

    This is exp(-d^2 / (4 sigma_T^2)) with sigma_T = lambda_T / sqrt(8 pi), the
    exchange term of the ideal-gas pair correlation.
    """
    return math.exp(-2 * math.pi * spacing**2 / lambda_T**2)


def _pair_ratio(separation: float, model: PulseModel, stats: Statistics) -> float:
    # beyond ~80 widths the overlap underflows to exactly 0 in double precision
    separation = min(separation, 80.0)
    half = separation / 2 + 16.0
    n = 1 << max(10, math.ceil(math.log2(2 * half / 0.125)))
    grid = GridSpec(n, -half, half)
    phi = make_gaussian(grid, -separation / 2, 1.0)
    psi = make_gaussian(grid, separation / 2, 1.0)
    try:
        return ratio(TwoParticleProblem.build(model, phi, psi, stats, finals="orthogonal"))
    except PauliViolation:
        return math.nan
    except ZeroAmplitude:
        # equal packets: symmetrised and factorized probabilities coincide
        return 1.0


def qualitative_temperature_scan(
    T_list,
    species: AtomSpecies = RB87,
    density_spacing: float = 1e-6,
    model: PulseModel | None = None,
) -> list[ThermalRow]:
    """Two-atom proxy of the temperature scan of a trapped cloud.

    Each temperature fixes the packet width ``sigma_T = lambda_T/sqrt(8 pi)``; two
    such packets a distance ``density_spacing`` apart stand in for neighbouring
    atoms of the cloud. Multi-atom symmetrisation is not modelled. Ratios come
    from the exact amplitudes with orthogonalised final packets, so both
    statistics are evaluated in the crossed-negligible regime.
    """
    if model is None:
        model = PulseModel(np.pi / 6)
    rows = []
    for T in T_list:
        lam = thermal_wavelength(T, species)
        sep = density_spacing * math.sqrt(8 * math.pi) / lam
        rows.append(
            ThermalRow(
                T,
                lam,
                thermal_overlap(lam, density_spacing),
                _pair_ratio(sep, model, Statistics.BOSON),
                _pair_ratio(sep, model, Statistics.FERMION),
            )
        )
    return rows
