"""One-photon absorption by two identical atoms in (anti)symmetrised states.

The initial state is ``N (|phi_g>|psi_g> +/- |psi_g>|phi_g>)`` with the upper
sign for bosons. Final states are the distinguishable branches
``(|phi~_e>|psi_g> +/- |psi_g>|phi~_e>)/sqrt(2)`` (and the same with
phi <-> psi), or, for equal initial packets, the single superposition
``(|phi~_e>|phi_g> + |phi_g>|phi~_e>)/sqrt(2)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateBaseline,
    FermionEqualState,
    GridMismatch,
    IndistinguishableFinals,
    PauliViolation,
)
from .evolution import (
    PulseModel,
    default_final_states,
    orthogonalized_final_states,
    single_amplitude,
)
from .hilbert import NORM_TOL, AtomState, CMWaveFunction, InternalLabel, inner

EPS_PAULI = 1e-9
EPS_DISTINGUISH = 1e-9
CROSSED_NEGLIGIBLE = 1e-6

G, E = InternalLabel.GROUND, InternalLabel.EXCITED


class Statistics(enum.Enum):
    BOSON = 1
    FERMION = -1

    @property
    def sign(self) -> int:
        return self.value

    @classmethod
    def parse(cls, name: str | Statistics) -> Statistics:
        if isinstance(name, Statistics):
            return name
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown statistics {name!r}; use boson or fermion") from None


def overlap_sq(a: CMWaveFunction, b: CMWaveFunction) -> float:
    return min(abs(inner(a, b)) ** 2, 1.0)


def _check_pauli(x: float, stats: Statistics) -> None:
    if stats is Statistics.FERMION and x > 1 - EPS_PAULI:
        raise PauliViolation(f"fermion state with overlap {x!r} vanishes identically")


@dataclass(frozen=True, eq=False)
class TwoParticleProblem:
    model: PulseModel
    phi: CMWaveFunction
    psi: CMWaveFunction
    phi_tilde: CMWaveFunction
    psi_tilde: CMWaveFunction
    stats: Statistics
    overlap_sq: float = field(init=False)

    def __post_init__(self):
        states = (self.phi, self.psi, self.phi_tilde, self.psi_tilde)
        grid = self.phi.grid
        for s in states:
            if s.grid != grid:
                raise GridMismatch("all CM states must share one grid")
            if not s.is_normalized(NORM_TOL):
                raise ValueError(f"CM state not normalised (norm^2 = {s.norm_sq!r})")
        x = overlap_sq(self.phi, self.psi)
        _check_pauli(x, self.stats)
        object.__setattr__(self, "overlap_sq", x)

    @classmethod
    def build(
        cls,
        model: PulseModel,
        phi: CMWaveFunction,
        psi: CMWaveFunction,
        stats: Statistics | str = Statistics.BOSON,
        finals: str = "default",
    ) -> TwoParticleProblem:
        """Construct with final packets chosen by ``finals``.

        ``"default"`` uses the recoiled images of phi and psi;
        ``"orthogonal"`` uses ``orthogonalized_final_states``.
        """
        stats = Statistics.parse(stats)
        _check_pauli(overlap_sq(phi, psi), stats)
        if finals == "default":
            pt, st = default_final_states(model, phi, psi)
        elif finals == "orthogonal":
            pt, st = orthogonalized_final_states(model, phi, psi)
        else:
            raise ValueError(f"unknown finals mode {finals!r}")
        return cls(model, phi, psi, pt, st, stats)

    def swapped(self) -> TwoParticleProblem:
        """Same physics with the roles of the two packets exchanged.

        Its initial state equals ``stats.sign`` times the original one.
        """
        return TwoParticleProblem(
            self.model, self.psi, self.phi, self.psi_tilde, self.phi_tilde, self.stats
        )


@dataclass(frozen=True)
class Amplitudes:
    overlap_sq: float
    norm_factor: float
    m_direct: complex
    m_crossed: complex
    m_total: complex


@dataclass(frozen=True)
class AbsorptionResult:
    stats: Statistics
    overlap_sq: float
    norm_factor: float
    m_direct: complex
    m_crossed: complex
    m_total: complex
    p_two: float
    p_fac: float
    interference: float
    ratio: float | None

    @property
    def regime(self) -> str:
        if abs(self.m_crossed) <= CROSSED_NEGLIGIBLE * abs(self.m_direct):
            return "crossed-negligible"
        return "full"

    def identity_residual(self) -> float:
        """Residual of (1 +/- x) p_two = |m_d|^2 + |m_c|^2 +/- interference."""
        s = self.stats.sign
        lhs = (1 + s * self.overlap_sq) * self.p_two
        rhs = abs(self.m_direct) ** 2 + abs(self.m_crossed) ** 2 + s * self.interference
        return abs(lhs - rhs)

    def as_dict(self) -> dict:
        def c(z):
            return {"re": z.real, "im": z.imag}

        return {
            "statistics": self.stats.name.lower(),
            "overlap_sq": self.overlap_sq,
            "norm_factor": self.norm_factor,
            "m_direct": c(self.m_direct),
            "m_crossed": c(self.m_crossed),
            "m_total": c(self.m_total),
            "p_two": self.p_two,
            "p_fac": self.p_fac,
            "interference": self.interference,
            "ratio": self.ratio,
            "regime": self.regime,
        }


def normalization_factor(overlap_sq: float, stats: Statistics) -> float:
    """1 / sqrt(2 (1 +/- overlap_sq))."""
    if not 0 <= overlap_sq <= 1:
        raise ValueError(f"overlap_sq must lie in [0, 1], got {overlap_sq}")
    _check_pauli(overlap_sq, stats)
    return 1 / np.sqrt(2 * (1 + stats.sign * overlap_sq))


def _amp(model, final_cm, final_label, initial_cm):
    return single_amplitude(model, AtomState(final_cm, final_label), AtomState(initial_cm, G))


def transition_amplitude(p: TwoParticleProblem) -> Amplitudes:
    m, s = p.model, p.stats.sign
    x = p.overlap_sq
    m_direct = _amp(m, p.phi_tilde, E, p.phi) * _amp(m, p.psi, G, p.psi)
    m_crossed = _amp(m, p.phi_tilde, E, p.psi) * _amp(m, p.psi, G, p.phi)
    n_i = normalization_factor(x, p.stats)
    m_total = (m_direct + s * m_crossed) / np.sqrt(1 + s * x)
    return Amplitudes(x, n_i, m_direct, m_crossed, m_total)


def _is_equal_state(p: TwoParticleProblem) -> bool:
    return p.overlap_sq >= 1 - EPS_PAULI


def factorized_probability(p: TwoParticleProblem) -> float:
    """Absorption probability for the unsymmetrised product state.

    For equal initial packets either atom may absorb, so the value doubles.
    """
    m = p.model
    pa = abs(_amp(m, p.phi_tilde, E, p.phi)) ** 2
    pb = abs(_amp(m, p.psi, G, p.psi)) ** 2
    if _is_equal_state(p):
        return 2 * pa * pb
    return pa * pb


def probability_decomposition(p: TwoParticleProblem) -> AbsorptionResult:
    a = transition_amplitude(p)
    p_fac = factorized_probability(p)
    p_two = abs(a.m_total) ** 2
    return AbsorptionResult(
        stats=p.stats,
        overlap_sq=a.overlap_sq,
        norm_factor=a.norm_factor,
        m_direct=a.m_direct,
        m_crossed=a.m_crossed,
        m_total=a.m_total,
        p_two=p_two,
        p_fac=p_fac,
        interference=2 * (a.m_direct.conjugate() * a.m_crossed).real,
        ratio=p_two / p_fac if p_fac > 0 else None,
    )


def ratio(p: TwoParticleProblem) -> float:
    r = probability_decomposition(p)
    if r.ratio is None:
        raise DegenerateBaseline("factorized probability is zero")
    return r.ratio


def total_absorption_probability(p: TwoParticleProblem) -> float:
    """Sum over the two distinguishable final branches."""
    fid = overlap_sq(p.phi_tilde, p.psi_tilde)
    if fid >= 1 - EPS_DISTINGUISH:
        raise IndistinguishableFinals(
            f"final packets have fidelity {fid!r}; use equal_state_probability"
        )
    return probability_decomposition(p).p_two + probability_decomposition(p.swapped()).p_two


def equal_state_amplitude(
    model: PulseModel,
    phi: CMWaveFunction,
    phi_tilde: CMWaveFunction | None = None,
    stats: Statistics = Statistics.BOSON,
) -> complex:
    if Statistics.parse(stats) is Statistics.FERMION:
        raise FermionEqualState("two fermions cannot share one CM state")
    if phi_tilde is None:
        phi_tilde = default_final_states(model, phi, phi)[0]
    return np.sqrt(2) * _amp(model, phi_tilde, E, phi) * _amp(model, phi, G, phi)


def equal_state_probability(
    model: PulseModel,
    phi: CMWaveFunction,
    phi_tilde: CMWaveFunction | None = None,
    stats: Statistics = Statistics.BOSON,
) -> float:
    return abs(equal_state_amplitude(model, phi, phi_tilde, stats)) ** 2


def factorized_equal_state_probability(
    model: PulseModel, phi: CMWaveFunction, phi_tilde: CMWaveFunction | None = None
) -> float:
    if phi_tilde is None:
        phi_tilde = default_final_states(model, phi, phi)[0]
    return 2 * abs(_amp(model, phi_tilde, E, phi)) ** 2 * abs(_amp(model, phi, G, phi)) ** 2


def ratio_law(x: float, stats: Statistics) -> float:
    """Crossed-negligible prediction 1 / (1 +/- x)."""
    return 1 / (1 + Statistics.parse(stats).sign * x)
