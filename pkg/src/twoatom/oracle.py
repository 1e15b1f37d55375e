"""Brute-force cross-check in the explicit two-particle tensor-product space.

The single-atom unitary is assembled as a dense ``2N x 2N`` matrix from an
explicitly built DFT matrix and the diagonal recoil phases; it never calls the
FFT-based propagator used by ``evolution``. Two-particle states are stored as
``2N x 2N`` coefficient matrices ``Psi[a, b]`` (particle 1 index ``a``,
particle 2 index ``b``; each index is ``internal * N + j`` with ground = 0),
so ``(U x U) Psi = U @ Psi @ U.T``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, PauliViolation, TooLarge
from .evolution import PulseModel, default_final_states
from .exchange import (
    EPS_PAULI,
    Statistics,
    TwoParticleProblem,
    equal_state_amplitude,
    equal_state_probability,
    factorized_equal_state_probability,
    probability_decomposition,
)
from .hilbert import CMWaveFunction, GridSpec, make_gaussian

MAX_POINTS = 128
TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class DenseState:
    matrix: np.ndarray

    @property
    def vector(self) -> np.ndarray:
        return self.matrix.reshape(-1)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix))


@dataclass(frozen=True, eq=False)
class DenseUnitary:
    matrix: np.ndarray

    def unitarity_error(self) -> float:
        u = self.matrix
        return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))

    def apply_two(self, state: DenseState) -> DenseState:
        u = self.matrix
        if state.matrix.shape != (u.shape[0], u.shape[0]):
            raise DimensionMismatch(f"{state.matrix.shape} vs unitary {u.shape}")
        return DenseState(u @ state.matrix @ u.T)


def _guard(grid: GridSpec) -> None:
    if grid.n_points > MAX_POINTS:
        raise TooLarge(f"n_points={grid.n_points} exceeds dense limit {MAX_POINTS}")


def coefficients(psi: CMWaveFunction, excited: bool = False) -> np.ndarray:
    """Orthonormal-basis coefficients of ``psi`` placed in the chosen internal block."""
    n = psi.grid.n_points
    c = np.zeros(2 * n, dtype=complex)
    off = n if excited else 0
    c[off : off + n] = psi.amp * np.sqrt(psi.grid.dx)
    return c


def _dft_matrix(n: int) -> np.ndarray:
    j = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(j, j) / n) / np.sqrt(n)


def _free_matrix(grid: GridSpec, t: float, mass: float) -> np.ndarray:
    n = grid.n_points
    if t == 0:
        return np.eye(n, dtype=complex)
    m = np.arange(n)
    k = 2 * np.pi * np.where(m < n // 2, m, m - n) / (n * grid.dx)
    w = _dft_matrix(n)
    return w.conj().T @ np.diag(np.exp(-0.5j * k**2 * t / mass)) @ w


def build_dense_unitary(model: PulseModel, grid: GridSpec) -> DenseUnitary:
    _guard(grid)
    n = grid.n_points
    f_pre = _free_matrix(grid, model.t_pre, model.mass)
    f_post = _free_matrix(grid, model.t_post, model.mass)
    kick = np.diag(np.exp(1j * model.k_recoil * grid.x))
    c, s = np.cos(model.theta), np.sin(model.theta)
    eye = np.eye(n)
    rot = np.block([[c * eye, 1j * s * kick.conj()], [1j * s * kick, c * eye]])
    zero = np.zeros((n, n))
    big = lambda f: np.block([[f, zero], [zero, f]])  # noqa: E731
    return DenseUnitary(big(f_post) @ rot @ big(f_pre))


def _symmetrized(a: np.ndarray, b: np.ndarray, sign: int) -> np.ndarray:
    return np.outer(a, b) + sign * np.outer(b, a)


def build_initial(p: TwoParticleProblem) -> DenseState:
    return build_initial_states(p.phi, p.psi, p.stats)


def build_initial_states(
    phi: CMWaveFunction, psi: CMWaveFunction, stats: Statistics
) -> DenseState:
    """N_i (phi_g psi_g +/- psi_g phi_g), with the overlap taken from the raw coefficients."""
    _guard(phi.grid)
    a, b = coefficients(phi), coefficients(psi)
    x = abs(np.vdot(a, b)) ** 2
    if stats is Statistics.FERMION and x > 1 - EPS_PAULI:
        raise PauliViolation(f"fermion overlap {x!r}")
    return DenseState(_symmetrized(a, b, stats.sign) / np.sqrt(2 * (1 + stats.sign * x)))


def build_final(
    excited_cm: CMWaveFunction, ground_cm: CMWaveFunction, stats: Statistics
) -> DenseState:
    """(|e~_e>|g_g> +/- |g_g>|e~_e>)/sqrt(2); internal labels make the terms orthogonal."""
    _guard(excited_cm.grid)
    e = coefficients(excited_cm, excited=True)
    g = coefficients(ground_cm)
    return DenseState(_symmetrized(e, g, stats.sign) / np.sqrt(2))


def project_amplitude(final: DenseState, applied: DenseState) -> complex:
    if final.matrix.shape != applied.matrix.shape:
        raise DimensionMismatch(f"{final.matrix.shape} vs {applied.matrix.shape}")
    return complex(np.vdot(final.vector, applied.vector))


@dataclass
class EquivalenceReport:
    residual_phi_branch: float
    residual_psi_branch: float
    residual_equal_state: float | None
    identity_residual: float
    norm_error: float
    equal_state_baseline_error: float | None = None
    params: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        vals = [self.residual_phi_branch, self.residual_psi_branch]
        if self.residual_equal_state is not None:
            vals.append(self.residual_equal_state)
        return max(vals)

    @property
    def passed(self) -> bool:
        ok = self.max_residual <= TOLERANCE and self.identity_residual < 1e-12
        if self.equal_state_baseline_error is not None:
            ok = ok and self.equal_state_baseline_error <= TOLERANCE
        return ok

    def as_dict(self) -> dict:
        d = {k: v for k, v in self.__dict__.items()}
        d["max_residual"] = self.max_residual
        d["status"] = "PASS" if self.passed else "FAIL"
        return d


def verify_equivalence(p: TwoParticleProblem, params: dict | None = None) -> EquivalenceReport:
    """Compare analytic amplitudes with dense projections on every final-state branch."""
    u = build_dense_unitary(p.model, p.phi.grid)
    initial = build_initial(p)
    evolved = u.apply_two(initial)
    sign = p.stats.sign

    res = probability_decomposition(p)
    dense_phi = project_amplitude(build_final(p.phi_tilde, p.psi, p.stats), evolved)
    # the swapped problem's initial state is sign * (this initial state)
    res_swap = probability_decomposition(p.swapped())
    dense_psi = project_amplitude(build_final(p.psi_tilde, p.phi, p.stats), evolved)

    eq_res = eq_base = None
    if p.stats is Statistics.BOSON:
        phi_tilde = default_final_states(p.model, p.phi, p.phi)[0]
        eq_init = build_initial_states(p.phi, p.phi, Statistics.BOSON)
        dense_eq = project_amplitude(
            build_final(phi_tilde, p.phi, Statistics.BOSON), u.apply_two(eq_init)
        )
        eq_res = abs(equal_state_amplitude(p.model, p.phi, phi_tilde) - dense_eq)
        eq_base = abs(
            equal_state_probability(p.model, p.phi, phi_tilde)
            - factorized_equal_state_probability(p.model, p.phi, phi_tilde)
        )

    return EquivalenceReport(
        residual_phi_branch=abs(res.m_total - dense_phi),
        residual_psi_branch=abs(sign * res_swap.m_total - dense_psi),
        residual_equal_state=eq_res,
        identity_residual=max(res.identity_residual(), res_swap.identity_residual()),
        norm_error=abs(evolved.norm - 1.0),
        equal_state_baseline_error=eq_base,
        params=params or {},
    )


def random_problem(
    rng: np.random.Generator,
    stats: Statistics,
    n_points: int = 64,
    half_width: float = 16.0,
    max_overlap: float = 0.99,
) -> tuple[TwoParticleProblem, dict]:
    """Randomised small instance.

    Centres are uniform in the middle half of the domain, widths uniform in
    [4 dx, 16 dx], theta in [0.1, 1.4], k_recoil in [0, 4/sigma] and
    free-flight times in [0, 2]. Boundary and wrap-around guards are disabled:
    the equivalence is exact on the periodic grid whether or not the packets
    are truncated. Fermion draws are rejected until the overlap is below
    ``max_overlap``.
    """
    grid = GridSpec(n_points, -half_width, half_width)
    dx = grid.dx
    while True:
        c1, c2 = rng.uniform(-half_width / 2, half_width / 2, size=2)
        s1, s2 = rng.uniform(4 * dx, 16 * dx, size=2)
        k1, k2 = rng.uniform(-1, 1, size=2) / np.array([s1, s2])
        params = dict(
            center_phi=c1, center_psi=c2, sigma_phi=s1, sigma_psi=s2, k0_phi=k1, k0_psi=k2,
            theta=rng.uniform(0.1, 1.4),
            k_recoil=rng.uniform(0, 4 / min(s1, s2)),
            t_pre=rng.uniform(0, 2), t_post=rng.uniform(0, 2),
        )  # fmt: skip
        phi = make_gaussian(grid, c1, s1, k1, boundary_tol=None)
        psi = make_gaussian(grid, c2, s2, k2, boundary_tol=None)
        x = abs(np.vdot(phi.amp, psi.amp) * dx) ** 2
        if stats is Statistics.FERMION and x >= max_overlap:
            continue
        model = PulseModel(
            params["theta"], params["k_recoil"], params["t_pre"], params["t_post"], wrap_tol=None
        )
        params = {k: float(v) for k, v in params.items()}
        params.update(statistics=stats.name.lower(), overlap_sq=float(x))
        return TwoParticleProblem.build(model, phi, psi, stats), params


def run_suite(
    n_instances: int = 100,
    stats: Statistics | str = Statistics.BOSON,
    n_points: int = 64,
    seed: int = 2024,
) -> list[EquivalenceReport]:
    if n_points > MAX_POINTS:
        raise TooLarge(f"n_points={n_points} exceeds dense limit {MAX_POINTS}")
    stats = Statistics.parse(stats)
    rng = np.random.default_rng([seed, 0 if stats is Statistics.BOSON else 1])
    reports = []
    for i in range(n_instances):
        p, params = random_problem(rng, stats, n_points)
        params.update(index=i, seed=seed)
        reports.append(verify_equivalence(p, params))
    return reports


def reports_to_json(reports: list[EquivalenceReport]) -> str:
    return json.dumps(
        {
            "n_instances": len(reports),
            "n_pass": sum(r.passed for r in reports),
            "status": "PASS" if all(r.passed for r in reports) else "FAIL",
            "instances": [r.as_dict() for r in reports],
        },
        indent=2,
        default=lambda o: o.item() if isinstance(o, np.generic) else str(o),
    )
