import numpy as np
import pytest

from twoatom import (
    AtomState,
    CMWaveFunction,
    DimensionMismatch,
    GridSpec,
    PauliViolation,
    PulseModel,
    Statistics,
    TooLarge,
    TwoParticleProblem,
    apply_U,
    make_gaussian,
)
from twoatom.oracle import (
    DenseState,
    build_dense_unitary,
    build_final,
    build_initial,
    build_initial_states,
    coefficients,
    project_amplitude,
    random_problem,
    run_suite,
    verify_equivalence,
)

B, F = Statistics.BOSON, Statistics.FERMION


@pytest.fixture
def grid64():
    return GridSpec(64, -16.0, 16.0)


def packets(grid, c1, c2, s=2.0):
    return (
        make_gaussian(grid, c1, s, boundary_tol=None),
        make_gaussian(grid, c2, s, boundary_tol=None),
    )


class TestBuildInitial:
    def test_orthogonal_packets(self):
        grid = GridSpec(128, -32.0, 32.0)
        phi, psi = packets(grid, -15.0, 15.0)
        p = TwoParticleProblem.build(PulseModel(0.3, wrap_tol=None), phi, psi, B)
        st = build_initial(p)
        assert st.norm == pytest.approx(1, abs=1e-12)
        comp = np.vdot(np.outer(coefficients(phi), coefficients(psi)).ravel(), st.vector)
        assert comp == pytest.approx(1 / np.sqrt(2), abs=1e-12)

    def test_fermion_equal(self, grid64):
        phi, _ = packets(grid64, 0, 0)
        with pytest.raises(PauliViolation):
            build_initial_states(phi, phi, F)

    def test_boson_equal(self, grid64):
        phi, _ = packets(grid64, 0, 0)
        st = build_initial_states(phi, phi, B)
        c = coefficients(phi)
        assert np.max(np.abs(st.matrix - np.outer(c, c))) < 1e-15
        assert st.norm == pytest.approx(1, abs=1e-12)

    @pytest.mark.parametrize("stats", [B, F])
    def test_normalised_for_overlapping_packets(self, grid64, stats):
        phi, psi = packets(grid64, -1.0, 1.5)
        assert build_initial_states(phi, psi, stats).norm == pytest.approx(1, abs=1e-12)

    def test_too_large(self):
        grid = GridSpec(256, -32.0, 32.0)
        phi = make_gaussian(grid, 0, 1)
        with pytest.raises(TooLarge):
            build_initial_states(phi, phi, B)
        with pytest.raises(TooLarge):
            build_dense_unitary(PulseModel(0.1), grid)


class TestDenseUnitary:
    def test_identity(self, grid64):
        u = build_dense_unitary(PulseModel(0.0), grid64).matrix
        assert np.max(np.abs(u - np.eye(128))) < 1e-12

    def test_full_flop_block(self, grid64):
        k = 1.3
        u = build_dense_unitary(PulseModel(np.pi / 2, k), grid64).matrix
        expected = 1j * np.diag(np.exp(1j * k * grid64.x))
        assert np.max(np.abs(u[64:, :64] - expected)) < 1e-12
        assert np.max(np.abs(u[:64, :64])) < 1e-15

    def test_unitarity_random(self, grid64, rng):
        for _ in range(10):
            m = PulseModel(rng.uniform(0, np.pi / 2), rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(0, 3))
            assert build_dense_unitary(m, grid64).unitarity_error() < 1e-10

    def test_columns_are_apply_U_images(self, grid64, rng):
        m = PulseModel(0.8, 1.1, 0.7, 1.3, wrap_tol=None)
        u = build_dense_unitary(m, grid64).matrix
        for j in rng.integers(0, 64, size=5):
            amp = np.zeros(64)
            amp[j] = 1 / np.sqrt(grid64.dx)
            out = apply_U(m, AtomState(CMWaveFunction(grid64, amp)))
            col = np.concatenate([out.g_channel.amp, out.e_channel.amp]) * np.sqrt(grid64.dx)
            assert np.max(np.abs(u[:, j] - col)) < 1e-12


class TestProject:
    def test_self_projection(self, grid64):
        phi, psi = packets(grid64, -2, 3)
        st = build_initial_states(phi, psi, B)
        assert project_amplitude(st, st) == pytest.approx(1, abs=1e-12)

    def test_orthogonal_construction(self):
        grid = GridSpec(128, -32.0, 32.0)
        phi, psi = packets(grid, -15.0, 15.0)
        initial = build_initial_states(phi, phi, B)  # both ground, at -15
        final = build_final(psi, psi, B)  # excited label, disjoint support
        assert abs(project_amplitude(final, initial)) < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            project_amplitude(DenseState(np.zeros((4, 4))), DenseState(np.zeros((8, 8))))


@pytest.mark.parametrize("stats", [B, F])
def test_norm_preserved_by_two_particle_evolution(grid64, stats, rng):
    phi, psi = packets(grid64, -1.0, 2.0)
    m = PulseModel(1.0, 0.8, 1.0, 1.0, wrap_tol=None)
    st = build_dense_unitary(m, grid64).apply_two(build_initial_states(phi, psi, stats))
    assert st.norm == pytest.approx(1, abs=1e-11)


@pytest.mark.parametrize("stats", [B, F])
def test_final_family_does_not_overcount(grid64, stats):
    """Projections onto an orthonormal family of final states sum to at most one."""
    phi, psi = packets(grid64, -1.0, 2.0)
    m = PulseModel(0.9, 0.5, 0.5, 0.5, wrap_tol=None)
    evolved = build_dense_unitary(m, grid64).apply_two(build_initial_states(phi, psi, stats))
    # excited in point j, ground in point l: (j, l) pairs form an orthonormal family
    total = 0.0
    for j in range(64):
        e = np.zeros(64)
        e[j] = 1 / np.sqrt(grid64.dx)
        for l in range(64):
            g = np.zeros(64)
            g[l] = 1 / np.sqrt(grid64.dx)
            fin = build_final(CMWaveFunction(grid64, e), CMWaveFunction(grid64, g), stats)
            total += abs(project_amplitude(fin, evolved)) ** 2
    assert total <= 1 + 1e-12


def test_randomised_equivalence_single(rng):
    for stats in (B, F):
        p, params = random_problem(rng, stats)
        rep = verify_equivalence(p, params)
        assert rep.passed, rep.as_dict()
        assert (rep.residual_equal_state is None) == (stats is F)


def test_equal_state_instance():
    grid = GridSpec(64, -16.0, 16.0)
    phi = make_gaussian(grid, 0.5, 2.5, boundary_tol=None)
    psi = make_gaussian(grid, -2.0, 2.5, boundary_tol=None)
    p = TwoParticleProblem.build(PulseModel(0.9, 0.7, 0.4, 0.4, wrap_tol=None), phi, psi, B)
    rep = verify_equivalence(p)
    assert rep.passed
    assert rep.residual_equal_state < 1e-10
    assert rep.equal_state_baseline_error < 1e-10


def test_seed_changes_instances_not_verdict():
    a = run_suite(5, B, seed=1)
    b = run_suite(5, B, seed=2)
    assert a[0].params["center_phi"] != b[0].params["center_phi"]
    assert all(r.passed for r in a + b)
