"""Classical flow, Liouville transport, brackets, and expectations."""

import numpy as np
import pytest

from phaseq import phasespace as ps
from phaseq.errors import BoundaryLeak

PAR = ps.NATURAL


# ---------------------------------------------------------------------------
# hamiltonian and flow
# ---------------------------------------------------------------------------

def test_hamiltonian_minimum():
    assert ps.hamiltonian(ps.PhasePoint(0.0, 0.0), PAR) == 0.0


def test_hamiltonian_unit_point():
    assert ps.hamiltonian(ps.PhasePoint(1.0, 1.0), PAR) == pytest.approx(1.0, abs=1e-15)


def test_hamiltonian_scales_with_frequency():
    par = ps.PhysParams(1.0, 2.0, 1.0)
    assert ps.hamiltonian(ps.PhasePoint(2.0, 0.0), par) == pytest.approx(8.0, abs=1e-12)


def test_flow_quarter_period():
    pt = ps.hamilton_flow(ps.PhasePoint(0.0, 1.0), np.pi / 2.0, PAR)
    assert pt.q == pytest.approx(1.0, abs=1e-15)
    assert pt.p == pytest.approx(0.0, abs=1e-15)


def test_flow_full_period_returns_start():
    rng = np.random.default_rng(3)
    for _ in range(10):
        q, p = rng.normal(size=2)
        pt = ps.hamilton_flow(ps.PhasePoint(q, p), 2.0 * np.pi / PAR.omega, PAR)
        assert pt.q == pytest.approx(q, abs=1e-12)
        assert pt.p == pytest.approx(p, abs=1e-12)


def test_flow_conserves_energy():
    rng = np.random.default_rng(4)
    for _ in range(20):
        q, p, t = rng.normal(size=3)
        pt = ps.PhasePoint(q, p)
        moved = ps.hamilton_flow(pt, t, PAR)
        assert ps.hamiltonian(moved, PAR) == pytest.approx(ps.hamiltonian(pt, PAR), abs=1e-13)


def test_flow_group_action():
    rng = np.random.default_rng(5)
    for _ in range(20):
        q, p, t1, t2 = rng.normal(size=4)
        pt = ps.PhasePoint(q, p)
        chained = ps.hamilton_flow(ps.hamilton_flow(pt, t1, PAR), t2, PAR)
        direct = ps.hamilton_flow(pt, t1 + t2, PAR)
        assert chained.q == pytest.approx(direct.q, abs=1e-12)
        assert chained.p == pytest.approx(direct.p, abs=1e-12)


# ---------------------------------------------------------------------------
# grids and densities
# ---------------------------------------------------------------------------

def test_grid_requires_power_of_two():
    with pytest.raises(ValueError):
        ps.PhaseGrid(-8.0, 8.0, -8.0, 8.0, 100, 128)


def test_grid_requires_ordered_extents():
    with pytest.raises(ValueError):
        ps.PhaseGrid(8.0, -8.0, -8.0, 8.0, 128, 128)


def test_density_shape_checked():
    grid = ps.default_grid(8.0, 64)
    with pytest.raises(ValueError):
        ps.PhaseDensity(grid, np.zeros((64, 32)))


def test_gaussian_density_is_classical():
    grid = ps.default_grid(8.0, 256)
    ps.gaussian_density(grid, PAR, q0=1.0).validate_classical()


# ---------------------------------------------------------------------------
# liouville transport
# ---------------------------------------------------------------------------

def test_stationary_gaussian_unchanged():
    grid = ps.default_grid(8.0, 256)
    density = ps.hamiltonian_gaussian(grid, PAR)
    for t in (0.7, 2.9):
        moved = ps.liouville_propagate(density, t, PAR)
        assert np.abs(moved.values - density.values).max() < 1e-6


def test_moving_gaussian_tracks_flow():
    grid = ps.default_grid(8.0, 256)
    density = ps.gaussian_density(grid, PAR, q0=1.0, p0=0.0)
    t = 1.1
    moved = ps.liouville_propagate(density, t, PAR)
    iq, ip = np.unravel_index(np.argmax(moved.values), moved.values.shape)
    target = ps.hamilton_flow(ps.PhasePoint(1.0, 0.0), t, PAR)
    assert abs(grid.q[iq] - target.q) <= grid.dq
    assert abs(grid.p[ip] - target.p) <= grid.dp


def test_zero_time_is_identity():
    grid = ps.default_grid(8.0, 128)
    density = ps.gaussian_density(grid, PAR, q0=0.5)
    moved = ps.liouville_propagate(density, 0.0, PAR)
    assert np.abs(moved.values - density.values).max() < 1e-13


def test_mass_conserved():
    grid = ps.default_grid(8.0, 256)
    density = ps.gaussian_density(grid, PAR, q0=1.5, p0=-0.5)
    moved = ps.liouville_propagate(density, 2.3, PAR)
    assert abs(moved.mass() - density.mass()) < 1e-6


def test_energy_functionals_conserved():
    # any function of H is transported onto itself
    grid = ps.default_grid(8.0, 256)
    density = ps.gaussian_density(grid, PAR, q0=1.0)
    moved = ps.liouville_propagate(density, 0.7, PAR)
    h = lambda Q, P: 0.5 * (Q ** 2 + P ** 2)
    for obs in (h, lambda Q, P: np.exp(-h(Q, P))):
        assert abs(ps.expectation(moved, obs) - ps.expectation(density, obs)) < 1e-5


def test_boundary_leak_detected():
    grid = ps.default_grid(8.0, 256)
    density = ps.gaussian_density(grid, PAR, q0=6.9)
    with pytest.raises(BoundaryLeak):
        ps.liouville_propagate(density, 0.4, PAR)


def test_backend_override_matches_default():
    grid = ps.default_grid(8.0, 128)
    density = ps.gaussian_density(grid, PAR, q0=1.0)
    a = ps.liouville_propagate(density, 0.9, PAR, backend="numpy")
    b = ps.liouville_propagate(density, 0.9, PAR)
    assert np.abs(a.values - b.values).max() < 1e-12


# ---------------------------------------------------------------------------
# poisson bracket
# ---------------------------------------------------------------------------

def test_canonical_pair_bracket():
    value = ps.poisson_bracket(lambda q, p: q, lambda q, p: p, ps.PhasePoint(0.3, -1.2))
    assert value == pytest.approx(1.0, abs=1e-8)


def test_bracket_of_function_with_itself():
    h = lambda q, p: 0.5 * (p ** 2 + q ** 2)
    assert ps.poisson_bracket(h, h, ps.PhasePoint(1.1, 0.4)) == pytest.approx(0.0, abs=1e-8)


def test_bracket_antisymmetry_is_exact():
    rng = np.random.default_rng(6)
    f = lambda q, p: np.sin(q) * p ** 2
    g = lambda q, p: np.cos(p) + q ** 3
    for _ in range(10):
        pt = ps.PhasePoint(*rng.normal(size=2))
        assert ps.poisson_bracket(f, g, pt) == -ps.poisson_bracket(g, f, pt)


def test_bracket_supports_complex_observables():
    # {p + iq, p - iq} = i*1 - 1*(-i) = 2i
    f = lambda q, p: p + 1j * q
    g = lambda q, p: p - 1j * q
    value = ps.poisson_bracket(f, g, ps.PhasePoint(0.7, 0.2))
    assert value == pytest.approx(2j, abs=1e-8)


# ---------------------------------------------------------------------------
# expectation
# ---------------------------------------------------------------------------

def test_expectation_of_one_is_mass():
    grid = ps.default_grid(8.0, 256)
    density = ps.gaussian_density(grid, PAR)
    assert ps.expectation(density, 1.0) == pytest.approx(1.0, abs=1e-6)


def test_expectation_of_odd_observable_vanishes():
    grid = ps.default_grid(8.0, 256)
    density = ps.gaussian_density(grid, PAR)
    assert ps.expectation(density, lambda Q, P: Q) == pytest.approx(0.0, abs=1e-8)


def test_mean_energy_of_minimum_gaussian():
    # second moments of exp(-(q^2 + p^2)) give <H> = hbar*omega/2
    grid = ps.default_grid(8.0, 256)
    density = ps.gaussian_density(grid, PAR)
    h = lambda Q, P: 0.5 * (P ** 2 + Q ** 2)
    assert ps.expectation(density, h) == pytest.approx(0.5, abs=1e-5)
