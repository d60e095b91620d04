"""Planar spin functions, bracket algebra, two-mode operators, and spectra."""

import math

import numpy as np
import pytest

from phaseq import phasespace as ps
from phaseq import spin
from phaseq.errors import DomainError, OutOfTruncation

PAR = ps.NATURAL


def _random_points(count, seed=41, scale=1.5):
    rng = np.random.default_rng(seed)
    for row in rng.normal(scale=scale, size=(count, 4)):
        yield spin.Phase4Point(*map(float, row))


# ---------------------------------------------------------------------------
# classical functions
# ---------------------------------------------------------------------------

def test_spot_values():
    values = spin.spin_functions(spin.Phase4Point(1.0, 0.0, 0.0, 1.0), PAR)
    assert (values.s0, values.s1, values.s2, values.s3) == (1.0, 0.0, 0.0, 0.5)


def test_origin_maps_to_zero():
    values = spin.spin_functions(spin.Phase4Point(0.0, 0.0, 0.0, 0.0), PAR)
    assert (values.s0, values.s1, values.s2, values.s3) == (0.0, 0.0, 0.0, 0.0)


def test_sphere_constraint():
    for pt in _random_points(1000):
        assert spin.spin_functions(pt, PAR).casimir_residual() < 1e-12


def test_bracket_closure():
    # sign convention from the symbolic oracle: {S_i, S_j} = -eps_ijk S_k
    cyclic = ((1, 2, 3), (2, 3, 1), (3, 1, 2))
    for pt in _random_points(20, seed=42):
        values = spin.spin_functions(pt, PAR)
        table = spin.spin_bracket_table(pt, PAR)
        for i, j, k in cyclic:
            target = -getattr(values, f"s{k}")
            assert abs(table[i, j] - target) < 5e-6
            assert abs(table[j, i] + target) < 5e-6


def test_total_intensity_commutes():
    for pt in _random_points(100, seed=43):
        table = spin.spin_bracket_table(pt, PAR)
        assert np.abs(table[0, 1:]).max() < 5e-6


def test_bracket_diagonal_exactly_zero():
    pt = spin.Phase4Point(0.7, -0.4, 1.1, 0.2)
    table = spin.spin_bracket_table(pt, PAR)
    assert np.abs(np.diag(table)).max() == 0.0


# ---------------------------------------------------------------------------
# two-mode transform
# ---------------------------------------------------------------------------

def test_transform_preserves_total_intensity():
    for pt in _random_points(100, seed=44):
        original = spin.spin_functions(pt, PAR)
        modes = spin.two_mode_transform(pt, PAR)
        transformed = spin.transformed_spin_functions(*modes, PAR)
        assert abs(transformed.s0 - original.s0) < 1e-10


def test_transform_preserves_mode_difference():
    for pt in _random_points(100, seed=45):
        original = spin.spin_functions(pt, PAR)
        transformed = spin.transformed_spin_functions(*spin.two_mode_transform(pt, PAR), PAR)
        assert abs(transformed.s2 - original.s2) < 1e-10


def test_transform_preserves_cross_component():
    for pt in _random_points(100, seed=46):
        original = spin.spin_functions(pt, PAR)
        transformed = spin.transformed_spin_functions(*spin.two_mode_transform(pt, PAR), PAR)
        assert abs(transformed.s3 - original.s3) < 1e-10


def test_written_first_component_is_imaginary():
    # the written same-mode-squares form cannot equal the real function; the
    # cross-mode form does
    for pt in _random_points(20, seed=47):
        original = spin.spin_functions(pt, PAR)
        transformed = spin.transformed_spin_functions(*spin.two_mode_transform(pt, PAR), PAR)
        assert abs(transformed.s1_written.real) < 1e-12
        assert abs(transformed.s1_cross - original.s1) < 1e-10


def test_origin_transforms_to_zero():
    transformed = spin.transformed_spin_functions(
        *spin.two_mode_transform(spin.Phase4Point(0.0, 0.0, 0.0, 0.0), PAR), PAR
    )
    assert transformed.s0 == 0.0 and transformed.s2 == 0.0 and transformed.s3 == 0.0


def test_mode_brackets():
    pt = spin.Phase4Point(0.4, -0.6, 0.9, 0.3)

    def component(index):
        def field(x, y, px, py):
            return spin.two_mode_transform(spin.Phase4Point(x, y, px, py), PAR)[index]

        return field

    q1, p1, q2, p2 = (component(i) for i in range(4))
    assert abs(spin.poisson_bracket_4d(q1, p1, pt) - 1j / PAR.hbar) < 1e-6
    assert abs(spin.poisson_bracket_4d(q2, p2, pt) - 1j / PAR.hbar) < 1e-6
    assert abs(spin.poisson_bracket_4d(q1, p2, pt)) < 1e-6


# ---------------------------------------------------------------------------
# two-mode operators
# ---------------------------------------------------------------------------

DIM = 6
OPS = spin.two_mode_operators(DIM, PAR)


def test_mode_difference_action():
    one_zero = spin.spin_eigenvector(1, 0, DIM).values
    assert np.abs(OPS.s2.values @ one_zero - 0.5 * PAR.hbar * one_zero).max() < 1e-14


def test_vacuum_intensity_shift():
    vacuum = spin.spin_eigenvector(0, 0, DIM).values
    assert np.abs(OPS.s0.values @ vacuum - PAR.hbar * vacuum).max() < 1e-14


def test_commuting_pair():
    commutator = OPS.s0.values @ OPS.s2.values - OPS.s2.values @ OPS.s0.values
    assert np.abs(commutator).max() == 0.0


def test_observables_are_hermitian():
    assert OPS.s0.hermiticity_defect() < 1e-12
    assert OPS.s2.hermiticity_defect() < 1e-12
    assert OPS.number.hermiticity_defect() < 1e-12


def test_written_first_operator_is_anti_hermitian():
    adjoint = np.conj(OPS.s1.values.T)
    assert np.abs(adjoint + OPS.s1.values).max() < 1e-12


def test_third_operator_is_hermitian():
    assert OPS.s3.hermiticity_defect() < 1e-12


def test_closure_defects_separate_the_two_sets():
    # reported diagnostic: the written first component breaks the algebra,
    # the cross-mode one closes on the valid subspace
    written, cross = spin.su2_closure_defects(DIM, PAR)
    assert cross < 1e-12
    assert written > 1.0


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

def test_half_integral_sector():
    rows = [r for r in spin.spin_spectrum(8, PAR) if r.sector == 1]
    assert len(rows) == 2
    assert sorted(r.projection for r in rows) == pytest.approx([-0.5, 0.5], abs=1e-12)
    assert rows[0].casimir == pytest.approx(0.75, abs=1e-12)


def test_vacuum_sector():
    rows = [r for r in spin.spin_spectrum(4, PAR) if r.sector == 0]
    assert len(rows) == 1
    assert rows[0].projection == pytest.approx(0.0, abs=1e-12)
    assert rows[0].casimir == 0.0


def test_sector_sizes_and_multiplicity():
    dim = 8
    rows = spin.spin_spectrum(dim, PAR)
    for sector in range(dim):
        members = sorted(r.projection for r in rows if r.sector == sector and r.complete)
        expected = [PAR.hbar * (2 * n1 - sector) / 2.0 for n1 in range(sector + 1)]
        assert len(members) == sector + 1
        assert np.abs(np.array(members) - np.array(expected)).max() < 1e-9


def test_incomplete_sectors_flagged():
    rows = spin.spin_spectrum(4, PAR)
    assert all(not r.complete for r in rows if r.sector > 3)
    assert all(r.complete for r in rows if r.sector <= 3)


def test_eigenvalue_relabelling():
    assert spin.lambda_relation(2.0, PAR) == pytest.approx(0.75, abs=1e-14)
    assert spin.lambda_relation(1.0, PAR) == 0.0
    assert spin.lambda_relation(3.0, PAR) == pytest.approx(2.0, abs=1e-14)


def test_relabelling_domain():
    with pytest.raises(DomainError):
        spin.lambda_relation(0.5, PAR)


def test_eigenvector_components():
    state = spin.spin_eigenvector(2, 1, DIM)
    index = 2 * DIM + 1
    assert state.values[index] == pytest.approx(math.sqrt(2.0), abs=1e-14)
    assert np.abs(np.delete(state.values, index)).max() == 0.0
    assert np.abs(OPS.number.values @ state.values - 3.0 * state.values).max() < 1e-13


def test_eigenvector_truncation_guard():
    with pytest.raises(OutOfTruncation):
        spin.spin_eigenvector(DIM, 0, DIM)


def test_vacuum_eigenvector():
    state = spin.spin_eigenvector(0, 0, DIM)
    assert state.values[0] == 1.0
    assert np.abs(state.values[1:]).max() == 0.0
