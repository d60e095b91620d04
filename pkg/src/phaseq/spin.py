"""Classical spin functions of the planar oscillator and their two-mode operators.

The four quadratic functions close under Poisson brackets with structure
{S_i, S_j} = -eps_ijk S_k, satisfy the sphere constraint
S1^2 + S2^2 + S3^2 = S0^2 / 4, and quantise through the per-axis normal-mode
map into two coupled ladder modes.  Joint spectra of the commuting pair
(number, S2') realise integral and half-integral multiplets: total number N
carries spin N/2.

One written transformed function does not survive scrutiny: the same-mode
squares form of the first spin component evaluates to a pure imaginary for
real phase points and cannot equal the (real) original.  The cross-mode form
(hbar/2)(q1 p2 + q2 p1) does.  Both are computed; equality is asserted only
for the components where it holds, and the verification report carries the
residual of the written form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock
from .canonical import to_normal_modes
from .errors import DomainError, OutOfTruncation
from .phasespace import NATURAL, PhasePoint, PhysParams


@dataclass(frozen=True)
class Phase4Point:
    x: float
    y: float
    px: float
    py: float

    def __post_init__(self):
        for value in (self.x, self.y, self.px, self.py):
            if not math.isfinite(value):
                raise ValueError("phase-space coordinates must be finite")


@dataclass(frozen=True)
class SpinValues:
    s0: float
    s1: float
    s2: float
    s3: float

    def casimir_residual(self) -> float:
        return abs(self.s1 ** 2 + self.s2 ** 2 + self.s3 ** 2 - 0.25 * self.s0 ** 2)


def spin_functions(pt: Phase4Point, par: PhysParams = NATURAL) -> SpinValues:
    """The four quadratic constants of the planar oscillator."""
    m, w = par.m, par.omega
    s1 = (pt.px * pt.py / m + m * w ** 2 * pt.x * pt.y) / (2.0 * w)
    s2 = (m * w ** 2 * (pt.x ** 2 - pt.y ** 2) + (pt.px ** 2 - pt.py ** 2) / m) / (4.0 * w)
    s3 = 0.5 * (pt.x * pt.py - pt.y * pt.px)
    s0 = ((pt.px ** 2 + pt.py ** 2) / m + m * w ** 2 * (pt.x ** 2 + pt.y ** 2)) / (2.0 * w)
    return SpinValues(s0, s1, s2, s3)


def poisson_bracket_4d(f, g, pt: Phase4Point, step: float | None = None):
    """Central-difference Poisson bracket over the planar phase space.

    f and g are callables f(x, y, px, py) -> scalar; the stencil step follows
    the same 1e-5 * max(1, |coordinate|) rule as the 1D bracket.
    """
    coords = np.array([pt.x, pt.y, pt.px, pt.py], dtype=np.float64)

    def gradient(func):
        out = np.empty(4, dtype=np.complex128)
        for axis in range(4):
            h = step if step is not None else 1e-5 * max(1.0, abs(coords[axis]))
            fwd = coords.copy()
            bwd = coords.copy()
            fwd[axis] += h
            bwd[axis] -= h
            out[axis] = (func(*fwd) - func(*bwd)) / (2.0 * h)
        return out

    df = gradient(f)
    dg = gradient(g)
    # axis order (x, y, px, py): position i pairs with momentum i + 2
    value = df[0] * dg[2] - df[2] * dg[0] + df[1] * dg[3] - df[3] * dg[1]
    return value if np.iscomplexobj(value) else float(value.real)


def spin_bracket_table(pt: Phase4Point, par: PhysParams = NATURAL, step: float | None = None):
    """4x4 table of {S_i, S_j} at a point, indices ordered S0..S3."""
    funcs = [
        lambda x, y, px, py, i=i: getattr(spin_functions(Phase4Point(x, y, px, py), par), f"s{i}")
        for i in range(4)
    ]
    table = np.zeros((4, 4))
    for i in range(4):
        for j in range(4):
            value = poisson_bracket_4d(funcs[i], funcs[j], pt, step)
            table[i, j] = value.real if isinstance(value, complex) else value
    return table


def two_mode_transform(pt: Phase4Point, par: PhysParams = NATURAL):
    """Per-axis normal-mode map: (x, px) -> (q1, p1) and (y, py) -> (q2, p2)."""
    first = to_normal_modes(PhasePoint(pt.x, pt.px), par)
    second = to_normal_modes(PhasePoint(pt.y, pt.py), par)
    return first.q1, first.p1, second.q1, second.p1


@dataclass(frozen=True)
class TransformedSpin:
    """Spin functions written in the transformed coordinates.

    s1_written is the same-mode squares form as printed; it is pure imaginary
    for real phase points and does not reproduce s1.  s1_cross is the
    cross-mode form that does.
    """

    s0: complex
    s1_written: complex
    s1_cross: complex
    s2: complex
    s3: complex


def transformed_spin_functions(q1, p1, q2, p2, par: PhysParams = NATURAL) -> TransformedSpin:
    hb = par.hbar
    return TransformedSpin(
        s0=hb * (q1 * p1 + q2 * p2),
        s1_written=hb / 2j * ((q1 ** 2 - q2 ** 2) + (p1 ** 2 - p2 ** 2)),
        s1_cross=hb / 2.0 * (q1 * p2 + q2 * p1),
        s2=hb / 2.0 * (q1 * p1 - q2 * p2),
        s3=hb / 2j * (q1 * p2 - q2 * p1),
    )


# ---------------------------------------------------------------------------
# two-mode operators and spectra
# ---------------------------------------------------------------------------

@dataclass
class TwoModeOperator:
    """Operator on the tensor product of two truncated modes.

    Basis index n = n1 * dim_per_mode + n2.
    """

    dim_per_mode: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        d2 = self.dim_per_mode ** 2
        if self.values.shape != (d2, d2):
            raise ValueError("operator shape does not match dim_per_mode^2")

    def hermiticity_defect(self) -> float:
        return float(np.abs(self.values - np.conj(self.values.T)).max())


@dataclass(frozen=True)
class TwoModeOperators:
    s0: TwoModeOperator
    s1: TwoModeOperator
    s2: TwoModeOperator
    s3: TwoModeOperator
    number: TwoModeOperator


def _mode_matrices(dim: int):
    a, adag, _ = fock.ladder_matrices(dim)
    eye = np.eye(dim, dtype=np.complex128)
    return (
        np.kron(a.values, eye),
        np.kron(adag.values, eye),
        np.kron(eye, a.values),
        np.kron(eye, adag.values),
    )


def two_mode_operators(dim: int, par: PhysParams = NATURAL) -> TwoModeOperators:
    """Second-quantised spin operators on two modes truncated at dim each.

    s0, s2, and the dimensionless number operator take their standard normal
    forms; s1 and s3 come from substituting creation for coordinates and
    annihilation for momenta in the transformed functions (no same-mode
    ordering ambiguity arises in either).  s1, like its classical written
    form, is anti-Hermitian; its algebra is reported, not asserted.
    """
    if dim < 2:
        raise ValueError("truncation must be at least 2")
    a1, c1, a2, c2 = _mode_matrices(dim)
    hb = par.hbar
    eye = np.eye(dim * dim, dtype=np.complex128)
    s0 = hb * (c1 @ a1 + c2 @ a2 + eye)
    s2 = 0.5 * hb * (c1 @ a1 - c2 @ a2)
    s1 = hb / 2j * ((c1 @ c1 - c2 @ c2) + (a1 @ a1 - a2 @ a2))
    s3 = hb / 2j * (c1 @ a2 - c2 @ a1)
    number = c1 @ a1 + c2 @ a2
    wrap = lambda m: TwoModeOperator(dim, m)
    return TwoModeOperators(wrap(s0), wrap(s1), wrap(s2), wrap(s3), wrap(number))


def su2_closure_defects(dim: int, par: PhysParams = NATURAL) -> tuple[float, float]:
    """Commutator-closure defects of the quantized spin triples (reported only).

    Measures max |[S_i, S_j] + i*hbar*eps_ijk*S_k| over the cyclic triples,
    matching the sign of the classical bracket table, for two choices of the
    first component: the written same-mode-squares operator and the cross-mode
    operator (hbar/2)(a1+ a2 + a2+ a1).  The written set does not close; the
    cross set does.
    """
    ops = two_mode_operators(dim, par)
    a1, c1, a2, c2 = _mode_matrices(dim)
    cross = par.hbar / 2.0 * (c1 @ a2 + c2 @ a1)
    occupations = np.arange(dim * dim)
    valid = ((occupations // dim) <= dim - 2) & ((occupations % dim) <= dim - 2)
    block = np.ix_(valid, valid)

    def defect(first):
        triple = (first, ops.s2.values, ops.s3.values)
        worst = 0.0
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            commutator = triple[i] @ triple[j] - triple[j] @ triple[i]
            worst = max(
                worst, float(np.abs((commutator + 1j * par.hbar * triple[k])[block]).max())
            )
        return worst

    return defect(ops.s1.values), defect(cross)


@dataclass(frozen=True)
class SpinSpectrumRow:
    sector: int        # total excitation number N
    projection: float  # S2' eigenvalue m
    casimir: float     # hbar^2 (N/2)(N/2 + 1)
    complete: bool     # truncation holds the full multiplet only for N <= dim-1


def spin_spectrum(dim: int, par: PhysParams = NATURAL) -> list[SpinSpectrumRow]:
    """Joint spectrum of the commuting pair (number, S2'), sector by sector.

    The number operator is diagonalised, eigenvectors are grouped into
    integer sectors, and S2' is diagonalised inside each sector.  Sectors
    with N > dim - 1 lose states to the truncation and are flagged.
    """
    ops = two_mode_operators(dim, par)
    numbers, vectors = np.linalg.eigh(ops.number.values)
    rows: list[SpinSpectrumRow] = []
    for sector in range(0, 2 * dim - 1):
        members = np.where(np.abs(numbers - sector) < 1e-6)[0]
        if members.size == 0:
            continue
        basis = vectors[:, members]
        block = np.conj(basis.T) @ ops.s2.values @ basis
        projections = np.linalg.eigvalsh(block)
        casimir = par.hbar ** 2 * (sector / 2.0) * (sector / 2.0 + 1.0)
        complete = sector <= dim - 1
        for m in projections:
            rows.append(SpinSpectrumRow(sector, float(m), casimir, complete))
    return rows


def lambda_relation(lam: float, par: PhysParams = NATURAL) -> float:
    """Squared-spin eigenvalue hbar^2 ((lam-1)/2)((lam+1)/2) for lam >= 1.

    Identical to hbar^2 (N/2)(N/2 + 1) at N = lam - 1; both forms are
    evaluated and compared as a guard against transcription drift.
    """
    if lam < 1.0:
        raise DomainError(f"lambda must be at least 1, got {lam!r}")
    hb2 = par.hbar ** 2
    value = hb2 * ((lam - 1.0) / 2.0) * ((lam + 1.0) / 2.0)
    n = lam - 1.0
    alt = hb2 * (n / 2.0) * (n / 2.0 + 1.0)
    if abs(value - alt) > 1e-12 * max(1.0, abs(value)):
        raise AssertionError("eigenvalue identity violated beyond roundoff")
    return value


def spin_eigenvector(n1: int, n2: int, dim: int) -> fock.FockState:
    """Repeated creation on the two-mode vacuum: component sqrt(n1! n2!).

    The result is the unnormalised joint eigenvector of the number operator
    (eigenvalue n1 + n2) and S2' (eigenvalue hbar (n1 - n2) / 2).
    """
    if not (0 <= n1 < dim and 0 <= n2 < dim):
        raise OutOfTruncation(f"occupations ({n1}, {n2}) do not fit in truncation {dim}")
    a1, c1, a2, c2 = _mode_matrices(dim)
    vec = np.zeros(dim * dim, dtype=np.complex128)
    vec[0] = 1.0
    for _ in range(n1):
        vec = c1 @ vec
    for _ in range(n2):
        vec = c2 @ vec
    return fock.FockState(dim * dim, vec, False)
