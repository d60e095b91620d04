"""Truncated ladder matrices, the holomorphic polynomial picture, and spectra.

The polynomial (holomorphic) picture uses the consistent convention in which
creation multiplies by the complex coordinate and annihilation differentiates
with respect to it, giving a unit commutator.  The written convention carries
a factor -i*hbar on the derivative; its commutator and evolution rate are
computed by the report helpers here but never asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeOverflow, OutOfTruncation
from .phasespace import NATURAL, PhysParams

DEFAULT_MAX_DEGREE = 128
DEFAULT_TRUNCATION = 64


@dataclass
class FockOperator:
    dim: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != (self.dim, self.dim):
            raise ValueError("operator matrix shape does not match dim")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("operator entries must be finite")


@dataclass
class FockState:
    dim: int
    values: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != (self.dim,):
            raise ValueError("state vector shape does not match dim")
        if self.normalized:
            norm = float(np.linalg.norm(self.values))
            if abs(norm - 1.0) > 1e-12:
                raise ValueError(f"state flagged normalized has norm {norm!r}")


def ladder_matrices(dim: int):
    """Annihilation, creation, and number matrices truncated at dim."""
    if dim < 2:
        raise ValueError("truncation must be at least 2")
    a = np.zeros((dim, dim), dtype=np.complex128)
    for n in range(1, dim):
        a[n - 1, n] = math.sqrt(n)
    adag = a.conj().T
    n_op = adag @ a
    return FockOperator(dim, a), FockOperator(dim, adag), FockOperator(dim, n_op)


def number_state(n: int, dim: int, normalized: bool = False) -> FockState:
    """(creation)^n applied to the vacuum; component sqrt(n!) at index n.

    The normalized flag divides by sqrt(n!) to produce a unit vector.
    """
    if not 0 <= n < dim:
        raise OutOfTruncation(f"excitation {n} does not fit in truncation {dim}")
    _, adag, _ = ladder_matrices(dim)
    vec = np.zeros(dim, dtype=np.complex128)
    vec[0] = 1.0
    for _ in range(n):
        vec = adag.values @ vec
    if normalized:
        vec = vec / math.sqrt(math.factorial(n))
    return FockState(dim, vec, normalized)


@dataclass(frozen=True)
class SpectrumResult:
    energies: np.ndarray
    trusted: np.ndarray


def ho_spectrum(dim: int = DEFAULT_TRUNCATION, par: PhysParams = NATURAL) -> SpectrumResult:
    """Eigenvalues of hbar*omega*(N + P/2) sorted ascending.

    P projects onto excitations below the truncation edge, which detaches the
    single corrupted corner eigenvalue cleanly above the trusted band; the
    last sorted entry is the truncation artifact.
    """
    _, _, n_op = ladder_matrices(dim)
    below_edge = np.eye(dim)
    below_edge[-1, -1] = 0.0
    h = par.hbar * par.omega * (n_op.values + 0.5 * below_edge)
    energies = np.linalg.eigvalsh(h)
    trusted = np.ones(dim, dtype=bool)
    trusted[-1] = False
    return SpectrumResult(energies, trusted)


# ---------------------------------------------------------------------------
# holomorphic polynomial picture
# ---------------------------------------------------------------------------

@dataclass
class BargmannPoly:
    """Polynomial amplitude sum_n c_n z^n in the holomorphic coordinate.

    Coefficients are stored in ascending degree and trimmed to canonical form
    (nonzero trailing coefficient); the zero amplitude is represented as the
    single coefficient [0].
    """

    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(1, dtype=np.complex128))

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=np.complex128))
        if c.size == 0:
            c = np.zeros(1, dtype=np.complex128)
        last = c.size
        while last > 1 and c[last - 1] == 0.0:
            last -= 1
        self.coeffs = np.ascontiguousarray(c[:last])
        if not np.all(np.isfinite(self.coeffs)):
            raise ValueError("polynomial coefficients must be finite")

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0.0


def monomial(n: int, amplitude: complex = 1.0) -> BargmannPoly:
    c = np.zeros(n + 1, dtype=np.complex128)
    c[n] = amplitude
    return BargmannPoly(c)


def bargmann_apply(
    which: str,
    poly: BargmannPoly,
    par: PhysParams = NATURAL,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> BargmannPoly:
    """Apply create (multiply by z), annihilate (d/dz), or the energy operator."""
    c = poly.coeffs
    if which == "create":
        if poly.degree + 1 > max_degree:
            raise DegreeOverflow(f"degree {poly.degree + 1} exceeds maximum {max_degree}")
        return BargmannPoly(np.concatenate([np.zeros(1, dtype=np.complex128), c]))
    if which == "annihilate":
        if c.size == 1:
            return BargmannPoly(np.zeros(1, dtype=np.complex128))
        return BargmannPoly(c[1:] * np.arange(1, c.size))
    if which == "hamiltonian":
        n = np.arange(c.size)
        return BargmannPoly(par.hbar * par.omega * (n + 0.5) * c)
    raise ValueError(f"unknown action {which!r}")


def annihilate_written_convention(poly: BargmannPoly, par: PhysParams = NATURAL) -> BargmannPoly:
    """Annihilation as literally written, -i*hbar d/dz (report helper only)."""
    c = poly.coeffs
    if c.size == 1:
        return BargmannPoly(np.zeros(1, dtype=np.complex128))
    return BargmannPoly(-1j * par.hbar * c[1:] * np.arange(1, c.size))


def bargmann_evolve(poly: BargmannPoly, t: float, par: PhysParams = NATURAL) -> BargmannPoly:
    """Mode-by-mode evolution: degree n picks up exp(-i*omega*(n + 1/2)*t)."""
    n = np.arange(poly.coeffs.size)
    return BargmannPoly(poly.coeffs * np.exp(-1j * par.omega * (n + 0.5) * t))


def bargmann_eval(poly: BargmannPoly, z) -> np.ndarray:
    """Evaluate the polynomial amplitude at complex points."""
    return np.polynomial.polynomial.polyval(np.asarray(z, dtype=np.complex128), poly.coeffs)


def fock_state_from_poly(poly: BargmannPoly, dim: int) -> FockState:
    """Natural isomorphism: the degree-n monomial maps to sqrt(n!) at index n."""
    if poly.degree >= dim:
        raise OutOfTruncation(f"degree {poly.degree} does not fit in truncation {dim}")
    vec = np.zeros(dim, dtype=np.complex128)
    for n, c in enumerate(poly.coeffs):
        vec[n] = c * math.sqrt(math.factorial(n))
    return FockState(dim, vec, False)


def poly_from_fock_state(state: FockState) -> BargmannPoly:
    c = np.array(
        [state.values[n] / math.sqrt(math.factorial(n)) for n in range(state.dim)],
        dtype=np.complex128,
    )
    return BargmannPoly(c)


@dataclass(frozen=True)
class PhaseCircleReport:
    """Pointwise deviations of the ladder actions on the unit phase circle."""

    n: int
    create_deviation: float
    annihilate_deviation: float


def phase_circle_action(n: int, theta: np.ndarray) -> PhaseCircleReport:
    """Check the ladder actions on circle waves exp(i n theta).

    Creation must map exp(i n theta) to exp(i (n+1) theta) exactly (it is
    multiplication by the circle coordinate); annihilation lands on
    n * exp(i (n-1) theta), i.e. the lowered wave up to its integer factor,
    and kills the vacuum.
    """
    if n < 0:
        raise ValueError("mode index must be nonnegative")
    theta = np.asarray(theta, dtype=np.float64)
    circle = np.exp(1j * theta)
    base = monomial(n)
    raised = bargmann_eval(bargmann_apply("create", base), circle)
    create_dev = float(np.abs(raised - np.exp(1j * (n + 1) * theta)).max())
    lowered = bargmann_eval(bargmann_apply("annihilate", base), circle)
    if n == 0:
        annihilate_dev = float(np.abs(lowered).max())
    else:
        annihilate_dev = float(np.abs(lowered - n * np.exp(1j * (n - 1) * theta)).max())
    return PhaseCircleReport(n, create_dev, annihilate_dev)
