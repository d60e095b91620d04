"""Phase-space grids, the classical oscillator flow, and Liouville transport.

Densities live on rectangular (q, p) grids with power-of-two point counts so
the transform modules can run exact discrete Fourier pairs on the same data.
Propagation follows characteristics backwards through the closed-form flow
and resamples with a prefiltered bicubic spline: there is no time-stepping
error, only interpolation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BoundaryLeak


@dataclass(frozen=True)
class PhysParams:
    """Oscillator constants: mass, angular frequency, and action quantum."""

    m: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("m", "omega", "hbar"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")


NATURAL = PhysParams(1.0, 1.0, 1.0)


@dataclass(frozen=True)
class PhasePoint:
    q: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.q) and math.isfinite(self.p)):
            raise ValueError("phase-space coordinates must be finite")


def _is_power_of_two(n) -> bool:
    return isinstance(n, (int, np.integer)) and n >= 2 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform rectangular grid over [q_min, q_max) x [p_min, p_max)."""

    q_min: float
    q_max: float
    p_min: float
    p_max: float
    n_q: int
    n_p: int

    def __post_init__(self):
        if not (_is_power_of_two(self.n_q) and _is_power_of_two(self.n_p)):
            raise ValueError("n_q and n_p must be powers of two (spectral transforms)")
        if not (self.q_max > self.q_min and self.p_max > self.p_min):
            raise ValueError("grid extents must be strictly ordered")

    @property
    def dq(self) -> float:
        return (self.q_max - self.q_min) / self.n_q

    @property
    def dp(self) -> float:
        return (self.p_max - self.p_min) / self.n_p

    @property
    def q(self) -> np.ndarray:
        return self.q_min + self.dq * np.arange(self.n_q)

    @property
    def p(self) -> np.ndarray:
        return self.p_min + self.dp * np.arange(self.n_p)

    def meshes(self):
        return np.meshgrid(self.q, self.p, indexing="ij")


def default_grid(extent: float = 8.0, n: int = 256) -> PhaseGrid:
    """Square grid [-extent, extent) in both coordinates."""
    return PhaseGrid(-extent, extent, -extent, extent, n, n)


@dataclass
class PhaseDensity:
    """Real distribution F(q, p) sampled on a PhaseGrid.

    Construction checks shape and finiteness only.  Classical densities are
    additionally nonnegative and normalised, but transform images of excited
    quantum states are legitimate quasi-densities with negative regions, so
    those two checks live in :meth:`validate_classical` and are applied where
    a genuinely classical distribution is required.
    """

    grid: PhaseGrid
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (self.grid.n_q, self.grid.n_p):
            raise ValueError(
                f"values shape {self.values.shape} does not match grid "
                f"({self.grid.n_q}, {self.grid.n_p})"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("density values must be finite")

    def mass(self) -> float:
        inner = np.trapezoid(self.values, dx=self.grid.dp, axis=1)
        return float(np.trapezoid(inner, dx=self.grid.dq))

    def validate_classical(self, mass_tol: float = 1e-6, negative_tol: float = 1e-12) -> None:
        low = float(self.values.min())
        if low < -negative_tol:
            raise ValueError(f"density has negative values down to {low:.3e}")
        mass = self.mass()
        if abs(mass - 1.0) > mass_tol:
            raise ValueError(f"density mass {mass!r} deviates from 1 beyond {mass_tol}")


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def hamiltonian(pt: PhasePoint, par: PhysParams) -> float:
    """Quadratic oscillator energy p^2/2m + m w^2 q^2 / 2."""
    return pt.p ** 2 / (2.0 * par.m) + 0.5 * par.m * par.omega ** 2 * pt.q ** 2


def hamilton_flow(pt: PhasePoint, t: float, par: PhysParams) -> PhasePoint:
    """Exact phase-space rotation of the oscillator flow (not an integrator)."""
    c = math.cos(par.omega * t)
    s = math.sin(par.omega * t)
    mw = par.m * par.omega
    return PhasePoint(pt.q * c + (pt.p / mw) * s, pt.p * c - mw * pt.q * s)


FRAME_CELLS = 2
FRAME_MASS_LIMIT = 1e-4


def frame_mass(density: PhaseDensity) -> float:
    """Absolute mass in the outer two-cell frame of the grid."""
    v = np.abs(density.values)
    k = FRAME_CELLS
    total = v[:k, :].sum() + v[-k:, :].sum() + v[k:-k, :k].sum() + v[k:-k, -k:].sum()
    return float(total * density.grid.dq * density.grid.dp)


def liouville_propagate(
    f: PhaseDensity, t: float, par: PhysParams, backend: str | None = None
) -> PhaseDensity:
    """Transport a density along the flow for time t.

    Every node is backtraced through the closed-form flow and the initial
    density is resampled there with the prefiltered bicubic spline; points
    that backtrace out of the grid contribute zero density.
    """
    grid = f.grid
    qm, pm = grid.meshes()
    c = math.cos(par.omega * t)
    s = math.sin(par.omega * t)
    mw = par.m * par.omega
    q_src = qm * c - (pm / mw) * s
    p_src = pm * c + mw * qm * s
    xi = (q_src - grid.q_min) / grid.dq
    yi = (p_src - grid.p_min) / grid.dp
    coefficients, sample = _kernels.resolve(backend)
    new_values = sample(coefficients(f.values), xi, yi)
    result = PhaseDensity(grid, new_values, f.time + t)
    leaked = frame_mass(result)
    if leaked > FRAME_MASS_LIMIT:
        raise BoundaryLeak(
            f"{leaked:.3e} of mass in the outer {FRAME_CELLS}-cell frame after backtrace"
        )
    return result


def poisson_bracket(f, g, pt: PhasePoint, step: float | None = None):
    """Central-difference {f, g} at a point; observables may be complex valued.

    f and g are callables f(q, p) -> scalar.  The stencil step defaults to
    1e-5 * max(1, |coordinate|) per axis, balancing truncation against
    roundoff for the O(h^2) stencil.
    """
    hq = step if step is not None else 1e-5 * max(1.0, abs(pt.q))
    hp = step if step is not None else 1e-5 * max(1.0, abs(pt.p))
    df_dq = (f(pt.q + hq, pt.p) - f(pt.q - hq, pt.p)) / (2.0 * hq)
    df_dp = (f(pt.q, pt.p + hp) - f(pt.q, pt.p - hp)) / (2.0 * hp)
    dg_dq = (g(pt.q + hq, pt.p) - g(pt.q - hq, pt.p)) / (2.0 * hq)
    dg_dp = (g(pt.q, pt.p + hp) - g(pt.q, pt.p - hp)) / (2.0 * hp)
    return df_dq * dg_dp - df_dp * dg_dq


def expectation(f: PhaseDensity, obs) -> float:
    """Trapezoidal integral of obs * F; obs is a scalar, array, or callable(Q, P)."""
    if callable(obs):
        qm, pm = f.grid.meshes()
        field = np.asarray(obs(qm, pm), dtype=np.float64)
    else:
        field = np.asarray(obs, dtype=np.float64)
    integrand = np.broadcast_to(field, f.values.shape) * f.values
    inner = np.trapezoid(integrand, dx=f.grid.dp, axis=1)
    return float(np.trapezoid(inner, dx=f.grid.dq))


# ---------------------------------------------------------------------------
# density constructors
# ---------------------------------------------------------------------------

def gaussian_density(grid: PhaseGrid, par: PhysParams, q0: float = 0.0, p0: float = 0.0) -> PhaseDensity:
    """Minimum-uncertainty Gaussian centred at (q0, p0), discretely normalised."""
    qm, pm = grid.meshes()
    mw = par.m * par.omega
    values = np.exp(-(mw * (qm - q0) ** 2 + (pm - p0) ** 2 / mw) / par.hbar)
    density = PhaseDensity(grid, values, 0.0)
    return PhaseDensity(grid, values / density.mass(), 0.0)


def hamiltonian_gaussian(grid: PhaseGrid, par: PhysParams, width: float = 1.0) -> PhaseDensity:
    """Stationary density proportional to exp(-H / (width * hbar * omega))."""
    qm, pm = grid.meshes()
    h = pm ** 2 / (2.0 * par.m) + 0.5 * par.m * par.omega ** 2 * qm ** 2
    values = np.exp(-h / (width * par.hbar * par.omega))
    density = PhaseDensity(grid, values, 0.0)
    return PhaseDensity(grid, values / density.mass(), 0.0)
