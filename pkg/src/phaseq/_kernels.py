"""Bicubic-spline interpolation kernels with a numba fast path.

The Liouville solver backtraces every grid node through the exact flow and
resamples the density there, so coefficient filtering and stencil evaluation
dominate its runtime.  Both steps exist in two variants: numba-compiled
loops and a vectorised pure-numpy fallback.  Selection happens once at
import time from the PHASEQ_NUMBA environment variable ("0"/"false"/"off"
forces the numpy path); the numpy path is also used when numba cannot be
imported.  ``benchmarks/bench_interpolation.py`` times the two side by side.

The interpolant is the interpolating cubic B-spline with zero extension
outside the sample window: a tridiagonal prefilter turns samples into spline
coefficients, and evaluation combines a 4x4 coefficient stencil with cubic
basis weights.  The two backends solve the same equations and agree to
roundoff.
"""

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - environment without numba
    numba = None
    HAVE_NUMBA = False

# Prefilter system: (1/6) c[k-1] + (4/6) c[k] + (1/6) c[k+1] = f[k] with
# c[-1] = c[n] = 0; fields are required to vanish at the window edge anyway.
_MAIN = 4.0 / 6.0
_OFF = 1.0 / 6.0


def numba_requested() -> bool:
    flag = os.environ.get("PHASEQ_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "off", "no")


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

def _prefilter_columns_numpy(field: np.ndarray) -> np.ndarray:
    n = field.shape[0]
    matrix = np.zeros((n, n))
    idx = np.arange(n)
    matrix[idx, idx] = _MAIN
    matrix[idx[:-1], idx[:-1] + 1] = _OFF
    matrix[idx[1:], idx[1:] - 1] = _OFF
    return np.linalg.solve(matrix, field)


def coefficients_numpy(field: np.ndarray) -> np.ndarray:
    """Spline coefficients of a 2D sample array (zero edge extension)."""
    half = _prefilter_columns_numpy(np.asarray(field, dtype=np.float64))
    return np.ascontiguousarray(_prefilter_columns_numpy(half.T).T)


def _basis_weights(t):
    t2 = t * t
    t3 = t2 * t
    w0 = (1.0 - 3.0 * t + 3.0 * t2 - t3) / 6.0
    w1 = (4.0 - 6.0 * t2 + 3.0 * t3) / 6.0
    w2 = (1.0 + 3.0 * t + 3.0 * t2 - 3.0 * t3) / 6.0
    w3 = t3 / 6.0
    return w0, w1, w2, w3


def _padded(coeffs: np.ndarray) -> np.ndarray:
    n0, n1 = coeffs.shape
    out = np.zeros((n0 + 4, n1 + 4))
    out[2:-2, 2:-2] = coeffs
    return out


def sample_numpy(coeffs: np.ndarray, xi: np.ndarray, yi: np.ndarray) -> np.ndarray:
    """Evaluate the spline at fractional index coordinates, zero outside."""
    n0, n1 = coeffs.shape
    padded = _padded(coeffs)
    base_x = np.floor(xi)
    base_y = np.floor(yi)
    tx = xi - base_x
    ty = yi - base_y
    ix = np.clip(base_x.astype(np.int64) + 2, 0, n0 + 1)
    iy = np.clip(base_y.astype(np.int64) + 2, 0, n1 + 1)
    wx = _basis_weights(tx)
    wy = _basis_weights(ty)
    total = np.zeros(np.shape(xi), dtype=np.float64)
    for a in range(4):
        row = np.zeros_like(total)
        for b in range(4):
            row = row + wy[b] * padded[ix + a - 1, iy + b - 1]
        total = total + wx[a] * row
    inside = (xi > -1.0) & (xi < float(n0)) & (yi > -1.0) & (yi < float(n1))
    return np.where(inside, total, 0.0)


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _thomas_columns(values):
        # Solve the constant tridiagonal system along axis 0, all columns.
        n0, n1 = values.shape
        upper = np.empty(n0)
        denom = np.empty(n0)
        denom[0] = _MAIN
        upper[0] = _OFF / _MAIN
        for i in range(1, n0):
            denom[i] = _MAIN - _OFF * upper[i - 1]
            upper[i] = _OFF / denom[i]
        for j in range(n1):
            values[0, j] = values[0, j] / denom[0]
            for i in range(1, n0):
                values[i, j] = (values[i, j] - _OFF * values[i - 1, j]) / denom[i]
            for i in range(n0 - 2, -1, -1):
                values[i, j] -= upper[i] * values[i + 1, j]

    @numba.njit(cache=True)
    def _thomas_rows(values):
        n0, n1 = values.shape
        upper = np.empty(n1)
        denom = np.empty(n1)
        denom[0] = _MAIN
        upper[0] = _OFF / _MAIN
        for j in range(1, n1):
            denom[j] = _MAIN - _OFF * upper[j - 1]
            upper[j] = _OFF / denom[j]
        for i in range(n0):
            values[i, 0] = values[i, 0] / denom[0]
            for j in range(1, n1):
                values[i, j] = (values[i, j] - _OFF * values[i, j - 1]) / denom[j]
            for j in range(n1 - 2, -1, -1):
                values[i, j] -= upper[j] * values[i, j + 1]

    @numba.njit(cache=True)
    def _sample_points(padded, n0, n1, xi, yi, out):
        for k in range(xi.size):
            x = xi[k]
            y = yi[k]
            if x <= -1.0 or x >= n0 or y <= -1.0 or y >= n1:
                out[k] = 0.0
                continue
            bx = np.floor(x)
            by = np.floor(y)
            tx = x - bx
            ty = y - by
            ix = int(bx) + 2
            iy = int(by) + 2
            tx2 = tx * tx
            tx3 = tx2 * tx
            wx0 = (1.0 - 3.0 * tx + 3.0 * tx2 - tx3) / 6.0
            wx1 = (4.0 - 6.0 * tx2 + 3.0 * tx3) / 6.0
            wx2 = (1.0 + 3.0 * tx + 3.0 * tx2 - 3.0 * tx3) / 6.0
            wx3 = tx3 / 6.0
            ty2 = ty * ty
            ty3 = ty2 * ty
            wy0 = (1.0 - 3.0 * ty + 3.0 * ty2 - ty3) / 6.0
            wy1 = (4.0 - 6.0 * ty2 + 3.0 * ty3) / 6.0
            wy2 = (1.0 + 3.0 * ty + 3.0 * ty2 - 3.0 * ty3) / 6.0
            wy3 = ty3 / 6.0
            total = 0.0
            for a in range(4):
                row = (
                    wy0 * padded[ix + a - 1, iy - 1]
                    + wy1 * padded[ix + a - 1, iy]
                    + wy2 * padded[ix + a - 1, iy + 1]
                    + wy3 * padded[ix + a - 1, iy + 2]
                )
                if a == 0:
                    total = wx0 * row
                elif a == 1:
                    total += wx1 * row
                elif a == 2:
                    total += wx2 * row
                else:
                    total += wx3 * row
            out[k] = total

    def coefficients_numba(field: np.ndarray) -> np.ndarray:
        values = np.array(field, dtype=np.float64)
        _thomas_columns(values)
        _thomas_rows(values)
        return values

    def sample_numba(coeffs: np.ndarray, xi: np.ndarray, yi: np.ndarray) -> np.ndarray:
        n0, n1 = coeffs.shape
        padded = _padded(coeffs)
        xf = np.ascontiguousarray(xi, dtype=np.float64).ravel()
        yf = np.ascontiguousarray(yi, dtype=np.float64).ravel()
        out = np.empty(xf.size, dtype=np.float64)
        _sample_points(padded, float(n0), float(n1), xf, yf, out)
        return out.reshape(np.shape(xi))

else:  # pragma: no cover - environment without numba
    coefficients_numba = None
    sample_numba = None


def resolve(name=None):
    """Return the (coefficients, sample) pair for the named backend."""
    if name is None:
        name = BACKEND
    if name == "numba":
        if coefficients_numba is None:
            raise ValueError("numba backend requested but numba is not available")
        return coefficients_numba, sample_numba
    if name == "numpy":
        return coefficients_numpy, sample_numpy
    raise ValueError(f"unknown interpolation backend {name!r}")


if HAVE_NUMBA and numba_requested():
    BACKEND = "numba"
    bicubic_coefficients = coefficients_numba
    bicubic_sample = sample_numba
else:
    BACKEND = "numpy"
    bicubic_coefficients = coefficients_numpy
    bicubic_sample = sample_numpy
