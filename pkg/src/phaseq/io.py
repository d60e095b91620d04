"""CSV/JSON serialisation of fields, spectra, and polynomial amplitudes.

Matrix fields go to plain CSV (rows follow the q index ascending, columns
the second index ascending) with a JSON sidecar carrying the grid and time;
1D fields go to column CSV with the same sidecar convention.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .fock import BargmannPoly, SpectrumResult
from .phasespace import PhaseDensity, PhaseGrid
from .schrodinger import PositionGrid, WaveFunction
from .spin import SpinSpectrumRow
from .wigner import DensitySlice

_FLOAT = "%.17g"


def _sidecar_path(stem: Path) -> Path:
    return stem.with_suffix(".json")


def _grid_header(grid: PhaseGrid, time: float) -> dict:
    return {
        "q_min": grid.q_min,
        "q_max": grid.q_max,
        "p_min": grid.p_min,
        "p_max": grid.p_max,
        "n_q": grid.n_q,
        "n_p": grid.n_p,
        "time": time,
    }


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def save_phase_density(density: PhaseDensity, stem) -> tuple[Path, Path]:
    stem = Path(stem)
    csv_path = stem.with_suffix(".csv")
    np.savetxt(csv_path, density.values, delimiter=",", fmt=_FLOAT)
    json_path = _sidecar_path(stem)
    _write_json(json_path, _grid_header(density.grid, density.time))
    return csv_path, json_path


def load_phase_density(stem) -> PhaseDensity:
    stem = Path(stem)
    meta = json.loads(_sidecar_path(stem).read_text())
    grid = PhaseGrid(
        meta["q_min"], meta["q_max"], meta["p_min"], meta["p_max"],
        int(meta["n_q"]), int(meta["n_p"]),
    )
    values = np.loadtxt(stem.with_suffix(".csv"), delimiter=",").reshape(grid.n_q, grid.n_p)
    return PhaseDensity(grid, values, meta["time"])


def save_density_slice(rho: DensitySlice, stem) -> tuple[Path, Path, Path]:
    stem = Path(stem)
    real_path = stem.parent / (stem.name + "_real.csv")
    imag_path = stem.parent / (stem.name + "_imag.csv")
    np.savetxt(real_path, rho.values.real, delimiter=",", fmt=_FLOAT)
    np.savetxt(imag_path, rho.values.imag, delimiter=",", fmt=_FLOAT)
    json_path = _sidecar_path(stem)
    _write_json(json_path, _grid_header(rho.grid, rho.time))
    return real_path, imag_path, json_path


def load_density_slice(stem, hbar: float = 1.0) -> DensitySlice:
    stem = Path(stem)
    meta = json.loads(_sidecar_path(stem).read_text())
    grid = PhaseGrid(
        meta["q_min"], meta["q_max"], meta["p_min"], meta["p_max"],
        int(meta["n_q"]), int(meta["n_p"]),
    )
    real = np.loadtxt(stem.parent / (stem.name + "_real.csv"), delimiter=",")
    imag = np.loadtxt(stem.parent / (stem.name + "_imag.csv"), delimiter=",")
    values = real.reshape(grid.n_q, grid.n_p) + 1j * imag.reshape(grid.n_q, grid.n_p)
    return DensitySlice(grid, values, meta["time"], hbar)


def save_wavefunction(phi: WaveFunction, stem) -> tuple[Path, Path]:
    stem = Path(stem)
    csv_path = stem.with_suffix(".csv")
    table = np.column_stack([phi.grid.q, phi.values.real, phi.values.imag])
    np.savetxt(csv_path, table, delimiter=",", fmt=_FLOAT, header="q,re,im", comments="")
    json_path = _sidecar_path(stem)
    _write_json(
        json_path,
        {"q_min": phi.grid.q_min, "q_max": phi.grid.q_max, "n": phi.grid.n, "time": phi.time},
    )
    return csv_path, json_path


def load_wavefunction(stem) -> WaveFunction:
    stem = Path(stem)
    meta = json.loads(_sidecar_path(stem).read_text())
    grid = PositionGrid(meta["q_min"], meta["q_max"], int(meta["n"]))
    table = np.loadtxt(stem.with_suffix(".csv"), delimiter=",", skiprows=1)
    return WaveFunction(grid, table[:, 1] + 1j * table[:, 2], meta["time"])


def save_spectrum_csv(path, spectrum: SpectrumResult) -> Path:
    path = Path(path)
    lines = ["index,energy,trusted"]
    for i, (energy, flag) in enumerate(zip(spectrum.energies, spectrum.trusted)):
        lines.append(f"{i},{energy:.17g},{int(flag)}")
    path.write_text("\n".join(lines) + "\n")
    return path


def save_spin_csv(path, rows: list[SpinSpectrumRow], hbar: float = 1.0) -> Path:
    path = Path(path)
    lines = ["N,two_s,m_over_hbar,s_squared_over_hbar2,complete_flag"]
    for row in rows:
        lines.append(
            f"{row.sector},{row.sector},{row.projection / hbar:.17g},"
            f"{row.casimir / hbar ** 2:.17g},{int(row.complete)}"
        )
    path.write_text("\n".join(lines) + "\n")
    return path


def save_residual_field(stem, positions, values, equation: str, convention: str) -> tuple[Path, Path]:
    stem = Path(stem)
    csv_path = stem.with_suffix(".csv")
    table = np.column_stack([positions, values])
    np.savetxt(csv_path, table, delimiter=",", fmt=_FLOAT, header="q,residual", comments="")
    json_path = _sidecar_path(stem)
    _write_json(json_path, {"equation": equation, "convention": convention})
    return csv_path, json_path


def save_bargmann_poly(path, poly: BargmannPoly) -> Path:
    path = Path(path)
    payload = {"coeffs": [[float(c.real), float(c.imag)] for c in poly.coeffs]}
    _write_json(path, payload)
    return path


def load_bargmann_poly(path) -> BargmannPoly:
    data = json.loads(Path(path).read_text())
    coeffs = np.array([complex(re, im) for re, im in data["coeffs"]], dtype=np.complex128)
    return BargmannPoly(coeffs)
