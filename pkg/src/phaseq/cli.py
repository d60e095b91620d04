"""Command-line harness: verify | spectrum | spin | evolve.

Exit codes: 0 success (all thresholded checks pass), 1 verification failure,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io, report
from .errors import ConfigError, PhaseqError
from .fock import ho_spectrum
from .phasespace import default_grid
from .report import SuiteConfig
from .schrodinger import (
    PositionGrid,
    coherent_state,
    equivalence_report,
    hermite_eigenstate,
    split_step_evolve,
)
from .spin import spin_spectrum
from .wigner import wavefunction_to_density


def _load_config(path: str | None) -> SuiteConfig:
    if path is None:
        return SuiteConfig()
    file = Path(path)
    if not file.is_file():
        raise ConfigError(f"configuration file not found: {path}")
    try:
        data = json.loads(file.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read configuration {path}: {exc}") from exc
    return SuiteConfig.from_mapping(data)


def cmd_verify(args) -> int:
    config = _load_config(args.config)
    entries = report.run_suite(config)
    payload = report.report_payload(entries, config, timestamp=not args.no_timestamp)
    out = Path(args.out or "verify_report.json")
    out.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    for entry in entries:
        gate = "-" if entry.threshold is None else f"{entry.threshold:.0e}"
        print(
            f"{entry.equation_id:16s} {entry.status:8s} residual={entry.residual:.3e} "
            f"threshold={gate:8s} [{entry.module}.{entry.operation}] {entry.convention}"
        )
    failed = [e for e in entries if e.status == report.FAIL]
    print(f"report written to {out}")
    print(f"{len(entries)} checks, {len(failed)} failed")
    return 0 if not failed else 1


def cmd_spectrum(args) -> int:
    config = _load_config(args.config)
    if args.cutoff < 2:
        print("error: --cutoff must be at least 2", file=sys.stderr)
        return 2
    spectrum = ho_spectrum(args.cutoff, config.params)
    out = Path(args.out or "spectrum.csv")
    io.save_spectrum_csv(out, spectrum)
    print(f"spectrum written to {out}")
    return 0


def cmd_spin(args) -> int:
    config = _load_config(args.config)
    if args.n_max < 0:
        print("error: --n-max must be nonnegative", file=sys.stderr)
        return 2
    dim = args.n_max + 1 if args.n_max >= 1 else 2
    rows = [row for row in spin_spectrum(dim, config.params) if row.sector <= args.n_max]
    out = Path(args.out or "spin_spectrum.csv")
    io.save_spin_csv(out, rows, config.params.hbar)
    print(f"spin spectrum written to {out}")
    return 0


def _parse_state(spec: str, grid: PositionGrid, config: SuiteConfig):
    kind, _, argument = spec.partition(":")
    try:
        if kind == "eigenstate":
            return hermite_eigenstate(int(argument), grid, config.params)
        if kind == "coherent":
            q0_text, p0_text = argument.split(",")
            return coherent_state(grid, config.params, float(q0_text), float(p0_text))
    except (ValueError, PhaseqError) as exc:
        raise ConfigError(f"invalid state specification {spec!r}: {exc}") from exc
    raise ConfigError(f"invalid state specification {spec!r} (use eigenstate:n or coherent:q0,p0)")


def cmd_evolve(args) -> int:
    config = _load_config(args.config)
    grid = default_grid(config.grid_extent, config.grid_points)
    line = PositionGrid(grid.q_min, grid.q_max, grid.n_q)
    state = _parse_state(args.state, line, config)
    out_dir = Path(args.out or "evolve_out")
    out_dir.mkdir(parents=True, exist_ok=True)

    io.save_wavefunction(state, out_dir / "wavefunction_t0")
    density0 = wavefunction_to_density(state, grid, config.params)
    io.save_phase_density(density0, out_dir / "density_t0")

    comparison = equivalence_report(state, args.time, config.params, grid)
    evolved = (
        state
        if args.time == 0.0
        else split_step_evolve(state, args.time, comparison.n_steps, config.params)
    )
    io.save_wavefunction(evolved, out_dir / "wavefunction_t1")
    from .phasespace import liouville_propagate

    density1 = liouville_propagate(density0, args.time, config.params)
    io.save_phase_density(density1, out_dir / "density_t1")

    payload = {
        "state": args.state,
        "time": args.time,
        "n_steps": comparison.n_steps,
        "grid_points": list(comparison.grid_points),
        "l2_distance": comparison.l2_distance,
        "max_distance": comparison.max_distance,
    }
    if not args.no_timestamp:
        import datetime

        payload["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    (out_dir / "equivalence.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"fields and equivalence report written to {out_dir}")
    print(f"equivalence L2 distance {comparison.l2_distance:.3e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phaseq",
        description=(
            "Desk-scale numerical checks of the classical-to-quantum pipeline "
            "for the harmonic oscillator"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON configuration file")
        p.add_argument("--out", help="output path")
        p.add_argument("--no-timestamp", action="store_true",
                       help="omit timestamps for byte-identical reports")

    verify = sub.add_parser("verify", help="run the full verification suite")
    common(verify)
    verify.set_defaults(func=cmd_verify)

    spectrum = sub.add_parser("spectrum", help="export the oscillator spectrum as CSV")
    common(spectrum)
    spectrum.add_argument("--cutoff", type=int, required=True, help="matrix truncation (>= 2)")
    spectrum.set_defaults(func=cmd_spectrum)

    spin_cmd = sub.add_parser("spin", help="export joint two-mode spin spectra as CSV")
    common(spin_cmd)
    spin_cmd.add_argument("--n-max", type=int, required=True, dest="n_max",
                          help="largest complete sector to export")
    spin_cmd.set_defaults(func=cmd_spin)

    evolve = sub.add_parser("evolve", help="evolve a state and export fields")
    common(evolve)
    evolve.add_argument("--state", required=True, help="eigenstate:n or coherent:q0,p0")
    evolve.add_argument("--time", type=float, required=True, help="evolution time")
    evolve.set_defaults(func=cmd_evolve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PhaseqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
