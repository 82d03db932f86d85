"""Command-line front end: ``compensim {simulate,sweep,fourier,magic}``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io
from .config import ConfigError, RunConfig, load_config
from .core import IntegrationError
from .fourier import DegenerateReference, analyse, scan2d, sideband_frequencies
from .models import fidelity_series, model_for, trajectory
from .sweep import MagicSearchError, infidelity_grid, locate_magic

EXIT_OK = 0
EXIT_EXISTS = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_DEGENERATE = 4
EXIT_SEARCH = 5


class OutputExists(RuntimeError):
    pass


def _targets(out: Path, names, force: bool) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / n for n in names]
    clash = [str(p) for p in paths if p.exists()]
    if clash and not force:
        raise OutputExists(f"refusing to overwrite {', '.join(clash)} (use --force)")
    return paths


def cmd_simulate(rc: RunConfig, out: Path, args) -> int:
    cfg = rc.params
    ts_path, fid_path = _targets(out, ("timeseries.csv", "fidelity.csv"), args.force)
    t, pops = trajectory(cfg, rc.samples_per_period)
    labels = model_for(cfg).labels
    io.write_csv(ts_path, ("t",) + labels, np.column_stack([t, pops]))
    series = fidelity_series(cfg)
    io.write_fidelity_csv(fid_path, series)
    print(f"F({cfg.n_periods}T)={io.fmt(series.fidelity[-1])}")
    return EXIT_OK


def _grid_summary(grid) -> str:
    a, b, m = grid.argmin()
    return f"min {grid.metric_name}={io.fmt(m)} at {grid.axis1_name}={io.fmt(a)}, {grid.axis2_name}={io.fmt(b)}"


def _write_grid(grid, out: Path, force: bool) -> None:
    csv_path, pgm_path = _targets(out, ("grid.csv", "grid.pgm"), force)
    io.write_grid_csv(csv_path, grid)
    io.write_pgm(pgm_path, grid.cells)
    print(_grid_summary(grid))


def _axes(rc: RunConfig):
    if rc.sweep is None:
        raise ConfigError("missing required section [sweep]")
    a1, a2 = rc.sweep.axis1, rc.sweep.axis2
    return (a1.name, a1.values), (a2.name, a2.values)


def cmd_sweep(rc: RunConfig, out: Path, args) -> int:
    ax1, ax2 = _axes(rc)
    grid = infidelity_grid(rc.params, ax1, ax2, rc.sweep.n_checkpoint, jobs=args.jobs)
    _write_grid(grid, out, args.force)
    return EXIT_OK


def cmd_fourier(rc: RunConfig, out: Path, args) -> int:
    f = rc.fourier
    if f.mode == "grid":
        ax1, ax2 = _axes(rc)
        grid = scan2d(rc.params, ax1, ax2, f.n_periods, f.samples_per_period, jobs=args.jobs)
        _write_grid(grid, out, args.force)
        return EXIT_OK
    (spec_path,) = _targets(out, ("spectrum.csv",), args.force)
    _, sp, metric = analyse(rc.params, f.n_periods, f.samples_per_period)
    io.write_csv(spec_path, ("nu", "magnitude"), np.column_stack([sp.nu, sp.magnitudes]))
    print(f"peak_metric={io.fmt(metric)}")
    bands = sideband_frequencies(sp, 1.0 / rc.params.period)
    if bands:
        print("sidebands=" + ";".join(f"{io.fmt(nu)}:{io.fmt(m)}" for nu, m in bands))
    else:
        print("sidebands=none")
    return EXIT_OK


def cmd_magic(rc: RunConfig, out: Path, args) -> int:
    if rc.magic is None:
        raise ConfigError("missing required section [magic]")
    m = rc.magic
    (path,) = _targets(out, ("magic.csv",), args.force)
    x, fx = locate_magic(rc.params, (m.lower, m.upper), m.n_checkpoint, m.tol)
    io.write_csv(path, ("VT2", "infidelity"), [(x, fx)])
    print(f"VT2={x:.6f} infidelity={io.fmt(fx)}")
    return EXIT_OK


COMMANDS = {"simulate": cmd_simulate, "sweep": cmd_sweep, "fourier": cmd_fourier, "magic": cmd_magic}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="compensim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        p = sub.add_parser(name, help=fn.__name__.replace("cmd_", "") + " run")
        p.add_argument("--config", required=True, help="INI run configuration")
        p.add_argument("--out", default=".", help="output directory (created if absent)")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for grids")
        p.add_argument("--force", action="store_true", help="overwrite existing outputs")
        p.add_argument("--seed", type=int, default=None,
                       help="accepted for property-test tooling; simulations use no randomness")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        rc = load_config(args.config)
        return COMMANDS[args.command](rc, Path(args.out), args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (IntegrationError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        # parameters that parse but are rejected by the models, e.g. an axis
        # that drives a config field out of range
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OutputExists as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXISTS
    except DegenerateReference as exc:
        print(f"degenerate reference: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except MagicSearchError as exc:
        print(f"search failed: {exc}", file=sys.stderr)
        return EXIT_SEARCH


if __name__ == "__main__":
    sys.exit(main())
