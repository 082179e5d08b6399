"""Command-line driver: single runs, table studies, selftest, benchmark.

Exit codes: 0 success, 1 configuration error, 2 numerical failure,
3 I/O error.  DGSEM_OUT and DGSEM_THREADS override the output directory
and worker count.
"""

import argparse
import os
import sys

from . import cases, dg, studies
from .config import ConfigError, RunConfig, StudyMatrix, load_config
from .euler import InvalidStateError
from .timeint import NumericsError

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICS = 2
EXIT_IO = 3


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="dgsem",
        description="DGSEM Euler solver: convergence runs and studies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one configuration's refinement ladder")
    run.add_argument("--config", required=True, help="key=value config file")
    _common(run)

    study = sub.add_parser("study", help="run a study preset or config matrix")
    study.add_argument("--config", help="key=value config file (may hold lists)")
    study.add_argument("--table", choices=sorted(studies.PRESETS),
                       help="built-in convergence-table preset")
    study.add_argument("--levels", type=int, default=studies.DEFAULT_LEVELS)
    _common(study)

    sub.add_parser("selftest", help="run the built-in property checks")

    bench = sub.add_parser("bench", help="benchmark compiled vs numpy kernels")
    bench.add_argument("--degree", type=int, default=5)
    bench.add_argument("--elements", type=int, default=8)
    return parser


def _common(sub):
    sub.add_argument("--out", help="output directory for CSV tables")
    sub.add_argument("--threads", type=int, help="worker processes for ladder runs")
    sub.add_argument("--cfl", type=float, help="override the config CFL")


def _resolve_out(args) -> str:
    return args.out or os.environ.get("DGSEM_OUT") or "results"


def _resolve_threads(args):
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("DGSEM_THREADS")
    return int(env) if env else None


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    from dataclasses import replace

    if args.cfl is not None:
        cfg = replace(cfg, cfl=args.cfl)
    return cfg


def _run_command(args) -> int:
    cfg = load_config(args.config)
    if isinstance(cfg, StudyMatrix):
        raise ConfigError("'run' needs a single configuration; use 'study' for matrices")
    cfg = _apply_overrides(cfg, args)
    out_dir = _resolve_out(args)
    workers = _resolve_threads(args) or cfg.threads

    if cfg.entropy_trace or cfg.conservation_trace:
        _single_run_with_diagnostics(cfg, out_dir)

    table = studies.run_config_table(cfg, workers=workers)
    sys.stdout.write(studies.emit_console(table))
    paths = studies.write_tables([table], out_dir)
    sys.stdout.write(f"wrote {paths[0]}\n")
    return EXIT_OK


def _single_run_with_diagnostics(cfg: RunConfig, out_dir: str):
    """Extra coarse-level run recording per-step conserved sums and entropy."""
    from .euler import total_entropy
    from .harness import base_elements, run_single, RunSpec
    from .mesh import build_mesh
    from .operators import build_operator

    n = base_elements(cfg.scheme.degree)
    spec = RunSpec(scheme=cfg.scheme, case=cfg.case, wave=cfg.wave, nx=n, ny=n,
                   nz=1, cfl=cfg.cfl, t_end=cfg.t_end, backend=cfg.backend)
    op = build_operator(cfg.scheme.nodes, cfg.scheme.degree)
    mesh = build_mesh(n, n, 1)
    rows = []

    def callback(step, t, dt, u):
        sol = dg.GlobalSolution(u, mesh, op)
        sums = dg.total_conserved(sol)
        entropy = float(dg.integral_of(sol, total_entropy(u, cfg.scheme.gas)))
        rows.append((step, t, dt, *sums.tolist(), entropy))

    run_single(spec, callback=callback)
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"diagnostics_{studies.table_label(cfg)}.csv")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("step,t,dt,mass,mom_x,mom_y,mom_z,energy,entropy\n")
        for row in rows:
            fh.write(",".join(f"{v:.17g}" if isinstance(v, float) else str(v)
                              for v in row) + "\n")
    sys.stdout.write(f"wrote {path}\n")


def _study_command(args) -> int:
    if bool(args.config) == bool(args.table):
        raise ConfigError("'study' needs exactly one of --config or --table")
    cfl = args.cfl if args.cfl is not None else 0.5
    if args.table:
        preset = studies.PRESETS[args.table]
        run_configs = studies.preset_run_configs(preset, levels=args.levels, cfl=cfl)
        prefix = f"table{preset.name}_" if preset.name != "ms" else ""
    else:
        cfg = load_config(args.config)
        matrix = cfg if isinstance(cfg, StudyMatrix) else StudyMatrix(
            base=cfg, flux_kinds=(cfg.scheme.flux,), degrees=(cfg.scheme.degree,),
            machs=(cfg.mach,))
        run_configs = [_apply_overrides(c, args) for c in matrix.run_configs()]
        prefix = "study_"
    workers = _resolve_threads(args)
    tables = studies.run_study(run_configs, workers=workers)
    for table in tables:
        sys.stdout.write(studies.emit_console(table) + "\n")
    paths = studies.write_tables(tables, _resolve_out(args), prefix=prefix)
    sys.stdout.write(f"wrote {len(paths)} tables to {_resolve_out(args)}\n")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _run_command(args)
        if args.command == "study":
            return _study_command(args)
        if args.command == "selftest":
            from .selftest import run_all

            return EXIT_OK if run_all() else EXIT_NUMERICS
        if args.command == "bench":
            from .benchmark import benchmark_rhs

            benchmark_rhs(degree=args.degree, n=args.elements)
            return EXIT_OK
        raise ConfigError(f"unknown command {args.command!r}")
    except (InvalidStateError, NumericsError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICS
    except ValueError as exc:  # ConfigError and scheme/flux validation errors
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except OSError as exc:
        sys.stderr.write(f"I/O error: {exc}\n")
        return EXIT_IO


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
