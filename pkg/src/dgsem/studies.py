"""Study presets, batch execution, and table output.

Each preset reproduces one published-style convergence table: a block of
(scheme, flux) pairs swept over degrees N=2..5 and, for the density wave,
the three Mach presets, on a ladder of five mesh levels (the coarsest
level anchors the first printed EOC).  Results are emitted as one CSV per
(flux, N, Mach) combination plus an aligned console table.
"""

import io
import os
from dataclasses import dataclass, replace

from . import cases, fluxes
from .config import RunConfig
from .dg import SPLIT, STANDARD, SchemeConfig
from .harness import ConvergenceRow, ConvergenceTable, eoc, run_many, study_specs
from .operators import GAUSS, LGL

DEGREES = (2, 3, 4, 5)
MACHS = ("3.5", "1.0", "0.2")
DEFAULT_LEVELS = 5  # h0 .. h0/16

CSV_HEADER = "level,h,n_elements,dofs,l2_error_density,eoc"


@dataclass(frozen=True)
class StudyPreset:
    name: str
    case: str
    blocks: tuple  # ((nodes, volume, flux), ...)
    degrees: tuple = DEGREES
    machs: tuple = MACHS


_DENSITY_PRESETS = {
    "1": ((GAUSS, STANDARD, fluxes.HLL), (GAUSS, STANDARD, fluxes.ROE)),
    "2": ((LGL, STANDARD, fluxes.HLL), (LGL, STANDARD, fluxes.ROE)),
    "3": ((LGL, SPLIT, fluxes.ECKEP), (LGL, SPLIT, fluxes.HLL), (LGL, SPLIT, fluxes.ECKEP_ROE)),
    "4": ((GAUSS, STANDARD, fluxes.LLF), (GAUSS, STANDARD, fluxes.HLLC)),
    "5": ((LGL, STANDARD, fluxes.LLF), (LGL, STANDARD, fluxes.HLLC)),
    "6": ((LGL, SPLIT, fluxes.LLF), (LGL, SPLIT, fluxes.ECKEP_LLF)),
}

_MS_BLOCKS = (
    tuple((GAUSS, STANDARD, f) for f in (fluxes.LLF, fluxes.HLL, fluxes.HLLC, fluxes.ROE))
    + tuple((LGL, STANDARD, f) for f in (fluxes.LLF, fluxes.HLL, fluxes.HLLC, fluxes.ROE))
    + tuple((LGL, SPLIT, f) for f in
            (fluxes.ECKEP, fluxes.LLF, fluxes.ECKEP_LLF, fluxes.HLL, fluxes.ECKEP_ROE))
)

PRESETS = {
    name: StudyPreset(name=name, case=cases.DENSITY_WAVE, blocks=blocks)
    for name, blocks in _DENSITY_PRESETS.items()
}
PRESETS["ms"] = StudyPreset(name="ms", case=cases.MANUFACTURED, blocks=_MS_BLOCKS,
                            machs=(None,))
PRESETS["7"] = replace(PRESETS["ms"], name="7")


def preset_run_configs(preset: StudyPreset, levels: int = DEFAULT_LEVELS,
                       cfl: float = 0.5) -> list:
    """Expand a preset into RunConfigs (one per flux/N/Mach combination)."""
    out = []
    for nodes, volume, flux in preset.blocks:
        for degree in preset.degrees:
            for mach in preset.machs:
                scheme = SchemeConfig(nodes=nodes, degree=degree, volume=volume, flux=flux)
                out.append(RunConfig(scheme=scheme, case=preset.case,
                                     mach=mach or "0.2", levels=levels, cfl=cfl))
    return out


def run_config_table(cfg: RunConfig, workers: int = None) -> ConvergenceTable:
    """Run one RunConfig's refinement ladder."""
    specs = study_specs(cfg.scheme, cfg.case, cfg.wave, cfg.levels, cfg.cfl,
                        cfg.t_end, cfg.backend)
    errors = run_many(specs, workers)
    return _table_from(cfg, specs, errors)


def _table_from(cfg: RunConfig, specs, errors) -> ConvergenceTable:
    orders = eoc(errors) if len(errors) >= 2 else [None]
    rows = [
        ConvergenceRow(level=k, h=2.0 / s.nx, n_elements=s.nx * s.ny * s.nz,
                       dofs=s.dofs, error=err, eoc=order)
        for k, (s, err, order) in enumerate(zip(specs, errors, orders))
    ]
    return ConvergenceTable(scheme=cfg.scheme, case=cfg.case, wave=cfg.wave,
                            cfl=cfg.cfl, rows=rows)


def run_study(run_configs, workers: int = None):
    """Run many RunConfigs at once, pooling every level of every ladder."""
    all_specs = []
    slices = []
    for cfg in run_configs:
        specs = study_specs(cfg.scheme, cfg.case, cfg.wave, cfg.levels, cfg.cfl,
                            cfg.t_end, cfg.backend)
        slices.append((cfg, len(all_specs), len(specs)))
        all_specs.extend(specs)
    errors = run_many(all_specs, workers)
    return [
        _table_from(cfg, all_specs[lo:lo + count], errors[lo:lo + count])
        for cfg, lo, count in slices
    ]


def table_label(cfg_or_table) -> str:
    scheme = cfg_or_table.scheme
    case = cfg_or_table.case
    parts = [case, scheme.nodes if scheme.volume == STANDARD else "split",
             scheme.flux, f"N{scheme.degree}"]
    if case == cases.DENSITY_WAVE:
        wave = cfg_or_table.wave
        mach = next((k for k, v in cases.MACH_PRESETS.items() if v == wave), None)
        parts.append(f"ma{mach}" if mach else f"v{wave.v1}_{wave.v2}")
    return "_".join(parts)


def emit_csv(table: ConvergenceTable) -> str:
    """Deterministic, round-trippable CSV for one convergence table."""
    lines = [CSV_HEADER]
    for r in table.rows:
        eoc_txt = "" if r.eoc is None else f"{r.eoc:.17g}"
        lines.append(
            f"{r.level},{r.h:.17g},{r.n_elements},{r.dofs},{r.error:.17g},{eoc_txt}"
        )
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list:
    """Rows back from emit_csv output (inverse up to float identity)."""
    lines = [ln for ln in text.strip().splitlines() if ln]
    if lines[0] != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {lines[0]!r}")
    rows = []
    for ln in lines[1:]:
        level, h, nel, dofs, err, eoc_txt = ln.split(",")
        rows.append(ConvergenceRow(
            level=int(level), h=float(h), n_elements=int(nel), dofs=int(dofs),
            error=float(err), eoc=float(eoc_txt) if eoc_txt else None,
        ))
    return rows


def emit_console(table: ConvergenceTable) -> str:
    """Aligned text table: 3-significant-digit errors, 2-decimal EOCs."""
    buf = io.StringIO()
    label = table_label(table)
    buf.write(f"# {label} (cfl={table.cfl})\n")
    buf.write(f"{'level':>5} {'h':>10} {'elems':>7} {'dofs':>9} {'L2(rho)':>10} {'EOC':>6}\n")
    for r in table.rows:
        eoc_txt = "-" if r.eoc is None else f"{r.eoc:.2f}"
        buf.write(
            f"{r.level:>5} {r.h:>10.5f} {r.n_elements:>7} {r.dofs:>9} "
            f"{r.error:>10.2e} {eoc_txt:>6}\n"
        )
    return buf.getvalue()


def write_tables(tables, out_dir: str, prefix: str = "") -> list:
    """One CSV per table, written atomically; returns the paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for table in tables:
        name = f"{prefix}{table_label(table)}.csv"
        path = os.path.join(out_dir, name)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(emit_csv(table))
        os.replace(tmp, path)
        paths.append(path)
    return paths
