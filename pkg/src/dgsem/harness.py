"""Error norms, convergence rates, and refinement-study orchestration.

A study fixes (scheme, flux, degree, test case) and halves the element
size in x and y over a ladder of mesh levels (one element always spans z,
matching the two-dimensional test problems).  The base level uses 4x4
elements for N in {2, 3} and 2x2 for N in {4, 5}; the experimental order
of convergence between consecutive levels is log2 of the error ratio.
"""

import math
import os
from dataclasses import dataclass, field, replace

import numpy as np

from . import cases, dg, timeint
from .backends import get_backend
from .dg import GlobalSolution, SchemeConfig
from .mesh import build_mesh
from .operators import build_operator

DOMAIN_VOLUME = 8.0


def l2_density_error(sol: GlobalSolution, exact_density_fn, t: float,
                     normalized: bool = True) -> float:
    """Collocation-quadrature L2 error of the density field at time t.

    With `normalized` the square integral is divided by the domain volume,
    sqrt( sum_e J sum_ijk w_i w_j w_k (rho - rho_ex)^2 / |Omega| ).
    """
    from .mesh import all_coordinates

    xyz = all_coordinates(sol.mesh, sol.op)
    diff = sol.U[..., 0] - exact_density_fn(xyz, t)
    total = dg.integral_of(sol, diff * diff)
    if normalized:
        total /= DOMAIN_VOLUME
    return float(np.sqrt(total))


def eoc(errors) -> list:
    """Convergence orders log2(e_{k-1}/e_k); None for the first level."""
    errors = [float(e) for e in errors]
    if len(errors) < 2:
        raise ValueError("need at least two errors to compute an EOC")
    if any(e <= 0.0 for e in errors):
        raise ValueError("errors must be positive")
    return [None] + [math.log2(a / b) for a, b in zip(errors, errors[1:])]


def base_elements(degree: int, case: str = cases.DENSITY_WAVE) -> int:
    """Coarsest-level element count per refined axis.

    The density-wave ladders start from 4x4 elements for N in {2, 3} and
    2x2 for N in {4, 5}; the manufactured-solution ladders start one
    refinement finer (pinned against the published error levels).
    """
    base = 4 if degree <= 3 else 2
    if case == cases.MANUFACTURED:
        base *= 2
    return base


@dataclass(frozen=True)
class RunSpec:
    """Everything needed to run one (scheme, case, mesh) combination."""

    scheme: SchemeConfig
    case: str = cases.DENSITY_WAVE
    wave: cases.DensityWaveConfig = field(default_factory=cases.DensityWaveConfig)
    nx: int = 4
    ny: int = 4
    nz: int = 1
    cfl: float = 0.5
    t_end: float = 1.0
    backend: str = None

    @property
    def dofs(self) -> int:
        n = self.scheme.degree + 1
        return self.nx * self.ny * self.nz * n ** 3 * 5


def run_single(spec: RunSpec, callback=None) -> float:
    """Integrate one configuration to t_end; returns the L2 density error."""
    scheme = spec.scheme
    gas = scheme.gas
    op = build_operator(scheme.nodes, scheme.degree)
    mesh = build_mesh(spec.nx, spec.ny, spec.nz)
    backend = get_backend(spec.backend)

    state_fn = cases.exact_state_fn(spec.case, spec.wave, gas)
    U = cases.initialize(mesh, op, state_fn)
    sol = GlobalSolution(U, mesh, op)

    if spec.case == cases.MANUFACTURED:
        from .mesh import all_coordinates

        xsum = np.sum(all_coordinates(mesh, op)[..., :2], axis=-1)

        def rhs_fn(u, t):
            rate = backend.rhs(u, op, mesh.neighbors, mesh.spacing, gas,
                               scheme.flux, scheme.volume == dg.SPLIT)
            phase = 2.0 * np.pi * (xsum - t)
            g = 0.5 * np.sin(phase) + 2.0
            gp = np.pi * np.cos(phase)
            gm1 = gas.gamma - 1.0
            rate[..., 0] += gp
            rate[..., 1] += (2.0 - gas.gamma) * gp + 2.0 * gm1 * g * gp
            rate[..., 2] += (2.0 - gas.gamma) * gp + 2.0 * gm1 * g * gp
            rate[..., 4] += -2.0 * gm1 * gp + 2.0 * (2.0 * gas.gamma - 1.0) * g * gp
            return rate
    else:
        def rhs_fn(u, t):
            return backend.rhs(u, op, mesh.neighbors, mesh.spacing, gas,
                               scheme.flux, scheme.volume == dg.SPLIT)

    def dt_fn(u):
        speeds = backend.max_wave_speeds(u, gas)
        return timeint.compute_dt(speeds, mesh.spacing, scheme.degree, spec.cfl)

    controls = timeint.TimeControls(cfl=spec.cfl, t_end=spec.t_end)
    timeint.integrate(U, rhs_fn, dt_fn, controls, callback=callback)

    density_fn = cases.exact_density_fn(spec.case, spec.wave, gas)
    return l2_density_error(sol, density_fn, spec.t_end)


@dataclass
class ConvergenceRow:
    level: int
    h: float
    n_elements: int
    dofs: int
    error: float
    eoc: float = None  # None on the coarsest level


@dataclass
class ConvergenceTable:
    scheme: SchemeConfig
    case: str
    wave: cases.DensityWaveConfig
    cfl: float
    rows: list

    @property
    def errors(self):
        return [r.error for r in self.rows]

    @property
    def finest_eoc(self):
        return self.rows[-1].eoc


def study_specs(scheme: SchemeConfig, case: str, wave: cases.DensityWaveConfig,
                levels: int, cfl: float, t_end: float = 1.0,
                backend: str = None, base: int = None):
    """RunSpecs for a refinement ladder (level k has base * 2^k elements)."""
    if levels < 1:
        raise ValueError(f"need at least one level, got {levels}")
    if base is None:
        base = base_elements(scheme.degree, case)
    out = []
    for k in range(levels):
        n = base * 2 ** k
        out.append(RunSpec(scheme=scheme, case=case, wave=wave, nx=n, ny=n, nz=1,
                           cfl=cfl, t_end=t_end, backend=backend))
    return out


def _run_spec(spec: RunSpec) -> float:
    return run_single(spec)


def run_convergence_study(scheme: SchemeConfig, case: str = cases.DENSITY_WAVE,
                          wave: cases.DensityWaveConfig = None, levels: int = 4,
                          cfl: float = 0.5, t_end: float = 1.0, backend: str = None,
                          workers: int = None, base: int = None) -> ConvergenceTable:
    """Run a full refinement ladder and attach EOCs.

    Levels run in a process pool when workers > 1 (they are independent);
    workers=None uses DGSEM_THREADS or the CPU count, capped at the number
    of levels.
    """
    if wave is None:
        wave = cases.DensityWaveConfig()
    specs = study_specs(scheme, case, wave, levels, cfl, t_end, backend, base)
    errors = run_many(specs, workers)
    orders = eoc(errors) if len(errors) >= 2 else [None]
    rows = [
        ConvergenceRow(level=k, h=2.0 / s.nx, n_elements=s.nx * s.ny * s.nz,
                       dofs=s.dofs, error=err, eoc=order)
        for k, (s, err, order) in enumerate(zip(specs, errors, orders))
    ]
    return ConvergenceTable(scheme=scheme, case=case, wave=wave, cfl=cfl, rows=rows)


def default_workers() -> int:
    env = os.environ.get("DGSEM_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_many(specs, workers: int = None):
    """Run independent RunSpecs, in a process pool when it pays off."""
    if workers is None:
        workers = default_workers()
    workers = min(workers, len(specs))
    if workers <= 1 or len(specs) <= 1:
        return [run_single(s) for s in specs]
    import multiprocessing as mp

    with mp.get_context("fork").Pool(workers) as pool:
        return pool.map(_run_spec, specs)
