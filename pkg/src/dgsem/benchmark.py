"""RHS throughput benchmark: compiled kernels vs the NumPy fallback."""

import time

import numpy as np

from . import fluxes
from .backends import available_backends, get_backend
from .cases import MACH_PRESETS, density_wave_state
from .euler import GasParams
from .mesh import all_coordinates, build_mesh
from .operators import build_operator


def benchmark_rhs(nodes="lgl", degree=5, n=8, split=True, flux=fluxes.ECKEP_ROE,
                  min_seconds=1.0, stream=None):
    """Time full RHS evaluations per backend on a density-wave field."""
    import sys

    stream = stream or sys.stdout
    gas = GasParams()
    mesh = build_mesh(n, n, 1)
    op = build_operator(nodes, degree)
    U = density_wave_state(all_coordinates(mesh, op), 0.0, MACH_PRESETS["1.0"], gas)

    label = f"{nodes} N={degree} {'split' if split else 'standard'} {flux} {n}x{n}x1"
    stream.write(f"RHS benchmark: {label} "
                 f"({mesh.n_elements * op.n_nodes ** 3 * 5} DOF)\n")
    results = {}
    for name in available_backends():
        backend = get_backend(name)
        backend.rhs(U, op, mesh.neighbors, mesh.spacing, gas, flux, split)  # warm-up
        count = 0
        t0 = time.perf_counter()
        while time.perf_counter() - t0 < min_seconds:
            backend.rhs(U, op, mesh.neighbors, mesh.spacing, gas, flux, split)
            count += 1
        per_call = (time.perf_counter() - t0) / count
        results[name] = per_call
        stream.write(f"  {name:>9}: {per_call * 1e3:8.2f} ms/rhs ({count} calls)\n")
    if "compiled" in results and "numpy" in results:
        stream.write(f"  speedup: {results['numpy'] / results['compiled']:.1f}x\n")
    return results
