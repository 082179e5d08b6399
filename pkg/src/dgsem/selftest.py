"""Built-in property checks behind the `selftest` CLI subcommand.

Quick machine-tolerance verification of the operator algebra, the flux
contracts, and the semidiscrete structure, independent of the test suite.
Each check returns (name, passed, detail); `run_all` prints one line per
check.
"""

import numpy as np

from . import dg, fluxes
from .backends import available_backends, get_backend
from .euler import GasParams, conservative, entropy_variables, physical_flux
from .mesh import all_coordinates, build_mesh
from .operators import GAUSS, LGL, build_operator


def _random_states(rng, count, gas):
    rho = rng.uniform(0.2, 3.0, count)
    v = rng.uniform(-2.0, 2.0, (count, 3))
    p = rng.uniform(0.2, 3.0, count)
    return conservative(rho, v, p, gas)


def check_operators(max_degree=8):
    worst = 0.0
    for family in (GAUSS, LGL):
        for degree in range(1, max_degree + 1):
            op = build_operator(family, degree)
            m = np.diag(op.weights)
            boundary = np.outer(op.interp_plus, op.interp_plus) - np.outer(
                op.interp_minus, op.interp_minus)
            sbp = m @ op.diff + op.diff.T @ m - boundary
            worst = max(worst, np.abs(sbp).max())
            exact_deg = 2 * degree + 1 if family == GAUSS else 2 * degree - 1
            for k in range(exact_deg + 1):
                quad = np.dot(op.weights, op.nodes ** k)
                exact = 0.0 if k % 2 else 2.0 / (k + 1)
                worst = max(worst, abs(quad - exact))
            for k in range(degree + 1):
                deriv = op.diff @ op.nodes ** k
                exact = k * op.nodes ** (k - 1) if k else np.zeros_like(op.nodes)
                worst = max(worst, np.abs(deriv - exact).max())
    return "operators: SBP + quadrature + differentiation", worst < 1e-11, f"max residual {worst:.2e}"


def check_flux_contracts(n_pairs=10000, seed=20):
    gas = GasParams()
    rng = np.random.default_rng(seed)
    uL = _random_states(rng, n_pairs, gas)
    uR = _random_states(rng, n_pairs, gas)
    u = _random_states(rng, 1000, gas)
    msgs = []
    ok = True

    worst = max(
        np.abs(fluxes.surface_flux(kind, u, u, axis, gas) - physical_flux(u, axis, gas)).max()
        for kind in fluxes.FLUX_KINDS for axis in range(3)
    )
    ok &= worst < 1e-13
    msgs.append(f"consistency {worst:.1e}")

    jw = entropy_variables(uR, gas) - entropy_variables(uL, gas)
    worst = max(
        np.abs(np.einsum("nc,nc->n", jw, fluxes.eckep_flux(uL, uR, axis, gas))
               - (uR[:, 1 + axis] - uL[:, 1 + axis])).max()
        for axis in range(3)
    )
    ok &= worst < 1e-11
    msgs.append(f"EC identity {worst:.1e}")

    worst = -np.inf
    for kind in (fluxes.ECKEP_LLF, fluxes.ECKEP_ROE):
        for axis in range(3):
            prod = np.einsum("nc,nc->n", jw, fluxes.surface_flux(kind, uL, uR, axis, gas)) \
                - (uR[:, 1 + axis] - uL[:, 1 + axis])
            worst = max(worst, prod.max())
    ok &= worst <= 1e-12
    msgs.append(f"entropy dissipation sign {worst:+.1e}")

    contact_L = conservative(1.0, [0.0, 0.0, 0.0], 1.0, gas)
    contact_R = conservative(2.0, [0.0, 0.0, 0.0], 1.0, gas)
    for kind in fluxes.CONTACT_PRESERVING:
        mass = fluxes.surface_flux(kind, contact_L, contact_R, 0, gas)[0]
        ok &= abs(mass) < 1e-14
    for kind in (fluxes.LLF, fluxes.HLL, fluxes.ECKEP_LLF):
        mass = fluxes.surface_flux(kind, contact_L, contact_R, 0, gas)[0]
        ok &= abs(mass) > 0.01
    msgs.append("contact transparency split")
    return "fluxes: consistency + EC + dissipation + contacts", bool(ok), "; ".join(msgs)


def check_semidiscrete(backend=None):
    gas = GasParams()
    rng = np.random.default_rng(4)
    mesh = build_mesh(3, 3, 1)
    msgs = []
    ok = True
    for nodes, volume, degree in ((GAUSS, dg.STANDARD, 3), (LGL, dg.STANDARD, 3), (LGL, dg.SPLIT, 4)):
        op = build_operator(nodes, degree)
        xyz = all_coordinates(mesh, op)
        x, y = xyz[..., 0], xyz[..., 1]
        rho = 1.0 + 0.2 * np.sin(np.pi * x) * np.cos(np.pi * y) \
            + rng.uniform(-0.05, 0.05, x.shape)
        vel = np.stack([0.3 * np.sin(np.pi * (x - y)), -0.2 * np.cos(np.pi * x),
                        0.1 * np.sin(np.pi * y)], axis=-1)
        p = 1.0 + 0.15 * np.cos(np.pi * (x + 2 * y)) + rng.uniform(-0.05, 0.05, x.shape)
        U = conservative(rho, vel, p, gas)
        Uconst = conservative(1.3, [0.4, -0.2, 0.1], 2.0, gas) * np.ones_like(U)
        sol = dg.GlobalSolution(U, mesh, op)
        sol_const = dg.GlobalSolution(Uconst, mesh, op)
        for kind in fluxes.FLUX_KINDS:
            scheme = dg.SchemeConfig(nodes=nodes, degree=degree, volume=volume, flux=kind)
            free = np.abs(dg.rhs(sol_const, scheme, backend=backend)).max()
            ok &= free < 1e-13
            rate = dg.rhs(sol, scheme, backend=backend)
            drift = np.abs(dg.integral_of(sol, rate)).max()
            ok &= drift < 1e-12
            if volume == dg.SPLIT:
                ent = dg.entropy_rate(sol, scheme, rate)
                if kind == fluxes.ECKEP:
                    ok &= abs(ent) < 1e-10
                else:
                    ok &= ent <= 1e-10
    msgs.append("free-stream + conservation + entropy sign")
    return "semidiscrete structure", bool(ok), "; ".join(msgs)


def smooth_noisy_field(mesh, op, rng, noise=0.05):
    """Smooth periodic state with small per-node jumps (valid Gauss traces)."""
    gas = GasParams()
    xyz = all_coordinates(mesh, op)
    x, y, z = xyz[..., 0], xyz[..., 1], xyz[..., 2]
    rho = 1.0 + 0.2 * np.sin(np.pi * x) * np.cos(np.pi * y) \
        + rng.uniform(-noise, noise, x.shape)
    vel = np.stack([
        0.3 * np.sin(np.pi * (x - y)),
        -0.2 * np.cos(np.pi * (x + z)),
        0.1 * np.sin(np.pi * y),
    ], axis=-1) + rng.uniform(-noise, noise, x.shape + (3,))
    p = 1.0 + 0.15 * np.cos(np.pi * (x + 2 * y)) + rng.uniform(-noise, noise, x.shape)
    return conservative(rho, vel, p, gas)


def check_backends_agree():
    names = available_backends()
    if len(names) < 2:
        return "backend equivalence", True, f"single backend ({names[0]}); skipped"
    gas = GasParams()
    rng = np.random.default_rng(9)
    mesh = build_mesh(2, 3, 2)
    worst = 0.0
    for nodes, volume, degree in ((GAUSS, dg.STANDARD, 2), (LGL, dg.SPLIT, 3)):
        op = build_operator(nodes, degree)
        U = smooth_noisy_field(mesh, op, rng)
        rates = [
            get_backend(name).rhs(U, op, mesh.neighbors, mesh.spacing, gas,
                                  fluxes.ECKEP_ROE, volume == dg.SPLIT)
            for name in names
        ]
        worst = max(worst, np.abs(rates[0] - rates[1]).max() / np.abs(rates[0]).max())
    return "backend equivalence", worst < 1e-12, f"max rel diff {worst:.2e}"


def check_time_integrator():
    from .timeint import LSRK_B, TimeControls, integrate

    errs = []
    for dt in (0.1, 0.05):
        u = np.array([1.0])
        integrate(u, lambda v, t: -v, lambda v: dt, TimeControls(cfl=1.0, t_end=1.0))
        errs.append(abs(u[0] - np.exp(-1.0)))
    order = np.log2(errs[0] / errs[1])
    return "low-storage RK order", abs(order - 4.0) < 0.1, f"measured order {order:.3f}"


ALL_CHECKS = (
    check_operators,
    check_flux_contracts,
    check_semidiscrete,
    check_backends_agree,
    check_time_integrator,
)


def run_all(stream=None) -> bool:
    import sys

    stream = stream or sys.stdout
    all_ok = True
    for check in ALL_CHECKS:
        name, ok, detail = check()
        all_ok &= ok
        stream.write(f"[{'PASS' if ok else 'FAIL'}] {name} ({detail})\n")
    return all_ok
