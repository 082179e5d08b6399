import numpy as np
import pytest

from dgsem import dg, fluxes
from dgsem.cases import MACH_PRESETS, density_wave_state
from dgsem.euler import GasParams, InvalidStateError, conservative, physical_flux
from dgsem.mesh import all_coordinates, build_mesh
from dgsem.operators import GAUSS, LGL, build_operator

from conftest import random_states

GAS = GasParams()

SCHEMES = [
    (GAUSS, dg.STANDARD, 3),
    (LGL, dg.STANDARD, 3),
    (LGL, dg.SPLIT, 3),
]


def constant_solution(mesh, op, rho=1.3, v=(0.4, -0.2, 0.1), p=2.0):
    n = op.n_nodes
    u = conservative(rho, list(v), p, GAS)
    U = np.broadcast_to(u, (mesh.n_elements, n, n, n, 5)).copy()
    return dg.GlobalSolution(U, mesh, op)


def noisy_solution(mesh, op, seed=21, noise=0.05):
    rng = np.random.default_rng(seed)
    xyz = all_coordinates(mesh, op)
    x, y = xyz[..., 0], xyz[..., 1]
    rho = 1.0 + 0.2 * np.sin(np.pi * x) * np.cos(np.pi * y) \
        + rng.uniform(-noise, noise, x.shape)
    vel = np.stack([0.3 * np.sin(np.pi * (x - y)), -0.2 * np.cos(np.pi * x),
                    0.1 * np.sin(np.pi * y)], axis=-1) \
        + rng.uniform(-noise, noise, x.shape + (3,))
    p = 1.0 + 0.15 * np.cos(np.pi * (x + 2 * y)) + rng.uniform(-noise, noise, x.shape)
    return dg.GlobalSolution(conservative(rho, vel, p, GAS), mesh, op)


def test_scheme_config_validation():
    with pytest.raises(ValueError, match="LGL"):
        dg.SchemeConfig(nodes=GAUSS, volume=dg.SPLIT)
    with pytest.raises(ValueError):
        dg.SchemeConfig(flux="upwind")
    with pytest.raises(ValueError):
        dg.SchemeConfig(degree=0)
    with pytest.raises(ValueError):
        dg.SchemeConfig(volume="weak")


@pytest.mark.parametrize("nodes,volume,degree", SCHEMES)
@pytest.mark.parametrize("kind", fluxes.FLUX_KINDS)
def test_free_stream_preservation(nodes, volume, degree, kind):
    mesh = build_mesh(2, 2, 1)
    op = build_operator(nodes, degree)
    sol = constant_solution(mesh, op)
    scheme = dg.SchemeConfig(nodes=nodes, degree=degree, volume=volume, flux=kind)
    rate = dg.rhs(sol, scheme, backend="numpy")
    assert np.abs(rate).max() < 1e-13


def test_volume_standard_transports_linear_density():
    """With rho linear, v and p constant, the volume term is exactly
    -v . grad(rho) times the state-direction (flux is affine in rho)."""
    mesh = build_mesh(1, 1, 1)
    op = build_operator(LGL, 3)
    xyz = all_coordinates(mesh, op)
    v = np.array([0.3, -0.2, 0.1])
    p = 1.0
    rho = 1.5 + 0.1 * xyz[..., 0] + 0.2 * xyz[..., 1] - 0.05 * xyz[..., 2]
    U = conservative(rho, np.broadcast_to(v, rho.shape + (3,)), np.full_like(rho, p), GAS)
    sol = dg.GlobalSolution(U, mesh, op)
    rate = dg.volume_integral_standard(sol, GAS)
    # d(rho)/dt = -v.grad(rho) = -(0.1*0.3 + 0.2*(-0.2) - 0.05*0.1)
    expected = -(0.1 * v[0] + 0.2 * v[1] - 0.05 * v[2])
    assert np.abs(rate[..., 0] - expected).max() < 1e-12


def test_volume_standard_matches_matrix_oracle():
    """Single element, N=2: the volume term is -2/h * D applied to nodal
    fluxes along each line, checked against a direct matrix product."""
    mesh = build_mesh(1, 1, 1)
    op = build_operator(LGL, 2)
    sol = noisy_solution(mesh, op, noise=0.02)
    rate = dg.volume_integral_standard(sol, GAS)
    n = op.n_nodes
    expected = np.zeros_like(sol.U)
    for axis, h in enumerate(mesh.spacing):
        f = physical_flux(sol.U, axis, GAS)
        moved = np.moveaxis(f, 1 + axis, 1)
        contracted = np.einsum("im,emabc->eiabc", op.diff, moved)
        expected -= (2.0 / h) * np.moveaxis(contracted, 1, 1 + axis)
    assert np.abs(rate - expected).max() < 1e-13


def test_split_with_central_flux_equals_standard_on_lgl():
    mesh = build_mesh(3, 3, 1)
    op = build_operator(LGL, 4)
    sol = noisy_solution(mesh, op)
    split = dg.volume_integral_split(sol, GAS, volume_flux="central")
    standard = dg.volume_integral_standard(sol, GAS)
    assert np.abs(split - standard).max() < 1e-13 * max(1.0, np.abs(standard).max())


def test_split_requires_lgl():
    mesh = build_mesh(2, 2, 1)
    op = build_operator(GAUSS, 3)
    sol = constant_solution(mesh, op)
    with pytest.raises(ValueError):
        dg.volume_integral_split(sol, GAS)


def test_interface_exchange_constant_and_lgl_traces():
    mesh = build_mesh(2, 2, 1)
    op = build_operator(LGL, 3)
    sol = constant_solution(mesh, op)
    for axis in range(3):
        uL, uR = dg.interface_exchange(sol, axis)
        assert np.abs(uL - uR).max() < 1e-15

    sol = noisy_solution(mesh, op)
    uL, uR = dg.interface_exchange(sol, 0)
    assert np.abs(uL - sol.U[:, -1, :, :, :]).max() == 0.0
    plus_neighbor = sol.mesh.neighbors[:, 1]
    assert np.abs(uR - sol.U[plus_neighbor, 0, :, :, :]).max() == 0.0


def test_interface_exchange_gauss_linear_extrapolation():
    mesh = build_mesh(1, 1, 1)
    op = build_operator(GAUSS, 1)
    xyz = all_coordinates(mesh, op)
    rho = 1.0 + 0.25 * xyz[..., 0]
    U = conservative(rho, np.zeros(rho.shape + (3,)), np.ones_like(rho), GAS)
    sol = dg.GlobalSolution(U, mesh, op)
    uL, uR = dg.interface_exchange(sol, 0)
    assert uL[..., 0] == pytest.approx(1.25, abs=1e-14)  # rho at x=+1
    assert uR[..., 0] == pytest.approx(0.75, abs=1e-14)  # rho at x=-1 (periodic)


def test_surface_term_vanishes_for_continuous_lgl_data():
    """With collocated LGL traces, continuous nodal data has no interface
    jumps, so the penalty term vanishes identically."""
    mesh = build_mesh(3, 2, 1)
    op = build_operator(LGL, 3)
    sol = noisy_solution(mesh, op, noise=0.0)  # smooth, single-valued at faces
    for kind in (fluxes.LLF, fluxes.ECKEP_ROE):
        rate = dg.surface_integral(sol, GAS, kind)
        assert np.abs(rate).max() < 1e-12


def test_surface_plus_volume_conserves():
    """The interface fluxes telescope once the volume boundary terms are
    included: the quadrature of the full rate vanishes componentwise."""
    mesh = build_mesh(3, 2, 1)
    for nodes, volume, degree in SCHEMES:
        op = build_operator(nodes, degree)
        sol = noisy_solution(mesh, op)
        for kind in (fluxes.LLF, fluxes.ECKEP_ROE):
            scheme = dg.SchemeConfig(nodes=nodes, degree=degree, volume=volume, flux=kind)
            rate = dg.rhs(sol, scheme, backend="numpy")
            assert np.abs(dg.integral_of(sol, rate)).max() < 1e-12


@pytest.mark.parametrize("nodes,volume,degree", SCHEMES)
@pytest.mark.parametrize("kind", fluxes.FLUX_KINDS)
def test_global_conservation_of_rhs(nodes, volume, degree, kind):
    mesh = build_mesh(3, 3, 1)
    op = build_operator(nodes, degree)
    sol = noisy_solution(mesh, op)
    scheme = dg.SchemeConfig(nodes=nodes, degree=degree, volume=volume, flux=kind)
    rate = dg.rhs(sol, scheme, backend="numpy")
    assert np.abs(dg.integral_of(sol, rate)).max() < 1e-12


def test_single_element_periodic_self_coupling():
    mesh = build_mesh(1, 1, 1)
    op = build_operator(LGL, 4)
    sol = noisy_solution(mesh, op)
    scheme = dg.SchemeConfig(nodes=LGL, degree=4, volume=dg.SPLIT, flux=fluxes.ECKEP)
    rate = dg.rhs(sol, scheme, backend="numpy")
    assert np.all(np.isfinite(rate))
    assert np.abs(dg.integral_of(sol, rate)).max() < 1e-12


def test_entropy_rate_signs():
    mesh = build_mesh(3, 3, 1)
    op = build_operator(LGL, 4)
    sol = noisy_solution(mesh, op)
    for kind in fluxes.FLUX_KINDS:
        scheme = dg.SchemeConfig(nodes=LGL, degree=4, volume=dg.SPLIT, flux=kind)
        rate = dg.entropy_rate(sol, scheme, backend="numpy")
        if kind == fluxes.ECKEP:
            assert abs(rate) < 1e-11
        else:
            assert rate <= 1e-10


def test_rhs_spectral_accuracy_in_degree():
    """On a fixed mesh the RHS converges spectrally to the exact time
    derivative of the density wave as N grows."""
    wave = MACH_PRESETS["1.0"]
    mesh = build_mesh(2, 2, 1)
    errors = []
    for degree in (2, 4, 6):
        op = build_operator(GAUSS, degree)
        xyz = all_coordinates(mesh, op)
        U = density_wave_state(xyz, 0.0, wave, GAS)
        sol = dg.GlobalSolution(U, mesh, op)
        scheme = dg.SchemeConfig(nodes=GAUSS, degree=degree, volume=dg.STANDARD,
                                 flux=fluxes.ROE)
        rate = dg.rhs(sol, scheme, backend="numpy")
        # exact du/dt = -(v1 + v2) * d(rho)/d(phase) * u-direction
        step = 1e-6
        exact = (density_wave_state(xyz, step, wave, GAS)
                 - density_wave_state(xyz, -step, wave, GAS)) / (2 * step)
        errors.append(np.abs(rate - exact).max())
    assert errors[0] > 10 * errors[1] > 100 * errors[2]


def test_invalid_state_reported_with_context():
    mesh = build_mesh(2, 2, 1)
    op = build_operator(LGL, 2)
    sol = constant_solution(mesh, op)
    sol.U[1, 0, 2, 1, 0] = -0.5  # negative density
    scheme = dg.SchemeConfig(nodes=LGL, degree=2, volume=dg.STANDARD, flux=fluxes.LLF)
    with pytest.raises(InvalidStateError, match=r"element 1.*\(0,2,1\)"):
        dg.rhs(sol, scheme, backend="numpy", validate=True)


def test_total_conserved_matches_exact_integral():
    mesh = build_mesh(2, 2, 1)
    op = build_operator(GAUSS, 3)
    sol = constant_solution(mesh, op, rho=1.2, v=(0.1, 0.2, 0.3), p=0.8)
    sums = dg.total_conserved(sol)
    expected = conservative(1.2, [0.1, 0.2, 0.3], 0.8, GAS) * 8.0
    assert sums == pytest.approx(expected, rel=1e-13)
