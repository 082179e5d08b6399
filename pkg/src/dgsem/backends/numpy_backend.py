"""Pure-NumPy DGSEM kernels (reference implementation and fallback).

The global solution is an array of shape (n_elements, n, n, n, 5) with node
indices (i, j, k) along (x, y, z).  All routines return *rates* (du/dt
contributions).  The compiled backend mirrors these semantics exactly; this
module is the readable reference the tests lean on.
"""

import numpy as np

from .. import fluxes
from ..euler import GasParams, physical_flux
from ..operators import GAUSS, NodalOperator

NAME = "numpy"

_EINSUM_VOLUME = ("im,emjkc->eijkc", "jm,eimkc->eijkc", "km,eijmc->eijkc")
_EINSUM_SPLIT = ("im,eimjkc->eijkc", "jm,ejmikc->eijkc", "km,ekmijc->eijkc")
_EINSUM_TRACE = ("i,eijkc->ejkc", "j,eijkc->eikc", "k,eijkc->eijc")


def volume_standard(U, op: NodalOperator, spacing, gas: GasParams):
    """Weak-form volume term: rate_i = -(2/h_d) sum_m D_im f_d(u_m) per axis."""
    rate = np.zeros_like(U)
    for axis in range(3):
        f = physical_flux(U, axis, gas)
        rate -= (2.0 / spacing[axis]) * np.einsum(_EINSUM_VOLUME[axis], op.diff, f)
    return rate


def volume_split(U, op: NodalOperator, spacing, gas: GasParams, volume_flux=fluxes.ECKEP):
    """Flux-differencing volume term: rate_i = -(2/h_d) 2 sum_m D_im F#(u_i, u_m).

    The pairwise flux tensor is built by broadcasting the solution against
    itself along each line; F# must be symmetric and consistent.
    """
    two_point = fluxes.eckep_flux if volume_flux == fluxes.ECKEP else fluxes.central_flux
    rate = np.zeros_like(U)
    for axis in range(3):
        # move the line index to the front pair (e, i, m, transverse..., c)
        lineA = np.expand_dims(np.moveaxis(U, 1 + axis, 1), 2)
        lineB = np.expand_dims(np.moveaxis(U, 1 + axis, 1), 1)
        pair = two_point(lineA, lineB, axis, gas)
        rate -= (4.0 / spacing[axis]) * np.einsum(_EINSUM_SPLIT[axis], op.diff, pair)
    return rate


def face_traces(U, op: NodalOperator, axis: int):
    """Interpolate the solution to the two element faces normal to axis."""
    if op.family == GAUSS:
        mn = np.einsum(_EINSUM_TRACE[axis], op.interp_minus, U)
        pl = np.einsum(_EINSUM_TRACE[axis], op.interp_plus, U)
    else:
        sl = [slice(None)] * 5
        sl[1 + axis] = 0
        mn = U[tuple(sl)]
        sl[1 + axis] = -1
        pl = U[tuple(sl)]
    return mn, pl


def interface_states(U, op: NodalOperator, neighbors, axis: int):
    """Left/right trace pairs for every face normal to axis.

    Face f(e) is the +axis face of element e; uL is e's own plus trace and
    uR the minus trace of the periodic neighbor.
    """
    mn, pl = face_traces(U, op, axis)
    uR = mn[neighbors[:, 2 * axis + 1]]
    return pl, uR


def surface_terms(U, op: NodalOperator, neighbors, spacing, gas: GasParams,
                  flux_kind: str):
    """Lifted interface penalties for all six faces of every element.

    The penalty is (f* - f_face)/w at the boundary for collocated LGL nodes
    and the full l/w-weighted lift for Gauss nodes, where f_face is the
    interpolant of the interior flux at the face.
    """
    n = op.n_nodes
    rate = np.zeros_like(U)
    for axis in range(3):
        uL, uR = interface_states(U, op, neighbors, axis)
        fstar = fluxes.surface_flux(flux_kind, uL, uR, axis, gas)

        if op.family == GAUSS:
            f = physical_flux(U, axis, gas)
            ftrace_minus = np.einsum(_EINSUM_TRACE[axis], op.interp_minus, f)
            ftrace_plus = np.einsum(_EINSUM_TRACE[axis], op.interp_plus, f)
        else:
            sl = [slice(None)] * 5
            sl[1 + axis] = 0
            ftrace_minus = physical_flux(U[tuple(sl)], axis, gas)
            sl[1 + axis] = -1
            ftrace_plus = physical_flux(U[tuple(sl)], axis, gas)

        jump_plus = fstar - ftrace_plus
        jump_minus = fstar[neighbors[:, 2 * axis]] - ftrace_minus

        scale = 2.0 / spacing[axis]
        lift_plus = scale * op.interp_plus / op.weights
        lift_minus = scale * op.interp_minus / op.weights
        shape = [1, 1, 1, 1, 1]
        shape[1 + axis] = n
        rate -= lift_plus.reshape(shape) * np.expand_dims(jump_plus, 1 + axis)
        rate += lift_minus.reshape(shape) * np.expand_dims(jump_minus, 1 + axis)
    return rate


def rhs(U, op: NodalOperator, neighbors, spacing, gas: GasParams,
        flux_kind: str, split_form: bool, volume_flux=fluxes.ECKEP):
    """Full semidiscrete rate: volume plus interface coupling."""
    if split_form:
        rate = volume_split(U, op, spacing, gas, volume_flux)
    else:
        rate = volume_standard(U, op, spacing, gas)
    rate += surface_terms(U, op, neighbors, spacing, gas, flux_kind)
    return rate


def max_wave_speeds(U, gas: GasParams):
    """Per-axis maxima of |v_d| + c over every node (for the CFL condition)."""
    rho = U[..., 0]
    v = U[..., 1:4] / rho[..., None]
    p = (gas.gamma - 1.0) * (U[..., 4] - 0.5 * rho * np.sum(v * v, axis=-1))
    c = np.sqrt(gas.gamma * p / rho)
    return np.array([np.max(np.abs(v[..., d]) + c) for d in range(3)])
