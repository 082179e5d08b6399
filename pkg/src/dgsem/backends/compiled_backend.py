"""Wrapper presenting the Cython kernels with the common backend interface."""

import numpy as np

from .. import fluxes
from ..euler import GasParams, InvalidStateError
from ..operators import GAUSS, NodalOperator
from . import _ckernels

NAME = "compiled"

FLUX_IDS = {
    fluxes.LLF: 0,
    fluxes.HLL: 1,
    fluxes.HLLC: 2,
    fluxes.ROE: 3,
    fluxes.ECKEP: 4,
    fluxes.ECKEP_LLF: 5,
    fluxes.ECKEP_ROE: 6,
}
VOLUME_FLUX_IDS = {fluxes.ECKEP: 0, "central": 1}

_MAX_NODES = 16  # stack-buffer bound inside the kernel


def rhs(U, op: NodalOperator, neighbors, spacing, gas: GasParams,
        flux_kind: str, split_form: bool, volume_flux=fluxes.ECKEP):
    n = op.n_nodes
    if n > _MAX_NODES:
        raise ValueError(f"compiled kernels support up to {_MAX_NODES} nodes per direction")
    is_gauss = op.family == GAUSS
    if split_form and is_gauss:
        raise ValueError("split-form volume integral requires LGL nodes")
    U = np.ascontiguousarray(U)
    nelem = U.shape[0]
    R = np.zeros_like(U)
    status = _ckernels.rhs_kernel(
        U.reshape(nelem, n ** 3, 5), R.reshape(nelem, n ** 3, 5),
        np.ascontiguousarray(op.diff), np.ascontiguousarray(op.interp_minus),
        np.ascontiguousarray(op.interp_plus), np.ascontiguousarray(op.weights),
        neighbors, spacing[0], spacing[1], spacing[2], gas.gamma,
        FLUX_IDS[flux_kind], split_form, VOLUME_FLUX_IDS[volume_flux], is_gauss, n,
    )
    if status != -1:
        e, node = divmod(int(status), n ** 3)
        i, rem = divmod(node, n * n)
        j, k = divmod(rem, n)
        raise InvalidStateError(
            f"invalid state at element {e}, node ({i},{j},{k}) during RHS evaluation"
        )
    return R


def max_wave_speeds(U, gas: GasParams):
    U = np.ascontiguousarray(U)
    nelem = U.shape[0]
    n = U.shape[1]
    out = np.empty(3)
    status = _ckernels.max_wave_speeds_kernel(
        U.reshape(nelem, n ** 3, 5), gas.gamma, out
    )
    if status != 0:
        raise InvalidStateError("invalid state while computing wave speeds")
    return out
