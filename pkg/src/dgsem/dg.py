"""Semidiscrete DGSEM assembly: scheme configuration and the RHS operator.

Two volume formulations are supported: the standard collocation volume
integral (Gauss or LGL nodes) and the split-form flux-differencing volume
integral (LGL only, where the diagonal-norm SBP property with boundary
nodes makes the formulation entropy conservative with the matching
two-point flux).  Interface coupling always goes through a numerical
surface flux lifted as a penalty.
"""

from dataclasses import dataclass, field

import numpy as np

from . import backends, fluxes
from .backends import numpy_backend
from .euler import GasParams, InvalidStateError
from .mesh import PeriodicMesh
from .operators import GAUSS, LGL, NodalOperator, build_operator

STANDARD = "standard"
SPLIT = "split"
VOLUME_MODES = (STANDARD, SPLIT)


@dataclass(frozen=True)
class SchemeConfig:
    """Discretization choices for one run."""

    nodes: str = LGL
    degree: int = 3
    volume: str = STANDARD
    flux: str = fluxes.LLF
    gas: GasParams = field(default_factory=GasParams)

    def __post_init__(self):
        if self.nodes not in (GAUSS, LGL):
            raise ValueError(f"nodes must be '{GAUSS}' or '{LGL}', got {self.nodes!r}")
        if self.volume not in VOLUME_MODES:
            raise ValueError(f"volume must be one of {VOLUME_MODES}, got {self.volume!r}")
        if self.flux not in fluxes.FLUX_KINDS:
            raise ValueError(f"flux must be one of {fluxes.FLUX_KINDS}, got {self.flux!r}")
        if self.volume == SPLIT and self.nodes != LGL:
            raise ValueError(
                "split-form volume integral requires LGL nodes "
                "(flux differencing relies on boundary-including diagonal-norm SBP operators)"
            )
        if self.degree < 1:
            raise ValueError(f"degree must be >= 1, got {self.degree}")

    def operator(self) -> NodalOperator:
        return build_operator(self.nodes, self.degree)


@dataclass
class GlobalSolution:
    """Solution array plus the mesh/operator it lives on."""

    U: np.ndarray  # (n_elements, n, n, n, 5)
    mesh: PeriodicMesh
    op: NodalOperator

    def copy(self) -> "GlobalSolution":
        return GlobalSolution(self.U.copy(), self.mesh, self.op)


def validate_states(U: np.ndarray, gas: GasParams):
    """Raise InvalidStateError naming the first offending element/node."""
    rho = U[..., 0]
    kin = 0.5 * np.sum(U[..., 1:4] ** 2, axis=-1)
    p = (gas.gamma - 1.0) * (U[..., 4] - kin / np.where(rho > 0.0, rho, 1.0))
    bad = ~(np.isfinite(U).all(axis=-1) & (rho > 0.0) & (p > 0.0))
    if bad.any():
        e, i, j, k = np.argwhere(bad)[0]
        raise InvalidStateError(
            f"invalid state at element {e}, node ({i},{j},{k}): "
            f"rho={rho[e, i, j, k]:.6g}, p={p[e, i, j, k]:.6g}"
        )


def volume_integral_standard(sol: GlobalSolution, gas: GasParams) -> np.ndarray:
    """Standard volume term (reference NumPy path)."""
    return numpy_backend.volume_standard(sol.U, sol.op, sol.mesh.spacing, gas)


def volume_integral_split(sol: GlobalSolution, gas: GasParams,
                          volume_flux: str = fluxes.ECKEP) -> np.ndarray:
    """Flux-differencing volume term (reference NumPy path); LGL only."""
    if sol.op.family != LGL:
        raise ValueError("split-form volume integral requires an LGL operator")
    return numpy_backend.volume_split(sol.U, sol.op, sol.mesh.spacing, gas, volume_flux)


def interface_exchange(sol: GlobalSolution, axis: int):
    """(uL, uR) trace pairs for every face normal to `axis`."""
    return numpy_backend.interface_states(sol.U, sol.op, sol.mesh.neighbors, axis)


def surface_integral(sol: GlobalSolution, gas: GasParams, flux_kind: str) -> np.ndarray:
    """Lifted interface-penalty contribution (reference NumPy path)."""
    return numpy_backend.surface_terms(
        sol.U, sol.op, sol.mesh.neighbors, sol.mesh.spacing, gas, flux_kind
    )


def rhs(sol: GlobalSolution, scheme: SchemeConfig, backend=None,
        volume_flux: str = fluxes.ECKEP, validate: bool = False) -> np.ndarray:
    """Semidiscrete rate du/dt for the configured scheme.

    `backend` may be a backend module, a backend name, or None for the
    default (compiled when available).
    """
    if validate:
        validate_states(sol.U, scheme.gas)
    if backend is None or isinstance(backend, str):
        backend = backends.get_backend(backend)
    return backend.rhs(
        sol.U, sol.op, sol.mesh.neighbors, sol.mesh.spacing, scheme.gas,
        scheme.flux, scheme.volume == SPLIT, volume_flux,
    )


def integral_of(sol: GlobalSolution, nodal_values: np.ndarray) -> np.ndarray:
    """Quadrature of a nodal field over the whole mesh (sum J w f)."""
    w = sol.op.weights
    wijk = w[:, None, None] * w[None, :, None] * w[None, None, :]
    return sol.mesh.jacobian * np.einsum("ijk,eijk...->...", wijk, nodal_values)


def total_conserved(sol: GlobalSolution) -> np.ndarray:
    """Integrals of the five conserved variables."""
    return integral_of(sol, sol.U)


def entropy_rate(sol: GlobalSolution, scheme: SchemeConfig, rate: np.ndarray = None,
                 backend=None) -> float:
    """Semidiscrete rate of the total mathematical entropy, sum J w w(u).du/dt."""
    from .euler import entropy_variables

    if rate is None:
        rate = rhs(sol, scheme, backend=backend)
    w_ent = entropy_variables(sol.U, scheme.gas)
    return float(integral_of(sol, np.sum(w_ent * rate, axis=-1)))
