"""Ideal-gas Euler physics: state transforms, fluxes, entropy quantities.

Conservative states are length-5 vectors (rho, rho*v1, rho*v2, rho*v3, E);
all functions also accept arrays of shape (..., 5) and broadcast over the
leading axes, which is how the solver uses them.

The entropy machinery uses the standard pair for the ideal gas,

    s = ln p - gamma ln rho,    S(u) = -rho s / (gamma - 1),

with entropy flux  F_d = v_d S  and flux potential  psi_d = rho v_d.
"""

from dataclasses import dataclass

import numpy as np

RHO, MX, MY, MZ, EN = range(5)


class InvalidStateError(ValueError):
    """A state left the physical region (non-positive density or pressure)."""


@dataclass(frozen=True)
class GasParams:
    """Ideal-gas parameters; gamma is the adiabatic coefficient."""

    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")


def conservative(rho, v, p, gas: GasParams) -> np.ndarray:
    """Assemble conservative variables from (rho, velocity 3-vector, p)."""
    rho = np.asarray(rho, dtype=float)
    v = np.asarray(v, dtype=float)
    p = np.asarray(p, dtype=float)
    if np.any(rho <= 0.0):
        raise InvalidStateError("non-positive density")
    if np.any(p <= 0.0):
        raise InvalidStateError("non-positive pressure")
    u = np.empty(np.broadcast(rho, v[..., 0], p).shape + (5,))
    u[..., RHO] = rho
    u[..., MX:MZ + 1] = rho[..., None] * v
    u[..., EN] = p / (gas.gamma - 1.0) + 0.5 * rho * np.sum(v * v, axis=-1)
    return u


def pressure(u: np.ndarray, gas: GasParams, validate: bool = True) -> np.ndarray:
    """Pressure from conservative variables, p = (gamma-1)(E - |m|^2/(2 rho))."""
    u = np.asarray(u, dtype=float)
    rho = u[..., RHO]
    if validate and np.any(rho <= 0.0):
        raise InvalidStateError("non-positive density")
    kinetic = 0.5 * np.sum(u[..., MX:MZ + 1] ** 2, axis=-1) / rho
    p = (gas.gamma - 1.0) * (u[..., EN] - kinetic)
    if validate and np.any(p <= 0.0):
        raise InvalidStateError("non-positive pressure")
    return p


def primitives(u: np.ndarray, gas: GasParams):
    """Split conservative variables into (rho, v, p), validating positivity."""
    u = np.asarray(u, dtype=float)
    rho = u[..., RHO]
    p = pressure(u, gas)
    v = u[..., MX:MZ + 1] / rho[..., None]
    return rho, v, p


def physical_flux(u: np.ndarray, axis: int, gas: GasParams) -> np.ndarray:
    """Advective flux f_axis of the Euler equations (axis in 0..2)."""
    rho, v, p = primitives(u, gas)
    vn = v[..., axis]
    f = vn[..., None] * u
    f[..., MX + axis] += p
    f[..., EN] += p * vn
    return f


def sound_speed(u: np.ndarray, gas: GasParams) -> np.ndarray:
    """c = sqrt(gamma p / rho)."""
    rho = np.asarray(u, dtype=float)[..., RHO]
    return np.sqrt(gas.gamma * pressure(u, gas) / rho)


def max_wave_speed(u: np.ndarray, axis: int, gas: GasParams) -> np.ndarray:
    """Fastest signal speed |v_axis| + c."""
    rho, v, p = primitives(u, gas)
    return np.abs(v[..., axis]) + np.sqrt(gas.gamma * p / rho)


def entropy_variables(u: np.ndarray, gas: GasParams) -> np.ndarray:
    """w = dS/du for the entropy S = -rho s / (gamma - 1).

    With beta = rho/(2p):
        w = ((gamma - s)/(gamma - 1) - beta |v|^2, 2 beta v, -2 beta).
    """
    rho, v, p = primitives(u, gas)
    s = np.log(p) - gas.gamma * np.log(rho)
    beta = rho / (2.0 * p)
    w = np.empty_like(np.asarray(u, dtype=float))
    w[..., RHO] = (gas.gamma - s) / (gas.gamma - 1.0) - beta * np.sum(v * v, axis=-1)
    w[..., MX:MZ + 1] = 2.0 * beta[..., None] * v
    w[..., EN] = -2.0 * beta
    return w


def total_entropy(u: np.ndarray, gas: GasParams) -> np.ndarray:
    """Mathematical entropy density S(u) = -rho s / (gamma - 1)."""
    rho, v, p = primitives(u, gas)
    s = np.log(p) - gas.gamma * np.log(rho)
    return -rho * s / (gas.gamma - 1.0)


def entropy_flux_potential(u: np.ndarray, axis: int, gas: GasParams) -> np.ndarray:
    """Flux potential psi_axis = rho v_axis (enters the EC flux condition)."""
    u = np.asarray(u, dtype=float)
    return u[..., MX + axis]
