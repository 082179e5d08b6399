"""Exact solutions used by the verification harness.

Two smooth periodic test problems on [-1, 1]^3, both uniform in z:

* a density wave transported at constant velocity and pressure, whose
  Mach number is set through the velocity pair, and
* a manufactured solution with an analytic source term balancing the
  residual, so the prescribed field solves the forced Euler system.
"""

from dataclasses import dataclass

import numpy as np

from .euler import GasParams, conservative
from .mesh import PeriodicMesh, all_coordinates
from .operators import NodalOperator

DENSITY_WAVE = "density"
MANUFACTURED = "manufactured"
CASES = (DENSITY_WAVE, MANUFACTURED)


@dataclass(frozen=True)
class DensityWaveConfig:
    """Sinusoidal density transported by a constant-velocity field.

    rho = 1 + amplitude * sin(pi ((x1 - v1 t) + (x2 - v2 t))), with
    constant pressure p = 1/gamma so the sound speed stays near one and
    the Mach number tracks |v|.
    """

    v1: float = 0.1
    v2: float = 0.15
    amplitude: float = 0.1

    def mach(self, gas: GasParams) -> float:
        return float(np.hypot(self.v1, self.v2))  # nominal c = 1


# velocity presets keyed by nominal Mach number
MACH_PRESETS = {
    "0.2": DensityWaveConfig(0.1, 0.15),
    "1.0": DensityWaveConfig(0.7, 0.65),
    "3.5": DensityWaveConfig(2.5, 2.4),
}


def density_wave_density(x: np.ndarray, t: float, cfg: DensityWaveConfig) -> np.ndarray:
    """Exact density at points x (shape (..., 3)) and time t."""
    x = np.asarray(x, dtype=float)
    phase = (x[..., 0] - cfg.v1 * t) + (x[..., 1] - cfg.v2 * t)
    return 1.0 + cfg.amplitude * np.sin(np.pi * phase)


def density_wave_state(x: np.ndarray, t: float, cfg: DensityWaveConfig,
                       gas: GasParams) -> np.ndarray:
    """Exact conservative state of the density wave."""
    rho = density_wave_density(x, t, cfg)
    v = np.broadcast_to(np.array([cfg.v1, cfg.v2, 0.0]), rho.shape + (3,))
    p = np.full_like(rho, 1.0 / gas.gamma)
    return conservative(rho, v, p, gas)


def _wave_profile(x: np.ndarray, t: float):
    """g = 0.5 sin(2 pi (x1 + x2 - t)) + 2 and its spatial derivative g'."""
    x = np.asarray(x, dtype=float)
    phase = 2.0 * np.pi * (x[..., 0] + x[..., 1] - t)
    g = 0.5 * np.sin(phase) + 2.0
    gp = np.pi * np.cos(phase)
    return g, gp


def manufactured_state(x: np.ndarray, t: float, gas: GasParams) -> np.ndarray:
    """Prescribed solution (rho, m1, m2, m3, E) = (g, g, g, 0, g^2).

    Both velocity components are 1; the pressure (gamma-1) g (g-1) stays
    positive since g ranges over [1.5, 2.5].
    """
    g, _ = _wave_profile(x, t)
    u = np.zeros(g.shape + (5,))
    u[..., 0] = g
    u[..., 1] = g
    u[..., 2] = g
    u[..., 4] = g * g
    return u


def manufactured_source(x: np.ndarray, t: float, gas: GasParams) -> np.ndarray:
    """Residual u_t + div f(u) of the prescribed field, added as a source.

    Derived by substituting the ansatz into the Euler system; verified
    against a finite-difference residual oracle in the test suite.
    """
    g, gp = _wave_profile(x, t)
    gm1 = gas.gamma - 1.0
    s = np.zeros(g.shape + (5,))
    s[..., 0] = gp
    s[..., 1] = s[..., 2] = (2.0 - gas.gamma) * gp + 2.0 * gm1 * g * gp
    s[..., 4] = -2.0 * gm1 * gp + 2.0 * (2.0 * gas.gamma - 1.0) * g * gp
    return s


def exact_state_fn(case: str, cfg: DensityWaveConfig, gas: GasParams):
    """(x, t) -> conservative state for the chosen test case."""
    if case == DENSITY_WAVE:
        return lambda x, t: density_wave_state(x, t, cfg, gas)
    if case == MANUFACTURED:
        return lambda x, t: manufactured_state(x, t, gas)
    raise ValueError(f"unknown case {case!r}; expected one of {CASES}")


def exact_density_fn(case: str, cfg: DensityWaveConfig, gas: GasParams):
    """(x, t) -> exact density for the chosen test case."""
    if case == DENSITY_WAVE:
        return lambda x, t: density_wave_density(x, t, cfg)
    if case == MANUFACTURED:
        return lambda x, t: _wave_profile(x, t)[0]
    raise ValueError(f"unknown case {case!r}; expected one of {CASES}")


def initialize(mesh: PeriodicMesh, op: NodalOperator, state_fn, t: float = 0.0) -> np.ndarray:
    """Nodal interpolation of an exact state onto the collocation grid."""
    xyz = all_coordinates(mesh, op)
    return state_fn(xyz, t)
