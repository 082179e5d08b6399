"""Low-storage Runge-Kutta time integration with CFL-controlled steps.

The five-stage fourth-order 2N-register scheme of Carpenter & Kennedy is
used throughout; the step size follows the usual explicit DGSEM estimate

    dt = CFL * min_d  h_d / ((2N + 1) * max|v_d| + c|),

with the final step clipped to land exactly on t_end.
"""

from dataclasses import dataclass

import numpy as np

# Carpenter-Kennedy RK4(5) 2N-storage coefficients
LSRK_A = np.array([
    0.0,
    -567301805773.0 / 1357537059087.0,
    -2404267990393.0 / 2016746695238.0,
    -3550918686646.0 / 2091501179385.0,
    -1275806237668.0 / 842570457699.0,
])
LSRK_B = np.array([
    1432997174477.0 / 9575080441755.0,
    5161836677717.0 / 13612068292357.0,
    1720146321549.0 / 2090206949498.0,
    3134564353537.0 / 4481467310338.0,
    2277821191437.0 / 14882151754819.0,
])
LSRK_C = np.array([
    0.0,
    1432997174477.0 / 9575080441755.0,
    2526269341429.0 / 6820363962896.0,
    2006345519317.0 / 3224310063776.0,
    2802321613138.0 / 2924317926251.0,
])


class NumericsError(RuntimeError):
    """The solution left the representable range (NaN/Inf) during a run."""


@dataclass
class TimeControls:
    cfl: float = 0.5
    t_end: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError(f"CFL must lie in (0, 1], got {self.cfl}")
        if not self.t_end > 0.0:
            raise ValueError(f"t_end must be positive, got {self.t_end}")


def compute_dt(max_speeds, spacing, degree: int, cfl: float) -> float:
    """CFL step from per-axis maximum wave speeds and element sizes."""
    max_speeds = np.asarray(max_speeds, dtype=float)
    spacing = np.asarray(spacing, dtype=float)
    return cfl * float(np.min(spacing / ((2 * degree + 1) * max_speeds)))


def lsrk_step(u: np.ndarray, t: float, dt: float, rhs_fn, work: np.ndarray = None) -> np.ndarray:
    """One five-stage low-storage step, updating u in place.

    rhs_fn(u, t) must return du/dt with u's shape; `work` is the second
    register (allocated when not supplied).
    """
    if work is None:
        work = np.zeros_like(u)
    else:
        work[...] = 0.0
    for a, b, c in zip(LSRK_A, LSRK_B, LSRK_C):
        work *= a
        work += dt * rhs_fn(u, t + c * dt)
        u += b * work
    return u


def integrate(u: np.ndarray, rhs_fn, dt_fn, controls: TimeControls, callback=None) -> int:
    """March u from t=0 to t_end; returns the number of steps taken.

    dt_fn(u) supplies the raw CFL step; the last step is clipped so the
    final time is hit exactly.  callback(step, t, dt, u), when given, runs
    after every accepted step.  NaN/Inf aborts with step context.
    """
    t = 0.0
    step = 0
    work = np.zeros_like(u)
    while t < controls.t_end:
        dt = dt_fn(u)
        if not dt > 0.0:
            raise NumericsError(f"non-positive time step {dt} at t={t:.6g}")
        # clip onto t_end, absorbing roundoff slivers of accumulated t
        final = t + dt >= controls.t_end * (1.0 - 1e-12)
        if final:
            dt = controls.t_end - t
        lsrk_step(u, t, dt, rhs_fn, work)
        t = controls.t_end if final else t + dt
        step += 1
        if not np.all(np.isfinite(u)):
            raise NumericsError(f"non-finite solution after step {step} at t={t:.6g}")
        if callback is not None:
            callback(step, t, dt, u)
    return step
