"""DGSEM solver for the 3D compressible Euler equations.

Collocation discontinuous Galerkin spectral elements on periodic Cartesian
meshes, with standard (Gauss/LGL) and entropy-stable split-form (LGL)
volume integrals, seven interchangeable interface fluxes, low-storage RK4
time stepping, and a convergence-study harness.
"""

from .dg import GlobalSolution, SchemeConfig, rhs
from .euler import GasParams, InvalidStateError
from .harness import RunSpec, run_convergence_study, run_single
from .mesh import PeriodicMesh, build_mesh
from .operators import NodalOperator, build_operator

__version__ = "0.1.0"

__all__ = [
    "GasParams",
    "GlobalSolution",
    "InvalidStateError",
    "NodalOperator",
    "PeriodicMesh",
    "RunSpec",
    "SchemeConfig",
    "build_mesh",
    "build_operator",
    "rhs",
    "run_convergence_study",
    "run_single",
    "__version__",
]
