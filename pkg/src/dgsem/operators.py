"""1D nodal operators on Legendre-Gauss and Legendre-Gauss-Lobatto points.

Everything a collocation spectral element needs in one small bundle:
quadrature nodes and weights, the differentiation matrix, and the two
Lagrange-basis evaluation vectors at the interval endpoints.  Together
these satisfy the summation-by-parts relation

    M D + D^T M = l_plus l_plus^T - l_minus l_minus^T,   M = diag(w),

which is what the discrete integration-by-parts in the solver relies on.
"""

from dataclasses import dataclass, field

import numpy as np

GAUSS = "gauss"
LGL = "lgl"
NODE_FAMILIES = (GAUSS, LGL)

_NEWTON_TOL = 1e-15
_MAX_NEWTON_ITERS = 100


@dataclass(frozen=True)
class NodalOperator:
    """Collocation operator bundle for one node family and degree.

    nodes, weights : quadrature rule on [-1, 1], nodes strictly increasing
    diff           : (N+1)x(N+1) differentiation matrix D, D@f = f' at nodes
    interp_minus   : Lagrange basis values at xi = -1
    interp_plus    : Lagrange basis values at xi = +1
    """

    family: str
    degree: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    diff: np.ndarray = field(repr=False)
    interp_minus: np.ndarray = field(repr=False)
    interp_plus: np.ndarray = field(repr=False)

    @property
    def n_nodes(self) -> int:
        return self.degree + 1

    @property
    def mass(self) -> np.ndarray:
        return np.diag(self.weights)


def _legendre_and_derivative(n: int, x: np.ndarray):
    """Evaluate P_n and P_n' at x via the three-term recurrence.

    At the endpoints the usual derivative formula is 0/0; there
    P_n'(+-1) = (+-1)^(n-1) n (n+1) / 2 is substituted.
    """
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev, np.zeros_like(x)
    p = x.copy()
    for k in range(1, n):
        p, p_prev = ((2 * k + 1) * x * p - k * p_prev) / (k + 1), p
    at_end = np.abs(x) == 1.0
    denom = np.where(at_end, 1.0, x * x - 1.0)
    dp = n * (x * p - p_prev) / denom
    if at_end.any():
        end_val = np.sign(x) ** (n - 1) * n * (n + 1) / 2.0
        dp = np.where(at_end, end_val, dp)
    return p, dp


def gauss_rule(degree: int):
    """Legendre-Gauss nodes and weights (roots of P_{N+1}).

    Newton iteration from Chebyshev initial guesses; exact for
    polynomials up to degree 2N+1.
    """
    n = degree + 1
    i = np.arange(n)
    x = -np.cos(np.pi * (2 * i + 1) / (2 * n))
    for _ in range(_MAX_NEWTON_ITERS):
        p, dp = _legendre_and_derivative(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < _NEWTON_TOL:
            break
    p, dp = _legendre_and_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    return x, w


def lgl_rule(degree: int):
    """Legendre-Gauss-Lobatto nodes and weights.

    Nodes are the roots of (1 - x^2) P_N'(x); interior roots found by
    Newton iteration on P_N' from Chebyshev-Lobatto guesses.  Weights:
    w_i = 2 / (N (N+1) P_N(x_i)^2).
    """
    if degree == 1:
        return np.array([-1.0, 1.0]), np.array([1.0, 1.0])
    n = degree
    x = -np.cos(np.pi * np.arange(1, n) / n)  # interior guesses
    for _ in range(_MAX_NEWTON_ITERS):
        p, dp = _legendre_and_derivative(n, x)
        # q = P_N', q' = P_N'' from the Legendre ODE:
        # (1-x^2) P_N'' = 2 x P_N' - N(N+1) P_N
        ddp = (2.0 * x * dp - n * (n + 1) * p) / (1.0 - x * x)
        dx = dp / ddp
        x = x - dx
        if np.max(np.abs(dx)) < _NEWTON_TOL:
            break
    nodes = np.concatenate(([-1.0], x, [1.0]))
    p, _ = _legendre_and_derivative(n, nodes)
    w = 2.0 / (n * (n + 1) * p * p)
    return nodes, w


def barycentric_weights(nodes: np.ndarray) -> np.ndarray:
    diffs = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diffs, 1.0)
    return 1.0 / np.prod(diffs, axis=1)


def differentiation_matrix(nodes: np.ndarray) -> np.ndarray:
    """Lagrange differentiation matrix from barycentric weights.

    Off-diagonal entries D_ij = (b_j / b_i) / (x_i - x_j); diagonal via
    the negative-sum trick so every row sums to zero exactly.
    """
    b = barycentric_weights(nodes)
    dx = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(dx, 1.0)
    d = (b[None, :] / b[:, None]) / dx
    np.fill_diagonal(d, 0.0)
    np.fill_diagonal(d, -np.sum(d, axis=1))
    return d


def lagrange_values(nodes: np.ndarray, point: float) -> np.ndarray:
    """All Lagrange basis polynomials evaluated at one point."""
    exact = np.isclose(nodes, point, rtol=0.0, atol=1e-14)
    if exact.any():
        out = np.zeros_like(nodes)
        out[np.argmax(exact)] = 1.0
        return out
    b = barycentric_weights(nodes)
    terms = b / (point - nodes)
    return terms / np.sum(terms)


def build_operator(family: str, degree: int) -> NodalOperator:
    """Construct the nodal operator for a node family and degree N >= 1."""
    if family not in NODE_FAMILIES:
        raise ValueError(f"unknown node family {family!r}; expected one of {NODE_FAMILIES}")
    if degree < 1:
        raise ValueError(f"polynomial degree must be >= 1, got {degree}")
    if family == GAUSS:
        nodes, weights = gauss_rule(degree)
    else:
        nodes, weights = lgl_rule(degree)
    op = NodalOperator(
        family=family,
        degree=degree,
        nodes=nodes,
        weights=weights,
        diff=differentiation_matrix(nodes),
        interp_minus=lagrange_values(nodes, -1.0),
        interp_plus=lagrange_values(nodes, 1.0),
    )
    for arr in (op.nodes, op.weights, op.diff, op.interp_minus, op.interp_plus):
        arr.setflags(write=False)
    return op


def differentiate(op: NodalOperator, values: np.ndarray) -> np.ndarray:
    """Derivative of the interpolating polynomial at the nodes (D @ values)."""
    values = np.asarray(values, dtype=float)
    if values.shape[0] != op.n_nodes:
        raise ValueError(f"expected {op.n_nodes} nodal values, got {values.shape[0]}")
    return op.diff @ values

def interpolate_to_boundary(op: NodalOperator, values: np.ndarray, side: str) -> float:
    """Evaluate the interpolant at xi = -1 ('minus') or xi = +1 ('plus')."""
    values = np.asarray(values, dtype=float)
    if values.shape[0] != op.n_nodes:
        raise ValueError(f"expected {op.n_nodes} nodal values, got {values.shape[0]}")
    if side == "minus":
        return op.interp_minus @ values
    if side == "plus":
        return op.interp_plus @ values
    raise ValueError(f"side must be 'minus' or 'plus', got {side!r}")
