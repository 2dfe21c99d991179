"""Jacobi polynomials on [-1, 1] and the diagonal Christoffel-Darboux kernel.

Everything here is for the classical family orthogonal under the weight
(1-x)^a (1+x)^b with nonnegative integer exponents, which is all the
channel model ever produces.  Polynomials are evaluated by the three-term
recurrence in the degree; the explicit series form cancels badly at high
degree and is kept only as a test oracle.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "JacobiParams",
    "KernelConstants",
    "jacobi_eval",
    "jacobi_norm_scaled",
    "jacobi_squared_norm",
    "cd_kernel_sum",
    "cd_kernel_closed",
    "kernel_constants",
]

# Quadrature nodes can round a hair outside the interval.
_X_TOL = 1e-12


@dataclass(frozen=True)
class JacobiParams:
    """Weight exponents (a, b) and kernel order r of one polynomial family."""

    a: int
    b: int
    r: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError(
                f"weight exponents must be >= 0, got a={self.a}, b={self.b}"
            )
        if self.r < 1:
            raise ValueError(f"kernel order must be >= 1, got r={self.r}")


@dataclass(frozen=True)
class KernelConstants:
    """Prefactor and mixing ratio of the closed-form diagonal kernel."""

    prefactor: float
    ratio: float


def _check_indices(n: int, a: int, b: int) -> None:
    if n < 0 or a < 0 or b < 0:
        raise ValueError(
            f"degree and weight exponents must be >= 0, got n={n}, a={a}, b={b}"
        )


def jacobi_eval(n: int, a: int, b: int, x):
    """Evaluate the Jacobi polynomial P_n^{a,b} at x.

    x may be a scalar or an ndarray; the return type matches.  Points up
    to 1e-12 outside [-1, 1] are accepted, anything further is rejected
    since the recurrence is only certified stable on the interval.
    """
    _check_indices(n, a, b)
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0 + _X_TOL):
        bad = float(xa[np.abs(xa) > 1.0 + _X_TOL].flat[0])
        raise ValueError(f"evaluation point {bad} lies outside [-1, 1]")
    scalar = xa.ndim == 0

    p_prev = np.ones_like(xa)
    if n == 0:
        return float(p_prev) if scalar else p_prev
    apb = a + b
    p = 0.5 * (a - b + (apb + 2) * xa)
    for k in range(2, n + 1):
        c1 = 2 * k * (k + apb) * (2 * k + apb - 2)
        c2 = (2 * k + apb - 1) * (a * a - b * b)
        c3 = (2 * k + apb - 2) * (2 * k + apb - 1) * (2 * k + apb)
        c4 = 2 * (k + a - 1) * (k + b - 1) * (2 * k + apb)
        p, p_prev = ((c2 + c3 * xa) * p - c4 * p_prev) / c1, p
    return float(p) if scalar else p


def jacobi_norm_scaled(k: int, a: int, b: int) -> float:
    """Squared L2 norm of P_k^{a,b} under the weight, divided by 2^(a+b+1).

    Equals binom(2k+a+b, k) / ((2k+a+b+1) * binom(2k+a+b, k+a)).  The
    factorials are combined in log-gamma space; direct evaluation
    overflows near degree 170.
    """
    _check_indices(k, a, b)
    log_val = (
        math.lgamma(k + a + 1)
        + math.lgamma(k + b + 1)
        - math.lgamma(k + 1)
        - math.lgamma(k + a + b + 1)
    )
    return math.exp(log_val) / (2 * k + a + b + 1)


def jacobi_squared_norm(k: int, a: int, b: int) -> float:
    """Squared L2 norm of P_k^{a,b} under the weight (1-x)^a (1+x)^b."""
    return 2.0 ** (a + b + 1) * jacobi_norm_scaled(k, a, b)


def cd_kernel_sum(params: JacobiParams, x):
    """Diagonal Christoffel-Darboux kernel, sum_{k<r} P_k(x)^2 / ||P_k||^2.

    Each degree is a separate recurrence pass, so the cost grows
    quadratically with r.  That is the textbook reading of the sum and
    the baseline that cd_kernel_closed is benchmarked against; use the
    closed form when speed matters.
    """
    a, b = params.a, params.b
    total = 0.0
    for k in range(params.r):
        pk = jacobi_eval(k, a, b, x)
        total = total + pk * pk / jacobi_squared_norm(k, a, b)
    return total


def kernel_constants(params: JacobiParams) -> KernelConstants:
    """Constants of the two-product closed form of the diagonal kernel.

    prefactor = (r+a+b+1)! r! / (2^(a+b+1) (r+a-1)! (r+b-1)! (2r+a+b)),
    ratio = (r+a+b) / (r+a+b+1).  Computed via log-gamma.
    """
    a, b, r = params.a, params.b, params.r
    log_m = (
        math.lgamma(r + a + b + 2)
        + math.lgamma(r + 1)
        - (a + b + 1) * math.log(2.0)
        - math.lgamma(r + a)
        - math.lgamma(r + b)
        - math.log(2 * r + a + b)
    )
    ratio = (r + a + b) / (r + a + b + 1)
    return KernelConstants(prefactor=math.exp(log_m), ratio=ratio)


def cd_kernel_closed(params: JacobiParams, x):
    """Closed form of the diagonal kernel, equal to cd_kernel_sum pointwise.

    Collapses the r-term sum into two polynomial products,

        prefactor * [P_{r-1}^{a,b} P_{r-1}^{a+1,b+1}
                     - ratio * P_r^{a,b} P_{r-2}^{a+1,b+1}],

    with the degree -1 polynomial taken to be zero so r = 1 needs no
    special case.
    """
    a, b, r = params.a, params.b, params.r
    consts = kernel_constants(params)
    bracket = jacobi_eval(r - 1, a, b, x) * jacobi_eval(r - 1, a + 1, b + 1, x)
    if r >= 2:
        bracket = bracket - consts.ratio * jacobi_eval(r, a, b, x) * jacobi_eval(
            r - 2, a + 1, b + 1, x
        )
    return consts.prefactor * bracket
