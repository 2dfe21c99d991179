"""Gauss-Jacobi quadrature for the weight (1-x)^a (1+x)^b on [-1, 1].

Rules are built with the Golub-Welsch method and cached per
(a, b, node count); SNR sweeps hit the same rule hundreds of times.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

__all__ = ["QuadratureRule", "build_rule", "integrate", "weight_mass"]


@dataclass(frozen=True)
class QuadratureRule:
    a: int
    b: int
    nodes: np.ndarray
    weights: np.ndarray


def weight_mass(a: int, b: int) -> float:
    """Total mass of the weight: 2^(a+b+1) Gamma(a+1)Gamma(b+1)/Gamma(a+b+2)."""
    return math.exp(
        (a + b + 1) * math.log(2.0)
        + math.lgamma(a + 1)
        + math.lgamma(b + 1)
        - math.lgamma(a + b + 2)
    )


@lru_cache(maxsize=None)
def build_rule(a: int, b: int, n_nodes: int) -> QuadratureRule:
    """n-point Gauss-Jacobi rule, exact for polynomials of degree <= 2n - 1.

    Golub-Welsch: the symmetric tridiagonal matrix of three-term
    recurrence coefficients has the nodes as eigenvalues, and the squared
    first components of its eigenvectors, scaled by weight_mass, as the
    weights.  The cache makes concurrent duplicate builds harmless, every
    build of the same key yields identical arrays.
    """
    if n_nodes < 1:
        raise ValueError(f"need at least one node, got n_nodes={n_nodes}")
    if a < 0 or b < 0:
        raise ValueError(f"weight exponents must be >= 0, got a={a}, b={b}")

    ab = a + b
    i = np.arange(n_nodes, dtype=float)
    denom = (2 * i + ab) * (2 * i + ab + 2)
    diag = np.zeros(n_nodes)
    nz = denom != 0.0  # i=0 with a=b=0 is a removable 0/0 whose limit is 0
    diag[nz] = (b * b - a * a) / denom[nz]

    j = np.arange(1, n_nodes, dtype=float)
    s = 2 * j + ab
    off = np.sqrt(4 * j * (j + a) * (j + b) * (j + ab) / (s * s * (s * s - 1)))

    try:
        nodes, vecs = eigh_tridiagonal(diag, off)
    except LinAlgError as exc:
        raise RuntimeError(
            f"tridiagonal eigensolver did not converge for the rule "
            f"(a={a}, b={b}, n_nodes={n_nodes}): {exc}"
        ) from exc

    weights = weight_mass(a, b) * vecs[0, :] ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(a=a, b=b, nodes=nodes, weights=weights)


def integrate(rule: QuadratureRule, f) -> float:
    """Weighted node sum sum_i w_i f(x_i).

    Approximates the integral of (1-x)^a (1+x)^b f(x) over [-1, 1]; exact
    when f is a polynomial of degree <= 2n - 1.  f is called once with
    the node array and may return a scalar for constant integrands.
    """
    fx = np.asarray(f(rule.nodes), dtype=float)
    if fx.shape != rule.nodes.shape:
        fx = np.broadcast_to(fx, rule.nodes.shape)
    if not np.all(np.isfinite(fx)):
        idx = int(np.flatnonzero(~np.isfinite(fx))[0])
        raise ValueError(
            f"integrand is not finite at node x={rule.nodes[idx]} (index {idx})"
        )
    return float(rule.weights @ fx)
