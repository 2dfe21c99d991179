"""Ergodic capacity of the Jacobi MIMO channel.

The channel matrix of a lossless multi-mode/multi-core optical MIMO link
is an m_r x m_t corner block of an m x m Haar-distributed unitary, so
H^dag H follows the Jacobi unitary ensemble.  This package computes the
ergodic capacity of that channel by several mutually cross-validating
routes (polynomial-sum integrand, Christoffel-Darboux closed form, Monte
Carlo sampling), together with an analytic lower bound and the linear
low-SNR approximation.
"""

__version__ = "0.1.0"

from .capacity import (
    ChannelConfig,
    capacity,
    capacity_cd_form,
    capacity_low_snr,
    capacity_lower_bound,
    capacity_sum_form,
    cross_term,
    db_to_linear,
    default_node_count,
)
from .haar_mc import (
    DensityCheck,
    MonteCarloEstimate,
    eigenvalue_density_check,
    mc_capacity,
    mc_capacity_grid,
    sample_haar_unitary,
    sample_rng,
)
from .jacobi_poly import (
    JacobiParams,
    KernelConstants,
    cd_kernel_closed,
    cd_kernel_sum,
    jacobi_eval,
    jacobi_norm_scaled,
    jacobi_squared_norm,
    kernel_constants,
)
from .quadrature import QuadratureRule, build_rule, integrate, weight_mass

__all__ = [
    "ChannelConfig",
    "DensityCheck",
    "JacobiParams",
    "KernelConstants",
    "MonteCarloEstimate",
    "QuadratureRule",
    "build_rule",
    "capacity",
    "capacity_cd_form",
    "capacity_low_snr",
    "capacity_lower_bound",
    "capacity_sum_form",
    "cd_kernel_closed",
    "cd_kernel_sum",
    "cross_term",
    "db_to_linear",
    "default_node_count",
    "eigenvalue_density_check",
    "integrate",
    "jacobi_eval",
    "jacobi_norm_scaled",
    "jacobi_squared_norm",
    "kernel_constants",
    "mc_capacity",
    "mc_capacity_grid",
    "sample_haar_unitary",
    "sample_rng",
    "weight_mass",
]
