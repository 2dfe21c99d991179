"""Checks for Jacobi polynomial evaluation and the diagonal kernel."""

import math
from fractions import Fraction

import numpy as np
import pytest

from jacobi_mimo.jacobi_poly import (
    JacobiParams,
    cd_kernel_closed,
    cd_kernel_sum,
    jacobi_eval,
    jacobi_norm_scaled,
    jacobi_squared_norm,
    kernel_constants,
)
from jacobi_mimo.quadrature import build_rule, integrate


def series_value(n: int, a: int, b: int, x: Fraction) -> Fraction:
    """Exact rational value via the explicit binomial double sum.

    Independent of the recurrence under test; Fraction arithmetic keeps
    every intermediate exact.
    """
    down = (x - 1) / 2
    up = (x + 1) / 2
    total = Fraction(0)
    for s in range(n + 1):
        total += (
            math.comb(n + a, n - s) * math.comb(n + b, s) * down**s * up ** (n - s)
        )
    return total


X_GRID = [
    Fraction(-1),
    Fraction(-1, 2),
    Fraction(0),
    Fraction(3, 10),
    Fraction(127, 128),
    Fraction(1),
]


def test_eval_matches_binomial_series():
    for a in (0, 1, 2, 5, 17):
        for b in (0, 1, 3, 11):
            for n in (0, 1, 2, 3, 7, 12):
                for x in X_GRID:
                    exact = float(series_value(n, a, b, x))
                    got = jacobi_eval(n, a, b, float(x))
                    assert got == pytest.approx(exact, rel=1e-12, abs=1e-13), (
                        n,
                        a,
                        b,
                        x,
                    )


def test_eval_endpoints():
    for n in range(9):
        for a in (0, 2, 6):
            for b in (0, 1, 4):
                assert jacobi_eval(n, a, b, 1.0) == pytest.approx(
                    math.comb(n + a, n), rel=1e-13
                )
                assert jacobi_eval(n, a, b, -1.0) == pytest.approx(
                    (-1) ** n * math.comb(n + b, n), rel=1e-13
                )


def test_eval_vectorized_matches_scalar():
    x = np.linspace(-1.0, 1.0, 17)
    vec = jacobi_eval(5, 2, 3, x)
    assert vec.shape == x.shape
    for xi, vi in zip(x, vec):
        assert vi == jacobi_eval(5, 2, 3, float(xi))
    assert isinstance(jacobi_eval(5, 2, 3, 0.25), float)


def test_eval_rejects_bad_input():
    with pytest.raises(ValueError):
        jacobi_eval(-1, 0, 0, 0.0)
    with pytest.raises(ValueError):
        jacobi_eval(2, -1, 0, 0.0)
    with pytest.raises(ValueError):
        jacobi_eval(2, 0, 0, 1.5)


def test_params_validation():
    with pytest.raises(ValueError):
        JacobiParams(a=-1, b=0, r=1)
    with pytest.raises(ValueError):
        JacobiParams(a=0, b=-2, r=1)
    with pytest.raises(ValueError):
        JacobiParams(a=0, b=0, r=0)


def test_norm_spot_values():
    # degree 0: the norm is just the weight mass
    assert jacobi_norm_scaled(0, 0, 0) == pytest.approx(1.0, rel=1e-14)
    assert jacobi_squared_norm(0, 0, 0) == pytest.approx(2.0, rel=1e-14)
    # (1-x)^2 (1+x) integrates to 4/3 over [-1, 1]
    assert jacobi_norm_scaled(0, 2, 1) == pytest.approx(1.0 / 12.0, rel=1e-13)
    assert jacobi_squared_norm(0, 2, 1) == pytest.approx(4.0 / 3.0, rel=1e-13)


def test_orthogonality_and_norms_by_quadrature():
    for a, b in ((0, 0), (1, 3), (4, 2), (0, 6)):
        rule = build_rule(a, b, 24)
        for i in range(9):
            ni = jacobi_squared_norm(i, a, b)
            for j in range(i, 9):
                dot = integrate(
                    rule,
                    lambda x: jacobi_eval(i, a, b, x) * jacobi_eval(j, a, b, x),
                )
                if i == j:
                    assert dot == pytest.approx(ni, rel=1e-9), (a, b, i)
                else:
                    scale = math.sqrt(ni * jacobi_squared_norm(j, a, b))
                    assert abs(dot) <= 1e-10 * max(scale, 1.0), (a, b, i, j)


def test_kernel_closed_matches_sum():
    x = np.linspace(-1.0, 1.0, 41)
    for r in range(1, 11):
        for a in (0, 1, 2, 5, 8):
            for b in (0, 1, 3, 16):
                params = JacobiParams(a=a, b=b, r=r)
                ks = cd_kernel_sum(params, x)
                kc = cd_kernel_closed(params, x)
                err = np.abs(kc - ks) / np.maximum(np.abs(ks), 1.0)
                assert err.max() < 1e-9, (r, a, b, err.max())


def test_kernel_sum_is_positive():
    x = np.linspace(-1.0, 1.0, 101)
    params = JacobiParams(a=2, b=5, r=6)
    assert (cd_kernel_sum(params, x) > 0.0).all()


def test_kernel_constants_spot_values():
    c = kernel_constants(JacobiParams(a=0, b=0, r=1))
    assert c.prefactor == pytest.approx(0.5, rel=1e-14)
    assert c.ratio == pytest.approx(0.5, rel=1e-14)

    c = kernel_constants(JacobiParams(a=3, b=2, r=4))
    assert c.ratio == pytest.approx(9.0 / 10.0, rel=1e-14)
    exact = Fraction(
        math.factorial(10) * math.factorial(4),
        2**6 * math.factorial(6) * math.factorial(5) * 13,
    )
    assert c.prefactor == pytest.approx(float(exact), rel=1e-13)


def test_kernel_closed_degenerate_r1():
    # with one kernel term the closed form collapses to the prefactor,
    # which must then equal the inverse degree-0 squared norm
    for a, b in ((0, 0), (2, 1), (0, 6), (5, 5)):
        params = JacobiParams(a=a, b=b, r=1)
        pre = kernel_constants(params).prefactor
        assert pre == pytest.approx(1.0 / jacobi_squared_norm(0, a, b), rel=1e-13)
        assert cd_kernel_closed(params, 0.3) == pytest.approx(
            cd_kernel_sum(params, 0.3), rel=1e-13
        )


def test_parameter_lowering_recurrence():
    # P_n^(a-1,b) = [(n+a+b) P_n^(a,b) - (n+b) P_(n-1)^(a,b)] / (2n+a+b)
    x = np.linspace(-1.0, 1.0, 21)
    for a in range(1, 6):
        for b in range(0, 5):
            for n in range(1, 13):
                lhs = jacobi_eval(n, a - 1, b, x)
                rhs = (
                    (n + a + b) * jacobi_eval(n, a, b, x)
                    - (n + b) * jacobi_eval(n - 1, a, b, x)
                ) / (2 * n + a + b)
                err = np.abs(lhs - rhs) / np.maximum(np.abs(lhs), 1.0)
                assert err.max() < 1e-10, (a, b, n, err.max())


def test_mixed_weight_product_integral_vanishes():
    # the raised-weight cross product of degrees r and r-2 integrates to
    # zero; this is what makes dropping the cross term a valid bound
    for r in range(2, 9):
        for a in range(0, 5):
            for b in range(0, 5):
                rule = build_rule(a + 1, b, r + 8)
                val = integrate(
                    rule,
                    lambda x: jacobi_eval(r, a, b, x)
                    * jacobi_eval(r - 2, a + 1, b + 1, x),
                )
                assert abs(val) < 1e-10, (r, a, b, val)


def exact_mixed_parameter_integral(a, b, c, n, m) -> Fraction:
    """Closed form of the (1-x)^c (1+x)^b weighted product of P_n^(a,b)
    and P_m^(c,b); needs a > c >= 0 and n >= m."""
    num = (
        2 ** (b + c + 1)
        * math.factorial(a + b + m + n)
        * math.factorial(b + n)
        * math.factorial(c + m)
        * math.factorial(a - c + n - m - 1)
    )
    den = (
        math.factorial(m)
        * math.factorial(n - m)
        * math.factorial(a + b + n)
        * math.factorial(b + c + m + n + 1)
        * math.factorial(a - c - 1)
    )
    return Fraction(num, den)


def test_mixed_parameter_product_integral_closed_form():
    for a in range(1, 6):
        for c in range(0, a):
            for b in range(0, 4):
                rule = build_rule(c, b, 12)
                for n in range(0, 7):
                    for m in range(0, n + 1):
                        quad = integrate(
                            rule,
                            lambda x: jacobi_eval(n, a, b, x)
                            * jacobi_eval(m, c, b, x),
                        )
                        exact = float(exact_mixed_parameter_integral(a, b, c, n, m))
                        assert quad == pytest.approx(exact, rel=1e-8), (a, b, c, n, m)
