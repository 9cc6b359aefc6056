import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from jacobi_moments.jacobi import (
    JacobiParams,
    KernelEvaluator,
    build_basis,
    evaluate_p,
    gauss_jacobi_nodes,
    h_l,
    kernel,
    recurrence_coefficients,
)

PARAMS = [JacobiParams(0.5, 0.5), JacobiParams(-0.5, -0.5), JacobiParams(0.5, -0.5), JacobiParams(-0.5, 0.5), JacobiParams(2.5, 0.5)]


def gram_schmidt(a, b, degree, dps=60):
    """Orthonormal polynomials from exact Beta moments, as mpmath coefficient lists."""
    with mp.workdps(dps):
        a, b = mp.mpf(a), mp.mpf(b)
        mom = [mp.beta(a + k + 1, b + 1) for k in range(2 * degree + 2)]

        def inner(p, q):
            return mp.fsum(pi * qj * mom[i + j] for i, pi in enumerate(p) for j, qj in enumerate(q))

        polys = []
        for d in range(degree + 1):
            p = [mp.mpf(0)] * d + [mp.mpf(1)]
            for q in polys:
                c = inner(p, q)
                p = [pi - c * (q[i] if i < len(q) else 0) for i, pi in enumerate(p)]
            norm = mp.sqrt(inner(p, p))
            polys.append([c / norm for c in p])
        return polys


def poly_at(p, x):
    # the monomial form cancels heavily, so evaluate it at the oracle's precision too
    with mp.workdps(60):
        return float(mp.polyval(list(reversed(p)), mp.mpf(x)))


def scipy_rule(params, n):
    """Gauss-Jacobi rule on [0, 1] built from scipy's [-1, 1] rule, y = 1 - 2x."""
    y, w = special.roots_jacobi(n, params.a, params.b)
    return (1.0 - y) / 2.0, w / 2.0 ** (params.a + params.b + 1.0)


def test_params_validation():
    with pytest.raises(ValueError):
        JacobiParams(-1.0, 0.0)
    with pytest.raises(ValueError):
        JacobiParams(0.0, -1.2)


def test_legendre_p1():
    basis = build_basis(JacobiParams(0, 0), 5)
    for x in (0.0, 0.2, 0.7, 1.0):
        assert evaluate_p(basis, 1, x) == pytest.approx(math.sqrt(3) * (2 * x - 1), abs=1e-14)
    assert abs(evaluate_p(basis, 1, 0.5)) < 1e-15


@pytest.mark.parametrize("params", PARAMS)
def test_p0_constant(params):
    basis = build_basis(params, 3)
    want = 1.0 / math.sqrt(special.beta(params.a + 1, params.b + 1))
    assert evaluate_p(basis, 0, 0.3) == pytest.approx(want, rel=1e-14)


def test_legendre_p4_against_gram_schmidt():
    oracle = gram_schmidt(0, 0, 4)
    basis = build_basis(JacobiParams(0, 0), 6)
    assert evaluate_p(basis, 4, 0.9) == pytest.approx(poly_at(oracle[4], 0.9), rel=1e-13)


@pytest.mark.parametrize("params", [JacobiParams(0.5, 0.5), JacobiParams(2.5, 0.5), JacobiParams(-0.5, 0.5)])
def test_basis_against_gram_schmidt(params):
    oracle = gram_schmidt(params.a, params.b, 8)
    basis = build_basis(params, 10)
    for j in range(9):
        for x in (0.01, 0.33, 0.8):
            assert evaluate_p(basis, j, x) == pytest.approx(poly_at(oracle[j], x), rel=1e-11, abs=1e-12)


def test_chebyshev_beta_limit():
    _, beta = recurrence_coefficients(JacobiParams(-0.5, -0.5), 40)
    assert np.all(beta > 0)
    assert abs(beta[-1] - 1 / 16) < 1e-14
    # Hankel determinant oracle: beta_j = D_{j+1} D_{j-1} / D_j^2 from the moments
    with mp.workdps(50):
        mom = [mp.beta(mp.mpf(k) + 0.5, 0.5) for k in range(12)]

        def det(k):
            return mp.det(mp.matrix([[mom[i + j] for j in range(k)] for i in range(k)])) if k else mp.mpf(1)

        for j in range(1, 5):
            assert beta[j] == pytest.approx(float(det(j + 1) * det(j - 1) / det(j) ** 2), rel=1e-12)


@pytest.mark.parametrize("params", PARAMS)
def test_orthonormality_to_degree_60(params):
    x, w = scipy_rule(params, 90)
    vals = build_basis(params, 60).evaluate_all(x, 61)
    gram = (vals * w) @ vals.T
    assert np.max(np.abs(gram - np.eye(61))) < 1e-10


def test_kernel_n1_legendre_is_one():
    ev = KernelEvaluator.for_params(JacobiParams(0, 0), 1)
    for x, y in [(0.1, 0.9), (0.4, 0.4), (0.5, 0.50000000001)]:
        assert kernel(ev, x, y) == pytest.approx(1.0, abs=1e-14)


def test_kernel_n3_against_gram_schmidt():
    oracle = gram_schmidt(0.5, 0.5, 2)
    ev = KernelEvaluator.for_params(JacobiParams(0.5, 0.5), 3)
    want = math.sqrt(0.5 * 0.5) * sum(poly_at(p, 0.5) ** 2 for p in oracle)
    assert kernel(ev, 0.5, 0.5) == pytest.approx(want, rel=1e-12)
    assert ev.diagonal(0.5) == pytest.approx(want, rel=1e-12)


def test_kernel_against_direct_sum_near_diagonal():
    params = JacobiParams(2.5, 0.5)
    ev = KernelEvaluator.for_params(params, 30)
    x = 0.37
    # 1e-9 takes the confluent branch, the others Christoffel-Darboux
    for gap in (0.0, 1e-9, 1e-7, 1e-3, 0.2):
        y = x + gap
        px = ev.basis.evaluate_all(x, 30)
        py = ev.basis.evaluate_all(y, 30)
        want = math.sqrt(params.weight(x) * params.weight(y)) * float(np.sum(px * py))
        assert kernel(ev, x, y) == pytest.approx(want, rel=1e-9)


@given(
    st.sampled_from(PARAMS),
    st.integers(1, 40),
    st.floats(0.001, 0.999),
    st.floats(0.001, 0.999),
)
def test_kernel_symmetric_and_diagonal_nonnegative(params, n, x, y):
    ev = KernelEvaluator.for_params(params, n)
    assert kernel(ev, x, y) == kernel(ev, y, x)
    assert ev.diagonal(x) >= 0


@pytest.mark.parametrize("params", PARAMS)
@pytest.mark.parametrize("n", [1, 5, 25, 100])
def test_kernel_trace(params, n):
    x, w = scipy_rule(params, n + 10)
    trace = np.sum(w * build_basis(params, n).sum_of_squares(x, n))
    assert abs(trace - n) < 1e-8


def test_gauss_jacobi_small_rules():
    x, w = gauss_jacobi_nodes(JacobiParams(0, 0), 1)
    assert x[0] == pytest.approx(0.5) and w[0] == pytest.approx(1.0)
    x, w = gauss_jacobi_nodes(JacobiParams(0, 0), 2)
    assert np.sum(w * x**2) == pytest.approx(1 / 3, rel=1e-15)
    _, w = gauss_jacobi_nodes(JacobiParams(0.5, 0.5), 20)
    assert np.sum(w) == pytest.approx(math.pi / 8, rel=1e-14)


@pytest.mark.parametrize("params", PARAMS)
def test_gauss_jacobi_matches_scipy(params):
    x, w = gauss_jacobi_nodes(params, 60)
    xs, ws = scipy_rule(params, 60)
    order = np.argsort(xs)
    assert np.allclose(x, xs[order], rtol=1e-12, atol=1e-15)
    assert np.allclose(w, ws[order], rtol=1e-10)


def test_gauss_jacobi_large_rule_exact_moments():
    # scipy's weights lose digits at this size; exact Beta moments are the oracle
    params = JacobiParams(1.5, 0.5)
    x, w = gauss_jacobi_nodes(params, 3000)
    for k in (0, 1, 7, 40):
        want = special.beta(params.a + k + 1, params.b + 1)
        assert np.sum(w * x**k) == pytest.approx(want, rel=1e-10)


def test_h_l_examples():
    p = JacobiParams(0, 0)
    assert h_l(p, 0) == pytest.approx(0.5)
    for l in (1, 4, 30):
        assert h_l(p, l) == pytest.approx((2 * l + 1) / 2, rel=1e-13)


@given(st.floats(-0.9, 4.0), st.floats(-0.9, 4.0), st.integers(0, 50))
def test_h_l_against_mpmath(a, b, l):
    params = JacobiParams(a, b)
    with mp.workdps(30):
        a_, b_ = mp.mpf(a), mp.mpf(b)
        want = (2 * l + a_ + b_ + 1) * mp.gamma(l + a_ + 1) * mp.gamma(l + a_ + b_ + 1) / (
            2 * mp.gamma(l + 1) * mp.gamma(l + b_ + 1)
        )
    assume_finite = abs(float(2 * l + a_ + b_ + 1)) > 1e-9 or l == 0
    if assume_finite:
        assert h_l(params, l) == pytest.approx(float(want), rel=1e-11, abs=1e-14)


def test_h_l_growth():
    params = JacobiParams(1.5, 0.5)
    ratios = [h_l(params, l) / (l + (params.a + params.b + 1) / 2) ** (2 * params.a + 1) for l in (10, 100, 1000, 10000)]
    gaps = [abs(r - 1) for r in ratios]
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 1e-3
