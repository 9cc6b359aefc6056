import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jacobi_moments import statistics as S
from jacobi_moments.ensemble import Group, points_to_angles, sample_jacobi, sample_jacobi_batch
from jacobi_moments.jacobi import JacobiParams

points = st.lists(st.floats(1e-6, 1.0), min_size=2, max_size=12).map(np.array)


def psi(theta, angles):
    """The symplectic characteristic polynomial as a complex product."""
    return np.prod((1 - np.exp(-1j * (theta - angles))) * (1 - np.exp(-1j * (theta + angles))))


def z_fn(theta, angles):
    n = angles.size
    phase = np.exp(0.5j * n * (theta + math.pi) - 0.5j * np.sum(angles))
    return phase * np.prod(1 - np.exp(-1j * (theta - angles)))


def fd_second_ratio(th, h=1e-4):
    """psi''/psi at 0 by central differences at h and h/2, Richardson-combined."""
    p0 = psi(0.0, th)

    def d2(step):
        return ((psi(step, th) - 2 * p0 + psi(-step, th)) / step**2 / p0).real

    return (4 * d2(h / 2) - d2(h)) / 3


def test_char_poly_examples():
    assert S.char_poly_at_zero(np.full(5, 0.5)) == pytest.approx(32.0)
    assert S.char_poly_at_zero(np.array([1.0])) == pytest.approx(4.0)
    s = sample_jacobi(JacobiParams(0.5, 0.5), 30, 2)
    assert S.log_char_poly_at_zero(s).log_abs == pytest.approx(float(np.sum(np.log(4 * s.points))), abs=1e-12)


def test_char_poly_matches_complex_product():
    s = sample_jacobi(Group.SP.params, 8, 3)
    th = points_to_angles(s.points)
    assert S.char_poly_at_zero(s) == pytest.approx(psi(0.0, th).real, rel=1e-12)


def test_second_deriv_examples():
    assert S.second_deriv_ratio(np.array([1.0])) == pytest.approx(-1.5)
    assert S.second_deriv_ratio_angles(np.array([math.pi])) == pytest.approx(-1.5)
    assert S.second_deriv_ratio(np.array([0.5, 0.5])) == pytest.approx(-6.0)


@pytest.mark.parametrize("n", [3, 20])
def test_second_deriv_against_finite_difference(n):
    rows = sample_jacobi_batch(Group.SP.params, n, 50, seed=n)
    for x in rows:
        th = points_to_angles(x)
        fd = fd_second_ratio(th)
        closed = S.second_deriv_ratio(x)
        assert S.second_deriv_ratio_angles(th) == pytest.approx(closed, rel=1e-9)
        assert fd == pytest.approx(closed, rel=1e-6)


def test_m_statistic_examples_and_bridge():
    assert S.m_statistic(np.array([1.0])) == 1.0
    assert S.m_statistic(np.array([0.5, 0.5])) == 1.0
    for x in sample_jacobi_batch(JacobiParams(1.5, 0.5), 9, 20, seed=1):
        n = x.size
        assert n * n * (S.m_statistic(x) / 2 + 1) == pytest.approx(abs(S.second_deriv_ratio(x)), rel=1e-14)


def test_z_statistic_examples():
    assert S.z_statistic(np.array([0.5, 0.5])) == pytest.approx(1 / math.log(2))
    assert S.z_statistic(np.ones(4)) == 0.0
    with pytest.raises(ValueError):
        S.z_statistic(np.array([0.3]))


def test_z_sum_is_cotangent_sum():
    x = sample_jacobi(Group.SO.params, 15, 6).points
    th = points_to_angles(x)
    assert S.z_sum(x) == pytest.approx(float(np.sum(1 / np.tan(th / 2))), rel=1e-12)
    assert S.z_statistic(x) == pytest.approx(S.z_sum(x) / (15 * math.log(15)), rel=1e-15)


def test_log_deriv_examples():
    assert S.log_deriv_z(np.array([0.5])) == pytest.approx(0.5)
    x = np.array([0.2, 0.5, 0.7])
    assert S.log_deriv_z(x) == pytest.approx(0.5 * S.z_statistic(x) * 3 * math.log(3))


@pytest.mark.parametrize("seed", range(5))
def test_log_deriv_against_finite_difference(seed):
    x = sample_jacobi(JacobiParams(0.5, 0.5), 3, seed).points
    th = points_to_angles(x)
    h = 1e-5
    d = (z_fn(h, th) - z_fn(-h, th)) / (2 * h) / z_fn(0.0, th)
    # the derivative of log Z at 0 is real; only its magnitude is reported
    assert abs(d.imag) < 1e-8 * abs(d.real)
    assert abs(d.real) == pytest.approx(S.log_deriv_z(x), rel=1e-6)


def test_observables_nonnegative():
    vals = S.observables(sample_jacobi(JacobiParams(0.5, 0.5), 6, 1))
    names = {v.name for v in vals}
    assert S.Observable.Z_STAT in names
    assert len(S.observables(np.array([0.4]))) == 4
    with pytest.raises(ValueError):
        S.ObservableValue(S.Observable.M_STAT, -1.0)
    S.ObservableValue("SecondDerivRatio", -3.0)


def test_signed_log_power():
    assert S.SignedLog(0.0, -math.inf).power(0) == 1.0
    assert S.SignedLog(0.0, -math.inf).power(2) == 0.0
    assert S.SignedLog(1.0, math.log(3.0)).power(0.5) == pytest.approx(math.sqrt(3))


def test_input_validation():
    with pytest.raises(ValueError):
        S.m_statistic(np.array([0.0, 0.5]))
    with pytest.raises(ValueError):
        S.m_statistic(np.array([]))
    with pytest.raises(ValueError):
        S.m_statistic(np.array([1.2]))


def test_row_forms_match():
    rows = sample_jacobi_batch(JacobiParams(1.5, 0.5), 7, 30, seed=2)
    assert np.allclose(S.m_statistic_rows(rows), [S.m_statistic(r) for r in rows], rtol=1e-14)
    assert np.allclose(S.z_statistic_rows(rows), [S.z_statistic(r) for r in rows], rtol=1e-14)
    assert np.allclose(S.log_char_poly_rows(rows), [S.log_char_poly_at_zero(r).log_abs for r in rows], rtol=1e-14)


@given(points, st.randoms(use_true_random=False))
def test_permutation_invariance(x, rnd):
    y = x.copy()
    rnd.shuffle(y)
    for f in (S.m_statistic, S.z_statistic, S.log_deriv_z, S.second_deriv_ratio):
        assert f(y) == pytest.approx(f(x), rel=1e-12)
    assert S.log_char_poly_at_zero(y).log_abs == pytest.approx(S.log_char_poly_at_zero(x).log_abs, rel=1e-12, abs=1e-12)


@given(points)
def test_second_deriv_identity(x):
    n = x.size
    r = S.second_deriv_ratio(x)
    assert abs(r + np.sum(1 / (2 * x)) + n * n) <= 1e-9 * abs(r)
