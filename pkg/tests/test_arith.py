import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from jacobi_moments import arith


def mp_factor(s, p):
    with mp.workdps(50):
        p = mp.mpf(p)
        u = 1 / mp.sqrt(p)
        return (1 - 1 / p) ** (s * (s + 1) / 2) / (1 + 1 / p) * (1 / p + ((1 + u) ** -s + (1 - u) ** -s) / 2)


def test_primes_examples():
    assert arith.primes_up_to(10) == [2, 3, 5, 7]
    assert arith.primes_up_to(2) == [2]
    assert arith.primes_up_to(1) == []
    assert len(arith.primes_up_to(10**6)) == 78498
    with pytest.raises(ValueError):
        arith.primes_up_to(10**8 + 1)


@given(st.integers(2, 5000))
def test_primes_against_trial_division(limit):
    want = [n for n in range(2, limit + 1) if all(n % d for d in range(2, math.isqrt(n) + 1))]
    assert arith.primes_up_to(limit) == want


@pytest.mark.parametrize("s", [0.5, 1.0, 2.5, 7.0])
@pytest.mark.parametrize("p", [2, 3, 1009, 10**5 + 3, 10**7 + 19])
def test_log_factor_against_mpmath(s, p):
    want = float(mp.log(mp_factor(s, p)))
    assert abs(float(arith.log_factor(s, p)) - want) <= 1e-13 * abs(want)


def test_s1_simplification_per_prime():
    ps = np.array(arith.primes_up_to(10**5), dtype=float)
    assert np.max(np.abs(arith.log_factor(1.0, ps) - arith.log_factor_s1(ps))) < 1e-13
    small = np.array(arith.primes_up_to(10), dtype=float)
    assert abs(math.fsum(arith.log_factor(1.0, small)) - math.fsum(arith.log_factor_s1(small))) < 1e-14


def test_factor_tends_to_one():
    for s in (0.5, 1.0, 3.0):
        assert abs(math.exp(float(arith.log_factor(s, 10**6))) - 1) < 1e-5


def test_log_factor_decays_like_inverse_square():
    scaled = [abs(float(arith.log_factor(1.0, p))) * p * p for p in (10**3, 10**4, 10**5)]
    assert max(scaled) / min(scaled) < 1.01


@pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
def test_doubling_ladder(s):
    results = [arith.euler_a_s(s, p) for p in (10**4, 2 * 10**4, 4 * 10**4, 10**5, 10**6)]
    bounds = [r.tail_bound for r in results]
    assert bounds == sorted(bounds, reverse=True)
    for q, r in zip(results, results[1:]):
        assert abs(r.log_value - q.log_value) < q.tail_bound


def test_s1_value_against_closed_product():
    # a_1 = prod (1 - 1/(p^2 + p)); compare the truncated products directly
    r = arith.euler_a_s(1.0, 10**6)
    ps = np.array(arith.primes_up_to(10**6), dtype=float)
    assert abs(r.log_value - math.fsum(np.log1p(-1 / (ps * ps + ps)))) < 1e-12
    assert r.to_dict()["a_s"] == pytest.approx(r.value)


def test_tail_safety_constant():
    # sum_{p > P} p^-2 * P log P stays below the safety factor
    ps = np.array(arith.primes_up_to(2 * 10**6), dtype=float)
    tail = np.cumsum((ps**-2)[::-1])[::-1]
    cut = ps <= 2 * 10**5
    # the remainder beyond 2e6 is at most 1 / (2e6 log 2e6) by the prime number theorem bound
    extra = arith.TAIL_SAFETY / (2e6 * math.log(2e6))
    assert np.max((tail[cut] + extra) * ps[cut] * np.log(ps[cut])) < arith.TAIL_SAFETY


def test_threads_do_not_change_value():
    assert arith.euler_a_s(1.5, 3 * 10**5, threads=1) == arith.euler_a_s(1.5, 3 * 10**5, threads=3)


def test_parameter_errors():
    for s in (0.0, -1.0, 101.0):
        with pytest.raises(ValueError):
            arith.euler_a_s(s, 100)
    with pytest.raises(ValueError):
        arith.euler_a_s(1.0, 1)
    with pytest.raises(ValueError):
        arith.EulerProductResult(1.0, 10, 0.0, -1.0)
