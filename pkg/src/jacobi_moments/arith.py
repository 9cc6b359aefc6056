"""The arithmetic factor a_s as a truncated Euler product.

    a_s = prod_p (1 - 1/p)^{s(s+1)/2} / (1 + 1/p) * (1/p + ((1 + p^{-1/2})^{-s} + (1 - p^{-1/2})^{-s}) / 2)

Each log-factor is O(p^{-2}), so the truncation error after the primes up to P
behaves like C(s) / (P log P).  C(s) is calibrated from the computed factors in
(P/10, P].
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import special

from .ensemble import thread_count

PRIME_LIMIT_MAX = 10**8
S_MAX = 100.0
# sum_{p > P} p^{-2} <= TAIL_SAFETY / (P log P) for every P >= 2
TAIL_SAFETY = 2.52
_CHUNK = 1 << 16
_SERIES_ORDER = 10


@dataclass(frozen=True)
class EulerProductResult:
    s: float
    prime_limit: int
    log_value: float
    tail_bound: float

    def __post_init__(self):
        if not self.tail_bound >= 0:
            raise ValueError("tail_bound must be non-negative")

    @property
    def value(self) -> float:
        return math.exp(self.log_value)

    def to_dict(self) -> dict:
        return {"s": self.s, "prime_limit": self.prime_limit, "a_s": self.value, "tail_bound": self.tail_bound}


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, from an odd-only sieve."""
    limit = int(limit)
    if limit > PRIME_LIMIT_MAX:
        raise ValueError(f"limit {limit} exceeds the supported maximum {PRIME_LIMIT_MAX}")
    if limit < 2:
        return []
    # index i stands for the odd number 2i + 1
    sieve = np.ones((limit + 1) // 2, dtype=bool)
    sieve[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if sieve[i]:
            p = 2 * i + 1
            sieve[p * p // 2 :: p] = False
    return [2] + (2 * np.flatnonzero(sieve) + 1).tolist()


def _log_factor_direct(s: float, p: np.ndarray) -> np.ndarray:
    u = 1.0 / np.sqrt(p)
    g_minus_1 = 0.5 * (np.expm1(-s * np.log1p(u)) + np.expm1(-s * np.log1p(-u)))
    return 0.5 * s * (s + 1.0) * np.log1p(-1.0 / p) - np.log1p(1.0 / p) + np.log1p(1.0 / p + g_minus_1)


def _log_factor_coefficients(s: float, order: int = _SERIES_ORDER) -> np.ndarray:
    """Taylor coefficients of the log-factor in q = 1/p.

    The even part of (1 + u)^{-s} is sum_j binom(s + 2j - 1, 2j) q^j, so the
    factor is a power series in q whose O(1/p) terms cancel exactly here
    rather than in floating point.
    """
    j = np.arange(order + 1, dtype=float)
    inner = special.binom(s + 2.0 * j - 1.0, 2.0 * j)
    inner[0] = 0.0
    inner[1] += 1.0
    total = np.zeros(order + 1)
    power = np.zeros(order + 1)
    power[0] = 1.0
    for m in range(1, order + 1):
        power = np.convolve(power, inner)[: order + 1]
        total += (-1.0) ** (m + 1) / m * power
    m = np.arange(1, order + 1, dtype=float)
    total[1:] += -0.5 * s * (s + 1.0) / m + (-1.0) ** m / m
    total[:2] = 0.0
    return total


def log_factor(s: float, p) -> np.ndarray:
    """log of the single-prime factor, accurate to relative rounding for every p."""
    p = np.asarray(p, dtype=float)
    out = _log_factor_direct(s, p)
    # past this point the series converges like (s + 1)^2 / p per order
    big = p > 20.0 * (s + 1.0) ** 2
    if np.any(big):
        coef = _log_factor_coefficients(s)
        out = np.where(big, np.polynomial.polynomial.polyval(1.0 / p, coef), out)
    return out


def log_factor_s1(p) -> np.ndarray:
    """The s = 1 factor, which reduces to 1 - 1/(p^2 + p)."""
    p = np.asarray(p, dtype=float)
    return np.log1p(-1.0 / (p * p + p))


def _check_s(s: float) -> float:
    s = float(s)
    if not s > 0:
        raise ValueError(f"s must be positive, got {s}")
    if s > S_MAX or s * -math.log1p(-1.0 / math.sqrt(2.0)) > math.log(np.finfo(float).max):
        raise ValueError(f"s={s} is too large: (1 - 2^(-1/2))^(-s) would overflow (limit s <= {S_MAX:g})")
    return s


def euler_a_s(s: float, prime_limit: int, threads: int | None = None) -> EulerProductResult:
    s = _check_s(s)
    prime_limit = int(prime_limit)
    if prime_limit < 2:
        raise ValueError("prime_limit must be at least 2")
    primes = np.array(primes_up_to(prime_limit), dtype=float)
    chunks = [primes[i : i + _CHUNK] for i in range(0, primes.size, _CHUNK)]

    def chunk_sum(ps):
        return math.fsum(log_factor(s, ps))

    threads = thread_count() if threads is None else int(threads)
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partial = list(pool.map(chunk_sum, chunks))
    else:
        partial = [chunk_sum(c) for c in chunks]
    log_value = math.fsum(partial)

    big = primes[primes > prime_limit / 10.0]
    c_s = float(np.max(np.abs(log_factor(s, big)) * big * big))
    tail = c_s * TAIL_SAFETY / (prime_limit * math.log(prime_limit))
    return EulerProductResult(s, prime_limit, log_value, tail)
