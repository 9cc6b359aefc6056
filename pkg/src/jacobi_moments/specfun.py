"""Special functions: log-Gamma, log Barnes G and Bessel J of real order.

Everything is real-argument only.  Products of Gamma values elsewhere in the
package are assembled from :func:`log_gamma` and exponentiated last.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import special

# zeta'(-1) = 1/12 - log(Glaisher's constant)
ZETA_PRIME_MINUS_ONE = -0.16542114370045092921391966024278064276063

# B_{2k+2} for k = 1..7
_BERNOULLI_TAIL = (
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)

_BARNES_ASYMPTOTIC_MIN = 12.0
_BESSEL_SERIES_MAX = 12.0


def log_gamma(z):
    """log Gamma(z) for z > 0. Accepts scalars or arrays."""
    arr = np.asarray(z, dtype=float)
    if np.any(~(arr > 0)):
        raise ValueError(f"log_gamma needs z > 0, got {z!r}")
    out = special.gammaln(arr)
    return float(out) if out.ndim == 0 else out


def _log_barnes_g_asymptotic(z: float) -> float:
    # expansion of log G(z + 1)
    lz = math.log(z)
    s = 0.5 * z * z * lz - 0.75 * z * z + 0.5 * z * math.log(2.0 * math.pi) - lz / 12.0
    s += ZETA_PRIME_MINUS_ONE
    zinv2 = 1.0 / (z * z)
    zpow = zinv2
    for k, b in enumerate(_BERNOULLI_TAIL, start=1):
        s += b / (4.0 * k * (k + 1)) * zpow
        zpow *= zinv2
    return s


def log_barnes_g(z: float) -> float:
    """log G(z) for real z > 0, G the Barnes G-function.

    Uses the Stirling-type expansion once the argument is at least 13 and
    walks back down with G(z+1) = Gamma(z) G(z).
    """
    z = float(z)
    if not z > 0:
        raise ValueError(f"log_barnes_g needs z > 0, got {z!r}")
    m = max(0, math.ceil(_BARNES_ASYMPTOTIC_MIN + 1.0 - z))
    top = _log_barnes_g_asymptotic(z + m - 1.0)
    if m == 0:
        return top
    return top - float(np.sum(special.gammaln(z + np.arange(m))))


def _bessel_series(nu: float, x: float) -> float:
    half = 0.5 * x
    term = math.exp(nu * math.log(half) - special.gammaln(nu + 1.0))
    total = term
    q = -half * half
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + nu))
        total += term
        if abs(term) < 1e-17 * max(abs(total), 1e-300) and k > half:
            break
        if k > 500:
            break
    return total


def _bessel_hankel(nu: float, x: float):
    """Large-argument expansion. Returns (value, error estimate)."""
    mu = 4.0 * nu * nu
    chi = x - (0.5 * nu + 0.25) * math.pi
    p = 0.0
    q = 0.0
    term = 1.0
    prev = math.inf
    k = 0
    err = 0.0
    while True:
        mag = abs(term)
        if mag > prev:
            # series started to diverge; previous term bounds the error
            err = prev
            break
        if k % 2 == 0:
            p += term if (k // 2) % 2 == 0 else -term
        else:
            q += term if (k // 2) % 2 == 0 else -term
        if mag == 0.0 or mag < 1e-17:
            err = mag
            break
        prev = mag
        k += 1
        term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if k > 200:
            err = abs(term)
            break
    amp = math.sqrt(2.0 / (math.pi * x))
    return amp * (p * math.cos(chi) - q * math.sin(chi)), amp * err


def _bessel_miller(nu: float, x: float) -> float:
    """Backward recurrence normalised by the Neumann-type sum

        (x/2)^v = sum_k (v + 2k) Gamma(v + k) / k! * J_{v+2k}(x),   0 <= v < 1.
    """
    floor = math.floor(nu)
    v = nu - floor
    top = int(x + 40 + 2.0 * math.sqrt(x) + max(floor, 0))
    top += top % 2
    f_next = 0.0
    f_cur = 1e-300
    vals = {}
    norm = 0.0
    for k in range(top, -1, -1):
        if k % 2 == 0:
            if k == 0:
                c = math.exp(special.gammaln(v + 1.0))
            else:
                j = k // 2
                c = (v + k) * math.exp(special.gammaln(v + j) - special.gammaln(j + 1.0))
            norm += c * f_cur
        if k <= max(floor, 0):
            vals[k] = f_cur
        f_prev = 2.0 * (v + k) / x * f_cur - f_next
        f_next, f_cur = f_cur, f_prev
        if abs(f_cur) > 1e250:
            scale = 1e-250
            f_cur *= scale
            f_next *= scale
            norm *= scale
            vals = {j: val * scale for j, val in vals.items()}
    # after the loop f_next holds the k = 0 value and f_cur the k = -1 value
    scale = math.exp(v * math.log(0.5 * x)) / norm
    if floor < 0:
        return f_cur * scale
    return vals[floor] * scale


def bessel_j(order: float, x: float) -> float:
    """Bessel function of the first kind J_order(x) for order > -1, x >= 0."""
    nu = float(order)
    x = float(x)
    if not nu > -1.0:
        raise ValueError(f"bessel order must exceed -1, got {order!r}")
    if x < 0:
        raise ValueError(f"bessel_j needs x >= 0, got {x!r}")
    if x == 0.0:
        if nu == 0.0:
            return 1.0
        return 0.0 if nu > 0 else math.inf
    if x <= max(_BESSEL_SERIES_MAX, 0.0):
        return _bessel_series(nu, x)
    if x >= max(_BESSEL_SERIES_MAX, 2.0 * nu):
        value, err = _bessel_hankel(nu, x)
        if err < 1e-14:
            return value
    return _bessel_miller(nu, x)
