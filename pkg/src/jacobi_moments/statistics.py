"""Observables of one ensemble draw, written in the x-coordinates x_j = (1 - cos theta_j) / 2.

Every function accepts an :class:`EnsembleSample` or a bare array of points in
(0, 1].  The ``*_rows`` variants take a (reps, N) array and return one value per row.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .ensemble import EnsembleSample


class Observable(str, enum.Enum):
    CHAR_POLY0 = "CharPoly0"
    SECOND_DERIV_RATIO = "SecondDerivRatio"
    LOG_DERIV_Z = "LogDerivZ"
    M_STAT = "MStat"
    Z_STAT = "ZStat"


_NONNEGATIVE = {Observable.CHAR_POLY0, Observable.M_STAT, Observable.Z_STAT, Observable.LOG_DERIV_Z}


@dataclass(frozen=True)
class ObservableValue:
    name: Observable
    value: float

    def __post_init__(self):
        object.__setattr__(self, "name", Observable(self.name))
        if self.name in _NONNEGATIVE and not self.value >= 0:
            raise ValueError(f"{self.name.value} must be non-negative, got {self.value}")


class SignedLog(NamedTuple):
    """A real number stored as sign * exp(log_abs)."""

    sign: float
    log_abs: float

    def value(self) -> float:
        return self.sign * math.exp(self.log_abs)

    def power(self, h: float) -> float:
        """|value|^h, with h = 0 giving 1 even when the value is 0."""
        if h == 0:
            return 1.0
        if self.sign == 0:
            return 0.0
        return math.exp(h * self.log_abs)


def _points(sample) -> np.ndarray:
    x = sample.points if isinstance(sample, EnsembleSample) else np.asarray(sample, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("expected a non-empty 1-d array of points")
    if not (np.all(x > 0) and np.all(x <= 1)):
        raise ValueError("points must lie in (0, 1]")
    return x


def _rows(points) -> np.ndarray:
    x = np.asarray(points, dtype=float)
    if x.ndim != 2:
        raise ValueError("expected a (reps, N) array")
    return x


def log_char_poly_at_zero(sample) -> SignedLog:
    """psi(0) = prod 2 (1 - cos theta_j) = prod 4 x_j, as a signed log."""
    x = _points(sample)
    return SignedLog(1.0, float(np.sum(np.log(4.0 * x))))


def char_poly_at_zero(sample) -> float:
    return log_char_poly_at_zero(sample).value()


def second_deriv_ratio(sample) -> float:
    """psi''(0) / psi(0) = -(sum 1/(2 x_j) + N^2)."""
    x = _points(sample)
    n = x.size
    return -(float(np.sum(0.5 / x)) + n * n)


def second_deriv_ratio_angles(angles) -> float:
    """The same ratio from the eigenangles, sum (cos - 2)/(1 - cos) - N(N - 1)."""
    c = np.cos(np.asarray(angles, dtype=float))
    n = c.size
    return float(np.sum((c - 2.0) / (1.0 - c))) - n * (n - 1)


def m_statistic(sample) -> float:
    x = _points(sample)
    n = x.size
    return float(np.sum(1.0 / x)) / (n * n)


def z_sum(sample) -> float:
    """sum_j sqrt((1 - x_j) / x_j), equal to sum_j cot(theta_j / 2)."""
    x = _points(sample)
    return float(np.sum(np.sqrt((1.0 - x) / x)))


def z_statistic(sample) -> float:
    x = _points(sample)
    n = x.size
    if n < 2:
        raise ValueError("z_statistic needs N >= 2 so that log N > 0")
    return z_sum(x) / (n * math.log(n))


def log_deriv_z(sample) -> float:
    """|d/dtheta log Z(theta)| at 0, which is (1/2) sum sqrt((1 - x_j)/x_j)."""
    return 0.5 * z_sum(sample)


def observables(sample) -> list[ObservableValue]:
    x = _points(sample)
    out = [
        ObservableValue(Observable.CHAR_POLY0, char_poly_at_zero(x)),
        ObservableValue(Observable.SECOND_DERIV_RATIO, second_deriv_ratio(x)),
        ObservableValue(Observable.LOG_DERIV_Z, log_deriv_z(x)),
        ObservableValue(Observable.M_STAT, m_statistic(x)),
    ]
    if x.size >= 2:
        out.append(ObservableValue(Observable.Z_STAT, z_statistic(x)))
    return out


# --- batched forms used by the Monte Carlo layer ---------------------------


def m_statistic_rows(points) -> np.ndarray:
    x = _rows(points)
    return np.sum(1.0 / x, axis=1) / x.shape[1] ** 2


def z_sum_rows(points) -> np.ndarray:
    x = _rows(points)
    return np.sum(np.sqrt((1.0 - x) / x), axis=1)


def z_statistic_rows(points) -> np.ndarray:
    x = _rows(points)
    n = x.shape[1]
    if n < 2:
        raise ValueError("z_statistic needs N >= 2 so that log N > 0")
    return z_sum_rows(x) / (n * math.log(n))


def log_char_poly_rows(points) -> np.ndarray:
    return np.sum(np.log(4.0 * _rows(points)), axis=1)
