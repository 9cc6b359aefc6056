"""Orthonormal Jacobi polynomials on [0, 1], the correlation kernel and Gauss-Jacobi rules.

The weight is w(x) = x^a (1 - x)^b on [0, 1].  Recurrence coefficients come
from the classical ones for (1 - y)^a (1 + y)^b on [-1, 1] under y = 1 - 2x,
so the x = 0 endpoint carries the ``a`` exponent.

The orthonormal polynomials satisfy

    x p_j(x) = sqrt(beta_{j+1}) p_{j+1}(x) + alpha_j p_j(x) + sqrt(beta_j) p_{j-1}(x)

with p_0 = 1 / sqrt(beta_0) and beta_0 = B(a + 1, b + 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg, special

from .specfun import log_gamma

MAX_DEGREE = 10_000
CONFLUENT_GAP = 1e-8


@dataclass(frozen=True)
class JacobiParams:
    a: float
    b: float

    def __post_init__(self):
        if not (self.a > -1 and self.b > -1):
            raise ValueError(f"Jacobi parameters need a, b > -1, got a={self.a}, b={self.b}")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    def shifted(self, da: float = 0.0, db: float = 0.0) -> "JacobiParams":
        return JacobiParams(self.a + da, self.b + db)

    def weight(self, x):
        x = np.asarray(x, dtype=float)
        return x**self.a * (1.0 - x) ** self.b

    @property
    def log_mass(self) -> float:
        """log of int_0^1 x^a (1-x)^b dx."""
        return float(special.betaln(self.a + 1.0, self.b + 1.0))


def recurrence_coefficients(params: JacobiParams, n: int):
    """alpha_0..alpha_{n-1} and beta_0..beta_{n-1} of the monic recurrence on [0, 1]."""
    a, b = params.a, params.b
    j = np.arange(n, dtype=float)
    s = 2.0 * j + a + b
    alpha_y = np.empty(n)
    beta_y = np.empty(n)
    with np.errstate(divide="ignore", invalid="ignore"):
        alpha_y[:] = (b * b - a * a) / (s * (s + 2.0))
        beta_y[:] = 4.0 * j * (j + a) * (j + b) * (j + a + b) / (s * s * (s + 1.0) * (s - 1.0))
    # low-order terms where the generic formula is 0/0 for some (a, b)
    alpha_y[0] = (b - a) / (a + b + 2.0)
    if n > 1:
        beta_y[1] = 4.0 * (1.0 + a) * (1.0 + b) / ((a + b + 2.0) ** 2 * (a + b + 3.0))
    alpha = 0.5 * (1.0 - alpha_y)
    beta = 0.25 * beta_y
    beta[0] = math.exp(params.log_mass)
    return alpha, beta


@dataclass(frozen=True)
class OrthoBasis:
    params: JacobiParams
    max_degree: int
    alpha: np.ndarray = field(repr=False)
    beta: np.ndarray = field(repr=False)

    @property
    def p0(self) -> float:
        return 1.0 / math.sqrt(self.beta[0])

    def evaluate_all(self, x, n: int | None = None) -> np.ndarray:
        """Rows p_0(x) .. p_{n-1}(x); shape (n, len(x))."""
        n = self.max_degree + 1 if n is None else n
        if n > self.max_degree + 1:
            raise ValueError(f"basis holds degrees <= {self.max_degree}, asked for {n - 1}")
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty((n, x.size))
        out[0] = self.p0
        if n > 1:
            out[1] = (x - self.alpha[0]) * out[0] / math.sqrt(self.beta[1])
        for j in range(1, n - 1):
            out[j + 1] = ((x - self.alpha[j]) * out[j] - math.sqrt(self.beta[j]) * out[j - 1]) / math.sqrt(
                self.beta[j + 1]
            )
        return out

    def sum_of_squares(self, x, n: int) -> np.ndarray:
        """sum_{j<n} p_j(x)^2 without storing every degree."""
        if n > self.max_degree + 1:
            raise ValueError(f"basis holds degrees <= {self.max_degree}, asked for {n - 1}")
        x = np.atleast_1d(np.asarray(x, dtype=float))
        prev = np.zeros_like(x)
        cur = np.full_like(x, self.p0)
        total = cur * cur
        for j in range(n - 1):
            sb = math.sqrt(self.beta[j]) if j > 0 else 0.0
            nxt = ((x - self.alpha[j]) * cur - sb * prev) / math.sqrt(self.beta[j + 1])
            prev, cur = cur, nxt
            total += cur * cur
        return total

    def pair(self, x, j: int):
        """(p_{j-1}(x), p_j(x)) by forward recurrence, j >= 1."""
        x = np.asarray(x, dtype=float)
        prev = np.zeros_like(x)
        cur = np.full_like(x, self.p0)
        for k in range(j):
            sb = math.sqrt(self.beta[k]) if k > 0 else 0.0
            nxt = ((x - self.alpha[k]) * cur - sb * prev) / math.sqrt(self.beta[k + 1])
            prev, cur = cur, nxt
        return prev, cur


def build_basis(params: JacobiParams, max_degree: int) -> OrthoBasis:
    if max_degree < 0 or max_degree > MAX_DEGREE:
        raise ValueError(f"max_degree must lie in [0, {MAX_DEGREE}], got {max_degree}")
    alpha, beta = recurrence_coefficients(params, max_degree + 2)
    alpha.flags.writeable = False
    beta.flags.writeable = False
    return OrthoBasis(params, max_degree, alpha, beta)


def evaluate_p(basis: OrthoBasis, j: int, x):
    if j < 0 or j > basis.max_degree:
        raise ValueError(f"degree {j} outside basis (max {basis.max_degree})")
    vals = basis.evaluate_all(x, j + 1)[j]
    return float(vals[0]) if np.ndim(x) == 0 else vals


def _derivative_pair(basis: OrthoBasis, x: float, n: int):
    """p_{n-1}, p_n and their derivatives at a scalar x."""
    p_prev, p_cur = 0.0, basis.p0
    d_prev, d_cur = 0.0, 0.0
    for k in range(n):
        sb = math.sqrt(basis.beta[k]) if k > 0 else 0.0
        sn = math.sqrt(basis.beta[k + 1])
        p_next = ((x - basis.alpha[k]) * p_cur - sb * p_prev) / sn
        d_next = (p_cur + (x - basis.alpha[k]) * d_cur - sb * d_prev) / sn
        p_prev, p_cur = p_cur, p_next
        d_prev, d_cur = d_cur, d_next
    return p_prev, p_cur, d_prev, d_cur


@dataclass(frozen=True)
class KernelEvaluator:
    """K_N(x, y) = sqrt(w(x) w(y)) sum_{j=0}^{N-1} p_j(x) p_j(y)."""

    basis: OrthoBasis
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("kernel size N must be >= 1")
        if self.n > self.basis.max_degree + 1:
            raise ValueError(f"basis too small for N={self.n}")

    @classmethod
    def for_params(cls, params: JacobiParams, n: int) -> "KernelEvaluator":
        return cls(build_basis(params, n), n)

    @property
    def params(self) -> JacobiParams:
        return self.basis.params

    def diagonal(self, x):
        """K_N(x, x); a float for scalar x, an array otherwise."""
        x = np.asarray(x, dtype=float)
        out = self.params.weight(x) * self.basis.sum_of_squares(x, self.n)
        return float(out[0]) if x.ndim == 0 else out

    def __call__(self, x: float, y: float) -> float:
        return kernel(self, x, y)


def kernel(ev: KernelEvaluator, x: float, y: float) -> float:
    """Christoffel-Darboux evaluation, confluent form when x and y nearly coincide."""
    n = ev.n
    root_w = math.sqrt(float(ev.params.weight(x)) * float(ev.params.weight(y)))
    lead = math.sqrt(ev.basis.beta[n])
    if abs(x - y) < CONFLUENT_GAP:
        m = 0.5 * (x + y)
        pm1, pn, dm1, dn = _derivative_pair(ev.basis, m, n)
        return root_w * lead * (dn * pm1 - dm1 * pn)
    pm1_x, pn_x = ev.basis.pair(x, n)
    pm1_y, pn_y = ev.basis.pair(y, n)
    num = float(pn_x) * float(pm1_y) - float(pm1_x) * float(pn_y)
    return root_w * lead * num / (x - y)


def gauss_jacobi_nodes(params: JacobiParams, n: int):
    """n-point Gauss rule for int_0^1 f(x) x^a (1-x)^b dx; returns (nodes, weights)."""
    if n < 1:
        raise ValueError("need at least one node")
    alpha, beta = recurrence_coefficients(params, n + 1)
    if n == 1:
        return np.array([alpha[0]]), np.array([beta[0]])
    try:
        nodes = linalg.eigh_tridiagonal(alpha[:n], np.sqrt(beta[1:n]), eigvals_only=True, lapack_driver="stev")
    except linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ArithmeticError(f"tridiagonal eigensolver did not converge for n={n}") from exc
    nodes = np.sort(nodes)
    basis = OrthoBasis(params, n, alpha, beta)
    # one Newton step on p_n polishes the small nodes near the endpoints
    for _ in range(2):
        p, dp = _value_and_derivative(basis, nodes, n)
        nodes = nodes - p / dp
    weights = 1.0 / basis.sum_of_squares(nodes, n)
    if not (nodes[0] > 0.0 and nodes[-1] < 1.0):
        raise ArithmeticError("Gauss-Jacobi nodes escaped (0, 1)")
    return nodes, weights


def _value_and_derivative(basis: OrthoBasis, x: np.ndarray, n: int):
    prev = np.zeros_like(x)
    cur = np.full_like(x, basis.p0)
    dprev = np.zeros_like(x)
    dcur = np.zeros_like(x)
    for k in range(n):
        sb = math.sqrt(basis.beta[k]) if k > 0 else 0.0
        sn = math.sqrt(basis.beta[k + 1])
        nxt = ((x - basis.alpha[k]) * cur - sb * prev) / sn
        dnxt = (cur + (x - basis.alpha[k]) * dcur - sb * dprev) / sn
        prev, cur = cur, nxt
        dprev, dcur = dcur, dnxt
    return cur, dcur


def h_l(params: JacobiParams, l: int) -> float:
    """(2l+a+b+1) Gamma(l+a+1) Gamma(l+a+b+1) / (2 Gamma(l+1) Gamma(l+b+1)), in log space."""
    if l < 0:
        raise ValueError("l must be >= 0")
    a, b = params.a, params.b
    if l == 0:
        # (a+b+1) Gamma(a+b+1) = Gamma(a+b+2) sidesteps the pole at a+b+1 = 0
        return 0.5 * math.exp(log_gamma(a + 1) + log_gamma(a + b + 2) - log_gamma(b + 1))
    logs = log_gamma(l + a + 1) + log_gamma(l + a + b + 1) - log_gamma(l + 1) - log_gamma(l + b + 1)
    return 0.5 * (2 * l + a + b + 1) * math.exp(logs)
