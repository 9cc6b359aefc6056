"""The sigma-form Painleve III equation for tau(t) = t d/dt log E[exp(-t M)].

    (t tau'')^2 + 4 tau'^2 (t tau' - tau) - (a tau' + 1)^2 = 0

With D = (a tau' + 1)^2 - 4 tau'^2 (t tau' - tau) the equation reads
tau'' = sign * sqrt(D) / t.  That square-root form fixes the starting slope of
tau'', but the solve itself uses the once-differentiated equation (see
:func:`_integrate`), which passes through zeros of tau'' without trouble.  log f
rides along as a fourth state (d log f / dt = tau / t), so the Laplace
transform f comes out of the same solve.

Regular solutions at t = 0 have tau'(0) = -1/a (the t^0 balance of the equation),
tau''(0) / 2 = 1 / (a^2 (a^2 - 1)), and one free coefficient C in front of t^{1+a}.
The remaining powers t^{m + n a} follow order by order; see :func:`small_t_series`.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import optimize
from scipy.integrate import solve_ivp

from .ensemble import inverse_sums
from .jacobi import JacobiParams
from .moments import Method, MomentEstimate

PAPER_T0 = 1e-6
SERIES_T0 = 1e-3
SERIES_ORDER = 7.0
MAX_T = 50.0
_KEY_DIGITS = 10


class InitMode(str, enum.Enum):
    PAPER_BC = "PaperBC"
    SERIES_FIT = "SeriesFit"
    MC_MATCHED = "McMatched"


class BranchFailure(ArithmeticError):
    """The discriminant went negative beyond the clipping tolerance."""


class ExtractionError(ArithmeticError):
    """Moments could not be read off the solution stably."""


# --- small-t series ----------------------------------------------------------


def _key(e: float) -> float:
    return round(e, _KEY_DIGITS)


def _mul(x: dict, y: dict, emax: float) -> dict:
    out: dict = {}
    for ea, ca in x.items():
        for eb, cb in y.items():
            e = _key(ea + eb)
            if e <= emax + 1e-9:
                out[e] = out.get(e, 0.0) + ca * cb
    return out


def _series_residual(tau: dict, a: float, emax: float) -> dict:
    """Coefficients of the left-hand side for a power series tau = sum c_e t^e."""
    tp = {_key(e - 1): e * c for e, c in tau.items()}
    t_tpp = {_key(e - 1): e * (e - 1) * c for e, c in tau.items() if e != 1.0}
    t_tp_minus_tau = {e: (e - 1) * c for e, c in tau.items() if e != 1.0}
    lin = {k: a * v for k, v in tp.items()}
    lin[0.0] = lin.get(0.0, 0.0) + 1.0
    out: dict = {}
    for part, sign in (
        (_mul(t_tpp, t_tpp, emax), 1.0),
        (_mul(_mul(tp, tp, emax), t_tp_minus_tau, emax), 4.0),
        (_mul(lin, lin, emax), -1.0),
    ):
        for e, c in part.items():
            out[e] = out.get(e, 0.0) + sign * c
    return out


@dataclass(frozen=True)
class PowerSeries:
    """tau(t) = sum_e c_e t^e near t = 0."""

    coefficients: tuple[tuple[float, float], ...]

    def tau(self, t: float) -> float:
        return math.fsum(c * t**e for e, c in self.coefficients)

    def tau_prime(self, t: float) -> float:
        return math.fsum(e * c * t ** (e - 1) for e, c in self.coefficients)

    def tau_second(self, t: float) -> float:
        return math.fsum(e * (e - 1) * c * t ** (e - 2) for e, c in self.coefficients if e != 1.0)

    def log_f(self, t: float) -> float:
        """int_0^t tau(u)/u du."""
        return math.fsum(c * t**e / e for e, c in self.coefficients)

    def coefficient(self, e: float) -> float:
        return dict(self.coefficients).get(_key(e), 0.0)


def _check_regular(a: float):
    if not a > 1:
        raise ValueError(f"the small-t series needs a > 1 (finite variance of M), got a={a}")
    if abs(a - round(a)) < 1e-9:
        raise ValueError(f"integer a={a} is resonant: logarithmic terms appear in the small-t series")


def small_t_series(a: float, c: float, order: float = SERIES_ORDER) -> PowerSeries:
    """Regular solution through t^order with free coefficient ``c`` at t^{1+a}.

    Each new power e is fixed by the linear balance lambda(e) c_e + r_e = 0, where
    lambda(e) = 4((e-1)^2 - a^2) / (a^2 (a^2 - 1)) vanishes only at e = 1 + a.
    """
    _check_regular(a)
    tau = {1.0: -1.0 / a, 2.0: 1.0 / (a * a * (a * a - 1.0)), _key(1.0 + a): float(c)}
    bound = int(order) + 2
    exps = sorted(
        {_key(m + n * a) for m in range(1, bound) for n in range(0, bound) if 2.0 < m + n * a <= order + 1e-9}
        - {_key(1.0 + a), 2.0}
    )
    for e in exps:
        r = _series_residual(tau, a, e).get(e, 0.0)
        lam = 4.0 * ((e - 1.0) ** 2 - a * a) / (a * a * (a * a - 1.0))
        tau[e] = -r / lam
    return PowerSeries(tuple(sorted(tau.items())))


def linear_start(slope: float, curvature: float = 0.0) -> PowerSeries:
    """tau = slope t + curvature t^2, used for the stated boundary data and series fits."""
    coeffs = [(1.0, float(slope))]
    if curvature:
        coeffs.append((2.0, float(curvature)))
    return PowerSeries(tuple(coeffs))


# --- Monte Carlo Laplace oracle ----------------------------------------------


@dataclass(frozen=True)
class LaplaceData:
    """Monte Carlo f_N(t) = E[exp(-t M_N)] and tau_N(t) on a set of t."""

    t: tuple[float, ...]
    f: tuple[float, ...]
    f_se: tuple[float, ...]
    tau: tuple[float, ...]
    tau_se: tuple[float, ...]
    n: int
    reps: int
    seed: int
    params: JacobiParams


def _laplace_from_m(m: np.ndarray, t: float) -> tuple[float, float, float, float]:
    e = np.exp(-t * m)
    f = float(np.mean(e))
    f_se = float(np.std(e, ddof=1) / math.sqrt(m.size))
    g = m * e
    mg = float(np.mean(g))
    # delta method for tau = -t E[M e^{-tM}] / E[e^{-tM}]
    cov = np.cov(np.vstack([g, e]), ddof=1) / m.size
    grad = np.array([-t / f, t * mg / f**2])
    tau_se = float(math.sqrt(max(grad @ cov @ grad, 0.0)))
    return f, f_se, -t * mg / f, tau_se


def mc_m_values(params: JacobiParams, n: int, reps: int, seed: int, threads: int | None = None) -> np.ndarray:
    return inverse_sums(params, n, reps, seed, threads) / (n * n)


def mc_laplace(params: JacobiParams, n: int, t: float, reps: int, seed: int, threads: int | None = None) -> MomentEstimate:
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return MomentEstimate(1.0, 0.0, reps, Method.MONTE_CARLO)
    f, se, _, _ = _laplace_from_m(mc_m_values(params, n, reps, seed, threads), t)
    return MomentEstimate(f, se, reps, Method.MONTE_CARLO)


def mc_laplace_data(
    params: JacobiParams, n: int, ts: Sequence[float], reps: int, seed: int, threads: int | None = None
) -> LaplaceData:
    m = mc_m_values(params, n, reps, seed, threads)
    rows = [_laplace_from_m(m, float(t)) for t in ts]
    cols = list(zip(*rows))
    return LaplaceData(tuple(float(t) for t in ts), *cols, n=n, reps=reps, seed=seed, params=params)


@dataclass(frozen=True)
class McMatchConfig:
    """Where the Monte Carlo oracle for McMatched / SeriesFit comes from."""

    n: int = 800
    b: float = 0.5
    reps: int = 100_000
    seed: int = 20_240_801
    fit_t: tuple[float, ...] = (0.25, 0.5, 1.0, 2.0, 4.0)
    series_fit_t: tuple[float, ...] = (0.02, 0.05, 0.1, 0.2, 0.3)
    c_bracket: tuple[float, float] = (-5.0, 5.0)


# --- the solver ---------------------------------------------------------------


@dataclass(frozen=True)
class SigmaP3Solution:
    a: float
    t: np.ndarray
    tau: np.ndarray
    tau_prime: np.ndarray
    residual: np.ndarray
    init_mode: InitMode
    tol: float
    log_f: np.ndarray
    start: PowerSeries
    t0: float
    branch_sign: float
    clipped: int
    meta: dict = field(default_factory=dict)
    dense: Callable | None = field(default=None, repr=False, compare=False)

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residual))

    @property
    def t_max(self) -> float:
        return float(self.t[-1])

    def state(self, t) -> np.ndarray:
        return self.dense(t)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "tau", "tau_prime", "residual"])
        for row in zip(self.t, self.tau, self.tau_prime, self.residual):
            w.writerow([repr(float(v)) for v in row])
        return buf.getvalue()

    def metadata(self) -> dict:
        return {
            "a": self.a,
            "init_mode": self.init_mode.value,
            "tol": self.tol,
            "t0": self.t0,
            "t_max": self.t_max,
            "grid_points": int(self.t.size),
            "branch_sign": self.branch_sign,
            "clipped_points": self.clipped,
            "max_residual": self.max_residual,
            "start_coefficients": [[e, c] for e, c in self.start.coefficients],
            **self.meta,
        }

    def to_json(self) -> str:
        return json.dumps(self.metadata(), indent=2, sort_keys=True)


def _discriminant(a, t, tau, tp):
    return (a * tp + 1.0) ** 2 - 4.0 * tp * tp * (t * tp - tau)


def report_grid(t0: float, t_max: float, rel: float = 0.05, max_step: float = 1e-3) -> np.ndarray:
    """Geometric spacing rel * t near the origin, uniform max_step further out."""
    pts = [t0]
    t = t0
    while t < t_max:
        t = min(t + min(rel * t, max_step), t_max)
        pts.append(t)
    return np.array(pts)


def _integrate(
    a: float, start: PowerSeries, t0: float, t_end: float, tol: float, sign: float | None = None, partial: bool = False
):
    """Integrate (tau, tau', tau'', log f) using the once-differentiated equation.

    Differentiating (t tau'')^2 = D gives 2 t (tau'' + t tau''') = K with
    K = 2a (a tau' + 1) - 8 tau' (t tau' - tau) - 4 t tau'^2.  This form stays
    regular where tau'' changes sign, which the square-root form cannot follow.
    The original equation becomes a first integral, so its residual measures
    genuine drift.

    With ``partial`` set, a solve that hits a movable pole is kept up to the
    last accepted step instead of raising.
    """
    tau0, tp0 = start.tau(t0), start.tau_prime(t0)
    d0 = _discriminant(a, t0, tau0, tp0)
    if d0 < -tol:
        raise BranchFailure(f"discriminant {d0:.3e} is negative at the start t0={t0:g}")
    if sign is None:
        sign = -1.0 if start.tau_second(t0) < 0 else 1.0
    y0 = [tau0, tp0, sign * math.sqrt(max(d0, 0.0)) / t0, start.log_f(t0)]

    def rhs(t, y):
        tau, tp, tpp, _ = y
        k = 2.0 * a * (a * tp + 1.0) - 8.0 * tp * (t * tp - tau) - 4.0 * t * tp * tp
        return [tp, tpp, k / (2.0 * t * t) - tpp / t, tau / t]

    sol = solve_ivp(
        rhs, (t0, t_end), y0, method="Radau", rtol=tol / 10.0, atol=tol / 100.0, dense_output=True, first_step=t0 / 100.0
    )
    if sol.status != 0 and not (partial and sol.t[-1] > t0):
        raise ArithmeticError(f"integration stopped early: {sol.message}")
    return sol.sol, sign, int(d0 < 0), float(sol.t[-1])


def _assemble(a, start, t0, t_max, tol, mode, meta, sign=None, partial=False) -> SigmaP3Solution:
    dense, sign, clipped, reached = _integrate(a, start, t0, t_max, tol, sign, partial)
    if reached < t_max:
        meta = dict(meta, stopped_at=reached)
        t_max = reached
    grid = report_grid(t0, t_max)
    tau, tp, tpp, log_f = dense(grid)
    d = _discriminant(a, grid, tau, tp)
    if np.any(d < -tol):
        raise BranchFailure(f"discriminant reached {d.min():.3e} on the reporting grid")
    clipped += int(np.sum(d < 0))
    residual = np.abs((grid * tpp) ** 2 - d)
    meta = dict(meta, tau_second_sign_changes=int(np.sum(np.diff(np.sign(tpp)) != 0)))
    return SigmaP3Solution(
        a=a,
        t=grid,
        tau=tau,
        tau_prime=tp,
        residual=residual,
        init_mode=mode,
        tol=tol,
        log_f=log_f,
        start=start,
        t0=t0,
        branch_sign=sign,
        clipped=clipped,
        meta=meta,
        dense=dense,
    )


def _check_args(a, t_max, tol):
    if not a > 0:
        raise ValueError(f"a must be positive, got {a}")
    if not 0 < t_max <= MAX_T:
        raise ValueError(f"t_max must lie in (0, {MAX_T}], got {t_max}")
    if not tol >= 1e-12:
        raise ValueError(f"tol must be >= 1e-12, got {tol}")


def _laplace_at(a, start, t0, tol, ts) -> np.ndarray:
    dense = _integrate(a, start, t0, max(ts), tol)[0]
    return np.exp(dense(np.asarray(ts, dtype=float))[3])


def fit_series_coefficient(a: float, data: LaplaceData, tol: float = 1e-8, bracket=(-5.0, 5.0)) -> tuple[float, float]:
    """Weighted least-squares choice of the free t^{1+a} coefficient against Monte Carlo f_N(t)."""
    ts = np.array(data.t)
    f = np.array(data.f)
    w = 1.0 / np.array(data.f_se) ** 2

    def loss(c):
        try:
            model = _laplace_at(a, small_t_series(a, c), SERIES_T0, tol, ts)
        except ArithmeticError:
            # BranchFailure, or the integrator running into a movable pole
            return math.inf
        return float(np.sum(w * (model - f) ** 2))

    # The admissible coefficients form a half-line that ends right next to the
    # optimum, so a bounded Brent search alone wanders into the failed region.
    # Zoom in with grid scans first, then polish.
    lo, hi = bracket
    step = (hi - lo) / 40
    best = None
    for _ in range(3):
        grid = np.arange(lo, hi + 0.5 * step, step)
        vals = [loss(c) for c in grid]
        k = int(np.argmin(vals))
        if not np.isfinite(vals[k]):
            raise ArithmeticError("no coefficient in the bracket gives a valid solution")
        best = (float(grid[k]), vals[k])
        lo, hi = best[0] - step, best[0] + step
        step /= 10
    res = optimize.minimize_scalar(loss, bounds=(lo, hi), method="bounded", options={"xatol": 1e-7})
    if np.isfinite(res.fun) and res.fun <= best[1]:
        return float(res.x), float(res.fun)
    return best


def fit_small_t_ansatz(a: float, data: LaplaceData) -> tuple[float, float]:
    """Least squares tau ~ c1 t + c_g t^g with g = 2, the leading correction for a > 1."""
    t = np.array(data.t)
    tau = np.array(data.tau)
    w = 1.0 / np.array(data.tau_se)
    design = np.column_stack([t, t**2]) * w[:, None]
    (c1, cg), *_ = np.linalg.lstsq(design, tau * w, rcond=None)
    return float(c1), float(cg)


def solve_sigma_p3(
    a: float,
    t_max: float,
    init_mode,
    tol: float = 1e-8,
    *,
    c: float | None = None,
    mc: McMatchConfig | None = None,
    data: LaplaceData | None = None,
) -> SigmaP3Solution:
    """Integrate the sigma-PIII equation from the chosen start.

    PaperBC: tau(t0) = -t0/(4a), tau'(t0) = -1/(4a) at t0 = 1e-6.
    McMatched: the regular series with its free coefficient fitted to Monte Carlo
    f_N(t) (or given as ``c``).  SeriesFit: tau ~ c1 t + c2 t^2 least-squares
    fitted to Monte Carlo tau_N(t).  These two starts may run into a movable
    pole; the solution then ends there and ``meta["stopped_at"]`` records where.
    """
    mode = InitMode(init_mode)
    _check_args(a, t_max, tol)
    meta: dict = {}
    if mode is InitMode.PAPER_BC:
        start = linear_start(-1.0 / (4.0 * a))
        t0 = PAPER_T0
        meta["start_discriminant"] = _discriminant(a, t0, start.tau(t0), start.tau_prime(t0))
        # the linear start has no curvature, so the branch is taken as +
        return _assemble(a, start, t0, t_max, tol, mode, meta, sign=1.0, partial=True)

    if t_max <= SERIES_T0:
        raise ValueError(f"t_max must exceed the series start {SERIES_T0}")
    mc = mc or McMatchConfig()
    if mode is InitMode.MC_MATCHED:
        _check_regular(a)
        if c is None:
            if data is None:
                data = mc_laplace_data(JacobiParams(a, mc.b), mc.n, mc.fit_t, mc.reps, mc.seed)
            c, chi2 = fit_series_coefficient(a, data, tol, mc.c_bracket)
            meta.update(fit_chi2=chi2, fit_t=list(data.t), fit_n=data.n, fit_reps=data.reps, fit_seed=data.seed)
        meta["c"] = c
        return _assemble(a, small_t_series(a, c), SERIES_T0, t_max, tol, mode, meta)

    # SeriesFit
    if data is None:
        data = mc_laplace_data(JacobiParams(a, mc.b), mc.n, mc.series_fit_t, mc.reps, mc.seed)
    c1, cg = fit_small_t_ansatz(a, data)
    meta.update(c1=c1, c_gamma=cg, gamma=2.0, fit_t=list(data.t), fit_n=data.n)
    start = linear_start(c1, cg)
    meta["start_discriminant"] = _discriminant(a, SERIES_T0, start.tau(SERIES_T0), start.tau_prime(SERIES_T0))
    return _assemble(a, start, SERIES_T0, t_max, tol, mode, meta, partial=True)


# --- post-processing -----------------------------------------------------------


def laplace_from_tau(sol: SigmaP3Solution, t: float) -> float:
    """E[exp(-t M)] = exp(int_0^t tau(u)/u du); the segment below t0 uses the start series."""
    if t < 0 or t > sol.t_max * (1 + 1e-12):
        raise ValueError(f"t={t} outside the solution range [0, {sol.t_max}]")
    if t == 0:
        return 1.0
    if t < sol.t0:
        return math.exp(sol.start.log_f(t))
    return float(math.exp(sol.dense(min(t, sol.t_max))[3]))


def fd_residual(sol: SigmaP3Solution) -> np.ndarray:
    """Residual with tau'' from second-order central differences of tau' on the reporting grid."""
    t, tp = sol.t, sol.tau_prime
    h0 = t[1:-1] - t[:-2]
    h1 = t[2:] - t[1:-1]
    tpp = (tp[2:] * h0**2 - tp[:-2] * h1**2 + tp[1:-1] * (h1**2 - h0**2)) / (h0 * h1 * (h0 + h1))
    tm, tau, tpm = t[1:-1], sol.tau[1:-1], tp[1:-1]
    return np.abs((tm * tpp) ** 2 + 4.0 * tpm**2 * (tm * tpm - tau) - (sol.a * tpm + 1.0) ** 2)


def tau_from_laplace(sol: SigmaP3Solution, t: np.ndarray, rel_step: float = 1e-4) -> np.ndarray:
    """t d/dt log f by central differences of laplace_from_tau."""
    t = np.asarray(t, dtype=float)
    h = rel_step * t
    up = np.log([laplace_from_tau(sol, x) for x in t + h])
    dn = np.log([laplace_from_tau(sol, x) for x in t - h])
    return t * (up - dn) / (2.0 * h)


def limiting_moments_from_tau(sol: SigmaP3Solution, k: int, t_min: float | None = None) -> float:
    """E[M] (k=1) or E[M^2] (k=2) from the small-t behaviour of tau(t)/t.

    tau(t)/t = -E[M] + Var(M) t + C t^a + d t^2 + ...; the four leading terms are
    solved for on two windows t_min * 2^j and the answers must agree.
    """
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    if sol.init_mode is InitMode.PAPER_BC and k == 1:
        # the stated boundary data fix the slope at the origin
        return -sol.start.tau_prime(0.0) if sol.start.coefficients[0][0] == 1.0 else math.nan
    a = sol.a
    exps = sorted({0.0, 1.0, a, 2.0})
    if len(exps) < 4:
        raise ExtractionError(f"a={a} collides with the extrapolation ladder")
    t_min = max(sol.t0, SERIES_T0) if t_min is None else t_min

    def window(start):
        ts = start * 2.0 ** np.arange(4)
        if ts[-1] > sol.t_max:
            raise ExtractionError("solution grid too short for the extraction window")
        g = sol.dense(ts)[0] / ts
        coef = np.linalg.solve(np.column_stack([ts**e for e in exps]), g)
        mean = -coef[exps.index(0.0)]
        var = coef[exps.index(1.0)]
        return mean if k == 1 else var + mean * mean

    first, second = window(t_min), window(2.0 * t_min)
    spread = abs(first - second) / max(abs(first), 1e-300)
    limit = 1e-4 if k == 1 else 1e-3
    if not np.isfinite(first) or spread > limit:
        raise ExtractionError(
            f"unstable extraction for k={k}: windows give {first:.8g} and {second:.8g} (relative spread {spread:.2e})"
        )
    return float(first)


# --- reports ---------------------------------------------------------------------


@dataclass
class DiscrepancyReport:
    a: float
    t: list
    mc_f: list
    mc_se: list
    paper_f: list
    matched_f: list
    paper_z: list
    matched_z: list
    paper_chi2: float
    matched_chi2: float
    paper_start_discriminant: float
    regular_slope: float
    stated_slope: float
    paper_tau_over_t: list
    matched_tau_over_t: list
    small_t: list
    closer: str
    paper_stopped_at: float | None = None

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=2, sort_keys=True)


def paper_bc_discrepancy(
    matched: SigmaP3Solution, data: LaplaceData, tol: float = 1e-8, paper_bc: SigmaP3Solution | None = None
) -> DiscrepancyReport:
    """Compare the stated boundary data with the Monte Carlo-matched solution.

    Points past a pole of the PaperBC solution are reported as None and
    left out of its chi^2, which is None when no point is reachable.
    """
    a = matched.a
    t_end = max(data.t)
    if paper_bc is None:
        paper_bc = solve_sigma_p3(a, max(t_end, matched.t_max), InitMode.PAPER_BC, tol)
    def reach(sol, t):
        return t <= sol.t_max * (1 + 1e-12)

    paper_f = [laplace_from_tau(paper_bc, t) if reach(paper_bc, t) else None for t in data.t]
    matched_f = [laplace_from_tau(matched, t) for t in data.t]
    f = np.array(data.f)
    se = np.array(data.f_se)
    pz = [None if v is None else float((v - fv) / s) for v, fv, s in zip(paper_f, f, se)]
    mz = (np.array(matched_f) - f) / se
    hit = [z for z in pz if z is not None]
    paper_chi2 = float(np.sum(np.square(hit))) if hit else None
    matched_chi2 = float(np.sum(mz**2))
    small = [1e-3, 1e-2, 1e-1]
    return DiscrepancyReport(
        a=a,
        t=list(data.t),
        mc_f=list(data.f),
        mc_se=list(data.f_se),
        paper_f=paper_f,
        matched_f=matched_f,
        paper_z=pz,
        matched_z=mz.tolist(),
        paper_chi2=paper_chi2,
        matched_chi2=matched_chi2,
        paper_start_discriminant=paper_bc.meta.get("start_discriminant", math.nan),
        regular_slope=-1.0 / a,
        stated_slope=-1.0 / (4.0 * a),
        paper_tau_over_t=[float(paper_bc.dense(t)[0] / t) if reach(paper_bc, t) else None for t in small],
        matched_tau_over_t=[float(matched.dense(t)[0] / t) for t in small],
        small_t=small,
        closer="McMatched" if paper_chi2 is None or matched_chi2 < paper_chi2 else "PaperBC",
        paper_stopped_at=paper_bc.meta.get("stopped_at"),
    )


def b_dependence(a: float, bs: Sequence[float], n: int, ts: Sequence[float], reps: int, seed: int) -> dict:
    """Monte Carlo f_N(t) at fixed a across several b, for an empirical look at b-dependence."""
    out = {"a": a, "n": n, "t": list(ts), "rows": []}
    for i, b in enumerate(bs):
        d = mc_laplace_data(JacobiParams(a, b), n, ts, reps, seed + i)
        out["rows"].append({"b": b, "f": list(d.f), "se": list(d.f_se)})
    return out
