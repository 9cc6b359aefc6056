"""Exact sampling from the beta = 2 Jacobi ensemble on [0, 1]^N.

The sampler is the bidiagonal CS-decomposition model: independent Beta
variables fill an upper bidiagonal block B11, and the eigenvalues of
B11^T B11 carry the joint law prod x^a (1-x)^b |Vandermonde|^2.  The
companion block B21 satisfies B11^T B11 + B21^T B21 = I, so the same draw
also gives 1 - x_j as eigenvalues of B21^T B21.  That identity is what lets
the inverse-trace path detect endpoint points without an eigensolve.

Randomness is split into fixed-size chunks.  Chunk k uses its own
``SeedSequence(seed, spawn_key=(k,))`` stream, and each chunk returns its
rows in order, so results do not depend on how chunks are scheduled.
"""
from __future__ import annotations

import csv
import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.linalg import lapack

from .jacobi import JacobiParams

CHUNK = 512
ENDPOINT_GAP = 1e-14
SEED_BOUND = 2**64
THREADS_ENV = "JACOBI_MOMENTS_THREADS"
_DENSE_MAX_N = 32
_MAX_REDRAWS = 64


class Group(str, enum.Enum):
    SP = "Sp"
    SO = "SO"

    @property
    def params(self) -> JacobiParams:
        return JacobiParams(0.5, 0.5) if self is Group.SP else JacobiParams(-0.5, -0.5)

    @classmethod
    def parse(cls, value) -> "Group":
        if isinstance(value, Group):
            return value
        for g in cls:
            if str(value).lower() == g.value.lower():
                return g
        raise ValueError(f"unknown group {value!r}; expected 'Sp' or 'SO'")


def _check_seed(seed) -> int:
    seed = int(seed)
    if not 0 <= seed < SEED_BOUND:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def _check_n(n) -> int:
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class EnsembleSample:
    params: JacobiParams
    n: int
    points: np.ndarray
    seed: int

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.shape != (self.n,):
            raise ValueError(f"expected {self.n} points, got shape {pts.shape}")
        if not (np.all(pts > 0.0) and np.all(pts < 1.0)):
            raise ValueError("sample points must lie in (0, 1)")
        if np.any(np.diff(pts) <= 0):
            raise ValueError("sample points must be strictly increasing")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class AngleSample:
    group: Group
    n: int
    angles: np.ndarray

    def __post_init__(self):
        ang = np.array(self.angles, dtype=float)
        if ang.shape != (self.n,):
            raise ValueError(f"expected {self.n} angles, got shape {ang.shape}")
        if not (np.all(ang > 0.0) and np.all(ang < math.pi)):
            raise ValueError("angles must lie in (0, pi)")
        if np.any(np.diff(ang) < 0):
            raise ValueError("angles must be sorted")
        ang.flags.writeable = False
        object.__setattr__(self, "group", Group.parse(self.group))
        object.__setattr__(self, "angles", ang)

    def to_points(self) -> np.ndarray:
        return np.sin(0.5 * self.angles) ** 2


# --- the bidiagonal model -------------------------------------------------


def _draw_cs(params: JacobiParams, n: int, m: int, rng: np.random.Generator):
    """Squared cosines c_k^2 (k = n..1) and c'_k^2 (k = n-1..1) for m draws."""
    k = np.arange(n, 0, -1, dtype=float)
    c2 = rng.beta(params.a + k, params.b + k, size=(m, n))
    kp = np.arange(n - 1, 0, -1, dtype=float)
    cp2 = rng.beta(kp, params.a + params.b + 1.0 + kp, size=(m, n - 1))
    return c2, cp2


def _blocks(c2, cp2):
    """Squared diagonals and superdiagonals of B11 and B21."""
    s2 = 1.0 - c2
    sp2 = 1.0 - cp2
    d11 = c2.copy()
    d11[:, 1:] *= sp2
    e11 = s2[:, :-1] * cp2
    d21 = s2.copy()
    d21[:, 1:] *= sp2
    e21 = c2[:, :-1] * cp2
    return d11, e11, d21, e21


def _eigenvalues(d2, e2) -> np.ndarray:
    """Eigenvalues of B^T B for rows of an upper bidiagonal B given squared entries."""
    m, n = d2.shape
    diag = d2.copy()
    diag[:, 1:] += e2
    off = np.sqrt(d2[:, :-1] * e2)
    if n <= _DENSE_MAX_N:
        t = np.zeros((m, n, n))
        idx = np.arange(n)
        t[:, idx, idx] = diag
        t[:, idx[:-1], idx[1:]] = off
        t[:, idx[1:], idx[:-1]] = off
        return np.linalg.eigvalsh(t)
    out = np.empty((m, n))
    for r in range(m):
        vals, info = lapack.dsterf(diag[r], off[r])
        if info != 0:
            raise ArithmeticError(f"tridiagonal eigensolver failed (info={info})")
        out[r] = vals
    return out


def _inverse_trace(d2, e2) -> np.ndarray:
    """tr (B^T B)^{-1} = ||B^{-1}||_F^2 by a column recursion, O(n) per row."""
    col = 1.0 / d2[:, 0]
    total = col.copy()
    for j in range(1, d2.shape[1]):
        col = (col * e2[:, j - 1] + 1.0) / d2[:, j]
        total += col
    return total


def _bad_rows(points: np.ndarray) -> np.ndarray:
    return (points[:, 0] < ENDPOINT_GAP) | (points[:, -1] > 1.0 - ENDPOINT_GAP) | ~np.all(
        np.isfinite(points), axis=1
    )


def _redraw_loop(params, n, m, rng, accept):
    """Draw m rows; rows rejected by ``accept`` are redrawn from the same stream.

    ``accept(d11, e11, d21, e21)`` returns (row values, boolean ok mask).
    """
    vals, ok = accept(*_blocks(*_draw_cs(params, n, m, rng)))
    for _ in range(_MAX_REDRAWS):
        bad = np.flatnonzero(~ok)
        if bad.size == 0:
            return vals
        new_vals, new_ok = accept(*_blocks(*_draw_cs(params, n, bad.size, rng)))
        vals[bad] = new_vals
        ok[bad] = new_ok
    raise ArithmeticError("too many samples landed on the endpoints; parameters are too extreme")


def _points_chunk(params, n, m, rng):
    def accept(d11, e11, d21, e21):
        pts = _eigenvalues(d11, e11)
        return pts, ~_bad_rows(pts)

    return _redraw_loop(params, n, m, rng, accept)


def _inverse_sum_chunk(params, n, m, rng):
    # A point below the gap forces tr(T^{-1}) above 1/gap; likewise for 1 - x and
    # the complementary block.  Only rows failing one of these cheap screens get
    # an eigensolve, and the accept/reject decision is the one _points_chunk makes.
    def accept(d11, e11, d21, e21):
        inv = _inverse_trace(d11, e11)
        inv_c = _inverse_trace(d21, e21)
        ok = np.isfinite(inv) & np.isfinite(inv_c)
        suspect = ~ok | (inv >= 1.0 / ENDPOINT_GAP) | (inv_c >= 1.0 / ENDPOINT_GAP)
        ok = np.ones(len(inv), dtype=bool)
        rows = np.flatnonzero(suspect)
        if rows.size:
            pts = _eigenvalues(d11[rows], e11[rows])
            ok[rows] = ~_bad_rows(pts)
        return inv, ok

    return _redraw_loop(params, n, m, rng, accept)


def thread_count() -> int:
    """Worker threads from the environment, defaulting to the available CPUs."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def _run_chunks(worker, params, n, reps, seed, threads):
    seed = _check_seed(seed)
    n = _check_n(n)
    if reps < 1:
        raise ValueError("reps must be >= 1")
    sizes = [min(CHUNK, reps - start) for start in range(0, reps, CHUNK)]

    def job(k):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(k,))))
        return worker(params, n, sizes[k], rng)

    threads = thread_count() if threads is None else int(threads)
    if threads <= 1 or len(sizes) == 1:
        parts = [job(k) for k in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(job, range(len(sizes))))
    return np.concatenate(parts, axis=0)


def sample_jacobi_batch(params: JacobiParams, n: int, reps: int, seed: int, threads: int | None = None) -> np.ndarray:
    """``reps`` independent draws as a (reps, n) array of sorted rows."""
    return _run_chunks(_points_chunk, params, n, reps, seed, threads)


def inverse_sums(params: JacobiParams, n: int, reps: int, seed: int, threads: int | None = None) -> np.ndarray:
    """sum_j 1/x_j for the same draws :func:`sample_jacobi_batch` would return."""
    return _run_chunks(_inverse_sum_chunk, params, n, reps, seed, threads)


def sample_jacobi(params: JacobiParams, n: int, seed: int) -> EnsembleSample:
    pts = sample_jacobi_batch(params, n, 1, seed, threads=1)[0]
    return EnsembleSample(params, int(n), pts, _check_seed(seed))


def to_angles(sample: EnsembleSample, group) -> AngleSample:
    group = Group.parse(group)
    if sample.params != group.params:
        raise ValueError(
            f"group {group.value} needs Jacobi parameters ({group.params.a}, {group.params.b}), "
            f"sample has ({sample.params.a}, {sample.params.b})"
        )
    return AngleSample(group, sample.n, points_to_angles(sample.points))


def points_to_angles(x) -> np.ndarray:
    """arccos(1 - 2x), written as 2 atan2(sqrt x, sqrt(1-x)) to stay accurate at both ends."""
    x = np.asarray(x, dtype=float)
    return 2.0 * np.arctan2(np.sqrt(x), np.sqrt(1.0 - x))


def haar_eigenangles(group, n: int, seed: int) -> AngleSample:
    group = Group.parse(group)
    return to_angles(sample_jacobi(group.params, n, seed), group)


def write_samples_csv(path, rows: np.ndarray, params: JacobiParams, seed: int) -> Path:
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write(f"# jacobi a={params.a!r} b={params.b!r} n={rows.shape[1]} reps={rows.shape[0]} seed={seed}\n")
        writer = csv.writer(fh)
        writer.writerow([f"x_{j + 1}" for j in range(rows.shape[1])])
        for row in rows:
            writer.writerow([repr(float(v)) for v in row])
    return path


def read_samples_csv(path) -> np.ndarray:
    with Path(path).open() as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.reader(lines)
    next(reader)
    return np.array([[float(v) for v in row] for row in reader])
