"""The flat-spot circle maps f_t: doubling truncated to the band [t, 1 + t].

On the lift, F_t(x) = min(max(2x, t), 1 + t); f_t is F_t mod 1. The flat
interval [(1 + t)/2, 1) U [0, t/2] of length 1/2 is sent to t.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

N_BINS = 1024


def f_t_step(t: float, x: float) -> float:
    """One step of f_t. At x = 1/2 the image is 0 (2x - 1 branch)."""
    if not (0.0 <= t < 1.0 and 0.0 <= x < 1.0):
        raise DomainError(f"need t, x in [0, 1), got t={t!r}, x={x!r}")
    y = 2.0 * x
    if y <= t:
        return t
    if y < 1.0:
        return y
    y -= 1.0
    return t if y >= t else y


def step_array(t: np.ndarray, x: np.ndarray):
    """Vectorised f_t; returns (next x, wrapped) where wrapped adds 1 on the lift."""
    y = 2.0 * x
    wrapped = y >= 1.0
    out = np.where(wrapped, np.minimum(y - 1.0, t), np.maximum(y, t))
    return out, wrapped


@dataclass(frozen=True)
class CircleOrbit:
    t: float
    x0: float
    n: int
    partial_sum: float  # sum_{i<n} f_t^i(x0)
    final: float  # f_t^n(x0)
    wraps: int


def orbit(t: float, x0: float, n: int) -> CircleOrbit:
    f_t_step(t, x0)  # domain check
    tt, x = np.array([t]), np.array([x0])
    s, w = 0.0, 0
    for _ in range(n):
        s += float(x[0])
        x, wr = step_array(tt, x)
        w += int(wr[0])
    return CircleOrbit(t, x0, n, s, float(x[0]), w)


def rotation_numbers(ts, n: int, x0: float = 0.0) -> np.ndarray:
    """Lift displacement (F_t^n(x0) - x0) / n for every t in ``ts`` at once."""
    t = np.asarray(ts, dtype=float)
    if np.any((t < 0) | (t >= 1)) or not 0.0 <= x0 < 1.0:
        raise DomainError("t and x0 must lie in [0, 1)")
    x = np.full(t.shape, x0)
    wraps = np.zeros(t.shape, dtype=np.int64)
    for _ in range(n):
        x, w = step_array(t, x)
        wraps += w
    return (wraps + x - x0) / n


def rotation_number(t: float, n: int, x0: float = 0.0) -> float:
    """Estimate of rho(t); within 1/n of the true value."""
    if n < 1000:
        raise ValueError("use at least 1000 iterations")
    return float(rotation_numbers([t], n, x0)[0])


def find_locking_parameter(target: float, n: int = 2000, lo: float = 0.0, hi: float = 1.0 - 1e-12,
                           tol: float = 1e-9) -> float:
    """Bisect on t for an estimate equal to ``target`` (rho is non-decreasing)."""
    while hi - lo > tol:
        mid = (lo + hi) / 2
        r = float(rotation_numbers([mid], n)[0])
        if abs(r - target) <= 1.0 / n:
            return mid
        if r < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class CircleHistogram:
    n: int
    count: int
    seed: int
    edges: np.ndarray
    counts: np.ndarray
    clamped: int  # values outside [-1/2, 1/2] folded into the end bins
    mean: float
    std: float

    @property
    def centers(self) -> np.ndarray:
        return (self.edges[:-1] + self.edges[1:]) / 2

    @property
    def density(self) -> np.ndarray:
        width = self.edges[1] - self.edges[0]
        return self.counts / (self.count * width)

    def to_csv(self) -> str:
        lines = [f"# n={self.n},count={self.count},seed={self.seed},clamped={self.clamped}",
                 "bin_center,count,density"]
        for c, k, d in zip(self.centers, self.counts, self.density):
            lines.append(f"{c!r},{int(k)},{d!r}")
        return "\n".join(lines) + "\n"


def circle_fluctuation_values(n: int, count: int, seed: int, chunk: int = 1 << 15) -> np.ndarray:
    """(1/n)(S(n, t, x) - n/2) for ``count`` pairs (t, x) uniform on [0, 1)^2."""
    rng = np.random.default_rng(seed)
    tx = rng.random((count, 2))
    out = np.empty(count)
    for start in range(0, count, chunk):
        t = tx[start:start + chunk, 0]
        x = tx[start:start + chunk, 1].copy()
        s = np.zeros_like(x)
        for _ in range(n):
            s += x
            x, _w = step_array(t, x)
        out[start:start + chunk] = (s - n / 2) / n
    return out


def circle_fluctuations(n: int, count: int, seed: int, bins: int = N_BINS) -> CircleHistogram:
    values = circle_fluctuation_values(n, count, seed)
    edges = np.linspace(-0.5, 0.5, bins + 1)
    idx = np.floor((values + 0.5) * bins).astype(np.int64)
    clamped = int(np.count_nonzero((idx < 0) | (idx >= bins)))
    idx = np.clip(idx, 0, bins - 1)
    counts = np.bincount(idx, minlength=bins)
    std = float(values.std(ddof=1)) if count > 1 else 0.0
    return CircleHistogram(n, count, seed, edges, counts, clamped, float(values.mean()), std)


def symmetric_pair_fraction(hist: CircleHistogram, z: float = 4.0) -> float:
    """Share of mirrored bin pairs (i, bins-1-i) with |c_i - c_j| <= z sqrt(c_i + c_j)."""
    c = hist.counts.astype(float)
    half = len(c) // 2
    left, right = c[:half], c[::-1][:half]
    ok = np.abs(left - right) <= z * np.sqrt(left + right)
    return float(ok.mean())
