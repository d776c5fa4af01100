"""Monte Carlo fluctuation experiments for expanding maps T(x) = A x - d.

Random points of the tile are drawn by their digits (i.i.d. uniform over D),
which is the uniform measure on the tile. Partial sums S(n, x) are taken
through the summation identity, never by iterating the map.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import linalg_exact as la
from .errors import EmptyInput, ZeroDirection
from .expand import DigitString, check_valid, fractional_digit_sum, fractional_value, shift
from .numsys import NumberSystem
from .sumformula import center_of_mass
from .tiles import outer_radius

TAIL_TOLERANCE = 1e-13


def partial_sum_S(ns: NumberSystem, ds: DigitString, n: int) -> la.Vector:
    """Exact S(n, x) = sum_{i<n} {A^i x} = (A - I)^{-1}(sum d_i + {A^n x} - {x})."""
    check_valid(ns, ds)
    rhs = la.vec_add(fractional_digit_sum(ns, ds, n), fractional_value(ns, shift(ds, n)))
    rhs = la.vec_sub(rhs, fractional_value(ns, ds))
    return la.normalize(la.mat_vec(ns.a_minus_i_inv, rhs))


def tail_length(ns: NumberSystem, tol: float = TAIL_TOLERANCE) -> int:
    """Digits needed so the neglected tail of a fractional part is below tol."""
    cert = outer_radius(ns)
    s, R = float(cert.contraction), float(cert.bound)
    blocks = max(1, math.ceil(math.log(tol / max(R, 1e-300)) / math.log(s)))
    return blocks * cert.k


@dataclass
class FluctuationSample:
    n: int
    count: int
    seed: int
    points: np.ndarray  # (count, m): 2 (S - n xbar) / sqrt(n)
    xbar: np.ndarray = field(repr=False)

    @property
    def mean(self) -> np.ndarray:
        return self.points.mean(axis=0)

    @property
    def covariance(self) -> np.ndarray:
        return np.atleast_2d(np.cov(self.points.T, ddof=1))

    def to_csv(self) -> str:
        lines = [f"# seed={self.seed},n={self.n},count={self.count}"]
        lines.append(",".join(f"p{j}" for j in range(self.points.shape[1])))
        for row in self.points:
            lines.append(",".join(repr(float(v)) for v in row))
        return "\n".join(lines) + "\n"


def _fractional_parts(ns: NumberSystem, idx: np.ndarray) -> np.ndarray:
    """sum_j A^{-j} d_{idx[:, j-1]} in double precision (Horner, back to front)."""
    a_inv = np.array(ns.a_inv, dtype=float)
    D = np.array(ns.digits, dtype=float)
    x = np.zeros((idx.shape[0], ns.dim))
    for j in range(idx.shape[1] - 1, -1, -1):
        x = (x + D[idx[:, j]]) @ a_inv.T
    return x


def sample_fluctuations(ns: NumberSystem, n: int, count: int, seed: int) -> FluctuationSample:
    """Draw ``count`` uniform points of the tile and rescale their fluctuations.

    Each draw is n digits followed by a tail long enough that {x} and {A^n x}
    are accurate to double precision; the generator is numpy's PCG64 seeded
    with ``seed``.
    """
    if n < 1 or count < 1:
        raise ValueError("n and count must be positive")
    tail = tail_length(ns)
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, ns.q, size=(count, n + tail))
    D = np.array(ns.digits, dtype=float)
    digit_sum = D[idx[:, :n]].sum(axis=1)
    frac_0 = _fractional_parts(ns, idx)
    frac_n = _fractional_parts(ns, idx[:, n:])
    S = (digit_sum + frac_n - frac_0) @ np.array(ns.a_minus_i_inv, dtype=float).T
    xbar = np.array(center_of_mass(ns), dtype=float)
    points = 2.0 * (S - n * xbar) / math.sqrt(n)
    return FluctuationSample(n, count, seed, points, xbar)


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def ks_statistic(values) -> float:
    """Sup distance between the empirical CDF of ``values`` and the standard normal CDF."""
    v = np.sort(np.asarray(values, dtype=float).ravel())
    if v.size == 0:
        raise EmptyInput("no values")
    n = v.size
    cdf = np.array([normal_cdf(x) for x in v])
    i = np.arange(1, n + 1)
    return float(max((i / n - cdf).max(), (cdf - (i - 1) / n).max()))


class LineCollapse(NamedTuple):
    max_perp: float
    along: np.ndarray


def line_collapse(sample: FluctuationSample, direction) -> LineCollapse:
    """Split points into components along and across ``direction``.

    ``along`` is half the coefficient t in p = t * direction + perp. For a
    two-digit system with direction xbar the points approach t * xbar with t
    twice a standard normal, so ``along`` is asymptotically standard normal.
    """
    v = np.asarray(direction, dtype=float).ravel()
    vv = float(v @ v)
    if vv == 0.0:
        raise ZeroDirection("direction must be non-zero")
    t = sample.points @ v / vv
    perp = sample.points - np.outer(t, v)
    max_perp = float(np.linalg.norm(perp, axis=1).max()) if len(perp) else 0.0
    return LineCollapse(max_perp, t / 2.0)


def perpendicular_bound(ns: NumberSystem, n: int) -> float:
    """2 (2 / sqrt(n)) ||(A - I)^{-1}|| R_out: the remainder term's largest possible size."""
    norm = float(np.linalg.norm(np.array(ns.a_minus_i_inv, dtype=float), 2))
    return 2.0 * (2.0 / math.sqrt(n)) * norm * float(outer_radius(ns).bound)


def summary(sample: FluctuationSample) -> dict:
    """Key-value summary: mean, covariance, KS of the along-line coordinate, max_perp."""
    lc = line_collapse(sample, sample.xbar)
    return {
        "seed": sample.seed,
        "n": sample.n,
        "count": sample.count,
        "mean": [float(x) for x in sample.mean],
        "covariance": [[float(x) for x in row] for row in sample.covariance],
        "ks": ks_statistic(lc.along),
        "max_perp": lc.max_perp,
    }
