"""Finite approximations of the tile F = A^{-1}(F + D), the difference set
Delta = I - I, lattice detection, and raster/CSV emission."""
from __future__ import annotations

import io
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from . import linalg_exact as la
from .errors import EmptyCloud, NoContractionFound, WindowOverflow
from .numsys import NumberSystem, a_power

MAX_ENUMERATE = 4096
MAX_K = 64


# --- certified outer radius --------------------------------------------------

def sqrt_upper(r: Fraction, bits: int = 48) -> Fraction:
    """Rational upper bound on sqrt(r), within 2^-bits."""
    r = Fraction(r)
    if r <= 0:
        return Fraction(0)
    scale = 1 << (2 * bits)
    n = -((-r.numerator * scale) // r.denominator)  # ceil
    s = math.isqrt(n)
    if s * s < n:
        s += 1
    return Fraction(s, 1 << bits)


def _positive_definite(M) -> bool:
    """Exact test via LDL^T pivots (symmetric M)."""
    a = [[Fraction(x) for x in row] for row in M]
    n = len(a)
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


def operator_norm_bound(B) -> Fraction:
    """Rigorous rational upper bound on the spectral norm of B.

    A double-precision estimate is inflated and then certified exactly:
    r I - B^T B must be positive definite.
    """
    BtB = la.mat_mul(la.transpose(B), B)
    lam = float(np.linalg.eigvalsh(np.array(BtB, dtype=float)).max())
    margin = 1e-9
    while True:
        r = Fraction(lam * (1 + margin) + margin * 1e-6)
        if r > 0 and _positive_definite(la.mat_sub(la.mat_scale(r, la.identity(len(B))), BtB)):
            return sqrt_upper(r)
        margin *= 10
        if margin > 1e6:
            raise ArithmeticError("could not certify an operator norm bound")


@dataclass(frozen=True)
class OuterRadius:
    """F lies in the closed ball of radius ``bound`` about the origin.

    Certificate: with s >= ||A^{-k}|| and every depth-k partial sum of norm at
    most ``block_max``, R = block_max / (1 - s).
    """

    radius: float
    bound: Fraction
    k: int
    contraction: Fraction
    block_max: Fraction


@lru_cache(maxsize=None)
def outer_radius(ns: NumberSystem) -> OuterRadius:
    best = None
    inv_norms = []
    digit_max = sqrt_upper(max(la.norm2(d) for d in ns.digits))
    for k in range(1, MAX_K + 1):
        B = la.mat_pow(ns.a_inv, k)
        s = operator_norm_bound(B)
        inv_norms.append(s)
        if ns.q**k <= MAX_ENUMERATE:
            block = sqrt_upper(max(la.norm2(p) for p in _tile_points_exact(ns, k)))
        else:
            block = digit_max * sum(inv_norms)
        if s < 1:
            bound = block / (1 - s)
            if best is None or bound < best.bound:
                best = OuterRadius(
                    radius=math.nextafter(float(bound), math.inf),
                    bound=bound,
                    k=k,
                    contraction=s,
                    block_max=block,
                )
        if best is not None and ns.q ** (k + 1) > MAX_ENUMERATE and s < Fraction(1, 100):
            break
    if best is None:
        raise NoContractionFound(f"||A^-k|| >= 1 for every k <= {MAX_K}")
    return best


# --- the tile ----------------------------------------------------------------

@dataclass(frozen=True)
class PointCloud:
    dim: int
    points: tuple
    depth: int
    seed: Optional[int] = None
    sampled: bool = False

    def __len__(self):
        return len(self.points)

    def as_array(self) -> np.ndarray:
        return np.array([[float(c) for c in p] for p in self.points], dtype=float).reshape(-1, self.dim)

    def mean(self) -> la.Vector:
        n = len(self.points)
        return la.normalize(tuple(Fraction(sum(c), n) for c in zip(*self.points)))


def _integer_layer(ns: NumberSystem, depth: int) -> list:
    """Integer points sum_{i=1}^{depth} A^{depth-i} d_i, in digit-string order."""
    layer = [(0,) * ns.dim]
    for _ in range(depth):
        layer = [la.vec_add(la.mat_vec(ns.matrix, z), d) for z in layer for d in ns.digits]
    return layer


def _tile_points_exact(ns: NumberSystem, depth: int) -> list:
    scale = la.mat_pow(ns.a_inv, depth)
    return [la.normalize(la.mat_vec(scale, z)) for z in _integer_layer(ns, depth)]


def tile_cloud(ns: NumberSystem, depth: int, cap: Optional[int] = None, seed: Optional[int] = None) -> PointCloud:
    """Points sum_{i=1}^{depth} A^{-i} d_i over all digit strings.

    When q^depth exceeds ``cap``, ``cap`` distinct strings are drawn uniformly
    with a PCG64 generator seeded by ``seed`` instead.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    total = ns.q**depth
    if cap is None or total <= cap:
        return PointCloud(ns.dim, tuple(_tile_points_exact(ns, depth)), depth)
    if seed is None:
        raise ValueError("sampling above the cap needs an explicit seed")
    rng = np.random.default_rng(seed)
    chosen, order = set(), []
    while len(order) < cap:
        for row in rng.integers(0, ns.q, size=(cap, depth)):
            key = tuple(int(i) for i in row)
            if key not in chosen:
                chosen.add(key)
                order.append(key)
                if len(order) == cap:
                    break
    scale = la.mat_pow(ns.a_inv, depth)
    points = []
    for key in order:
        z = (0,) * ns.dim
        for i in key:
            z = la.vec_add(la.mat_vec(ns.matrix, z), ns.digits[i])
        points.append(la.normalize(la.mat_vec(scale, z)))
    return PointCloud(ns.dim, tuple(points), depth, seed=seed, sampled=True)


def overlap_fraction(ns: NumberSystem, translate, level: int, refine: int = 4) -> float:
    """Share of level-``level`` cells A^{-level}(z + [0,1)^m) hit by both F and F + translate.

    F is approximated by the depth ``level + refine`` cloud. A falsifiable
    proxy for translates meeting in measure zero: it should shrink with level.
    """
    depth = level + refine
    Ak = la.mat_pow(ns.matrix, level)
    Aref = la.mat_pow(ns.a_inv, refine)
    shifted = la.mat_vec(Ak, translate)

    def cell(z):
        # A^level * A^{-depth} z = A^{-refine} z
        return tuple(math.floor(c) for c in la.mat_vec(Aref, z))

    cells = {cell(z) for z in _integer_layer(ns, depth)}
    moved = {tuple(c + int(s) for c, s in zip(cz, shifted)) for cz in cells}
    return len(cells & moved) / len(cells)


# --- the difference set Delta ------------------------------------------------

def sup_norm(v) -> Fraction:
    return max(abs(c) for c in v)


def digit_differences(ns: NumberSystem) -> list:
    return sorted({la.vec_sub(a, b) for a in ns.digits for b in ns.digits})


@dataclass(frozen=True)
class DeltaSet:
    ns: NumberSystem
    k: int
    window: Fraction
    points: frozenset

    def __contains__(self, p):
        return tuple(p) in self.points

    def inside(self, window) -> set:
        return {p for p in self.points if sup_norm(p) <= window}


def delta_iterate(ns: NumberSystem, k: int, window, max_size: int = 2_000_000) -> DeltaSet:
    """Delta_k = A Delta_{k-1} + (D - D), Delta_0 = D - D, clipped to the sup-norm window."""
    window = Fraction(window)
    diffs = digit_differences(ns)
    current = {p for p in diffs if sup_norm(p) <= window}
    for _ in range(k):
        nxt = set()
        for p in current:
            Ap = la.mat_vec(ns.matrix, p)
            for e in diffs:
                v = la.vec_add(Ap, e)
                if sup_norm(v) <= window:
                    nxt.add(v)
        if len(nxt) > max_size:
            raise WindowOverflow(f"{len(nxt)} points exceed the cap of {max_size}")
        current = nxt
    return DeltaSet(ns, k, window, frozenset(current))


def in_delta(ns: NumberSystem, p, max_states: int = 1_000_000) -> bool:
    """Exact membership in the infinite difference set.

    p is in Delta iff p = e + A p' with e in D - D and p' in Delta (or p = 0 and
    the recursion bottoms out). Backward steps contract, so the search over
    integer states is finite.
    """
    diffs = digit_differences(ns)
    start = tuple(int(c) for c in p)
    zero = (0,) * ns.dim
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if v == zero or v in diffs:
            return True
        for e in diffs:
            w = ns.residue_key(la.vec_sub(v, e))
            if any(w):
                continue
            prev = tuple(int(c) for c in la.mat_vec(ns.a_inv, la.vec_sub(v, e)))
            if prev not in seen:
                seen.add(prev)
                if len(seen) > max_states:
                    raise WindowOverflow("difference-set membership search did not close")
                queue.append(prev)
    return False


def hermite_basis(vectors: Iterable) -> list:
    """Row-style Hermite normal form of the integer lattice spanned by ``vectors``."""
    rows = [list(map(int, v)) for v in vectors if any(v)]
    if not rows:
        return []
    m = len(rows[0])
    basis = []
    col = 0
    while rows and col < m:
        nz = [r for r in rows if r[col] != 0]
        if not nz:
            col += 1
            continue
        rest = [r for r in rows if r[col] == 0]
        # Euclid on the column until a single row carries it
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            reduced = [piv]
            for r in nz[1:]:
                f = r[col] // piv[col]
                r = [a - f * b for a, b in zip(r, piv)]
                (reduced if r[col] != 0 else rest).append(r)
            nz = reduced
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        rows = [r for r in rest if any(r)]
        col += 1
    # reduce entries above each pivot
    for i, b in enumerate(basis):
        c = next(j for j, a in enumerate(b) if a)
        for h in range(i):
            f = basis[h][c] // b[c]
            basis[h] = [a - f * x for a, x in zip(basis[h], b)]
    return [tuple(b) for b in basis]


def lattice_points(basis: list, window) -> set:
    """All points of the lattice spanned by an echelon basis with sup-norm <= window."""
    m = len(basis[0]) if basis else 0
    if not basis:
        return set()
    pivots = [next(j for j, a in enumerate(b) if a) for b in basis]
    out = set()

    def rec(i, acc):
        if i == len(basis):
            if sup_norm(acc) <= window:
                out.add(tuple(acc))
            return
        c, p = pivots[i], basis[i][pivots[i]]
        lo = math.ceil((-window - acc[c]) / p)
        hi = math.floor((window - acc[c]) / p)
        for a in range(lo, hi + 1):
            rec(i + 1, [x + a * y for x, y in zip(acc, basis[i])])

    rec(0, [0] * m)
    return out


@dataclass(frozen=True)
class LatticeEvidence:
    """Delta agrees with a lattice inside the window at this depth (evidence, not proof)."""

    basis: list
    window: Fraction


@dataclass(frozen=True)
class NotLatticeEvidence:
    """A point where the computed Delta and the lattice it generates disagree.

    ``certified`` is True when the witness was shown, by exact search over the
    infinite difference set, to lie outside Delta altogether.
    """

    witness: tuple
    in_lattice: bool
    certified: bool
    basis: list
    window: Fraction


def lattice_check(ds: DeltaSet, window):
    window = Fraction(window)
    if ds.window < 3 * window:
        raise ValueError(f"delta computed with window {ds.window}, need at least {3 * window}")
    inside = ds.inside(window)
    basis = hermite_basis(sorted(inside))
    lattice = lattice_points(basis, window)
    if inside == lattice:
        return LatticeEvidence(basis, window)
    diff = (lattice - inside) | (inside - lattice)
    witness = min(diff, key=lambda p: (sup_norm(p), la.norm2(p), p))
    in_lattice = witness in lattice
    certified = in_lattice and not in_delta(ds.ns, witness)
    return NotLatticeEvidence(witness, in_lattice, certified, basis, window)


# --- emission ----------------------------------------------------------------

def rasterize(cloud: PointCloud, width: int, height: int) -> np.ndarray:
    """uint8 image (rows top to bottom): 0 where a point lands, 255 elsewhere.

    The bounding box is fitted with a uniform scale leaving a 5% margin on
    each side; 1-D clouds are drawn as a horizontal strip.
    """
    if len(cloud) == 0:
        raise EmptyCloud("cannot render an empty cloud")
    if cloud.dim not in (1, 2):
        raise ValueError("only 1-D and 2-D clouds can be rendered")
    pts = cloud.as_array()
    if cloud.dim == 1:
        pts = np.column_stack([pts[:, 0], np.zeros(len(pts))])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = hi - lo
    usable = 0.9 * np.array([width - 1, height - 1], dtype=float)
    scales = [usable[i] / span[i] for i in range(2) if span[i] > 0]
    scale = min(scales) if scales else 0.0
    centre = (lo + hi) / 2
    cols = np.floor((width - 1) / 2 + (pts[:, 0] - centre[0]) * scale + 0.5).astype(int)
    rows = np.floor((height - 1) / 2 - (pts[:, 1] - centre[1]) * scale + 0.5).astype(int)
    img = np.full((height, width), 255, dtype=np.uint8)
    img[np.clip(rows, 0, height - 1), np.clip(cols, 0, width - 1)] = 0
    return img


def render(cloud: PointCloud, width: int, height: int) -> bytes:
    """Binary PGM (P5, maxval 255)."""
    img = rasterize(cloud, width, height)
    return b"P5\n%d %d\n255\n" % (width, height) + img.tobytes()


def render_png(cloud: PointCloud, width: int, height: int) -> bytes:
    from PIL import Image

    buf = io.BytesIO()
    Image.fromarray(rasterize(cloud, width, height), mode="L").save(buf, format="PNG")
    return buf.getvalue()


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cloud_to_csv(cloud: PointCloud, exact: bool = True) -> str:
    lines = []
    for p in cloud.points:
        if exact:
            lines.append(",".join(format_rational(c) for c in p))
        else:
            lines.append(",".join(repr(float(c)) for c in p))
    return "\n".join(lines) + "\n"
