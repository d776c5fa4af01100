"""Standard number systems (A, D): an expanding integer matrix with a complete
residue set of digits containing the origin."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import linalg_exact as la
from .errors import (
    BoundaryEigenvalue,
    DuplicateResidue,
    MissingZeroDigit,
    NotExpanding,
    NumberSystemError,
    SingularAMinusI,
    SingularMatrix,
    WrongDigitCount,
)

MAX_DIGITS = 256


@dataclass(frozen=True)
class NumberSystem:
    """A validated pair (A, D). Build it with :func:`validate`.

    Digits are identified by index; index 0 is always the zero vector.
    """

    matrix: la.Matrix
    digits: tuple
    name: str = ""
    det: int = field(compare=False, default=0)
    a_inv: la.Matrix = field(compare=False, default=(), repr=False)
    a_minus_i_inv: la.Matrix = field(compare=False, default=(), repr=False)
    _adj: la.Matrix = field(compare=False, default=(), repr=False)
    _residues: tuple = field(compare=False, default=(), repr=False)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def q(self) -> int:
        return len(self.digits)

    def residue_key(self, z) -> tuple:
        q = abs(self.det)
        return tuple(c % q for c in la.mat_vec(self._adj, z))

    def __str__(self):
        label = self.name or "number system"
        return f"{label}: A={[list(r) for r in self.matrix]}, D={[list(d) for d in self.digits]}"


def _as_digit(d, m):
    v = la.as_vector(d)
    if len(v) != m:
        raise NumberSystemError(f"digit {d!r} does not have dimension {m}")
    if not la.is_integral(v):
        raise NumberSystemError(f"digit {d!r} is not an integer vector")
    return tuple(int(c) for c in v)


def validate(A, D: Sequence, name: str = "") -> NumberSystem:
    """Check the number-system conditions and return an immutable NumberSystem.

    ``A`` may be an int (1-D) or a square nested sequence of ints; digits may be
    ints (1-D) or integer vectors. The zero digit is moved to index 0, other
    digits keep their relative order.
    """
    if isinstance(A, int):
        A = [[A]]
    A = la.as_matrix(A)
    m = len(A)
    if m > la.MAX_DIM:
        raise NumberSystemError(f"dimension {m} exceeds the cap of {la.MAX_DIM}")
    if not all(isinstance(a, int) for row in A for a in row):
        raise NumberSystemError("A must have integer entries")
    digits = [_as_digit(d, m) for d in D]

    try:
        expanding = la.is_expanding(A)
    except BoundaryEigenvalue as exc:
        raise NotExpanding(f"A is not expanding: {exc}") from exc
    if not expanding:
        raise NotExpanding("A has an eigenvalue of modulus < 1")

    det = int(la.determinant(A))
    q = abs(det)
    if q > MAX_DIGITS:
        raise NumberSystemError(f"|det A| = {q} exceeds the cap of {MAX_DIGITS}")
    if len(digits) != q:
        raise WrongDigitCount(f"|D| = {len(digits)} but |det A| = {q}")
    zero = (0,) * m
    if zero not in digits:
        raise MissingZeroDigit("the digit set must contain the origin")
    digits.remove(zero)
    digits.insert(0, zero)

    adj = la.adjugate(A)
    keys = {}
    for i, d in enumerate(digits):
        key = tuple(c % q for c in la.mat_vec(adj, d))
        if key in keys:
            j = keys[key]
            raise DuplicateResidue(j, i, digits[j], d)
        keys[key] = i

    try:
        a_minus_i_inv = la.inverse(la.mat_sub(A, la.identity(m)))
    except SingularMatrix as exc:
        raise SingularAMinusI("A - I is singular") from exc

    return NumberSystem(
        matrix=A,
        digits=tuple(digits),
        name=name,
        det=det,
        a_inv=la.inverse(A),
        a_minus_i_inv=a_minus_i_inv,
        _adj=adj,
        _residues=tuple(sorted(keys.items())),
    )


def residue_index(ns: NumberSystem, z) -> int:
    """Index of the unique digit congruent to ``z`` modulo A Z^m."""
    table = _residue_table(ns)
    return table[ns.residue_key(tuple(z))]


@lru_cache(maxsize=None)
def _residue_table(ns: NumberSystem) -> dict:
    return dict(ns._residues)


@lru_cache(maxsize=None)
def inv_a_power_minus_i(ns: NumberSystem, p: int) -> la.Matrix:
    """(A^p - I)^{-1}; always exists because A is expanding."""
    return la.inverse(la.mat_sub(la.mat_pow(ns.matrix, p), la.identity(ns.dim)))


@lru_cache(maxsize=None)
def a_power(ns: NumberSystem, k: int) -> la.Matrix:
    return la.mat_pow(ns.matrix, k)


def digit_mean(ns: NumberSystem) -> la.Vector:
    from fractions import Fraction

    return la.normalize(tuple(Fraction(sum(c), ns.q) for c in zip(*ns.digits)))


# --- the five systems used throughout the tests and demos ---------------------

def binary() -> NumberSystem:
    return validate(2, [0, 1], name="base2")


def decimal() -> NumberSystem:
    return validate(10, list(range(10)), name="base10")


def base3_neg() -> NumberSystem:
    """A = 3 with digits {-5, 0, 20}; its difference set is 5Z."""
    return validate(3, [-5, 0, 20], name="base3_neg")


def lai_wang() -> NumberSystem:
    """A 2-D system whose difference set is not a lattice."""
    return validate([[2, 1], [0, 2]], [(0, 0), (3, 0), (0, 1), (3, 1)], name="lai_wang")


def heighway() -> NumberSystem:
    """Two-digit planar system whose tile is the Heighway dragon."""
    return validate([[-1, 1], [-1, -1]], [(0, 0), (1, 0)], name="heighway")


def example_systems() -> dict:
    return {ns.name: ns for ns in (binary(), decimal(), base3_neg(), lai_wang(), heighway())}
