"""Exact checks of the fractional-part summation formula

    (A - I) sum_{i<n} {A^i x} = sum_{i=1}^{n} d_i + {A^n x} - {x}

and of its consequences (integer-part identity, Cesaro gap, centre of mass).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg_exact as la
from .errors import FormulaViolation
from .expand import (
    DigitString,
    check_valid,
    fractional_digit_sum,
    fractional_value,
    integer_value,
    scale,
    shift,
    value,
)
from .numsys import NumberSystem, digit_mean

MAX_N = 64


@dataclass(frozen=True)
class TheoremReport:
    n: int
    lhs: la.Vector
    digit_sum: tuple
    frac_n: la.Vector
    frac_0: la.Vector
    terms: tuple  # {A^i x}, i = 0..n-1
    holds: bool

    @property
    def rhs(self) -> la.Vector:
        return la.normalize(la.vec_sub(la.vec_add(self.digit_sum, self.frac_n), self.frac_0))


@dataclass(frozen=True)
class CorollaryReport:
    n: int
    lhs: la.Vector
    int_n: la.Vector
    int_0: la.Vector
    digit_sum: tuple
    terms: tuple  # [A^i x], i = 0..n-1
    holds: bool


def _check_n(n):
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must lie in 1..{MAX_N}")


def _fractional_terms(ns: NumberSystem, ds: DigitString, n: int) -> list:
    """{A^i x} for i = 0..n (n + 1 terms), computed two independent ways."""
    by_shift = [fractional_value(ns, shift(ds, i)) for i in range(n + 1)]
    # second route: A^i x minus the integer part accumulated digit by digit
    x = value(ns, ds)
    ipart = integer_value(ns, ds)
    ax = x
    for i in range(n + 1):
        if i:
            ax = la.mat_vec(ns.matrix, ax)
            ipart = la.vec_add(la.mat_vec(ns.matrix, ipart), ns.digits[ds.frac_digit(i)])
        direct = la.normalize(la.vec_sub(ax, ipart))
        if direct != by_shift[i]:
            raise FormulaViolation(
                f"{{A^{i} x}} disagrees between digit shift {by_shift[i]} and direct {direct}"
            )
    return by_shift


def verify_theorem(ns: NumberSystem, ds: DigitString, n: int) -> TheoremReport:
    """Evaluate both sides exactly. A failing identity raises FormulaViolation."""
    check_valid(ns, ds)
    _check_n(n)
    terms = _fractional_terms(ns, ds, n)
    total = (0,) * ns.dim
    for t in terms[:n]:
        total = la.vec_add(total, t)
    I = la.identity(ns.dim)
    lhs = la.normalize(la.mat_vec(la.mat_sub(ns.matrix, I), total))
    dsum = fractional_digit_sum(ns, ds, n)
    rhs = la.normalize(la.vec_sub(la.vec_add(dsum, terms[n]), terms[0]))
    report = TheoremReport(n, lhs, dsum, terms[n], terms[0], tuple(terms[:n]), lhs == rhs)
    if not report.holds:
        raise FormulaViolation(f"summation formula fails: {lhs} != {rhs}", report)
    return report


def verify_integer_corollary(ns: NumberSystem, ds: DigitString, n: int) -> CorollaryReport:
    """(A - I) sum_{i<n} [A^i x] = [A^n x] - [x] - sum_{i=1}^{n} d_i.

    [A^i x] is A^i x - {A^i x}; the right-hand integer parts are read off the
    digits, so the two sides share no code path beyond value().
    """
    check_valid(ns, ds)
    _check_n(n)
    x = value(ns, ds)
    terms = []
    ax = x
    for i in range(n):
        frac = fractional_value(ns, shift(ds, i))
        terms.append(la.normalize(la.vec_sub(ax, frac)))
        ax = la.mat_vec(ns.matrix, ax)
    total = (0,) * ns.dim
    for t in terms:
        total = la.vec_add(total, t)
    I = la.identity(ns.dim)
    lhs = la.normalize(la.mat_vec(la.mat_sub(ns.matrix, I), total))
    int_n = integer_value(ns, scale(ds, n))
    int_0 = integer_value(ns, ds)
    dsum = fractional_digit_sum(ns, ds, n)
    rhs = la.normalize(la.vec_sub(la.vec_sub(int_n, int_0), dsum))
    report = CorollaryReport(n, lhs, int_n, int_0, dsum, tuple(terms), lhs == rhs)
    if not report.holds:
        raise FormulaViolation(f"integer-part identity fails: {lhs} != {rhs}", report)
    return report


def cesaro_gap(ns: NumberSystem, ds: DigitString, n: int) -> la.Vector:
    """(A - I)(1/n) sum {A^i x} - (1/n) sum d_i, which equals ({A^n x} - {x}) / n."""
    rep = verify_theorem(ns, ds, n)
    gap = la.vec_scale(Fraction(1, n), la.vec_sub(rep.lhs, rep.digit_sum))
    assert gap == la.vec_scale(Fraction(1, n), la.vec_sub(rep.frac_n, rep.frac_0))
    return la.normalize(gap)


def center_of_mass(ns: NumberSystem) -> la.Vector:
    """(A - I)^{-1} (mean digit).

    Each digit occurs with frequency 1/q under the uniform measure on the
    tile; for two digits this reduces to (1/2)(A - I)^{-1} d.
    """
    return la.normalize(la.mat_vec(ns.a_minus_i_inv, digit_mean(ns)))


def depth_average(ns: NumberSystem, k: int) -> la.Vector:
    """Closed form for the mean of all depth-k partial sums: (sum_{i=1}^k A^{-i}) mean(D)."""
    S = la.geometric_sum(ns.a_inv, k + 1)
    S = la.mat_sub(S, la.identity(ns.dim))
    return la.normalize(la.mat_vec(S, digit_mean(ns)))


def depth_discrepancy(ns: NumberSystem, k: int) -> la.Vector:
    """(sum_{i>k} A^{-i}) mean(D) = A^{-k} (A - I)^{-1} mean(D)."""
    return la.normalize(la.mat_vec(la.mat_pow(ns.a_inv, k), center_of_mass(ns)))


def report_csv_header(dim: int) -> str:
    cols = ["n"]
    for name in ("lhs", "digit_sum", "frac_n", "frac_0"):
        cols += [f"{name}_{j}" for j in range(dim)]
    cols.append("holds")
    return ",".join(cols)


def report_csv_row(report: TheoremReport) -> str:
    from .tiles import format_rational

    cells = [str(report.n)]
    for vec in (report.lhs, report.digit_sum, report.frac_n, report.frac_0):
        cells += [format_rational(c) for c in vec]
    cells.append("true" if report.holds else "false")
    return ",".join(cells)
