"""Exact rational linear algebra on small square matrices.

Matrices are tuples of row tuples and vectors are tuples. Entries are Python
ints or :class:`fractions.Fraction`; nothing here ever rounds.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Sequence, Tuple

from .errors import BoundaryEigenvalue, SingularMatrix

Vector = Tuple[Rational, ...]
Matrix = Tuple[Vector, ...]

MAX_DIM = 8


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    m = tuple(tuple(_exact(v) for v in row) for row in rows)
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise ValueError("matrix must be square and non-empty")
    return m


def as_vector(values) -> Vector:
    if isinstance(values, (int, Fraction)):
        values = (values,)
    return tuple(_exact(v) for v in values)


def _exact(v):
    if isinstance(v, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, str):
        return _exact(Fraction(v))
    if isinstance(v, Rational):
        return _exact(Fraction(v.numerator, v.denominator))
    raise TypeError(f"inexact entry {v!r}; use int, Fraction or 'p/q' strings")


def identity(m: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(m)) for i in range(m))


def zeros(m: int) -> Matrix:
    return tuple((0,) * m for _ in range(m))


def dim(M: Matrix) -> int:
    return len(M)


def mat_add(X: Matrix, Y: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(X, Y))


def mat_sub(X: Matrix, Y: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(X, Y))


def mat_scale(c, X: Matrix) -> Matrix:
    return tuple(tuple(c * a for a in r) for r in X)


def mat_mul(X: Matrix, Y: Matrix) -> Matrix:
    cols = tuple(zip(*Y))
    return tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in X)


def mat_vec(X: Matrix, v: Sequence) -> Vector:
    return tuple(sum(a * b for a, b in zip(r, v)) for r in X)


def mat_pow(X: Matrix, n: int) -> Matrix:
    if n < 0:
        return mat_pow(inverse(X), -n)
    result = identity(len(X))
    base = X
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        n >>= 1
    return result


def transpose(X: Matrix) -> Matrix:
    return tuple(zip(*X))


def vec_add(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v) -> Vector:
    return tuple(c * a for a in v)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def is_integral(v) -> bool:
    return all(Fraction(a).denominator == 1 for a in v)


def normalize(v) -> Vector:
    """Collapse integral Fractions to ints so equal vectors hash alike."""
    return tuple(_exact(a) for a in v)


def determinant(M: Matrix) -> Rational:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if any(isinstance(a, Fraction) and a.denominator != 1 for r in M for a in r):
        # clear denominators, then rescale
        lcm = reduce(_lcm, (Fraction(a).denominator for r in M for a in r), 1)
        return Fraction(determinant(mat_scale(lcm, M)), lcm**n)
    a = [[int(x) for x in r] for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def inverse(M: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n = len(M)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        a[c], a[pivot] = a[pivot], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(normalize(row[n:]) for row in a)


def adjugate(M: Matrix) -> Matrix:
    """det(M) * inverse(M); integral whenever M is."""
    det = determinant(M)
    return tuple(normalize(vec_scale(det, r)) for r in inverse(M))


def char_poly(M: Matrix) -> list:
    """Monic characteristic polynomial, highest degree first (Faddeev-LeVerrier)."""
    n = len(M)
    coeffs = [1]
    Mk = zeros(n)
    I = identity(n)
    c = 1
    for k in range(1, n + 1):
        Mk = mat_mul(M, mat_add(Mk, mat_scale(c, I)))
        c = Fraction(-sum(Mk[i][i] for i in range(n)), k)
        coeffs.append(_exact(c))
    return coeffs


def poly_at_matrix(coeffs: Sequence, M: Matrix) -> Matrix:
    """Horner evaluation of a polynomial (highest degree first) at a matrix."""
    n = len(M)
    acc = zeros(n)
    for c in coeffs:
        acc = mat_add(mat_mul(acc, M), mat_scale(c, identity(n)))
    return acc


# --- polynomial helpers; lists are lowest degree first ------------------------

def _trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list):
    a = [Fraction(x) for x in _trim(a)]
    b = [Fraction(x) for x in _trim(b)]
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, bi in enumerate(b):
            a[i + shift] -= f * bi
        a = _trim(a)
        if len(a) == 1 and a[0] == 0:
            break
    return q, a


def _poly_gcd(a: list, b: list) -> list:
    a, b = _trim(a), _trim(b)
    while not (len(b) == 1 and b[0] == 0):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lead = Fraction(a[-1])
    return [Fraction(x) / lead for x in a]


def _poly_eval(p: list, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_deriv(p: list) -> list:
    return [i * c for i, c in enumerate(p)][1:] or [0]


def schur_cohn_inside(p: list) -> bool:
    """True iff every root of p (lowest degree first) lies strictly inside |z| < 1."""
    a = _trim(p)
    while len(a) > 1:
        a0, an = a[0], a[-1]
        if abs(a0) >= abs(an):
            return False
        n = len(a) - 1
        a = [an * a[i] - a0 * a[n - i] for i in range(1, n + 1)]
    return a[0] != 0


def _sturm_count(h: list, lo, hi) -> int:
    """Distinct real roots of h in (lo, hi]; h(lo), h(hi) nonzero."""
    chain = [_trim(h), _trim(_poly_deriv(h))]
    while not (len(chain[-1]) == 1 and chain[-1][0] == 0):
        _, r = _poly_divmod(chain[-2], chain[-1])
        chain.append([-x for x in r])
    chain.pop()

    def changes(x):
        vals = [v for v in (_poly_eval(p, x) for p in chain) if v != 0]
        return sum(1 for u, v in zip(vals, vals[1:]) if (u < 0) != (v < 0))

    return changes(lo) - changes(hi)


def has_unit_circle_root(p: list) -> bool:
    """Exact test for a root of modulus one (real coefficients, lowest first)."""
    p = _trim([Fraction(c) for c in p])
    if len(p) == 1:
        return False
    if _poly_eval(p, 1) == 0 or _poly_eval(p, -1) == 0:
        return True
    # unit-circle roots are common roots of p and its reciprocal
    g = _poly_gcd(p, list(reversed(p)))
    deg = len(g) - 1
    if deg == 0:
        return False
    k, rem = divmod(deg, 2)
    if rem or any(g[i] != g[deg - i] for i in range(deg + 1)):
        raise AssertionError("reciprocal gcd is not palindromic")
    # g(z) / z^k = h(z + 1/z); unit roots <-> real roots of h in (-2, 2)
    h = [g[k]]
    q_prev, q_cur = [Fraction(2)], [Fraction(0), Fraction(1)]
    for j in range(1, k + 1):
        h = _poly_add(h, [g[k + j] * c for c in q_cur])
        q_prev, q_cur = q_cur, _poly_sub([0] + q_cur, q_prev)
    return _sturm_count(_trim(h), Fraction(-2), Fraction(2)) > 0


def _poly_add(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def _poly_sub(a, b):
    return _poly_add(a, [-x for x in b])


def is_expanding(M: Matrix) -> bool:
    """Decide exactly whether every eigenvalue of M has modulus > 1.

    Runs the Schur-Cohn recursion on the reversed characteristic polynomial,
    whose roots are the reciprocals of the eigenvalues.

    Raises:
        BoundaryEigenvalue: an eigenvalue lies exactly on the unit circle.
    """
    cp = char_poly(M)  # highest first
    if cp[-1] == 0:  # zero eigenvalue; the reversed polynomial would lose degree
        return False
    reversed_lowest_first = list(cp)  # z^m p(1/z), lowest first = p highest first
    if schur_cohn_inside(reversed_lowest_first):
        return True
    if has_unit_circle_root(list(reversed(cp))):
        raise BoundaryEigenvalue("an eigenvalue has modulus exactly 1")
    return False


def geometric_sum(M: Matrix, n: int, closed_form: bool = False) -> Matrix:
    """Sum of M^i for i = 0..n-1.

    The closed form (M - I)^{-1}(M^n - I) needs M - I invertible.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    m = len(M)
    if closed_form:
        I = identity(m)
        return tuple(normalize(r) for r in mat_mul(inverse(mat_sub(M, I)), mat_sub(mat_pow(M, n), I)))
    acc, power = zeros(m), identity(m)
    for _ in range(n):
        acc = mat_add(acc, power)
        power = mat_mul(power, M)
    return tuple(normalize(r) for r in acc)


def norm2(v):
    """Exact squared Euclidean norm."""
    return sum(a * a for a in v)
