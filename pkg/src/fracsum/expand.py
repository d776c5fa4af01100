"""Digit strings, their exact values and expansion-dependent integer and
fractional parts, plus the two expansion algorithms."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import linalg_exact as la
from .errors import (
    CycleDetected,
    ExpansionError,
    NoAdmissibleDigit,
    OutsideTileBall,
    StepLimitExceeded,
)
from .numsys import NumberSystem, inv_a_power_minus_i, residue_index


@dataclass(frozen=True)
class DigitString:
    """Digit indices d_{-l} .. d_0 d_1 d_2 ... with an optional repeating tail.

    ``preperiod`` holds the ``int_len`` integer digits (most significant
    first) followed by fractional digits; ``period`` repeats forever after
    it. An empty period means the tail is all zero digits.
    """

    int_len: int = 0
    preperiod: tuple = ()
    period: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(int(i) for i in self.preperiod))
        object.__setattr__(self, "period", tuple(int(i) for i in self.period))
        if self.int_len < 0 or self.int_len > len(self.preperiod):
            raise ValueError("int_len must lie between 0 and len(preperiod)")
        if any(i < 0 for i in self.preperiod + self.period):
            raise ValueError("digit indices are non-negative")
        if self.period and not any(self.period):
            object.__setattr__(self, "period", ())
        lead = 0
        while lead < self.int_len and self.preperiod[lead] == 0:
            lead += 1
        if lead:  # leading zero digits of the integer part carry no value
            object.__setattr__(self, "int_len", self.int_len - lead)
            object.__setattr__(self, "preperiod", self.preperiod[lead:])

    @property
    def int_digits(self) -> tuple:
        return self.preperiod[: self.int_len]

    @property
    def frac_digits(self) -> tuple:
        return self.preperiod[self.int_len :]

    def frac_digit(self, i: int) -> int:
        """Fractional digit at position i >= 1."""
        head = self.frac_digits
        if i <= len(head):
            return head[i - 1]
        if not self.period:
            return 0
        return self.period[(i - len(head) - 1) % len(self.period)]

    def max_index(self) -> int:
        return max(self.preperiod + self.period, default=0)

    @classmethod
    def parse(cls, text: str) -> "DigitString":
        """Parse ``"101."``, ``"1.00(1)"``, ``"0.(011)"`` or, with commas,
        ``"1,12.0,3(4,11)"``."""
        s = text.strip().replace(" ", "")
        m = re.fullmatch(r"([0-9,]*)(?:\.([0-9,]*))?(?:\(([0-9,]+)\))?", s)
        if not m or s == "" or (m.group(2) is None and m.group(3) is not None):
            raise ValueError(f"malformed digit string {text!r}")
        comma = "," in s

        def digits(part):
            if not part:
                return ()
            if comma:
                items = part.split(",")
                if any(x == "" for x in items):
                    raise ValueError(f"malformed digit string {text!r}")
                return tuple(int(x) for x in items)
            return tuple(int(c) for c in part)

        ints, fracs, block = digits(m.group(1)), digits(m.group(2)), digits(m.group(3))
        return cls(len(ints), ints + fracs, block)

    def __str__(self):
        comma = self.max_index() > 9
        join = ",".join if comma else "".join

        def fmt(ds):
            return join(str(i) for i in ds)

        out = (fmt(self.int_digits) or "0") + "." + fmt(self.frac_digits)
        if self.period:
            out += "(" + fmt(self.period) + ")"
        return out


def check_valid(ns: NumberSystem, ds: DigitString) -> None:
    if ds.max_index() >= ns.q:
        raise ExpansionError(f"digit index {ds.max_index()} out of range for q = {ns.q}")


def _horner_int(ns, indices, start=None):
    v = start if start is not None else (0,) * ns.dim
    for i in indices:
        v = la.vec_add(la.mat_vec(ns.matrix, v), ns.digits[i])
    return v


def _period_value(ns: NumberSystem, period: tuple) -> la.Vector:
    """Value of 0.(period): (A^p - I)^{-1} sum_j A^{p-j} b_j."""
    if not period:
        return (0,) * ns.dim
    return la.mat_vec(inv_a_power_minus_i(ns, len(period)), _horner_int(ns, period))


def fractional_value(ns: NumberSystem, ds: DigitString) -> la.Vector:
    y = _period_value(ns, ds.period)
    for i in reversed(ds.frac_digits):
        y = la.mat_vec(ns.a_inv, la.vec_add(y, ns.digits[i]))
    return la.normalize(y)


def integer_value(ns: NumberSystem, ds: DigitString) -> la.Vector:
    return _horner_int(ns, ds.int_digits)


def value(ns: NumberSystem, ds: DigitString) -> la.Vector:
    """Exact value sum_i A^{-i} d_i, periodic tail summed in closed form."""
    check_valid(ns, ds)
    return la.normalize(la.vec_add(integer_value(ns, ds), fractional_value(ns, ds)))


@dataclass(frozen=True)
class SplitValue:
    integer_part: la.Vector
    fractional_part: la.Vector


def split(ns: NumberSystem, ds: DigitString) -> SplitValue:
    check_valid(ns, ds)
    return SplitValue(integer_value(ns, ds), fractional_value(ns, ds))


def scale(ds: DigitString, n: int) -> DigitString:
    """The same digits read as an expansion of A^n x: n fractional digits
    move into the integer part."""
    if n < 0:
        raise ValueError("n must be non-negative")
    head = ds.frac_digits
    period = ds.period
    if len(head) < n:
        missing = n - len(head)
        if period:
            p = len(period)
            head = head + (period * (missing // p + 1))[:missing]
            r = missing % p
            period = period[r:] + period[:r]
        else:
            head = head + (0,) * missing
    return DigitString(ds.int_len + n, ds.int_digits + head, period)


def shift(ds: DigitString, n: int) -> DigitString:
    """Drop n leading fractional digits; the value is {A^n x} under ds."""
    scaled = scale(ds, n)
    return DigitString(0, scaled.frac_digits, scaled.period)


def orbit(ns: NumberSystem, ds: DigitString, n: int) -> list:
    """[{A^i x} for i in 0..n-1] under the expansion ds."""
    check_valid(ns, ds)
    return [fractional_value(ns, shift(ds, i)) for i in range(n)]


def expand_integer(ns: NumberSystem, z, max_steps: int = 10_000) -> DigitString:
    """Radix expansion of an integer vector by repeated division by A."""
    z = tuple(int(c) for c in z)
    zero = (0,) * ns.dim
    digits = []
    seen = {z: 0}
    path = [z]
    for _ in range(max_steps):
        if z == zero:
            digits.reverse()
            return DigitString(len(digits), tuple(digits))
        i = residue_index(ns, z)
        digits.append(i)
        z = tuple(int(c) for c in la.mat_vec(ns.a_inv, la.vec_sub(z, ns.digits[i])))
        if z in seen:
            raise CycleDetected(path[seen[z]:] + [z])
        seen[z] = len(path)
        path.append(z)
    raise StepLimitExceeded(f"no termination within {max_steps} steps")


def _alive_states(ns: NumberSystem, x, radius2: Fraction, max_states: int):
    """States reachable from x by y -> A y - d inside the ball, restricted to
    those with an infinite continuation (exactly the points of the tile)."""
    succ = {}
    stack = [x]
    succ[x] = None
    order = []
    while stack:
        y = stack.pop()
        order.append(y)
        Ay = la.mat_vec(ns.matrix, y)
        out = []
        for i, d in enumerate(ns.digits):
            w = la.normalize(la.vec_sub(Ay, d))
            if la.norm2(w) <= radius2:
                out.append((i, w))
                if w not in succ:
                    succ[w] = None
                    stack.append(w)
                    if len(succ) > max_states:
                        raise ExpansionError("state space too large for exact expansion")
        succ[y] = out
    alive = set(succ)
    changed = True
    while changed:
        changed = False
        for y in list(alive):
            if not any(w in alive for _, w in succ[y]):
                alive.discard(y)
                changed = True
    return succ, alive


def expand_fractional(ns: NumberSystem, x, n_digits: int, max_states: int = 200_000) -> DigitString:
    """Expansion of a rational point x of the tile by the map y -> A y - d.

    A digit is admissible when the next state still lies in the tile, which is
    decided exactly: the rational states reachable inside the certified outer
    ball form a finite graph, and a state is in the tile iff it starts an
    infinite path. Among admissible digits the one with the smallest next
    state (Euclidean norm) wins, ties to the lowest index; in 1-D with
    digits 0..q-1 this is the usual floor expansion. A revisited state
    closes the period.

    If no state repeats within ``n_digits`` steps the first ``n_digits``
    digits are returned with an all-zero tail (a truncation).
    """
    from .tiles import outer_radius

    x = la.normalize(la.as_vector(x))
    if len(x) != ns.dim:
        raise ValueError(f"point has dimension {len(x)}, expected {ns.dim}")
    radius = outer_radius(ns).bound
    r2 = radius * radius
    if la.norm2(x) > r2:
        raise OutsideTileBall(f"{x} lies outside the certified ball of radius {float(radius):.6g}")
    succ, alive = _alive_states(ns, x, r2, max_states)
    if x not in alive:
        raise NoAdmissibleDigit(f"{x} is not a point of the tile")
    digits = []
    seen = {}
    y = x
    for step in range(n_digits):
        if y in seen:
            start = seen[y]
            return DigitString(0, tuple(digits[:start]), tuple(digits[start:]))
        seen[y] = step
        choices = [(la.norm2(w), i, w) for i, w in succ[y] if w in alive]
        _, i, y = min(choices, key=lambda c: (c[0], c[1]))
        digits.append(i)
    if y in seen:
        start = seen[y]
        return DigitString(0, tuple(digits[:start]), tuple(digits[start:]))
    return DigitString(0, tuple(digits))


def parse_rational_vector(text: str) -> la.Vector:
    """``"1/2,-3/4"`` -> (Fraction(1, 2), Fraction(-3, 4))."""
    try:
        return la.normalize(tuple(Fraction(p.strip()) for p in text.split(",")))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational vector {text!r}") from exc


def digit_vectors(ns: NumberSystem, indices) -> list:
    return [ns.digits[i] for i in indices]


def fractional_digit_sum(ns: NumberSystem, ds: DigitString, n: int) -> tuple:
    """sum_{i=1}^{n} d_i as an integer vector."""
    acc = (0,) * ns.dim
    for i in range(1, n + 1):
        acc = la.vec_add(acc, ns.digits[ds.frac_digit(i)])
    return acc


def random_digit_string(rng, q: int, max_int: int = 3, max_frac: int = 12, max_period: int = 4,
                        int_len: Optional[int] = None) -> DigitString:
    """Random string for property tests; ``rng`` is a numpy Generator."""
    il = int(rng.integers(0, max_int + 1)) if int_len is None else int_len
    nf = int(rng.integers(0, max_frac + 1))
    np_ = int(rng.integers(0, max_period + 1))
    digits = tuple(int(v) for v in rng.integers(0, q, size=il + nf))
    period = tuple(int(v) for v in rng.integers(0, q, size=np_))
    return DigitString(il, digits, period)
