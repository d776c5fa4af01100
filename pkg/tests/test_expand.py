from fractions import Fraction as F

import numpy as np
import pytest

from fracsum import expand
from fracsum import linalg_exact as la
from fracsum.errors import CycleDetected, ExpansionError, NoAdmissibleDigit, OutsideTileBall
from fracsum.expand import DigitString

P = DigitString.parse


@pytest.mark.parametrize(
    "text, int_len, pre, period",
    [("101.", 3, (1, 0, 1), ()), ("1.00(1)", 1, (1, 0, 0), (1,)), ("0.(011)", 0, (), (0, 1, 1)), ("00.1", 0, (1,), ()),
     (".01", 0, (0, 1), ()), ("1,12.0,3(4,11)", 2, (1, 12, 0, 3), (4, 11)), ("1.0(0)", 1, (1, 0), ())],
)
def test_parse(text, int_len, pre, period):
    ds = P(text)
    assert (ds.int_len, ds.preperiod, ds.period) == (int_len, pre, period)


@pytest.mark.parametrize("bad", ["", "1(2)", "1.2)", "a.1", "1.,,2", "1.2(3", ",1.2"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        P(bad)


def test_str_roundtrip():
    for text in ["101.", "1.00(1)", "0.(011)", "1,12.0,3(4,11)"]:
        assert P(str(P(text))) == P(text)
    assert str(DigitString(0, (1, 1))) == "0.11"


def test_value_examples(base2, heighway):
    assert expand.value(base2, P("1.01")) == (F(5, 4),)
    assert expand.value(base2, P("1.00(1)")) == (F(5, 4),)
    assert expand.value(base2, P("0.(011)")) == (F(3, 7),)
    assert expand.value(base2, P("0.(1)")) == (1,)
    assert expand.value(heighway, P("0.000")) == (0, 0)


def test_split_examples(base2):
    s = expand.split(base2, P("0.(1)"))
    assert (s.integer_part, s.fractional_part) == ((0,), (1,))
    s = expand.split(base2, P("1.000"))
    assert (s.integer_part, s.fractional_part) == ((1,), (0,))
    s = expand.split(base2, P("1.01"))
    assert (s.integer_part, s.fractional_part) == ((1,), (F(1, 4),))


def test_shift_examples(base2):
    s = expand.shift(P("0.(011)"), 1)
    assert s == P("0.(110)") and expand.value(base2, s) == (F(6, 7),)
    assert expand.value(base2, expand.shift(P("0.(00101)"), 2)) == (F(20, 31),)
    assert expand.shift(P("11.01(10)"), 0) == P("0.01(10)")
    orbit = [expand.value(base2, expand.shift(P("0.(00101)"), i))[0] for i in range(6)]
    assert orbit == [F(5, 31), F(10, 31), F(20, 31), F(9, 31), F(18, 31), F(5, 31)]


def test_invalid_digit_index(base2):
    with pytest.raises(ExpansionError):
        expand.value(base2, P("0.2"))


def test_expand_integer_examples(base2, heighway, base3):
    assert expand.expand_integer(base2, (5,)) == P("101.")
    assert expand.expand_integer(heighway, (1, 0)) == P("1.")
    with pytest.raises(CycleDetected) as info:
        expand.expand_integer(base2, (-1,))
    assert info.value.cycle == [(-1,), (-1,)]
    for z in range(-30, 31):
        try:
            ds = expand.expand_integer(base3, (z,))
        except CycleDetected:
            continue
        assert expand.value(base3, ds) == (z,)


def test_expand_fractional_examples(base2, base10, heighway):
    assert expand.expand_fractional(base2, (F(3, 7),), 6) == P("0.(011)")
    assert expand.expand_fractional(base10, (F(1, 8),), 4).frac_digits[:3] == (1, 2, 5)
    x = expand.value(heighway, P("0.101"))
    ds = expand.expand_fractional(heighway, x, 3)
    assert ds.frac_digits[:3] == (1, 0, 1)
    assert expand.value(heighway, ds) == x


def test_expand_fractional_errors(base2):
    with pytest.raises(OutsideTileBall):
        expand.expand_fractional(base2, (F(5),), 4)
    with pytest.raises(NoAdmissibleDigit):
        expand.expand_fractional(base2, (F(-1, 3),), 4)


def test_floor_expansion_in_base10(base10):
    # oracle: long division
    for p in range(1, 40):
        x = F(p, 41)
        ds = expand.expand_fractional(base10, (x,), 20)
        r, digits = x, []
        for _ in range(5):
            r *= 10
            digits.append(int(r))
            r -= int(r)
        assert [ds.frac_digit(i) for i in range(1, 6)] == digits


def test_fractional_roundtrip(systems):
    rng = np.random.default_rng(3)
    for ns in systems.values():
        for _ in range(25):
            ds = expand.random_digit_string(rng, ns.q, max_int=0, max_frac=12, max_period=0)
            x = expand.fractional_value(ns, ds)
            out = expand.expand_fractional(ns, x, 40)
            assert expand.value(ns, out) == x


def test_split_coherence(systems):
    rng = np.random.default_rng(5)
    for ns in systems.values():
        for _ in range(40):
            ds = expand.random_digit_string(rng, ns.q)
            s = expand.split(ns, ds)
            assert la.is_integral(s.integer_part)
            assert la.normalize(la.vec_add(s.integer_part, s.fractional_part)) == expand.value(ns, ds)


def test_shift_semantics(systems):
    # {A^n x} = A^n x - (integer part of the scaled string), computed by Horner
    rng = np.random.default_rng(8)
    for ns in systems.values():
        for _ in range(25):
            ds = expand.random_digit_string(rng, ns.q)
            x = expand.value(ns, ds)
            for n in range(9):
                direct = la.vec_sub(la.mat_vec(la.mat_pow(ns.matrix, n), x),
                                    expand.integer_value(ns, expand.scale(ds, n)))
                assert la.normalize(direct) == expand.fractional_value(ns, expand.shift(ds, n))


def test_period_folding(systems):
    rng = np.random.default_rng(9)
    for ns in systems.values():
        for p in range(1, 5):
            block = tuple(int(v) for v in rng.integers(0, ns.q, size=p))
            x = expand.value(ns, DigitString(0, (), block))
            head = expand.value(ns, DigitString(0, block))
            assert la.normalize(la.vec_add(la.mat_vec(la.mat_pow(ns.a_inv, p), x), head)) == x
