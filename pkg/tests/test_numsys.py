from fractions import Fraction as F

import numpy as np
import pytest

from fracsum import linalg_exact as la
from fracsum import numsys
from fracsum.errors import (
    DuplicateResidue,
    MissingZeroDigit,
    NotExpanding,
    NumberSystemError,
    WrongDigitCount,
)


def test_accepts_the_five_systems(systems):
    assert sorted(systems) == ["base10", "base2", "base3_neg", "heighway", "lai_wang"]
    assert {k: ns.q for k, ns in systems.items()} == {
        "base2": 2, "base10": 10, "base3_neg": 3, "heighway": 2, "lai_wang": 4}
    for ns in systems.values():
        assert ns.digits[0] == (0,) * ns.dim
        assert la.mat_mul(ns.matrix, ns.a_inv) == la.identity(ns.dim)


def test_zero_digit_moved_to_front(base3):
    assert base3.digits == ((0,), (-5,), (20,))


def test_heighway_valid(heighway):
    assert heighway.q == 2 and heighway.digits == ((0, 0), (1, 0))


@pytest.mark.parametrize(
    "A, D, exc",
    [
        (2, [0, 2], DuplicateResidue),
        (2, [0, 1, 3], WrongDigitCount),
        (2, [1, 3], MissingZeroDigit),
        (1, [0], NotExpanding),
        ([[1, 0], [0, 2]], [(0, 0), (0, 1)], NotExpanding),
        ([[2, 1], [1, 1]], [(0, 0)], NotExpanding),
        ([[-1, 1], [-1, -1]], [(0, 0), (2, 0)], DuplicateResidue),
        ([[2, 1], [0, 2]], [(0, 0), (3, 0), (0, 1), (1, 0)], DuplicateResidue),
        (3, [-5, 0, 21], DuplicateResidue),
        ([[2, 0], [0, 2]], [(0, 0), (1,), (0, 1), (1, 1)], NumberSystemError),
    ],
)
def test_rejections(A, D, exc):
    with pytest.raises(exc):
        numsys.validate(A, D)


def test_duplicate_residue_names_pair():
    with pytest.raises(DuplicateResidue) as info:
        numsys.validate(3, [0, 1, 4])
    assert (info.value.i, info.value.j) == (1, 2)
    assert "(1,)" in str(info.value) and "(4,)" in str(info.value)


def test_caps():
    with pytest.raises(NumberSystemError):
        numsys.validate(300, list(range(300)))


def test_residue_index_examples(base2, base3, heighway):
    assert base2.digits[numsys.residue_index(base2, (7,))] == (1,)
    assert base3.digits[numsys.residue_index(base3, (4,))] == (-5,)
    assert heighway.digits[numsys.residue_index(heighway, (1, 1))] == (0, 0)


def test_residue_index_unique_in_box(systems):
    # oracle: brute force A^{-1}(z - d) integrality over all digits
    rng = np.random.default_rng(11)
    for ns in systems.values():
        for _ in range(200):
            z = tuple(int(v) for v in rng.integers(-20, 21, size=ns.dim))
            hits = [i for i, d in enumerate(ns.digits)
                    if la.is_integral(la.mat_vec(ns.a_inv, la.vec_sub(z, d)))]
            assert hits == [numsys.residue_index(ns, z)]


def test_digit_mean_and_cached_inverses(heighway, base3):
    assert numsys.digit_mean(heighway) == (F(1, 2), 0)
    assert numsys.digit_mean(base3) == (5,)
    M = numsys.inv_a_power_minus_i(heighway, 3)
    A3 = la.mat_pow(heighway.matrix, 3)
    assert la.mat_mul(M, la.mat_sub(A3, la.identity(2))) == la.identity(2)
