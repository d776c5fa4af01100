"""Digit strings and the fractional expansion x -> A x - d.

Integer and fractional parts depend on the chosen expansion: 1 written as
0.(1) has fractional part 1, written as 1. it has fractional part 0. The two
expansions 1.01 and 1.00(1) of 5/4 share {x} but not {2^n x} for n >= 2.
"""
from fractions import Fraction

from fracsum import expand, numsys
from fracsum.expand import DigitString

b2 = numsys.binary()
for text in ("0.(1)", "1.", "1.01", "1.00(1)"):
    ds = DigitString.parse(text)
    s = expand.split(b2, ds)
    print(f"{text:8s} value={expand.value(b2, ds)[0]}  [x]={s.integer_part[0]}  {{x}}={s.fractional_part[0]}")

for text in ("1.01", "1.00(1)"):
    print(f"{text:8s} {{2^i x}}:", [str(v[0]) for v in expand.orbit(b2, DigitString.parse(text), 4)])

# the doubling orbit of 5/31
ds = expand.expand_fractional(b2, (Fraction(5, 31),), 20)
print("5/31 =", ds, " orbit:", [str(v[0]) for v in expand.orbit(b2, ds, 5)])

# a point of the dragon tile, expanded and read back
hw = numsys.heighway()
x = expand.value(hw, DigitString.parse("0.1101"))
ds = expand.expand_fractional(hw, x, 10)
print("heighway", tuple(str(c) for c in x), "->", ds, "->", tuple(str(c) for c in expand.value(hw, ds)))
