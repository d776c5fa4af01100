"""Exact checks of (A - I) sum_{i<n} {A^i x} = sum d_i + {A^n x} - {x}.

Both worked 5/4 expansions are evaluated term by term, then a batch of
random strings over every system. Any failure would raise FormulaViolation.
"""
import numpy as np

from fracsum import expand, numsys, sumformula
from fracsum.expand import DigitString

b2 = numsys.binary()
for text in ("1.01", "1.00(1)"):
    ds = DigitString.parse(text)
    r = sumformula.verify_theorem(b2, ds, 4)
    c = sumformula.verify_integer_corollary(b2, ds, 4)
    terms = " + ".join(str(t[0]) for t in r.terms)
    ints = " + ".join(str(t[0]) for t in c.terms)
    print(f"{text}: ({terms}) = {r.digit_sum[0]} + {r.frac_n[0]} - {r.frac_0[0]}")
    print(f"{'':{len(text)}}  ({ints}) = {c.int_n[0]} - {c.int_0[0]} - {c.digit_sum[0]}")

rng = np.random.default_rng(0)
systems = list(numsys.example_systems().values())
for _ in range(300):
    ns = systems[rng.integers(len(systems))]
    ds = expand.random_digit_string(rng, ns.q)
    sumformula.verify_theorem(ns, ds, int(rng.integers(1, 13)))
print("300 random identities hold exactly")

for name, ns in numsys.example_systems().items():
    print(f"centre of mass of {name:9s}:", ", ".join(str(c) for c in sumformula.center_of_mass(ns)))

ds = DigitString.parse("1.01")
for n in (4, 8, 16, 32):
    print(f"Cesaro gap n={n:2d}: {sumformula.cesaro_gap(b2, ds, n)[0]}")
