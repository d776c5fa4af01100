"""Number systems (A, D): validation, residues and integer expansions.

A digit set must hold exactly one representative of each coset of A Z^m.
This script checks the five shipped systems, shows a rejection, and expands
a few integers by repeated division by A.
"""
from fracsum import expand, numsys
from fracsum.errors import CycleDetected, DuplicateResidue

for name, ns in numsys.example_systems().items():
    print(f"{name:10s} det={ns.det:3d}  digits={list(ns.digits)}")

# 0 and 2 are both even, so they share a coset of 2Z
try:
    numsys.validate(2, [0, 2])
except DuplicateResidue as exc:
    print("rejected:", exc)

base3 = numsys.base3_neg()
print("4 is congruent to digit", base3.digits[numsys.residue_index(base3, (4,))], "mod 3")

# Integers with a finite expansion in A = 3, D = {-5, 0, 20}
for z in range(-10, 11):
    try:
        print(f"{z:4d} -> {expand.expand_integer(base3, (z,))}")
    except CycleDetected as exc:
        print(f"{z:4d} -> no finite expansion (cycle {exc.cycle})")
