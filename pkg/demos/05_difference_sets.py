"""The difference set Delta = I - I and whether it is a lattice.

Delta_k = A Delta_{k-1} + (D - D) is iterated inside a window. For the
dragon it fills Z^2 (slowly), for A = 3, D = {-5, 0, 20} it is 5Z, and for
the Lai-Wang system it is not a lattice at all.
"""
from fracsum import numsys, tiles

hw = numsys.heighway()
box = tiles.lattice_points([(1, 0), (0, 1)], 5)
for k in range(3, 8):
    d = tiles.delta_iterate(hw, k, 15).inside(5)
    print(f"heighway Delta_{k}: {len(d)}/{len(box)} points of the window of radius 5")

res = tiles.lattice_check(tiles.delta_iterate(numsys.base3_neg(), 5, 120), 40)
print("base3_neg basis:", res.basis)

lw = numsys.lai_wang()
res = tiles.lattice_check(tiles.delta_iterate(lw, 4, 24), 8)
print(f"lai_wang witness {res.witness}: in lattice, in Delta = {tiles.in_delta(lw, res.witness)}")
