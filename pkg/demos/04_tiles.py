"""The tiles F = A^{-1}(F + D) of the dragon and Lai-Wang systems.

Writes PNG and PGM rasters to the directory given on the command line
(default: the current directory).
"""
import sys
from pathlib import Path

from fracsum import numsys, tiles

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
out.mkdir(parents=True, exist_ok=True)

for ns, depth in ((numsys.heighway(), 14), (numsys.lai_wang(), 7)):
    cloud = tiles.tile_cloud(ns, depth)
    cert = tiles.outer_radius(ns)
    (out / f"{ns.name}_d{depth}.png").write_bytes(tiles.render_png(cloud, 512, 512))
    (out / f"{ns.name}_d{depth}.pgm").write_bytes(tiles.render(cloud, 512, 512))
    print(f"{ns.name}: {len(cloud)} points, certified radius {cert.radius:.4f} (k={cert.k})")

# translates F and F + (1, 0) share fewer and fewer cells as the grid refines
hw = numsys.heighway()
for level in (2, 4, 6, 8, 10):
    print(f"level {level:2d}: overlap fraction {tiles.overlap_fraction(hw, (1, 0), level):.4f}")
