"""Fluctuations of S(n, x) = sum_{i<n} {A^i x} around n x_bar.

For doubling the rescaled values 2(S - n/2)/sqrt(n) are close to standard
normal. For the dragon the 2-D points collapse onto the line through x_bar.
Writes the dragon samples as CSV to the directory given on the command line.
"""
import sys
from pathlib import Path

import numpy as np

from fracsum import fluct, numsys

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
out.mkdir(parents=True, exist_ok=True)

s = fluct.sample_fluctuations(numsys.binary(), 50, 10_000, seed=1)
print(f"doubling n=50: KS distance to N(0,1) = {fluct.ks_statistic(s.points[:, 0]):.4f}")

hw = numsys.heighway()
for n, seed in ((15, 1), (50, 7)):
    s = fluct.sample_fluctuations(hw, n, 10_000, seed=seed)
    lc = fluct.line_collapse(s, s.xbar)
    ev = np.linalg.eigvalsh(s.covariance)
    print(f"dragon n={n}: max distance to line {lc.max_perp:.3f} (bound {fluct.perpendicular_bound(hw, n):.3f}), "
          f"covariance eigenvalue ratio {ev[0] / ev[1]:.4f}, along-line KS {fluct.ks_statistic(lc.along):.4f}")
    (out / f"heighway_fluct_n{n}.csv").write_text(s.to_csv())
