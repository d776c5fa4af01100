"""Circle maps with a flat spot: rotation numbers and fluctuations.

f_t doubles the circle but sends an arc of length 1/2 to t. The rotation
number climbs in a devil's staircase; averaging over t and x gives a very
non-Gaussian fluctuation density, written as CSV.
"""
import sys
from pathlib import Path

import numpy as np

from fracsum import circlemap

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
out.mkdir(parents=True, exist_ok=True)
n = int(sys.argv[2]) if len(sys.argv) > 2 else 10_000
count = int(sys.argv[3]) if len(sys.argv) > 3 else 100_000

grid = np.arange(1, 100) / 100
rho = circlemap.rotation_numbers(grid, n)
for t, r in zip(grid[::10], rho[::10]):
    print(f"t={t:.2f}  rho={r:.4f}")

# inside a locking interval the orbit through t is periodic
t = float(grid[np.argmax(np.abs(rho - 0.5) <= 1 / n)])
orbit = [t]
for _ in range(4):
    orbit.append(circlemap.f_t_step(t, orbit[-1]))
print(f"rho = 1/2 first reached on the grid at t = {t}; orbit of t:", [round(x, 6) for x in orbit])

hist = circlemap.circle_fluctuations(n, count, seed=1)
(out / "circle_fluctuations.csv").write_text(hist.to_csv())
print(f"mean {hist.mean:.2e}, std {hist.std:.4f}, symmetric bin pairs {circlemap.symmetric_pair_fraction(hist):.3f}")
