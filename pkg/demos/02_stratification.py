# Which orbits lie in which closures, checked on random integer points.
import numpy as np

from orbitforge import closure_equations, dominance_leq, enumerate_partitions, sample_orbit_point
from orbitforge.orbits_gl import membership_many

n = 4
parts = enumerate_partitions(n)
points = [sample_orbit_point(mu, seed) for mu in parts for seed in range(5)]

table = np.zeros((len(parts), len(parts)), dtype=int)
for col, lam in enumerate(parts):
    hits = membership_many(points, closure_equations(lam))
    for row, mu in enumerate(parts):
        table[row, col] = sum(h for p, h in zip(points, hits) if p.mu == mu)

labels = [str(p) for p in parts]
print("rows: orbit sampled, cols: closure tested, entry: points inside (of 5)")
print(" " * 10 + "".join(f"{s:>10}" for s in labels))
for s, row in zip(labels, table):
    print(f"{s:>10}" + "".join(f"{v:>10}" for v in row))

expected = np.array([[5 * dominance_leq(mu, lam) for lam in parts] for mu in parts])
print("matches dominance order:", np.array_equal(table, expected))
