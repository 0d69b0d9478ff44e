from orbitforge import Partition
from orbitforge.weyman import compare_generator_sets, j_lambda_generators

lam = Partition([2, 1])
pres = j_lambda_generators(lam)
for g in pres.generators:
    if g.excluded:
        print(g.label, "not used (index past the last part)")
        continue
    print(g.label, len(g.polys), "polynomials")
    for poly in g.polys[:2]:
        print("   ", poly)

rep = compare_generator_sets(lam, samples=10, seed=0)
print(f"minors: {rep.closure_count}, spanning polynomials: {rep.weyman_spanning_count}")
print("same zero set on samples:", rep.agreement)
print("shared up to sign:", len(rep.common))

for other in ([2, 2], [3, 1], [2, 1, 1]):
    rep = compare_generator_sets(Partition(other), samples=5, seed=1)
    print(other, rep.closure_count, rep.weyman_spanning_count, rep.agreement)
