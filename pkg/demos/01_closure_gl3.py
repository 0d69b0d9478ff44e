# Closure of the [2,1] orbit in gl_3: rank(X) <= 1 and X^2 = 0.
from orbitforge import Partition, closure_equations, localization_charts, membership_test, sample_orbit_point
from orbitforge.partitions import rank_sequence

lam = Partition([2, 1])
print("ranks of powers:", rank_sequence(lam).ranks)

F = closure_equations(lam)
print(len(F), "equations")
for eq in F:
    k = eq.provenance[0]["k"]
    print(f"  k={k}  {eq.poly}")

# a conjugate of the Jordan form lies on the closure, a regular nilpotent does not
pt = sample_orbit_point(lam, seed=0)
print(pt.matrix)
print("in closure:", membership_test(pt, F))
print("regular nilpotent in closure:", membership_test(sample_orbit_point(Partition([3]), seed=3), F))

charts = localization_charts(lam, F)
print(len(charts), "charts, e.g.", charts[0].relation, "= 0")
