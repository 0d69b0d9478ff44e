from orbitforge import enumerate_partitions
from orbitforge.padic import coefficient_report, det_occurrence_counts, reduce_mod_p
from orbitforge.orbits_gl import closure_equations
from orbitforge.partitions import Partition

print(f"{'lambda':>10} {'max|F|':>7} {'max|H|':>7} {'bound':>6} {'prime':>6}")
for n in range(2, 5):
    for lam in enumerate_partitions(n):
        r = coefficient_report(lam)
        print(f"{str(lam):>10} {r.max_coeff_f:>7} {r.max_coeff_h:>7} {r.paper_bound:>6} {r.prime:>6}")

# every variable shows up in (n-1)! terms of the determinant
for n in range(2, 6):
    print(n, sorted(set(det_occurrence_counts(n).values())))

F = closure_equations(Partition([3]))
red = reduce_mod_p(F, 2)
print([str(g) for g in F.polynomials()][-1], "->", [str(g) for g in red.polynomials()][-1])
