# Nilpotent orbits of sp_4: the Lie condition X^T W + W X = 0 plus the gl minors.
from orbitforge import dominance_leq, enumerate_partitions
from orbitforge.intmatrix import matmul, transpose
from orbitforge.orbits_gl import membership_many
from orbitforge.orbits_sp import (
    SymplecticError,
    lambda_sp_sets,
    omega_matrix,
    sample_sp_orbit_point,
    sp_closure_equations,
    symplectic_lie_equations,
)
from orbitforge.partitions import gerstenhaber_valid

m = 2
W = omega_matrix(m)
for row in W:
    print(row)

print([str(g) for g in symplectic_lie_equations(m).equations.polynomials()])
print("literal quadratic families:", lambda_sp_sets(m).family_sizes)

valid = [lam for lam in enumerate_partitions(2 * m) if gerstenhaber_valid(lam)]
print("orbits:", [str(lam) for lam in valid])
try:
    sp_closure_equations(enumerate_partitions(4)[1])
except SymplecticError as exc:
    print(exc)

pt = sample_sp_orbit_point(valid[1], seed=4)
X = [list(r) for r in pt.matrix]
print(X)
lie = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(matmul(transpose(X), W), matmul(W, X))]
print("X^T W + W X == 0:", all(v == 0 for r in lie for v in r))

points = [sample_sp_orbit_point(mu, s) for mu in valid for s in range(3)]
for lam in valid:
    F = sp_closure_equations(lam)
    ok = membership_many(points, F) == [dominance_leq(p.mu, lam) for p in points]
    print(f"{str(lam):>10} {len(F):>4} equations  oracle ok: {ok}")
