import numpy as np
import pytest

from orbitforge import intmatrix
from orbitforge.orbits_gl import ExpansionTooLarge, closure_equations, expected_chart_count, membership_many
from orbitforge.orbits_sp import (
    SymplecticError,
    is_in_sp,
    lambda_sp_sets,
    omega_basis_change,
    omega_matrix,
    sample_sp_orbit_point,
    sp_closure_equations,
    sp_orbit_charts,
    symplectic_constraints,
    symplectic_lie_equations,
    symplectic_representative,
)
from orbitforge.partitions import Partition, dominance_leq, enumerate_partitions, gerstenhaber_valid

P = Partition


def sp_partitions(m):
    return [lam for lam in enumerate_partitions(2 * m) if gerstenhaber_valid(lam)]


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_omega(m):
    W = omega_matrix(m)
    n = 2 * m
    assert W[0][n - 1] == 1 and W[n - 1][0] == -1
    assert intmatrix.transpose(W) == [[-x for x in row] for row in W]
    assert intmatrix.matmul(W, W) == [[-x for x in row] for row in intmatrix.identity(n)]
    assert sum(1 for row in W for x in row if x) == n


def test_omega_m1():
    assert omega_matrix(1) == [[0, 1], [-1, 0]]
    with pytest.raises(SymplecticError):
        omega_matrix(0)


def test_lie_equations_m1():
    cons = symplectic_lie_equations(1)
    assert [str(g) for g in cons.equations.polynomials()] == ["x_2_2 + x_1_1"]
    assert all(g.evaluate([[0, 1], [0, 0]]) == 0 for g in cons.equations.polynomials())


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_lie_equation_count_is_codimension(m):
    eqs = symplectic_lie_equations(m).equations
    # dim gl_2m - dim sp_2m = 4m^2 - m(2m+1) = m(2m-1)
    assert len(eqs) == m * (2 * m - 1)
    assert all(g.is_homogeneous() and g.degree() == 1 for g in eqs.polynomials())


@pytest.mark.parametrize("m", [1, 2, 3])
def test_lie_equations_cut_out_sp(m):
    rng = np.random.default_rng(m)
    n = 2 * m
    W = omega_matrix(m)
    W_inv = [[-x for x in row] for row in W]
    eqs = symplectic_lie_equations(m).equations.polynomials()
    for _ in range(10):
        S = rng.integers(-5, 6, size=(n, n))
        S = (S + S.T).tolist()
        X = intmatrix.matmul(W_inv, S)  # Omega X symmetric
        assert is_in_sp(X, m)
        assert all(g.evaluate(X) == 0 for g in eqs)
        Y = [row[:] for row in X]
        Y[0][0] += 1
        Y[n - 1][n - 1] += 1
        assert not all(g.evaluate(Y) == 0 for g in eqs)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_lambda_sp_cardinalities(m):
    cons = lambda_sp_sets(m)
    assert cons.family_sizes == {"odd": m, "even": m, "rest": 4 * m * m - 2 * m}
    assert cons.raw_count == 4 * m * m
    # the diagonal of the homogeneous family vanishes identically
    assert cons.equations.trivial == 2 * m


def test_lambda_sp_m1_is_one_plus_det():
    polys = lambda_sp_sets(1).equations.polynomials()
    assert [str(g) for g in polys] == ["x_1_1*x_2_2 - x_1_2*x_2_1 + 1"]


@pytest.mark.parametrize("m", [1, 2, 3])
def test_lambda_sp_families_encode_minus_omega(m):
    # the families are the entries of X^T Omega X + Omega: they vanish when X^T Omega X = -Omega
    n = 2 * m
    T, T_inv = omega_basis_change(m)
    flip = [[(1 if i < m else -1) if i == j else 0 for j in range(n)] for i in range(n)]
    X = intmatrix.matmul(intmatrix.matmul(T, flip), T_inv)
    W = omega_matrix(m)
    assert intmatrix.matmul(intmatrix.matmul(intmatrix.transpose(X), W), X) == [[-x for x in r] for r in W]
    polys = lambda_sp_sets(m).equations.polynomials()
    assert all(g.evaluate(X) == 0 for g in polys)
    identity = intmatrix.identity(n)
    assert not all(g.evaluate(identity) == 0 for g in polys)


def test_mode_dispatch():
    assert symplectic_constraints(1, "paper").mode == "paper"
    with pytest.raises(SymplecticError):
        symplectic_constraints(1, "group")


def test_sp_closure_examples():
    F = sp_closure_equations(P([2]))
    assert len(F) == len(closure_equations(P([2]))) + 1 == 6
    assert F.metadata["sp_mode"] == "lie" and F.metadata["gerstenhaber"]
    kinds = {prov["kind"] for e in F for prov in e.provenance}
    assert kinds == {"minor", "sp-lie"}
    assert sp_closure_equations(P([2]), "paper").metadata["condition"] == "group"
    with pytest.raises(SymplecticError, match="no symplectic orbit for this partition"):
        sp_closure_equations(P([3, 1]))
    with pytest.raises(SymplecticError):
        sp_closure_equations(P([2, 1]))


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_gate_is_exhaustive(m):
    for lam in enumerate_partitions(2 * m):
        if gerstenhaber_valid(lam):
            # passes the gate, then stops at the (zero) expansion budget
            with pytest.raises(ExpansionTooLarge):
                sp_closure_equations(lam, limit=0)
        else:
            with pytest.raises(SymplecticError, match="no symplectic orbit"):
                sp_closure_equations(lam, limit=0)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_samples_lie_in_sp_with_the_right_type(m):
    for mu in sp_partitions(m):
        rep = symplectic_representative(mu)
        assert len(rep) == 2 * m
        for seed in range(3):
            pt = sample_sp_orbit_point(mu, seed)
            assert is_in_sp(pt.matrix, m)
    with pytest.raises(SymplecticError):
        sample_sp_orbit_point(P([3, 1]), 0)


@pytest.mark.parametrize("m", [1, 2])
def test_sp_oracle(m):
    pts = [sample_sp_orbit_point(mu, s) for mu in sp_partitions(m) for s in range(5)]
    for lam in sp_partitions(m):
        F = sp_closure_equations(lam)
        assert membership_many(pts, F) == [dominance_leq(p.mu, lam) for p in pts]


def test_paper_mode_has_no_nilpotent_points():
    pts = [sample_sp_orbit_point(mu, s) for mu in sp_partitions(2) for s in range(2)]
    F = sp_closure_equations(P([4]), "paper")
    assert not any(membership_many(pts, F))


def test_sp_charts():
    charts = sp_orbit_charts(P([2, 2]))
    assert len(charts) == expected_chart_count(P([2, 2]))
    assert charts[0].base.algebra == "sp"
    assert sp_orbit_charts(P([1, 1])) == []
