import logging

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from oracles import closure_oracle, to_polynomial
from orbitforge.orbits_gl import (
    EquationSet,
    ExpansionTooLarge,
    closure_equations,
    expected_chart_count,
    expected_closure_raw_count,
    jordan_matrix,
    k_stop,
    localization_charts,
    membership_many,
    membership_test,
    nonvanishing_minors,
    rank_profile,
    sample_orbit_point,
)
from orbitforge.partitions import Partition, dominance_leq, enumerate_partitions, rank_sequence
from orbitforge.polyalg import Polynomial
from worked_example import CORRECTED, PRINTED

P = Partition

# distinct nonzero equations up to sign, computed once with the sympy oracle
DISTINCT_COUNTS = {
    (1,): 1, (2,): 5, (1, 1): 4, (3,): 19, (2, 1): 18, (1, 1, 1): 9,
    (4,): 69, (3, 1): 68, (2, 2): 32, (2, 1, 1): 52, (1, 1, 1, 1): 16,
}


def parse_listing(items):
    out = []
    for text in items:
        expr = sympy.sympify(text)
        expr = expr.subs({sympy.Symbol(f"x{i}{j}"): sympy.Symbol(f"x_{i}_{j}") for i in range(1, 4) for j in range(1, 4)})
        out.append(to_polynomial(expr, 3).sign_normalized())
    return out


def test_worked_example_equals_corrected_listing():
    F = closure_equations(P([2, 1]))
    assert len(F) == 18 and F.raw_count == 18
    got = {g.sign_normalized() for g in F.polynomials()}
    assert got == set(parse_listing(CORRECTED))


def test_printed_listing_differs_only_by_known_slips():
    got = {g.sign_normalized() for g in closure_equations(P([2, 1])).polynomials()}
    printed = parse_listing(PRINTED)
    assert len(printed) == 18 and len(set(printed)) == 17
    extra = set(printed) - got
    missing = got - set(printed)
    assert extra == set(parse_listing(["x11*x12 + x12*x22 + x13*x33"]))
    assert missing == set(parse_listing(["x11*x12 + x12*x22 + x13*x32", "x11*x13 + x12*x23 + x13*x33"]))


def test_origin_stratum():
    F = closure_equations(P([1, 1, 1]))
    assert {str(g) for g in F.polynomials()} == {f"x_{i}_{j}" for i in range(1, 4) for j in range(1, 4)}


def test_regular_orbit_of_gl2():
    F = closure_equations(P([2]))
    assert len(F) == 5
    assert F.metadata == {"k_range": "pruned", "k_max": 2}


@pytest.mark.parametrize("parts", sorted(DISTINCT_COUNTS))
def test_counts_match_frozen_oracle(parts):
    lam = P(parts)
    F = closure_equations(lam)
    assert len(F) == DISTINCT_COUNTS[parts]
    assert F.raw_count == expected_closure_raw_count(lam)
    assert len(F) + F.trivial <= F.raw_count


@pytest.mark.parametrize("parts", [(3,), (2, 1), (2, 2), (3, 1)])
def test_equations_match_sympy_oracle(parts):
    n = sum(parts)
    got = {g.sign_normalized() for g in closure_equations(P(parts)).polynomials()}
    want = {to_polynomial(e, n).sign_normalized() for e in closure_oracle(parts)}
    assert got == want


def test_full_k_range_adds_only_redundant_equations():
    lam = P([2, 1])
    full = closure_equations(lam, full_k_range=True)
    assert full.metadata["k_range"] == "full"
    assert full.raw_count == expected_closure_raw_count(lam, full_k_range=True) == 18 + 9
    pts = [sample_orbit_point(mu, s) for mu in enumerate_partitions(3) for s in range(3)]
    assert membership_many(pts, full) == membership_many(pts, closure_equations(lam))


def test_equation_set_json_roundtrip():
    F = closure_equations(P([2, 1]))
    data = F.to_json()
    assert data["equation_count"] == 18 and data["monomial_order"] == "grlex-rowmajor-v1"
    assert data["provenance"][0] == [{"kind": "minor", "k": 1, "rows": [1, 2], "cols": [1, 2]}]
    back = EquationSet.from_json(data)
    assert back.polynomials() == F.polynomials() and back.raw_count == F.raw_count


def test_dedup_keeps_provenance():
    eqs = EquationSet("gl", 2)
    x = Polynomial.var(1, 1)
    eqs.add(x, {"a": 1})
    eqs.add(-x, {"a": 2})
    eqs.add(x - x, {"a": 3})
    assert len(eqs) == 1 and eqs.raw_count == 3 and eqs.trivial == 1
    assert eqs.equations[0].provenance == [{"a": 1}, {"a": 2}]


def test_jordan_matrix_and_k_stop():
    assert jordan_matrix(P([2, 1])) == [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
    assert k_stop(P([3, 1])) == 3


@pytest.mark.parametrize("parts", [(2, 1), (3,), (2, 2), (3, 1), (4,)])
def test_charts(parts):
    lam = P(parts)
    charts = localization_charts(lam)
    assert len(charts) == expected_chart_count(lam)
    t = Polynomial.t()
    for c in charts[:5]:
        assert c.relation == c.h * t - 1
        assert c.equations()[-1] == c.relation
    # each h is an r_k-minor of X^k, which is nonzero at J_lam for some chart
    J = jordan_matrix(lam)
    assert any(c.h.evaluate(J) != 0 for c in charts)


def test_chart_counts_examples():
    assert expected_chart_count(P([2, 1])) == 9
    assert expected_chart_count(P([3])) == 9 + 9


def test_trivial_partition_has_no_charts(caplog):
    with caplog.at_level(logging.WARNING):
        assert localization_charts(P([1, 1, 1])) == []
    assert "no localization charts" in caplog.text


def test_expansion_guard():
    with pytest.raises(ExpansionTooLarge, match="expansion too large"):
        closure_equations(P([6]))
    with pytest.raises(ExpansionTooLarge):
        nonvanishing_minors(P([7]))


@settings(max_examples=25)
@given(st.sampled_from([p for n in range(1, 6) for p in enumerate_partitions(n)]), st.integers(0, 10**6))
def test_sample_points_have_the_right_jordan_type(mu, seed):
    pt = sample_orbit_point(mu, seed)
    ranks = list(rank_sequence(mu).ranks) + [0] * (mu.n - mu.largest)
    assert rank_profile(pt.matrix, mu.n) == ranks
    assert sample_orbit_point(mu, seed) == pt


def test_sample_without_steps_is_jordan_form():
    assert [list(r) for r in sample_orbit_point(P([2, 1]), 0, steps=0).matrix] == jordan_matrix(P([2, 1]))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_membership_follows_dominance(n):
    pts = [sample_orbit_point(mu, s) for mu in enumerate_partitions(n) for s in range(4)]
    for lam in enumerate_partitions(n):
        F = closure_equations(lam)
        assert membership_many(pts, F) == [dominance_leq(p.mu, lam) for p in pts]
        assert [membership_test(p, F) for p in pts[::3]] == [dominance_leq(p.mu, lam) for p in pts[::3]]
