import numpy as np
import pytest
from hypothesis import given, strategies as st

from orbitforge.fasteval import PRIMES, CompiledSystem
from orbitforge.orbits_gl import EquationSet, closure_equations, membership_test, membership_test_exact
from orbitforge.partitions import Partition
from orbitforge.polyalg import Polynomial
from orbitforge.primes import is_prime, next_prime

N = 3
cells = st.tuples(st.integers(1, N), st.integers(1, N))
monomial = st.lists(st.tuples(cells, st.integers(1, 4)), max_size=4)
polys = st.lists(st.tuples(st.integers(-(10**12), 10**12), monomial), max_size=5).map(Polynomial.from_terms)
entry = st.one_of(st.integers(-3, 3), st.integers(-(10**9), 10**9))
points = st.lists(st.lists(entry, min_size=N, max_size=N), min_size=N, max_size=N)


def _exact_first(ps, pt):
    for idx, g in enumerate(ps):
        if g.evaluate(pt) != 0:
            return idx
    return -1


@given(st.lists(polys, min_size=1, max_size=4), st.lists(points, min_size=1, max_size=4))
def test_fast_path_matches_exact(ps, pts):
    ps = [g for g in ps if g] or [Polynomial.var(1, 1)]
    sys_ = CompiledSystem(ps, N)
    found = sys_.first_nonzero_many(pts)
    for pt, idx in zip(pts, found):
        if idx < 0:
            assert all(g.evaluate(pt) == 0 for g in ps)
        else:
            assert ps[idx].evaluate(pt) != 0
        assert (idx < 0) == (_exact_first(ps, pt) < 0)


@given(polys, points)
def test_vanishing_products_detected(g, pt):
    # (x_1_1 - a) * g vanishes at any point with x_1_1 = a
    g = g or Polynomial.const(7)
    h = (Polynomial.var(1, 1) - pt[0][0]) * g
    assert CompiledSystem([h], N).all_vanish(pt)


def test_large_values_need_several_primes():
    # x^4 - c with c = v^4 vanishes only at v; v^4 exceeds one 31-bit prime
    v = 10**6 + 3
    g = Polynomial.var(1, 1) ** 4 - v**4
    sys_ = CompiledSystem([g], 1)
    assert sys_.all_vanish([[v]])
    assert not sys_.all_vanish([[v + 1]])
    assert not sys_.all_vanish([[v - PRIMES[0]]])


def test_membership_paths_agree():
    F = closure_equations(Partition([2, 1]))
    rng = np.random.default_rng(3)
    for _ in range(30):
        pt = rng.integers(-2, 3, size=(3, 3)).tolist()
        assert membership_test(pt, F) == membership_test_exact(pt, F)
    rank_one_square_zero = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
    assert membership_test(rank_one_square_zero, F)


def test_membership_rejects_wrong_dimension():
    F = closure_equations(Partition([2, 1]))
    with pytest.raises(ValueError):
        membership_test([[0, 0], [0, 0]], F)


def test_empty_system_vanishes():
    assert CompiledSystem([], 2).all_vanish([[5, 1], [2, 3]])
    assert membership_test([[1]], EquationSet("gl", 1))


def test_primes():
    assert len(PRIMES) == 16 and all(is_prime(p) and p < 2**31 for p in PRIMES)
    assert [next_prime(k) for k in (1, 2, 6, 13)] == [2, 3, 7, 17]
    assert [p for p in range(60) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)
