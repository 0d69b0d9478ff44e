"""Orbit closures in gl_n: closure equations, localization charts and sample points.

The closure of the orbit with Jordan type ``lam`` is cut out by the
vanishing of every ``(r_k + 1)``-minor of ``X^k``. The open orbit is
covered by charts where one ``r_k``-minor ``h`` of ``X^k`` is inverted,
presented by adjoining ``t`` with ``h*t - 1``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Any, Iterator, Sequence

import numpy as np

from . import intmatrix
from .partitions import Partition, rank_counting_f, rank_sequence
from .polyalg import (
    MONOMIAL_ORDER,
    Polynomial,
    generic_power,
    subsets,
)

log = logging.getLogger(__name__)

MINOR_CONVENTION = "sorted-rows-cols-unsigned"

# Upper bound on term products a single request may expand (see expansion_estimate).
EXPANSION_LIMIT = 200_000_000


class ExpansionTooLarge(ValueError):
    pass


@dataclass
class Equation:
    poly: Polynomial
    provenance: list[dict[str, Any]]


@dataclass
class EquationSet:
    """Ordered, deduplicated polynomial system with provenance.

    Two polynomials that agree up to sign define the same equation and are
    merged; the first form generated is kept and every provenance retained.
    Zero polynomials are counted in ``trivial`` and dropped.
    """

    algebra: str
    n: int
    lam: Partition | None = None
    equations: list[Equation] = field(default_factory=list)
    raw_count: int = 0
    trivial: int = 0
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self._index: dict[Polynomial, int] = {}
        self._compiled = None
        for idx, eq in enumerate(self.equations):
            self._index.setdefault(eq.poly.sign_normalized(), idx)

    def add(self, poly: Polynomial, provenance: dict[str, Any]) -> None:
        self.raw_count += 1
        self._compiled = None
        if poly.is_zero():
            self.trivial += 1
            return
        key = poly.sign_normalized()
        idx = self._index.get(key)
        if idx is None:
            self._index[key] = len(self.equations)
            self.equations.append(Equation(poly, [provenance]))
        else:
            self.equations[idx].provenance.append(provenance)

    def extend(self, other: "EquationSet") -> None:
        for eq in other.equations:
            for prov in eq.provenance:
                self.add(eq.poly, prov)
        self.raw_count += other.trivial
        self.trivial += other.trivial

    def __len__(self) -> int:
        return len(self.equations)

    def __iter__(self) -> Iterator[Equation]:
        return iter(self.equations)

    def polynomials(self) -> list[Polynomial]:
        return [e.poly for e in self.equations]

    def uses_t(self) -> bool:
        return any(e.poly.uses_t() for e in self.equations)

    def compiled(self):
        if self._compiled is None:
            from .fasteval import CompiledSystem

            self._compiled = CompiledSystem(self.polynomials(), self.n)
        return self._compiled

    def to_json(self) -> dict[str, Any]:
        return {
            "algebra": self.algebra,
            "n": self.n,
            "lambda": list(self.lam.parts) if self.lam else None,
            "monomial_order": MONOMIAL_ORDER,
            "minor_convention": MINOR_CONVENTION,
            "equation_count": len(self.equations),
            "raw_count": self.raw_count,
            "trivial_dropped": self.trivial,
            "metadata": self.metadata,
            "equations": [e.poly.to_json() for e in self.equations],
            "provenance": [e.provenance for e in self.equations],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "EquationSet":
        lam = Partition(data["lambda"]) if data.get("lambda") else None
        eqs = cls(algebra=data.get("algebra", "gl"), n=int(data["n"]), lam=lam, metadata=dict(data.get("metadata", {})))
        provs = data.get("provenance") or [[{"kind": "input", "index": i}] for i in range(len(data["equations"]))]
        for poly_json, prov in zip(data["equations"], provs):
            poly = Polynomial.from_json(poly_json)
            for p in prov:
                eqs.add(poly, p)
        eqs.raw_count = int(data.get("raw_count", eqs.raw_count))
        eqs.trivial = int(data.get("trivial_dropped", eqs.trivial))
        return eqs


@dataclass(frozen=True)
class Chart:
    base: EquationSet
    h: Polynomial
    relation: Polynomial
    index: tuple[int, int]  # (j, k)
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def equations(self) -> list[Polynomial]:
        return self.base.polynomials() + [self.relation]

    def to_json(self) -> dict[str, Any]:
        j, k = self.index
        return {
            "j": j,
            "k": k,
            "rows": list(self.rows),
            "cols": list(self.cols),
            "h": self.h.to_json(),
            "relation": self.relation.to_json(),
        }


@dataclass(frozen=True)
class OrbitPoint:
    """An integer point of the orbit of ``mu``: ``P^-1 J_mu P`` for unimodular ``P``."""

    matrix: tuple[tuple[int, ...], ...]
    mu: Partition
    seed: int | None

    @property
    def n(self) -> int:
        return len(self.matrix)


def jordan_matrix(mu: Partition) -> list[list[int]]:
    n = mu.n
    out = intmatrix.zeros(n)
    off = 0
    for size in mu.parts:
        for a in range(size - 1):
            out[off + a][off + a + 1] = 1
        off += size
    return out


def k_stop(lam: Partition) -> int:
    """Smallest ``k`` with ``rank(X^k) = 0``, which is the largest part."""
    return lam.largest


def _minor_work(n: int, k: int, size: int) -> int:
    # entries of X^k have n^(k-1) terms; a size x size minor has size! products of entries
    if size < 1 or size > n:
        return 0
    return comb(n, size) ** 2 * factorial(size) * (n ** (k - 1)) ** size


def expansion_estimate(lam: Partition, full_k_range: bool = False, charts: bool = False) -> int:
    """Crude upper bound on the term products needed to expand the minors of ``lam``."""
    ranks = rank_sequence(lam)
    last = lam.n if full_k_range else k_stop(lam)
    if charts:
        return sum(_minor_work(lam.n, k, r) for k, r in enumerate(ranks.ranks, start=1) if r >= 1)
    return sum(_minor_work(lam.n, k, ranks[k] + 1) for k in range(1, last + 1))


def _check_budget(lam: Partition, work: int, limit: int | None) -> None:
    if limit is not None and work > limit:
        raise ExpansionTooLarge(
            f"expansion too large for {lam}: about {work:.2e} term products, limit {limit:.2e}"
        )


def closure_equations(
    lam: Partition, full_k_range: bool = False, limit: int | None = EXPANSION_LIMIT
) -> EquationSet:
    n = lam.n
    _check_budget(lam, expansion_estimate(lam, full_k_range), limit)
    ranks = rank_sequence(lam)
    last = n if full_k_range else k_stop(lam)
    eqs = EquationSet(
        algebra="gl",
        n=n,
        lam=lam,
        metadata={"k_range": "full" if full_k_range else "pruned", "k_max": last},
    )
    for k in range(1, last + 1):
        size = ranks[k] + 1
        Xk = generic_power(n, k)
        for P in subsets(n, size):
            for Q in subsets(n, size):
                eqs.add(Xk.minor(P, Q), {"kind": "minor", "k": k, "rows": list(P), "cols": list(Q)})
    return eqs


def expected_closure_raw_count(lam: Partition, full_k_range: bool = False) -> int:
    ranks = rank_sequence(lam)
    last = lam.n if full_k_range else k_stop(lam)
    return sum(comb(lam.n, ranks[k] + 1) ** 2 for k in range(1, last + 1))


@dataclass(frozen=True)
class LabeledMinor:
    poly: Polynomial
    j: int
    k: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]


def nonvanishing_minors(lam: Partition, limit: int | None = EXPANSION_LIMIT) -> list[LabeledMinor]:
    """All ``r_k x r_k`` minors of ``X^k`` for every ``k`` with ``r_k >= 1``."""
    n = lam.n
    _check_budget(lam, expansion_estimate(lam, charts=True), limit)
    ranks = rank_sequence(lam)
    out = []
    for k, r in enumerate(ranks.ranks, start=1):
        if r < 1:
            continue
        Xk = generic_power(n, k)
        j = 0
        for P in subsets(n, r):
            for Q in subsets(n, r):
                j += 1
                out.append(LabeledMinor(Xk.minor(P, Q), j, k, P, Q))
    return out


def localization_charts(lam: Partition, base: EquationSet | None = None) -> list[Chart]:
    if lam.is_trivial():
        log.warning("partition %s is the origin orbit; it has no localization charts", lam)
        return []
    if base is None:
        base = closure_equations(lam)
    t = Polynomial.t()
    return [
        Chart(base, m.poly, m.poly * t - 1, (m.j, m.k), m.rows, m.cols)
        for m in nonvanishing_minors(lam)
    ]


def expected_chart_count(lam: Partition) -> int:
    return sum(comb(lam.n, r) ** 2 for r in rank_sequence(lam).ranks if r >= 1)


# -- sample points --------------------------------------------------------------


def random_unimodular(n: int, rng: np.random.Generator, steps: int) -> tuple[list[list[int]], list[list[int]]]:
    """``(P, P^-1)`` from ``steps`` elementary row operations ``row_i += c row_j``, ``c`` in [-3, 3]."""
    P = intmatrix.identity(n)
    Pinv = intmatrix.identity(n)
    if n < 2:
        return P, Pinv
    for _ in range(steps):
        i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
        c = int(rng.integers(-3, 4))
        if c == 0:
            continue
        # P <- E P with E = I + c e_ij; P^-1 <- P^-1 E^-1
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]
        for row in Pinv:
            row[j] -= c * row[i]
    return P, Pinv


def rank_profile(matrix: Sequence[Sequence[int]], upto: int) -> list[int]:
    out = []
    power = [list(r) for r in matrix]
    for _ in range(upto):
        out.append(intmatrix.rank(power))
        power = intmatrix.matmul(power, matrix)
    return out


def expected_rank_profile(mu: Partition, upto: int) -> list[int]:
    out = []
    current = list(mu.parts)
    for _ in range(upto):
        current = [rank_counting_f(x) for x in current]
        out.append(sum(current))
    return out


def check_orbit_point(matrix: Sequence[Sequence[int]], mu: Partition) -> None:
    n = mu.n
    if not intmatrix.is_zero(intmatrix.matpow(matrix, n)):
        raise AssertionError("sample point is not nilpotent")
    if rank_profile(matrix, n) != expected_rank_profile(mu, n):
        raise AssertionError(f"sample point does not have Jordan type {mu}")


def sample_orbit_point(mu: Partition, seed: int, steps: int | None = None) -> OrbitPoint:
    n = mu.n
    rng = np.random.default_rng(seed)
    P, Pinv = random_unimodular(n, rng, 2 * n if steps is None else steps)
    A = intmatrix.matmul(intmatrix.matmul(Pinv, jordan_matrix(mu)), P)
    check_orbit_point(A, mu)
    return OrbitPoint(tuple(tuple(r) for r in A), mu, seed)


def membership_test(point: OrbitPoint | Sequence[Sequence[Any]], eqs: EquationSet) -> bool:
    """True iff every equation vanishes exactly at ``point``."""
    matrix = point.matrix if isinstance(point, OrbitPoint) else point
    if len(matrix) != eqs.n or any(len(r) != eqs.n for r in matrix):
        raise ValueError(f"point is {len(matrix)}x{len(matrix[0]) if matrix else 0}, equations live in dimension {eqs.n}")
    if all(_is_integral(x) for r in matrix for x in r) and not eqs.uses_t():
        ints = [[int(x) for x in r] for r in matrix]
        return eqs.compiled().all_vanish(ints)
    return membership_test_exact(matrix, eqs)


def membership_test_exact(matrix: Sequence[Sequence[Any]], eqs: EquationSet) -> bool:
    """Reference path: plain exact evaluation of each polynomial."""
    return all(e.poly.evaluate(matrix) == 0 for e in eqs.equations)


def _is_integral(x) -> bool:
    if isinstance(x, int):
        return True
    return isinstance(x, Fraction) and x.denominator == 1


def membership_many(points: Sequence[OrbitPoint], eqs: EquationSet) -> list[bool]:
    """:func:`membership_test` for a batch of integer points, sharing one compiled pass."""
    for pt in points:
        if pt.n != eqs.n:
            raise ValueError(f"point dimension {pt.n} does not match equations ({eqs.n})")
    if eqs.uses_t():
        return [membership_test_exact(pt.matrix, eqs) for pt in points]
    found = eqs.compiled().first_nonzero_many([pt.matrix for pt in points])
    return [idx < 0 for idx in found]
