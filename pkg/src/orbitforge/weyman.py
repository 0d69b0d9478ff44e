"""Weyman-style generators ``V_{0,p}`` and ``V_{i,lambda(i)}`` of the closure ideal.

``V_{i,p}`` is spanned by one polynomial per ordered pair ``(P, Q)`` of
``i``-subsets: the sum over ``p - i``-subsets ``J`` disjoint from ``P | Q``
of the minor with rows ``P, J`` and columns ``Q, J``. The span itself is
never materialized; the spanning polynomials generate the same ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .orbits_gl import EquationSet, closure_equations, membership_many, sample_orbit_point
from .partitions import Partition, dominance_leq, enumerate_partitions, weyman_lambda_i
from .polyalg import ZERO, Polynomial, generic_matrix, permutation_sign, subsets

CONVENTIONS = ("ordered", "sorted")


@dataclass
class VipGenerator:
    i: int
    p: int
    n: int
    polys: list[Polynomial] = field(default_factory=list)
    pairs: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    excluded: bool = False

    @property
    def label(self) -> str:
        return f"V_{self.i},{self.p}"

    @property
    def trivial(self) -> bool:
        return not self.polys


def v_ip_generators(i: int, p: int, n: int, convention: str = "ordered") -> VipGenerator:
    """Spanning polynomials of ``V_{i,p}`` in ``n x n`` variables.

    With ``convention="ordered"`` each summand is the determinant with rows
    listed as ``P`` then ``J`` and columns as ``Q`` then ``J`` (each block
    ascending). ``"sorted"`` takes every summand as the determinant of the
    ascending-sorted submatrix, with no sign.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if i < 0 or not 1 <= p <= n:
        raise ValueError(f"need i >= 0 and 1 <= p <= n, got i={i}, p={p}, n={n}")
    gen = VipGenerator(i, p, n)
    if i > p or i > n:
        return gen
    X = generic_matrix(n)
    for P in subsets(n, i):
        for Q in subsets(n, i):
            free = [x for x in range(1, n + 1) if x not in P and x not in Q]
            acc = ZERO
            for J in combinations(free, p - i):
                m = X.minor(P + J, Q + J)
                if convention == "ordered" and permutation_sign(P + J) * permutation_sign(Q + J) < 0:
                    m = -m
                acc = acc + m
            if acc:
                gen.polys.append(acc)
                gen.pairs.append((P, Q))
    return gen


@dataclass
class JLambdaPresentation:
    lam: Partition
    generators: list[VipGenerator]
    equations: EquationSet

    @property
    def labels(self) -> list[str]:
        return [g.label for g in self.generators]

    @property
    def nontrivial_labels(self) -> list[str]:
        return [g.label for g in self.generators if not g.trivial]

    @property
    def spanning_count(self) -> int:
        return sum(len(g.polys) for g in self.generators)

    def to_json(self) -> dict[str, Any]:
        return {
            "lambda": list(self.lam.parts),
            "n": self.lam.n,
            "labels": self.labels,
            "trivial": [g.label for g in self.generators if g.trivial],
            "excluded": [g.label for g in self.generators if g.excluded],
            "spanning_count": self.spanning_count,
            "distinct_count": len(self.equations),
            "generators": {
                g.label: [
                    {"rows": list(P), "cols": list(Q), "poly": poly.to_json()}
                    for (P, Q), poly in zip(g.pairs, g.polys)
                ]
                for g in self.generators
            },
        }


INDEX_RANGES = ("parts", "all")


def j_lambda_generators(
    lam: Partition, convention: str = "ordered", index_range: str = "parts"
) -> JLambdaPresentation:
    """``V_{0,p}`` for ``p = 1..n`` and ``V_{i,lambda(i)}`` for ``i = 1..n``.

    With ``index_range="parts"`` only ``i <= len(lam)`` contributes; labels
    with larger ``i`` are listed but marked ``excluded`` and left empty. The
    zero-padded values of ``lambda(i)`` past the last part produce
    generators that do not vanish on the orbit of ``[n]`` (for instance
    ``V_{2,2}`` for ``[3]``), so ``index_range="all"`` is kept only to
    reproduce that reading. Coinciding labels are kept once.
    """
    if index_range not in INDEX_RANGES:
        raise ValueError(f"unknown index range {index_range!r}")
    n = lam.n
    gens: list[VipGenerator] = []
    seen: set[tuple[int, int]] = set()
    wanted = [(0, p) for p in range(1, n + 1)] + [(i, weyman_lambda_i(lam, i)) for i in range(1, n + 1)]
    for i, p in wanted:
        if (i, p) in seen:
            continue
        seen.add((i, p))
        if index_range == "parts" and i > len(lam):
            gens.append(VipGenerator(i, p, n, excluded=True))
        elif p < 1 or i > p:
            gens.append(VipGenerator(i, p, n))
        else:
            gens.append(v_ip_generators(i, p, n, convention))
    eqs = EquationSet(
        algebra="gl",
        n=n,
        lam=lam,
        metadata={"generators": "weyman", "convention": convention, "index_range": index_range},
    )
    for g in gens:
        for (P, Q), poly in zip(g.pairs, g.polys):
            eqs.add(poly, {"kind": "V", "i": g.i, "p": g.p, "rows": list(P), "cols": list(Q)})
    return JLambdaPresentation(lam, gens, eqs)


@dataclass
class ComparisonReport:
    lam: Partition
    closure_count: int
    closure_raw_count: int
    weyman_spanning_count: int
    weyman_distinct_count: int
    samples: int
    seed: int
    agreement: bool
    mismatches: list[dict[str, Any]]
    common: list[Polynomial]

    def to_json(self) -> dict[str, Any]:
        return {
            "lambda": list(self.lam.parts),
            "closure_count": self.closure_count,
            "closure_raw_count": self.closure_raw_count,
            "weyman_spanning_count": self.weyman_spanning_count,
            "weyman_distinct_count": self.weyman_distinct_count,
            "samples_per_partition": self.samples,
            "seed": self.seed,
            "oracle_agreement": self.agreement,
            "mismatches": self.mismatches,
            "common_count": len(self.common),
            "common": [p.to_json() for p in self.common],
        }


def compare_generator_sets(
    lam: Partition,
    samples: int = 20,
    seed: int = 0,
    convention: str = "ordered",
    closure: EquationSet | None = None,
    index_range: str = "parts",
) -> ComparisonReport:
    """Count both generator sets and compare their zero loci on sampled orbit points.

    For every partition ``mu`` of ``n``, ``samples`` points of ``O_mu`` are
    drawn with seeds ``seed, seed + 1, ...``. Agreement means each point is
    a common zero of both sets exactly when ``mu`` is dominated by ``lam``.
    """
    F = closure if closure is not None else closure_equations(lam)
    W = j_lambda_generators(lam, convention, index_range)
    points = [
        sample_orbit_point(mu, seed + s)
        for mu in enumerate_partitions(lam.n)
        for s in range(samples)
    ]
    in_f = membership_many(points, F)
    in_w = membership_many(points, W.equations)
    mismatches = []
    for pt, a, b in zip(points, in_f, in_w):
        expected = dominance_leq(pt.mu, lam)
        if a != expected or b != expected:
            mismatches.append(
                {"mu": list(pt.mu.parts), "seed": pt.seed, "closure": a, "weyman": b, "dominated": expected}
            )
    f_keys = {p.sign_normalized() for p in F.polynomials()}
    common = [p for p in W.equations.polynomials() if p.sign_normalized() in f_keys]
    return ComparisonReport(
        lam=lam,
        closure_count=len(F),
        closure_raw_count=F.raw_count,
        weyman_spanning_count=W.spanning_count,
        weyman_distinct_count=len(W.equations),
        samples=samples,
        seed=seed,
        agreement=not mismatches,
        mismatches=mismatches,
        common=common,
    )
