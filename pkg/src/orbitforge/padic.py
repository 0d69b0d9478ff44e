"""Coefficient bounds for p-adic integrality of the closure equations.

The closure equations and chart minors have integer coefficients; they
embed in ``Z_p[X, t]`` once ``p`` exceeds every coefficient that matters.
The bound used is ``max(r_k)!``. Only residues mod ``p`` are ever computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Any

from .orbits_gl import Equation, EquationSet, closure_equations, nonvanishing_minors
from .partitions import Partition, rank_sequence
from .polyalg import Polynomial, generic_matrix, occurrence_count
from .primes import is_prime, next_prime

DET_EXPANSION_LIMIT = 6


def coefficient_bound(lam: Partition) -> int:
    return factorial(max(rank_sequence(lam).ranks, default=0))


def smallest_admissible_prime(bound: int) -> int:
    if bound < 1:
        raise ValueError("bound must be at least 1")
    return next_prime(bound)


@dataclass
class CoefficientReport:
    lam: Partition
    max_coeff_f: int
    max_coeff_h: int
    paper_bound: int
    prime: int
    f_coefficients: list[list[int]]
    h_coefficients: list[list[int]]

    @property
    def f_exceeds_h(self) -> bool:
        return self.max_coeff_f > self.max_coeff_h

    @property
    def within_bound(self) -> bool:
        return self.max_coeff_f <= self.paper_bound

    def to_json(self, detail: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "lambda": list(self.lam.parts),
            "n": self.lam.n,
            "paper_bound": self.paper_bound,
            "prime": self.prime,
            "max_coeff_F": self.max_coeff_f,
            "max_coeff_H": self.max_coeff_h,
            "F_exceeds_H": self.f_exceeds_h,
            "F_within_bound": self.within_bound,
        }
        if detail:
            out["coefficients_F"] = self.f_coefficients
            out["coefficients_H"] = self.h_coefficients
        return out


def _coefficient_set(g: Polynomial) -> list[int]:
    return sorted(set(g.coefficients()))


def coefficient_report(lam: Partition, closure: EquationSet | None = None) -> CoefficientReport:
    F = closure if closure is not None else closure_equations(lam)
    f_sets = [_coefficient_set(e.poly) for e in F]
    h_sets = [_coefficient_set(m.poly) for m in nonvanishing_minors(lam)]
    bound = coefficient_bound(lam)
    return CoefficientReport(
        lam=lam,
        max_coeff_f=max((abs(c) for s in f_sets for c in s), default=0),
        max_coeff_h=max((abs(c) for s in h_sets for c in s), default=0),
        paper_bound=bound,
        prime=smallest_admissible_prime(bound),
        f_coefficients=f_sets,
        h_coefficients=h_sets,
    )


def det_occurrence_counts(n: int) -> dict[tuple[int, int], int]:
    """Terms of the expanded ``det(X_n)`` that involve each ``x_i_j``."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > DET_EXPANSION_LIMIT:
        raise ValueError(f"expansion too large: n={n} exceeds {DET_EXPANSION_LIMIT}")
    det = generic_matrix(n).det()
    return {(i, j): occurrence_count(det, (i, j)) for i in range(1, n + 1) for j in range(1, n + 1)}


def verify_det_occurrences(n: int) -> bool:
    target = factorial(n - 1)
    return all(c == target for c in det_occurrence_counts(n).values())


def reduce_polynomial(g: Polynomial, p: int) -> Polynomial:
    return g.map_coefficients(lambda c: c % p)


def reduce_mod_p(eqs: EquationSet, p: int) -> EquationSet:
    """Coefficientwise least non-negative residues mod ``p``.

    Equations stay aligned one to one with the input, even when a reduction
    vanishes or two reductions coincide, so ``reduced[i]`` is the image of
    ``eqs[i]``.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"modulus must be prime, got {p}")
    reduced = [Equation(reduce_polynomial(e.poly, p), [dict(x) for x in e.provenance]) for e in eqs]
    return EquationSet(
        algebra=eqs.algebra,
        n=eqs.n,
        lam=eqs.lam,
        equations=reduced,
        raw_count=len(reduced),
        metadata={**eqs.metadata, "modulus": p},
    )
