"""Nilpotent orbit closures in sp_2m.

The form is the alternating anti-diagonal ``Omega`` (``+1`` in the top
right corner). Two constraint systems are offered: the Lie algebra
condition ``X^T Omega + Omega X = 0`` (``mode="lie"``, the default) and the
three literal families of quadratic equations written for the group
condition ``X^T Omega X = Omega`` (``mode="paper"``).
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import intmatrix
from .orbits_gl import (
    EXPANSION_LIMIT,
    Chart,
    EquationSet,
    OrbitPoint,
    check_orbit_point,
    closure_equations,
    nonvanishing_minors,
)
from .partitions import Partition, PartitionError, gerstenhaber_valid
from .polyalg import ONE, Polynomial, SymbolicMatrix, generic_matrix

log = logging.getLogger(__name__)

MODES = ("lie", "paper")
OMEGA_PATTERN = "antidiagonal-alternating-plus-first"


class SymplecticError(ValueError):
    pass


def omega_matrix(m: int) -> list[list[int]]:
    """``Omega[i][2m+1-i] = (-1)^(i+1)`` (1-based), zero elsewhere."""
    if m < 1:
        raise SymplecticError("m must be positive")
    n = 2 * m
    out = intmatrix.zeros(n)
    for i in range(n):
        out[i][n - 1 - i] = 1 if i % 2 == 0 else -1
    return out


@dataclass
class SymplecticConstraints:
    m: int
    mode: str
    equations: EquationSet
    family_sizes: dict[str, int]

    @property
    def raw_count(self) -> int:
        return self.equations.raw_count


def symplectic_lie_equations(m: int) -> SymplecticConstraints:
    """Entries of ``X^T Omega + Omega X`` strictly above the diagonal.

    The expression is skew-symmetric, so these ``m(2m - 1)`` linear forms
    are all the independent ones.
    """
    n = 2 * m
    X = generic_matrix(n)
    W = SymbolicMatrix(omega_matrix(m))
    A = X.transpose() @ W + W @ X
    eqs = EquationSet(algebra="sp", n=n, metadata={"sp_mode": "lie", "omega": OMEGA_PATTERN})
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            eqs.add(A[i, j].sign_normalized(), {"kind": "sp-lie", "entry": [i, j]})
    return SymplecticConstraints(m, "lie", eqs, {"lie": len(eqs)})


def lambda_sp_sets(m: int) -> SymplecticConstraints:
    """The three families of quadratic equations, built exactly as written.

    For ``n = 2m`` and ``S(i, j) = sum_k (-1)^k x_{2m+1-k, i} x_{k, j}``:
    ``1 + S(2q+1, n-2q)`` for ``q = 0..m-1``, ``1 - S(2q, n-2q+1)`` for
    ``q = 1..m`` and ``S(r, s)`` for every other index pair. Zero
    polynomials (the diagonal pairs) and equations repeated up to sign are
    merged by the equation set; ``raw_count`` keeps the literal ``4m^2``.
    """
    n = 2 * m
    X = generic_matrix(n)

    def s(i: int, j: int, sign: int) -> Polynomial:
        acc = Polynomial()
        for k in range(1, n + 1):
            term = X[n + 1 - k, i] * X[k, j]
            acc = acc + (term if (-1) ** k * sign > 0 else -term)
        return acc

    eqs = EquationSet(algebra="sp", n=n, metadata={"sp_mode": "paper", "condition": "group", "omega": OMEGA_PATTERN})
    odd_pairs = [(2 * q + 1, n - 2 * q) for q in range(m)]
    even_pairs = [(2 * q, n - 2 * q + 1) for q in range(1, m + 1)]
    for q, (i, j) in enumerate(odd_pairs):
        eqs.add(ONE + s(i, j, 1), {"kind": "sp-lambda", "family": "odd", "q": q, "entry": [i, j]})
    for q, (i, j) in enumerate(even_pairs, start=1):
        eqs.add(ONE + s(i, j, -1), {"kind": "sp-lambda", "family": "even", "q": q, "entry": [i, j]})
    special = set(odd_pairs) | set(even_pairs)
    rest = 0
    for r in range(1, n + 1):
        for c in range(1, n + 1):
            if (r, c) in special:
                continue
            eqs.add(s(r, c, 1), {"kind": "sp-lambda", "family": "rest", "entry": [r, c]})
            rest += 1
    sizes = {"odd": len(odd_pairs), "even": len(even_pairs), "rest": rest}
    return SymplecticConstraints(m, "paper", eqs, sizes)


def symplectic_constraints(m: int, mode: str = "lie") -> SymplecticConstraints:
    if mode == "lie":
        return symplectic_lie_equations(m)
    if mode == "paper":
        return lambda_sp_sets(m)
    raise SymplecticError(f"unknown symplectic mode {mode!r}")


def _require_sp(lam: Partition) -> int:
    try:
        ok = gerstenhaber_valid(lam)
    except PartitionError as exc:
        raise SymplecticError(str(exc)) from exc
    if not ok:
        raise SymplecticError(f"no symplectic orbit for this partition: {lam}")
    return lam.n // 2


def sp_closure_equations(
    lam: Partition, mode: str = "lie", full_k_range: bool = False, limit: int | None = EXPANSION_LIMIT
) -> EquationSet:
    """Closure equations of ``lam`` together with the chosen symplectic constraints."""
    m = _require_sp(lam)
    if mode not in MODES:
        raise SymplecticError(f"unknown symplectic mode {mode!r}")
    gl = closure_equations(lam, full_k_range=full_k_range, limit=limit)
    cons = symplectic_constraints(m, mode)
    eqs = EquationSet(
        algebra="sp",
        n=lam.n,
        lam=lam,
        metadata={
            "sp_mode": mode,
            "gerstenhaber": True,
            "omega": OMEGA_PATTERN,
            "k_range": gl.metadata["k_range"],
            "gl_equation_count": len(gl),
            "sp_equation_count": len(cons.equations),
        },
    )
    if mode == "paper":
        eqs.metadata["condition"] = "group"
    eqs.extend(gl)
    eqs.extend(cons.equations)
    return eqs


def sp_orbit_charts(lam: Partition, mode: str = "lie", limit: int | None = EXPANSION_LIMIT) -> list[Chart]:
    _require_sp(lam)
    if lam.is_trivial():
        log.warning("partition %s is the origin orbit; it has no localization charts", lam)
        return []
    base = sp_closure_equations(lam, mode, limit=limit)
    t = Polynomial.t()
    return [
        Chart(base, mm.poly, mm.poly * t - 1, (mm.j, mm.k), mm.rows, mm.cols)
        for mm in nonvanishing_minors(lam, limit=limit)
    ]


# -- symplectic sample points -----------------------------------------------------
#
# Representatives are built for the block form Omega0 = [[0, I], [-I, 0]] as
# [[A, B], [0, -A^T]] with B symmetric, conjugated by integer symplectic
# transvections, then moved to Omega by a signed permutation T with
# T^T Omega T = Omega0.


def _jordan_block(size: int) -> list[list[int]]:
    out = intmatrix.zeros(size)
    for a in range(size - 1):
        out[a][a + 1] = 1
    return out


def symplectic_representative(mu: Partition) -> list[list[int]]:
    """A nilpotent element of sp(Omega0) with Jordan type ``mu``."""
    _require_sp(mu)
    counts = Counter(mu.parts)
    a_blocks: list[list[list[int]]] = []
    b_blocks: list[list[list[int]]] = []
    for part in sorted(counts, reverse=True):
        mult = counts[part]
        for _ in range(mult // 2):
            # a pair of equal parts: X = diag(J, -J^T) on the two halves
            a_blocks.append(_jordan_block(part))
            b_blocks.append(intmatrix.zeros(part))
        if mult % 2:
            # a single even part 2a: [[J_a, E_aa], [0, -J_a^T]] is one block of size 2a
            half = part // 2
            a_blocks.append(_jordan_block(half))
            e = intmatrix.zeros(half)
            e[half - 1][half - 1] = 1
            b_blocks.append(e)
    A = intmatrix.block_diag(a_blocks)
    B = intmatrix.block_diag(b_blocks)
    m = len(A)
    out = intmatrix.zeros(2 * m)
    for i in range(m):
        for j in range(m):
            out[i][j] = A[i][j]
            out[i][m + j] = B[i][j]
            out[m + i][m + j] = -A[j][i]
    return out


def omega_basis_change(m: int) -> tuple[list[list[int]], list[list[int]]]:
    """``(T, T^-1)`` with ``T^T Omega T = Omega0``."""
    n = 2 * m
    T = intmatrix.zeros(n)
    for i in range(m):
        T[i][i] = 1 if i % 2 == 0 else -1  # u_i = (-1)^i e_i (0-based)
        T[n - 1 - i][m + i] = 1  # v_i = e_{n-1-i}
    Tinv = intmatrix.transpose(T)  # signed permutation
    return T, Tinv


def _omega0(m: int) -> list[list[int]]:
    n = 2 * m
    out = intmatrix.zeros(n)
    for i in range(m):
        out[i][m + i] = 1
        out[m + i][i] = -1
    return out


def random_symplectic(m: int, rng: np.random.Generator, steps: int) -> tuple[list[list[int]], list[list[int]]]:
    """``(g, g^-1)`` in Sp(Omega0, Z) from ``steps`` random elementary generators."""
    n = 2 * m
    g = intmatrix.identity(n)
    ginv = intmatrix.identity(n)
    for _ in range(steps):
        kind = int(rng.integers(0, 3))
        c = int(rng.integers(-3, 4))
        i, j = (int(x) for x in rng.integers(0, m, size=2))
        E = intmatrix.identity(n)
        Einv = intmatrix.identity(n)
        if kind == 0:
            # [[I, S], [0, I]] with S symmetric
            E[i][m + j] += c
            Einv[i][m + j] -= c
            if i != j:
                E[j][m + i] += c
                Einv[j][m + i] -= c
        elif kind == 1:
            # [[I, 0], [S, I]]
            E[m + i][j] += c
            Einv[m + i][j] -= c
            if i != j:
                E[m + j][i] += c
                Einv[m + j][i] -= c
        else:
            # diag(U, U^-T) with U = I + c e_ij
            if i == j:
                continue
            E[i][j] += c
            E[m + j][m + i] -= c
            Einv[i][j] -= c
            Einv[m + j][m + i] += c
        g = intmatrix.matmul(E, g)
        ginv = intmatrix.matmul(ginv, Einv)
    return g, ginv


def is_in_sp(matrix: Sequence[Sequence[int]], m: int) -> bool:
    W = omega_matrix(m)
    lhs = intmatrix.matmul(intmatrix.transpose(matrix), W)
    rhs = intmatrix.matmul(W, matrix)
    return all(a + b == 0 for r1, r2 in zip(lhs, rhs) for a, b in zip(r1, r2))


def sample_sp_orbit_point(mu: Partition, seed: int, steps: int | None = None) -> OrbitPoint:
    """Integer point of ``O_mu`` inside sp_2m for the form ``Omega``."""
    m = _require_sp(mu)
    rng = np.random.default_rng(seed)
    X0 = symplectic_representative(mu)
    g, ginv = random_symplectic(m, rng, 2 * mu.n if steps is None else steps)
    Y = intmatrix.matmul(intmatrix.matmul(g, X0), ginv)
    T, Tinv = omega_basis_change(m)
    Z = intmatrix.matmul(intmatrix.matmul(T, Y), Tinv)
    if not is_in_sp(Z, m):
        raise AssertionError("symplectic sample left sp_2m")
    check_orbit_point(Z, mu)
    return OrbitPoint(tuple(tuple(r) for r in Z), mu, seed)
