"""Exact vanishing tests for large polynomial systems at integer points.

A polynomial system is flattened into CSR-style arrays once and then
evaluated modulo 31-bit primes by a compiled kernel, many points per pass.
The test stays exact: a nonzero residue proves the value is nonzero, and
zero residues modulo primes whose product exceeds ``sum|c| * max|x|^deg``
prove the value is zero.
"""

from __future__ import annotations

from functools import lru_cache
from math import prod
from typing import Sequence

import numpy as np

from .polyalg import EXP_BITS, MAX_DIM, Polynomial
from .primes import is_prime, primes_below

PRIMES = tuple(primes_below(1 << 31, 16))


@lru_cache(maxsize=None)
def _kernel():
    import numba

    @numba.njit(cache=True, nogil=True)
    def mulmod(a, b, p, pinv):
        # a, b < p < 2^31: the float quotient is off by at most one
        q = np.int64(np.float64(a) * np.float64(b) * pinv)
        r = a * b - q * p
        if r < 0:
            r += p
        elif r >= p:
            r -= p
        return r

    @numba.njit(cache=True, nogil=True)
    def first_nonzero(poly_ptr, fac_ptr, fac_idx, coeff_mod, values, p, maxexp):
        """values: (nvars, npoints) residues. Returns per point the index of a
        polynomial with nonzero residue, or -1."""
        nv, npts = values.shape
        width = maxexp + 1
        pinv = 1.0 / p
        table = np.empty((nv * width, npts), dtype=np.int64)
        for v in range(nv):
            for s in range(npts):
                table[v * width, s] = 1
            for e in range(1, width):
                for s in range(npts):
                    table[v * width + e, s] = mulmod(table[v * width + e - 1, s], values[v, s], p, pinv)
        out = np.full(npts, -1, dtype=np.int64)
        remaining = npts
        acc = np.zeros(npts, dtype=np.int64)
        term = np.empty(npts, dtype=np.int64)
        npolys = poly_ptr.shape[0] - 1
        for j in range(npolys):
            acc[:] = 0
            count = 0
            for t in range(poly_ptr[j], poly_ptr[j + 1]):
                c = coeff_mod[t]
                for s in range(npts):
                    term[s] = c
                for f in range(fac_ptr[t], fac_ptr[t + 1]):
                    row = fac_idx[f]
                    for s in range(npts):
                        term[s] = mulmod(term[s], table[row, s], p, pinv)
                for s in range(npts):
                    acc[s] += term[s]
                count += 1
                if count == 1 << 30:
                    for s in range(npts):
                        acc[s] %= p
                    count = 0
            for s in range(npts):
                if out[s] < 0 and acc[s] % p != 0:
                    out[s] = j
                    remaining -= 1
            if remaining == 0:
                break
        return out

    return first_nonzero


class CompiledSystem:
    """A list of polynomials in ``x_i_j`` (no ``t``) prepared for fast exact zero tests."""

    def __init__(self, polys: Sequence[Polynomial], n: int):
        if not 1 <= n <= MAX_DIM:
            raise ValueError(f"dimension {n} out of range")
        self.n = n
        self.npolys = len(polys)
        monos: list[int] = []
        coeffs: list[int] = []
        poly_ptr = [0]
        self.abs_sums = []
        for g in polys:
            for m, c in g.items():
                monos.append(m)
                coeffs.append(c)
            poly_ptr.append(len(monos))
            self.abs_sums.append(sum(abs(c) for _, c in g.items()))
        self._coeffs = coeffs
        self.poly_ptr = np.asarray(poly_ptr, dtype=np.int64)

        # decode packed monomials chunkwise into (term, slot, exponent) triples
        nslots = (n - 1) * MAX_DIM + n
        nbytes = nslots * EXP_BITS // 8
        limit = 1 << (nslots * EXP_BITS)
        term_ids, slots, exps = [], [], []
        chunk = 1 << 16
        for lo in range(0, len(monos), chunk):
            part = monos[lo:lo + chunk]
            if any(m >= limit for m in part):
                raise ValueError("compiled systems only support x_i_j with i, j <= n")
            raw = b"".join(m.to_bytes(nbytes, "little") for m in part)
            grid = np.frombuffer(raw, dtype="<u2").reshape(len(part), nslots)
            t_idx, s_idx = np.nonzero(grid)
            term_ids.append(t_idx + lo)
            slots.append(s_idx)
            exps.append(grid[t_idx, s_idx].astype(np.int64))
        term_ids = np.concatenate(term_ids) if term_ids else np.zeros(0, dtype=np.int64)
        slots = np.concatenate(slots) if slots else np.zeros(0, dtype=np.int64)
        exps = np.concatenate(exps) if exps else np.zeros(0, dtype=np.int64)
        rows, cols = np.divmod(slots, MAX_DIM)
        if np.any(cols >= n):
            raise ValueError("compiled systems only support x_i_j with i, j <= n")
        var = rows * n + cols
        self.maxexp = int(exps.max()) if exps.size else 1
        self.fac_ptr = np.concatenate(([0], np.cumsum(np.bincount(term_ids, minlength=len(monos))))).astype(np.int64)
        self.fac_idx = (var * (self.maxexp + 1) + exps).astype(np.int64)
        term_deg = np.bincount(term_ids, weights=exps, minlength=len(monos)).astype(np.int64)
        self.degrees = [
            int(term_deg[a:b].max()) if b > a else 0 for a, b in zip(poly_ptr, poly_ptr[1:])
        ]
        self._coeff_mod: dict[int, np.ndarray] = {}

    def _coeffs_mod(self, p: int) -> np.ndarray:
        arr = self._coeff_mod.get(p)
        if arr is None:
            arr = np.asarray([c % p for c in self._coeffs], dtype=np.int64)
            self._coeff_mod[p] = arr
        return arr

    def magnitude_bound(self, point: Sequence[Sequence[int]]) -> int:
        """Upper bound on ``|g(point)|`` over every polynomial ``g`` of the system."""
        big = max(1, max(abs(x) for row in point for x in row))
        return max((s * big**d for s, d in zip(self.abs_sums, self.degrees)), default=0)

    def first_nonzero_mod(self, points: Sequence[Sequence[Sequence[int]]], p: int) -> list[int]:
        values = np.asarray(
            [[x % p for row in pt for x in row] for pt in points], dtype=np.int64
        ).T.copy()
        out = _kernel()(self.poly_ptr, self.fac_ptr, self.fac_idx, self._coeffs_mod(p), values, p, self.maxexp)
        return [int(x) for x in out]

    def first_nonzero_many(self, points: Sequence[Sequence[Sequence[int]]]) -> list[int]:
        """Per point, the index of some polynomial proven nonzero there, or -1 if all vanish."""
        result = [-1] * len(points)
        if self.npolys == 0 or not points:
            return result
        bounds = [self.magnitude_bound(pt) for pt in points]
        pending = list(range(len(points)))
        modulus = 1
        for p in _prime_stream():
            if not pending:
                break
            found = self.first_nonzero_mod([points[i] for i in pending], p)
            modulus *= p
            still = []
            for i, idx in zip(pending, found):
                if idx >= 0:
                    result[i] = idx
                elif modulus <= bounds[i]:
                    still.append(i)
            pending = still
        return result

    def first_nonzero(self, point: Sequence[Sequence[int]]) -> int:
        return self.first_nonzero_many([point])[0]

    def all_vanish(self, point: Sequence[Sequence[int]]) -> bool:
        return self.first_nonzero(point) < 0


def _prime_stream():
    yield from PRIMES
    c = PRIMES[-1] - 1
    while True:
        if is_prime(c):
            yield c
        c -= 1
