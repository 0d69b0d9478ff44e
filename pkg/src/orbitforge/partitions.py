"""Integer partitions indexing nilpotent orbits.

A partition of ``n`` is stored exactly as given: a non-increasing tuple of
positive parts. Zero padding needed by dominance comparisons and by
:func:`weyman_lambda_i` happens on the fly.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import accumulate, zip_longest
from typing import Iterable, Sequence


class PartitionError(ValueError):
    """Raised for malformed partitions or incompatible partition arguments."""


@dataclass(frozen=True, order=False)
class Partition:
    """A non-increasing sequence of positive integers.

    >>> Partition([2, 1]).n
    3
    """

    parts: tuple[int, ...]
    n: int = field(init=False)

    def __init__(self, parts: Iterable[int]):
        parts = tuple(parts)
        if not parts:
            raise PartitionError("partition must have at least one part")
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int):
                raise PartitionError(f"parts must be integers, got {p!r}")
            if p < 1:
                raise PartitionError(f"parts must be positive, got {p}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise PartitionError(f"parts must be non-increasing, got {list(parts)}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "n", sum(parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the bracketed form ``"[2,1]"``."""
        try:
            value = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PartitionError(f"cannot parse partition {text!r}") from exc
        if not isinstance(value, list):
            raise PartitionError(f"partition must be a bracketed list, got {text!r}")
        return cls(value)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    @property
    def largest(self) -> int:
        return self.parts[0]

    def is_trivial(self) -> bool:
        """True for ``[1, ..., 1]``, the partition of the zero orbit."""
        return self.largest == 1


@dataclass(frozen=True)
class RankSequence:
    """Ranks ``r_k = rank(X^k)`` for ``k = 1..largest part``."""

    ranks: tuple[int, ...]

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((k, r) for k, r in enumerate(self.ranks, start=1))

    def __getitem__(self, k: int) -> int:
        """Rank of the ``k``-th power (1-based); zero past the end."""
        if k < 1:
            raise IndexError(k)
        return self.ranks[k - 1] if k <= len(self.ranks) else 0


def rank_counting_f(x: int) -> int:
    return x - 1 if x > 0 else 0


def rank_sequence(lam: Partition) -> RankSequence:
    ranks = []
    current = list(lam.parts)
    for _ in range(lam.largest):
        current = [rank_counting_f(x) for x in current]
        ranks.append(sum(current))
    return RankSequence(tuple(ranks))


def _partial_sums(a: Sequence[int], b: Sequence[int]):
    pairs = list(zip_longest(a, b, fillvalue=0))
    return accumulate(p for p, _ in pairs), accumulate(q for _, q in pairs)


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """Return True when ``mu`` is dominated by ``lam``.

    Under the orbit correspondence this is exactly ``O_mu`` lying in the
    closure of ``O_lam``.
    """
    if mu.n != lam.n:
        raise PartitionError(f"incomparable sizes: {mu.n} and {lam.n}")
    sm, sl = _partial_sums(mu.parts, lam.parts)
    return all(x <= y for x, y in zip(sm, sl))


def dominance_lt(mu: Partition, lam: Partition) -> bool:
    return mu != lam and dominance_leq(mu, lam)


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order."""
    if n < 1:
        raise PartitionError(f"n must be positive, got {n}")
    out: list[Partition] = []

    def rec(remaining: int, cap: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for part in range(min(remaining, cap), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def weyman_lambda_i(lam: Partition, i: int) -> int:
    """``lam_1 + ... + lam_i - i + 1`` with ``lam`` zero-padded to length ``i``."""
    if not 1 <= i <= lam.n:
        raise PartitionError(f"index i={i} out of range 1..{lam.n}")
    return sum(lam.parts[:i]) - i + 1


def gerstenhaber_valid(lam: Partition) -> bool:
    """Whether ``lam`` labels a nilpotent orbit of sp_2m.

    Every odd part must occur with even multiplicity.
    """
    if lam.n % 2:
        raise PartitionError(f"not a partition of 2m: {lam} sums to {lam.n}")
    counts = Counter(lam.parts)
    return all(mult % 2 == 0 for part, mult in counts.items() if part % 2)


def conjugate(lam: Partition) -> Partition:
    return Partition(sum(1 for p in lam.parts if p > j) for j in range(lam.largest))
