"""Exact sparse multivariate polynomials over the integers.

Variables are the matrix entries ``x_i_j`` (1-based) plus one chart
variable ``t``. A monomial is packed into a single Python int with
``EXP_BITS`` bits per variable slot, row-major, ``t`` in the highest slot,
so multiplying monomials is integer addition and comparing packed ints
compares exponent vectors lexicographically from the largest variable
down. Terms are kept in graded lex order (``grlex-rowmajor-v1``) with
``x_1_1 < x_1_2 < ... < x_n_n < t``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, prod
from typing import Iterable, Iterator, Mapping, Sequence, Union

MONOMIAL_ORDER = "grlex-rowmajor-v1"

EXP_BITS = 16
EXP_MASK = (1 << EXP_BITS) - 1
MAX_DIM = 32
T_SLOT = MAX_DIM * MAX_DIM

Var = tuple[int, int]
T: Var = (0, 0)  # chart variable; encoded as [0, 0, e] in JSON

Number = Union[int, Fraction]


class PolynomialError(ValueError):
    pass


def _slot(var: Var) -> int:
    if var == T:
        return T_SLOT
    i, j = var
    if not (1 <= i <= MAX_DIM and 1 <= j <= MAX_DIM):
        raise PolynomialError(f"variable index out of range: x_{i}_{j}")
    return (i - 1) * MAX_DIM + (j - 1)


def _var(slot: int) -> Var:
    if slot == T_SLOT:
        return T
    return (slot // MAX_DIM + 1, slot % MAX_DIM + 1)


def pack(factors: Iterable[tuple[Var, int]]) -> int:
    m = 0
    for var, e in factors:
        if e < 0 or e >= EXP_MASK:
            raise PolynomialError(f"exponent out of range: {e}")
        m += e << (EXP_BITS * _slot(var))
    return m


@lru_cache(maxsize=1 << 16)
def unpack(m: int) -> tuple[tuple[Var, int], ...]:
    """Factors of a packed monomial in ascending variable order."""
    out = []
    slot = 0
    while m:
        e = m & EXP_MASK
        if e:
            out.append((_var(slot), e))
        m >>= EXP_BITS
        slot += 1
    return tuple(out)


def monomial_degree(m: int) -> int:
    # the base-2^16 digit sum is congruent to m mod 2^16 - 1; degrees stay below that
    return m % EXP_MASK


def _grlex_key(m: int) -> tuple[int, int]:
    return (monomial_degree(m), m)


def var_name(var: Var) -> str:
    return "t" if var == T else f"x_{var[0]}_{var[1]}"


class Polynomial:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms: dict[int, int] = {m: c for m, c in (terms or {}).items() if c}
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> "Polynomial":
        # caller guarantees no zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, i: int, j: int) -> "Polynomial":
        return cls._raw({pack([((i, j), 1)]): 1})

    @classmethod
    def t(cls) -> "Polynomial":
        return cls._raw({pack([(T, 1)]): 1})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, Iterable[tuple[Var, int]]]]) -> "Polynomial":
        acc: dict[int, int] = {}
        for c, factors in terms:
            m = pack(factors)
            acc[m] = acc.get(m, 0) + c
        return cls(acc)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if len(self._terms) < len(other._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for m, c in b.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int) and not isinstance(other, bool):
            if other == 0:
                return ZERO
            return Polynomial._raw({m: c * other for m, c in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, int] = {}
        get = out.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                k = m1 + m2
                out[k] = get(k, 0) + c1 * c2
        return Polynomial._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise PolynomialError("negative power")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # -- inspection ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> list[tuple[int, int]]:
        """``(packed monomial, coefficient)`` pairs, leading term first."""
        return sorted(self._terms.items(), key=lambda mc: _grlex_key(mc[0]), reverse=True)

    def leading_coefficient(self) -> int:
        if not self._terms:
            return 0
        return self._terms[max(self._terms, key=_grlex_key)]

    def sign_normalized(self) -> "Polynomial":
        """The same polynomial or its negative, whichever has positive leading coefficient."""
        return -self if self.leading_coefficient() < 0 else self

    def degree(self) -> int:
        if not self._terms:
            raise PolynomialError("degree undefined for the zero polynomial")
        return max(monomial_degree(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({monomial_degree(m) for m in self._terms}) <= 1

    def variables(self) -> set[Var]:
        out: set[Var] = set()
        for m in self._terms:
            out.update(v for v, _ in unpack(m))
        return out

    def uses_t(self) -> bool:
        shift = EXP_BITS * T_SLOT
        return any(m >> shift for m in self._terms)

    def coefficients(self) -> list[int]:
        return [c for _, c in self.terms()]

    def map_coefficients(self, f) -> "Polynomial":
        return Polynomial({m: f(c) for m, c in self._terms.items()})

    def items(self):
        return self._terms.items()

    # -- evaluation ------------------------------------------------------------

    def evaluate(self, point: Sequence[Sequence[Number]], t_value: Number | None = None) -> Number:
        """Exact value at the matrix ``point`` (and ``t = t_value``)."""
        total: Number = 0
        for m, c in self._terms.items():
            term: Number = c
            for (i, j), e in unpack(m):
                if i == 0:
                    if t_value is None:
                        raise PolynomialError("polynomial uses t but no t_value was given")
                    val = t_value
                else:
                    try:
                        val = point[i - 1][j - 1]
                    except IndexError:
                        raise PolynomialError(f"point has no entry for x_{i}_{j}") from None
                term = term * val**e if e > 1 else term * val
            total += term
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    # -- formatting --------------------------------------------------------------

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self, namer=None) -> str:
        """Infix form with ``*`` and ``^``; ``namer`` maps ``(i, j)`` or ``T`` to a variable name."""
        namer = namer or var_name
        if not self._terms:
            return "0"
        pieces = []
        for idx, (m, c) in enumerate(self.terms()):
            factors = [namer(v) if e == 1 else f"{namer(v)}^{e}" for v, e in unpack(m)]
            mag = abs(c)
            body = "*".join(factors)
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            if idx == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def to_json(self) -> list:
        return [
            [str(c), [[v[0], v[1], e] for v, e in unpack(m)]]
            for m, c in self.terms()
        ]

    @classmethod
    def from_json(cls, data: list) -> "Polynomial":
        return cls.from_terms(
            (int(c), [((i, j), e) for i, j, e in factors]) for c, factors in data
        )


def _coerce(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Polynomial.const(x)
    return NotImplemented


ZERO = Polynomial()
ONE = Polynomial.const(1)


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def coefficients(g: Polynomial) -> list[int]:
    """All nonzero coefficients of ``g`` in canonical term order (a multiset)."""
    return g.coefficients()


def occurrence_count(g: Polynomial, var: Var) -> int:
    """Number of terms of ``g`` whose monomial involves ``var``."""
    shift = EXP_BITS * _slot(var)
    return sum(1 for m in g._terms if (m >> shift) & EXP_MASK)


def omega_g(g: Polynomial, n: int) -> int:
    """``sum_{d=1}^{deg g} C(d + n - 1, n - 1)``, taken literally."""
    deg = g.degree()
    return sum(comb(d + n - 1, n - 1) for d in range(1, deg + 1))


# -- symbolic matrices ----------------------------------------------------------


class SymbolicMatrix:
    """Square matrix of polynomials."""

    __slots__ = ("rows", "_minor_memo")

    def __init__(self, rows: Sequence[Sequence[Polynomial | int]]):
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise PolynomialError("matrix must be square")
        self.rows: tuple[tuple[Polynomial, ...], ...] = tuple(
            tuple(e if isinstance(e, Polynomial) else Polynomial.const(e) for e in r) for r in rows
        )
        self._minor_memo: dict[tuple[tuple[int, ...], tuple[int, ...]], Polynomial] = {}

    @classmethod
    def generic(cls, n: int) -> "SymbolicMatrix":
        return _generic(n)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Polynomial:
        i, j = ij
        return self.rows[i - 1][j - 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolicMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __matmul__(self, other: "SymbolicMatrix") -> "SymbolicMatrix":
        n = self.dim
        if other.dim != n:
            raise PolynomialError("dimension mismatch")
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new_row = []
            for col in cols:
                acc = ZERO
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                new_row.append(acc)
            out.append(new_row)
        return SymbolicMatrix(out)

    def transpose(self) -> "SymbolicMatrix":
        return SymbolicMatrix(list(zip(*self.rows)))

    def __add__(self, other: "SymbolicMatrix") -> "SymbolicMatrix":
        return SymbolicMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def minor(self, P: Iterable[int], Q: Iterable[int]) -> Polynomial:
        """Determinant of the submatrix on rows ``P`` and columns ``Q`` (both sorted ascending)."""
        P = tuple(sorted(P))
        Q = tuple(sorted(Q))
        if len(P) != len(Q):
            raise PolynomialError("non-square minor")
        n = self.dim
        if any(not 1 <= x <= n for x in P + Q) or len(set(P)) != len(P) or len(set(Q)) != len(Q):
            raise PolynomialError(f"bad index sets {P}, {Q} for dimension {n}")
        return self._det(P, Q)

    def _det(self, R: tuple[int, ...], C: tuple[int, ...]) -> Polynomial:
        # Laplace expansion along the last row, memoized on (rows, cols)
        if not R:
            return ONE
        key = (R, C)
        hit = self._minor_memo.get(key)
        if hit is not None:
            return hit
        r = R[-1]
        row = self.rows[r - 1]
        rest = R[:-1]
        sign = 1 if (len(R) - 1) % 2 == 0 else -1
        acc = ZERO
        for idx, c in enumerate(C):
            entry = row[c - 1]
            if entry:
                sub = self._det(rest, C[:idx] + C[idx + 1:])
                if sub:
                    term = entry * sub
                    acc = acc + (term if sign * (1 if idx % 2 == 0 else -1) > 0 else -term)
        self._minor_memo[key] = acc
        return acc

    def det(self) -> Polynomial:
        idx = tuple(range(1, self.dim + 1))
        return self._det(idx, idx)

    def evaluate(self, point, t_value=None) -> list[list[Number]]:
        return [[e.evaluate(point, t_value) for e in r] for r in self.rows]


@lru_cache(maxsize=None)
def _generic(n: int) -> SymbolicMatrix:
    if not 1 <= n <= MAX_DIM:
        raise PolynomialError(f"dimension must be in 1..{MAX_DIM}")
    return SymbolicMatrix([[Polynomial.var(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])


def generic_matrix(n: int) -> SymbolicMatrix:
    return _generic(n)


def matrix_power(M: SymbolicMatrix, k: int) -> SymbolicMatrix:
    if k < 1:
        raise PolynomialError("power must be positive")
    result = M
    for _ in range(k - 1):
        result = result @ M
    return result


@lru_cache(maxsize=None)
def generic_power(n: int, k: int) -> SymbolicMatrix:
    """``X^k`` for the generic ``n x n`` matrix, shared so minor memos are reused."""
    if k == 1:
        return _generic(n)
    return generic_power(n, k - 1) @ _generic(n)


def minor(M: SymbolicMatrix, P: Iterable[int], Q: Iterable[int]) -> Polynomial:
    return M.minor(P, Q)


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    s = list(seq)
    sign = 1
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


def leibniz_minor(M: SymbolicMatrix, P: Sequence[int], Q: Sequence[int]) -> Polynomial:
    """Same contract as :meth:`SymbolicMatrix.minor`, by the permutation expansion."""
    P = sorted(P)
    Q = sorted(Q)
    if len(P) != len(Q):
        raise PolynomialError("non-square minor")
    if not P:
        return ONE
    acc = ZERO
    for perm in permutations(range(len(Q))):
        entries = [M[P[a], Q[perm[a]]] for a in range(len(P))]
        if all(entries):
            acc = acc + permutation_sign(perm) * prod(entries[1:], start=entries[0])
    return acc


def subsets(n: int, size: int) -> Iterator[tuple[int, ...]]:
    """``size``-subsets of ``{1..n}`` in lexicographic order."""
    return combinations(range(1, n + 1), size)
