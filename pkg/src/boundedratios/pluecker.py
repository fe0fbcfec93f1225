"""Index-set combinatorics for Plücker coordinates of Gr(n, 2n).

A Plücker coordinate is named by a sorted n-subset of {1, ..., 2n}.  The
coordinates are ordered lexicographically, so coordinate 0 is [1..n] and the
last one is [n+1..2n].  Exponent vectors of Laurent monomials in the
coordinates live in Z^N with N = C(2n, n).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence


class IndexSetError(ValueError):
    """Raised for malformed index sets or minor specifications."""


def num_coords(n: int) -> int:
    return comb(2 * n, n)


@lru_cache(maxsize=None)
def all_indices(n: int) -> tuple[tuple[int, ...], ...]:
    """All n-subsets of {1..2n} in lexicographic order."""
    return tuple(combinations(range(1, 2 * n + 1), n))


@lru_cache(maxsize=None)
def index_table(n: int) -> dict[tuple[int, ...], int]:
    return {s: k for k, s in enumerate(all_indices(n))}


def _validate(elements: Sequence[int], n: int) -> tuple[int, ...]:
    s = tuple(sorted(int(x) for x in elements))
    if len(s) != n:
        raise IndexSetError(f"index set {list(elements)} must have {n} elements")
    if len(set(s)) != n:
        raise IndexSetError(f"index set {list(elements)} has repeated elements")
    if s and (s[0] < 1 or s[-1] > 2 * n):
        raise IndexSetError(f"index set {list(elements)} not inside 1..{2 * n}")
    return s


def lex_rank(elements: Sequence[int], n: int) -> int:
    """Position of a sorted n-subset of {1..2n} in lexicographic order.

    Uses the combinatorial number system, O(n) binomials.
    """
    s = _validate(elements, n)
    m = 2 * n
    total = comb(m, n) - 1
    for t, x in enumerate(s, start=1):
        total -= comb(m - x, n - t + 1)
    return total


def lex_unrank(rank: int, n: int) -> tuple[int, ...]:
    m = 2 * n
    if not 0 <= rank < comb(m, n):
        raise IndexSetError(f"rank {rank} out of range for n={n}")
    out = []
    x = 1
    k = n
    r = rank
    while k:
        # number of subsets that start with x at this position
        block = comb(m - x, k - 1)
        if r < block:
            out.append(x)
            k -= 1
        else:
            r -= block
        x += 1
    return tuple(out)


@dataclass(frozen=True, order=True)
class PluckerIndex:
    """A sorted n-subset of {1..2n}."""

    elements: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "elements", _validate(self.elements, self.n))

    @property
    def rank(self) -> int:
        return index_table(self.n)[self.elements]

    @classmethod
    def from_rank(cls, rank: int, n: int) -> "PluckerIndex":
        return cls(lex_unrank(rank, n), n)

    @classmethod
    def parse(cls, text: str, n: int) -> "PluckerIndex":
        return cls(parse_index_text(text, n), n)

    def __str__(self) -> str:
        return format_index(self.elements)

    def compact(self) -> str:
        return "".join(str(x) for x in self.elements)


_BRACKET = re.compile(r"^\s*\[([^\]]*)\]\s*$")


def parse_index_text(text: str, n: int) -> tuple[int, ...]:
    """Parse "[1 3 6 8]" or, when 2n <= 9, the packed form "[1368]"."""
    m = _BRACKET.match(text)
    if not m:
        raise IndexSetError(f"malformed index set {text!r}")
    body = m.group(1).strip()
    if not body:
        raise IndexSetError(f"empty index set {text!r}")
    if re.fullmatch(r"\d+", body) and len(body) > 1:
        if 2 * n > 9:
            raise IndexSetError(f"packed digits ambiguous for 2n={2 * n}: {text!r}")
        parts = list(body)
    else:
        parts = re.split(r"[\s,]+", body)
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise IndexSetError(f"malformed index set {text!r}") from None
    return _validate(vals, n)


def format_index(elements: Iterable[int]) -> str:
    return "[" + " ".join(str(x) for x in elements) + "]"


@dataclass(frozen=True)
class MinorSpec:
    """Row set and column set of a minor of an n x n matrix."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(sorted(self.rows))
        cols = tuple(sorted(self.cols))
        if len(rows) != len(cols):
            raise IndexSetError(f"minor has {len(rows)} rows but {len(cols)} columns")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise IndexSetError("minor rows/columns must be distinct")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    @property
    def size(self) -> int:
        return len(self.rows)


def embed_minor(m: MinorSpec, n: int) -> PluckerIndex:
    """Plücker index of the minor rows I, cols I': I ∪ {2n+1-i : i ∉ I'}."""
    if any(not 1 <= x <= n for x in m.rows + m.cols):
        raise IndexSetError(f"minor {m} not inside 1..{n}")
    missing = [i for i in range(1, n + 1) if i not in m.cols]
    return PluckerIndex(m.rows + tuple(2 * n + 1 - i for i in missing), n)


def minor_of(s: PluckerIndex | Sequence[int], n: int | None = None) -> MinorSpec:
    """Inverse of embed_minor."""
    if isinstance(s, PluckerIndex):
        n, elems = s.n, s.elements
    else:
        elems = _validate(s, n)
    rows = tuple(x for x in elems if x <= n)
    cols = tuple(sorted(2 * n + 1 - k for k in range(n + 1, 2 * n + 1) if k not in elems))
    return MinorSpec(rows, cols)


@dataclass(frozen=True)
class RatioVector:
    """Exponent vector of a Laurent monomial in the Plücker coordinates."""

    n: int
    alpha: tuple[int, ...]

    def __post_init__(self):
        alpha = tuple(int(a) for a in self.alpha)
        if len(alpha) != num_coords(self.n):
            raise ValueError(f"vector length {len(alpha)} != C({2 * self.n},{self.n})")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def zero(cls, n: int) -> "RatioVector":
        return cls(n, (0,) * num_coords(n))

    @classmethod
    def from_sets(cls, n: int, numerator: Iterable[Sequence[int]],
                  denominator: Iterable[Sequence[int]] = ()) -> "RatioVector":
        table = index_table(n)
        alpha = [0] * num_coords(n)
        for s in numerator:
            alpha[table[_validate(s, n)]] += 1
        for s in denominator:
            alpha[table[_validate(s, n)]] -= 1
        return cls(n, tuple(alpha))

    def __len__(self) -> int:
        return len(self.alpha)

    def __getitem__(self, k):
        return self.alpha[k]

    def __iter__(self):
        return iter(self.alpha)

    def __add__(self, other: "RatioVector") -> "RatioVector":
        return RatioVector(self.n, tuple(a + b for a, b in zip(self.alpha, other.alpha)))

    def __sub__(self, other: "RatioVector") -> "RatioVector":
        return RatioVector(self.n, tuple(a - b for a, b in zip(self.alpha, other.alpha)))

    def __neg__(self) -> "RatioVector":
        return RatioVector(self.n, tuple(-a for a in self.alpha))

    def scale(self, c: int) -> "RatioVector":
        return RatioVector(self.n, tuple(c * a for a in self.alpha))

    def is_zero(self) -> bool:
        return not any(self.alpha)

    def support(self) -> list[tuple[tuple[int, ...], int]]:
        """(index set, exponent) for every nonzero exponent, in lex order."""
        idx = all_indices(self.n)
        return [(idx[k], a) for k, a in enumerate(self.alpha) if a]

    def numerator(self) -> list[tuple[int, ...]]:
        """Index sets of the numerator, repeated by multiplicity."""
        return [s for s, a in self.support() for _ in range(a) if a > 0]

    def denominator(self) -> list[tuple[int, ...]]:
        return [s for s, a in self.support() for _ in range(-a) if a < 0]


@lru_cache(maxsize=None)
def _shift_perm(n: int) -> tuple[int, ...]:
    m = 2 * n
    table = index_table(n)
    return tuple(table[tuple(sorted(x % m + 1 for x in s))] for s in all_indices(n))


@lru_cache(maxsize=None)
def _reflect_perm(n: int) -> tuple[int, ...]:
    m = 2 * n
    table = index_table(n)
    return tuple(table[tuple(sorted(m + 1 - x for x in s))] for s in all_indices(n))


def shift_index(s: Sequence[int], n: int, times: int = 1) -> tuple[int, ...]:
    m = 2 * n
    return tuple(sorted((x - 1 + times) % m + 1 for x in s))


def reflect_index(s: Sequence[int], n: int) -> tuple[int, ...]:
    return tuple(sorted(2 * n + 1 - x for x in s))


def _permute(v: RatioVector, perm: tuple[int, ...]) -> RatioVector:
    out = [0] * len(v.alpha)
    for k, a in enumerate(v.alpha):
        out[perm[k]] = a
    return RatioVector(v.n, tuple(out))


def cyclic_shift(v: RatioVector, times: int = 1) -> RatioVector:
    """Apply i -> i+1 (mod 2n, 1-based) to every index set, `times` times."""
    perm = _shift_perm(v.n)
    for _ in range(times % (2 * v.n)):
        v = _permute(v, perm)
    return v


def reflect(v: RatioVector) -> RatioVector:
    """Apply i -> 2n+1-i to every index set."""
    return _permute(v, _reflect_perm(v.n))


@lru_cache(maxsize=None)
def st0_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Row i-1 has a 1 at every coordinate whose index set contains i."""
    return tuple(
        tuple(1 if i in s else 0 for s in all_indices(n)) for i in range(1, 2 * n + 1)
    )


def st0_defects(v: RatioVector) -> tuple[int, ...]:
    return tuple(sum(r * a for r, a in zip(row, v.alpha) if a) for row in st0_rows(v.n))


def st0_check(v: RatioVector) -> tuple[bool, tuple[int, ...]]:
    """True iff every index in 1..2n occurs equally often above and below."""
    defects = st0_defects(v)
    return not any(defects), defects


def degree_balance(v: RatioVector) -> int:
    """Numerator degree minus denominator degree."""
    return sum(v.alpha)
