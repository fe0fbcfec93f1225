"""Primitive ratios, their linear relations, rank and basis, and the facets
of the cone they generate.

A primitive ratio R_{i,j,D} (i < j, indices mod 2n, 1-based) is

    [i, j+1, D] [i+1, j, D] / [i, j, D] [i+1, j+1, D]

where i, i+1, j, j+1 and the (n-2)-set D are pairwise distinct.  Swapping
the two arcs {i, i+1} and {j, j+1} gives the same ratio, so i < j is the
canonical representative.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from ._linalg import dot, echelon_pivots, rank
from .cone import ConeH, ConeV, Membership, dd_facets, member_v
from .pluecker import RatioVector, all_indices, format_index, index_table, num_coords


def _succ(x: int, n: int) -> int:
    return x % (2 * n) + 1


@dataclass(frozen=True, order=True)
class PrimitiveSpec:
    i: int
    j: int
    delta: tuple[int, ...]
    n: int

    def __post_init__(self):
        i, j = self.i, self.j
        if i > j:
            i, j = j, i
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "delta", tuple(sorted(self.delta)))
        n = self.n
        used = [i, _succ(i, n), j, _succ(j, n), *self.delta]
        if len(self.delta) != n - 2:
            raise ValueError(f"Δ must have {n - 2} elements, got {self.delta}")
        if len(set(used)) != len(used) or not all(1 <= x <= 2 * n for x in used):
            raise ValueError(f"indices of R_{{{i},{j},{self.delta}}} are not distinct in 1..{2 * n}")

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        n, i, j, d = self.n, self.i, self.j, self.delta
        i1, j1 = _succ(i, n), _succ(j, n)

        def s(a, b):
            return tuple(sorted((a, b) + d))

        return [(s(i, j1), 1), (s(i1, j), 1), (s(i, j), -1), (s(i1, j1), -1)]

    def vector(self) -> RatioVector:
        table = index_table(self.n)
        alpha = [0] * num_coords(self.n)
        for s, c in self.terms():
            alpha[table[s]] += c
        return RatioVector(self.n, tuple(alpha))

    def is_isolated(self) -> bool:
        n, i, j = self.n, self.i, self.j
        m = 2 * n
        if j - i != n:
            return False
        d = set(self.delta)
        fwd = {(i + 1 + k) % m + 1 for k in range(n - 2)}
        bwd = {(j + 1 + k) % m + 1 for k in range(n - 2)}
        return d == fwd or d == bwd

    def __str__(self) -> str:
        return f"R {self.i} {self.j} {format_index(self.delta)}"


@lru_cache(maxsize=None)
def enumerate_primitives(n: int) -> tuple[PrimitiveSpec, ...]:
    """All primitive ratios for order n, one per distinct vector."""
    if n < 2:
        raise ValueError("primitive ratios need n >= 2")
    m = 2 * n
    seen = set()
    out = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            occ = {i, _succ(i, n), j, _succ(j, n)}
            if len(occ) < 4:
                continue
            rest = [x for x in range(1, m + 1) if x not in occ]
            for d in combinations(rest, n - 2):
                p = PrimitiveSpec(i, j, d, n)
                v = p.vector().alpha
                if v in seen:
                    continue
                seen.add(v)
                out.append(p)
    return tuple(out)


def primitive_vectors(n: int) -> list[tuple[int, ...]]:
    return [p.vector().alpha for p in enumerate_primitives(n)]


def primitive_cone(n: int) -> ConeV:
    return ConeV(num_coords(n), tuple(primitive_vectors(n)))


def isolated_primitives(n: int) -> list[PrimitiveSpec]:
    return [p for p in enumerate_primitives(n) if p.is_isolated()]


@lru_cache(maxsize=None)
def _spec_by_vector(n: int) -> dict[tuple[int, ...], PrimitiveSpec]:
    return {p.vector().alpha: p for p in enumerate_primitives(n)}


# ---------------------------------------------------------------------------
# relations v1 - v2 = v3 - v4 = v5 - v6

@dataclass(frozen=True)
class RelationInstance:
    pairs: tuple[tuple[PrimitiveSpec, PrimitiveSpec], ...]

    @property
    def specs(self) -> tuple[PrimitiveSpec, ...]:
        return tuple(p for pair in self.pairs for p in pair)

    def holds(self) -> bool:
        diffs = []
        for a, b in self.pairs:
            diffs.append((a.vector() - b.vector()).alpha)
        return all(d == diffs[0] for d in diffs) and any(diffs[0])

    def flipped(self) -> "RelationInstance":
        return RelationInstance(tuple((b, a) for a, b in self.pairs))


def _relation_key(pairs) -> tuple:
    return tuple(sorted(pairs))


@lru_cache(maxsize=None)
def relations(n: int) -> tuple[RelationInstance, ...]:
    """Distinct relation chains obtained by moving one element of Δ to its
    successor, deduplicated up to order of the pairs and a global flip."""
    chains = {}
    for p in enumerate_primitives(n):
        if p.is_isolated():
            continue
        i, j, d = p.i, p.j, p.delta
        i1, j1 = _succ(i, n), _succ(j, n)
        for x in d:
            y = _succ(x, n)
            if y in d or y in (i, j, i1, j1):
                continue
            dx = tuple(e for e in d if e != x)
            a = (p, PrimitiveSpec(i, j, dx + (y,), n))
            b = (PrimitiveSpec(x, j, dx + (i,), n), PrimitiveSpec(x, j, dx + (i1,), n))
            c = (PrimitiveSpec(x, i, dx + (j,), n), PrimitiveSpec(x, i, dx + (j1,), n))
            rel = RelationInstance(tuple(sorted((a, b, c))))
            if not rel.holds():
                raise AssertionError(f"relation from {p} at x={x} fails")
            flip = rel.flipped()
            k1, k2 = _relation_key(rel.pairs), _relation_key(flip.pairs)
            key = min(k1, k2)
            if key not in chains:
                chains[key] = RelationInstance(key)
    return tuple(chains[k] for k in sorted(chains))


def relation_equation_count(n: int) -> int:
    """Scalar equations: two per chain."""
    return 2 * len(relations(n))


# ---------------------------------------------------------------------------
# rank, free columns, basis

@dataclass
class RankResult:
    rank: int
    free: list[tuple[int, ...]]

    def display_order(self, n: int) -> list[tuple[int, ...]]:
        """Free columns containing the top n-1 indices first, then the rest."""
        top = set(range(n + 2, 2 * n + 1))
        return sorted(self.free, key=lambda s: (not top <= set(s), s))


def rank_G(n: int) -> RankResult:
    rows = primitive_vectors(n)
    pivots = echelon_pivots(rows, num_coords(n))
    idx = all_indices(n)
    piv = set(pivots)
    return RankResult(len(pivots), [idx[c] for c in range(len(idx)) if c not in piv])


def _consecutive_from(xs, start) -> bool:
    xs = sorted(xs)
    return xs == list(range(start, start + len(xs)))


def in_basis(p: PrimitiveSpec) -> bool:
    n, i, j, d = p.n, p.i, p.j, p.delta
    m = 2 * n
    if j == m:
        # Arc1 is [2, i-1] and Arc3 is empty
        if not _consecutive_from([x for x in d if 2 <= x <= i - 1], 2):
            return False
    elif not _consecutive_from([x for x in d if 1 <= x <= i - 1], 1):
        return False
    return _consecutive_from([x for x in d if i + 2 <= x <= j - 1], i + 2)


def basis_B(n: int) -> list[PrimitiveSpec]:
    return [p for p in enumerate_primitives(n) if in_basis(p)]


def basis_size_formula(n: int) -> int:
    """Closed-form size of the basis."""
    return (n - 1) ** 2 + sum(
        comb(n - j + k - 1, k) * (n - k - 1) * j for k in range(n - 1) for j in range(1, n)
    )


# ---------------------------------------------------------------------------
# n = 3 labels and outer sets

def n3_labels() -> dict[str, PrimitiveSpec]:
    """v1..v12 from the two n=3 chains (v1-v2 = v3-v4 = v5-v6 and
    v7-v8 = v9-v10 = v11-v12), v13..v18 the isolated primitives."""
    labels = {}
    k = 1
    for rel in relations(3):
        for a, b in rel.pairs:
            labels[f"v{k}"] = a
            labels[f"v{k + 1}"] = b
            k += 2
    for p in isolated_primitives(3):
        labels[f"v{k}"] = p
        k += 1
    return labels


N3_OUTER_SETS = [
    {"v13"}, {"v14"}, {"v15"}, {"v16"}, {"v17"}, {"v18"},
    {"v1", "v2"}, {"v3", "v4"}, {"v5", "v6"}, {"v7", "v8"}, {"v9", "v10"}, {"v11", "v12"},
    {"v1", "v3", "v5"}, {"v2", "v4", "v6"}, {"v7", "v9", "v11"}, {"v8", "v10", "v12"},
]


@dataclass
class OuterSet:
    facet: tuple[int, ...]
    outer: frozenset[str]
    span_rank: int
    one_sided: bool
    maximal: bool


def outer_sets(n: int = 3) -> tuple[ConeH, list[OuterSet]]:
    """Facets of the primitive cone at n=3 and their outer sets."""
    if n != 3:
        raise ValueError("outer-set labelling is only defined for n=3")
    labels = n3_labels()
    names = list(labels)
    vecs = {name: labels[name].vector().alpha for name in names}
    cone = ConeV(num_coords(3), tuple(vecs[name] for name in names))
    facets = dd_facets(cone)
    dim = num_coords(3) - rank(facets.eqs, num_coords(3))
    out = []
    for a in facets.ineqs:
        tight = [name for name in names if dot(a, vecs[name]) == 0]
        outer = frozenset(name for name in names if name not in tight)
        span = rank([vecs[t] for t in tight], num_coords(3))
        one_sided = all(dot(a, vecs[o]) < 0 for o in outer)
        # maximal: no outer generator lies in the span of the facet set
        maximal = all(rank([vecs[t] for t in tight] + [vecs[o]], num_coords(3)) > span for o in outer)
        out.append(OuterSet(a, outer, span, one_sided and span == dim - 1, maximal))
    return facets, out


def factor_into_primitives(v: RatioVector, budget_seconds: float | None = None) -> Membership:
    """Nonnegative combination of primitive vectors, or a separating functional."""
    return member_v(v.alpha, primitive_cone(v.n), budget_seconds)
