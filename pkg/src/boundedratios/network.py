"""Face-weighted planar network for n x n totally positive matrices.

Geometry
--------
Vertices sit on an n x n grid (row r, column c, both 1-based, rows counted
downwards).  Edges point right and down.  Source i enters row i from the
left; sink j leaves the bottom of grid column n+1-j.  Sinks are numbered
right to left so that vertex-disjoint path families always join the k-th
smallest source to the k-th smallest sink, which makes every minor a
positive sum (Lindström).

Faces form an n x n array.  Face (r, c) is the region between grid rows r
and r+1 (row n: below the grid) and between grid columns c-1 and c (column
1: left of the grid).  A path collects every face lying below-left of it,
i.e. on its right-hand side in the direction of travel.  In column strip c
that is faces (h_c .. n, c), where h_c is the row at which the path enters
grid column c (h_1 = the source row).

Faces in column 1 or row n are fixed to weight 1.  The remaining
d = (n-1)^2 free faces are ordered row-major: (1,2), (1,3), ..., (n-1,n).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Sequence

import numpy as np

from .pluecker import (
    MinorSpec,
    PluckerIndex,
    RatioVector,
    all_indices,
    format_index,
    minor_of,
    parse_index_text,
    st0_check,
)
from .polynomial import Polynomial, TermCapExceeded, product

DEFAULT_TERM_CAP = 10**7


@dataclass(frozen=True)
class Path:
    vertices: frozenset
    faces: tuple[tuple[int, int], ...]


class PlanarNetwork:
    """The network N_n; `normalized=False` keeps all n^2 faces as variables."""

    def __init__(self, n: int, normalized: bool = True):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.normalized = normalized
        if normalized:
            self.faces = [(r, c) for r in range(1, n) for c in range(2, n + 1)]
        else:
            self.faces = [(r, c) for r in range(1, n + 1) for c in range(1, n + 1)]
        self._face_index = {f: k for k, f in enumerate(self.faces)}
        self._paths: dict[tuple[int, int], list[Path]] = {}
        self._plucker: dict[tuple[int, ...], Polynomial] = {}

    @property
    def d(self) -> int:
        return len(self.faces)

    def sink_column(self, j: int) -> int:
        return self.n + 1 - j

    def paths(self, i: int, j: int) -> list[Path]:
        """All monotone paths from source i to sink j."""
        n = self.n
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"source/sink ({i}, {j}) out of range for n={n}")
        key = (i, j)
        if key in self._paths:
            return self._paths[key]
        col = self.sink_column(j)
        out: list[Path] = []

        def rec(r, c, verts, entries):
            if c == col:
                vs = verts + [(rr, c) for rr in range(r + 1, n + 1)]
                faces = tuple((rr, cc) for cc, h in entries for rr in range(h, n + 1))
                out.append(Path(frozenset(vs), faces))
                return
            for h in range(r, n + 1):
                vs = verts + [(rr, c) for rr in range(r + 1, h + 1)] + [(h, c + 1)]
                rec(h, c + 1, vs, entries + [(c + 1, h)])

        rec(i, 1, [(i, 1)], [(1, i)])
        self._paths[key] = out
        return out

    def _exponents(self, faces: Sequence[tuple[int, int]]) -> list[int]:
        e = [0] * self.d
        idx = self._face_index
        for f in faces:
            k = idx.get(f)
            if k is not None:
                e[k] += 1
        return e

    def entry_polynomial(self, i: int, j: int) -> Polynomial:
        terms: dict[tuple[int, ...], int] = {}
        for p in self.paths(i, j):
            e = tuple(self._exponents(p.faces))
            terms[e] = terms.get(e, 0) + 1
        return Polynomial(self.d, terms)

    def minor_polynomial(self, m: MinorSpec) -> Polynomial:
        """Sum over vertex-disjoint path families (rows -> cols of the minor)."""
        if m.size == 0:
            return Polynomial.constant(self.d)
        families = [self.paths(i, j) for i, j in zip(m.rows, m.cols)]
        exps = [[self._exponents(p.faces) for p in fam] for fam in families]
        terms: dict[tuple[int, ...], int] = {}
        d = self.d

        def rec(k, used, acc):
            if k == len(families):
                key = tuple(acc)
                terms[key] = terms.get(key, 0) + 1
                return
            for p, e in zip(families[k], exps[k]):
                if used & p.vertices:
                    continue
                rec(k + 1, used | p.vertices, [a + b for a, b in zip(acc, e)])

        rec(0, frozenset(), [0] * d)
        return Polynomial(d, terms)

    def plucker_polynomial(self, s: PluckerIndex | Sequence[int]) -> Polynomial:
        elems = s.elements if isinstance(s, PluckerIndex) else tuple(sorted(s))
        poly = self._plucker.get(elems)
        if poly is None:
            poly = self.minor_polynomial(minor_of(elems, self.n))
            self._plucker[elems] = poly
        return poly

    @cached_property
    def all_plucker(self) -> list[Polynomial]:
        """Plücker polynomials in lexicographic coordinate order."""
        return [self.plucker_polynomial(s) for s in all_indices(self.n)]

    def det_oracle(self, m: MinorSpec) -> Polynomial:
        """The minor by Leibniz expansion of the symbolic entry matrix.

        Independent of the path-family enumeration; cancellation happens in
        the summation and must leave the Lindström result.
        """
        if m.size == 0:
            return Polynomial.constant(self.d)
        ents = {(a, b): self.entry_polynomial(a, b) for a in m.rows for b in m.cols}
        total = Polynomial(self.d)
        k = m.size
        for perm in permutations(range(k)):
            sign = _perm_sign(perm)
            term = product([ents[(m.rows[a], m.cols[perm[a]])] for a in range(k)])
            total = total + (term if sign > 0 else -term)
        return total


def _perm_sign(perm: Sequence[int]) -> int:
    p = list(perm)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def newton_points(p: Polynomial) -> list[tuple[int, ...]]:
    return p.support()


def random_weights(d: int, rng: np.random.Generator, low: int = 1, high: int = 100) -> list[int]:
    """Integer face weights drawn uniformly from low..high."""
    return [int(x) for x in rng.integers(low, high + 1, size=d)]


def plucker_values(net: PlanarNetwork, weights: Sequence) -> list:
    return [p.evaluate(weights) for p in net.all_plucker]


def eval_ratio(v: RatioVector, weights: Sequence, net: PlanarNetwork | None = None) -> Fraction:
    """Exact value of the Laurent monomial at positive face weights."""
    if any(w <= 0 for w in weights):
        raise ValueError("face weights must be positive")
    net = net or PlanarNetwork(v.n)
    num = 1
    den = 1
    for k, a in enumerate(v.alpha):
        if not a:
            continue
        val = net.all_plucker[k].evaluate(weights)
        if val <= 0:
            raise ArithmeticError(f"Plücker coordinate {k} evaluated to {val} at positive weights")
        if a > 0:
            num *= val ** a
        else:
            den *= val ** (-a)
    return Fraction(num, den)


@dataclass
class SubtractionFreeVerdict:
    status: str  # "nonneg", "negative", "positive-samples", "failed-sample", "infeasible"
    mode: str  # "symbolic" or "sampled"
    certificate: object = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status in ("nonneg", "positive-samples")


def split_ratio(v: RatioVector, net: PlanarNetwork) -> tuple[list[Polynomial], list[Polynomial]]:
    num, den = [], []
    for k, a in enumerate(v.alpha):
        if a > 0:
            num.extend([net.all_plucker[k]] * a)
        elif a < 0:
            den.extend([net.all_plucker[k]] * (-a))
    return num, den


def subtraction_free_check(v: RatioVector, mode: str = "symbolic", k: int = 1000,
                           rng: np.random.Generator | None = None,
                           term_cap: int = DEFAULT_TERM_CAP,
                           net: PlanarNetwork | None = None) -> SubtractionFreeVerdict:
    """Test whether q - p has no negative coefficient, where ratio = p/q.

    Symbolic mode expands both products exactly.  Sampled mode only checks
    q(w) > p(w) at k random positive integer weights, a necessary condition.
    """
    ok, defects = st0_check(v)
    if not ok:
        raise ValueError(f"ratio fails ST0 (defects {defects}); subtraction-freeness undefined")
    net = net or PlanarNetwork(v.n)
    num, den = split_ratio(v, net)
    if mode == "symbolic":
        try:
            p = product(num, nvars=net.d, term_cap=term_cap)
            q = product(den, nvars=net.d, term_cap=term_cap)
        except TermCapExceeded as exc:
            return SubtractionFreeVerdict("infeasible", "symbolic", detail=f"{exc}; use sampled mode")
        diff = q - p
        neg = diff.negative_terms()
        if neg:
            return SubtractionFreeVerdict("negative", "symbolic", certificate=neg[:10],
                                          detail=f"{len(neg)} negative terms")
        return SubtractionFreeVerdict("nonneg", "symbolic",
                                      certificate={"terms": len(diff), "p_terms": len(p), "q_terms": len(q)})
    if mode == "sampled":
        rng = rng if rng is not None else np.random.default_rng(0)
        for _ in range(k):
            w = random_weights(net.d, rng)
            vals = {}
            pv = 1
            for poly in num:
                key = id(poly)
                if key not in vals:
                    vals[key] = poly.evaluate(w)
                pv *= vals[key]
            qv = 1
            for poly in den:
                key = id(poly)
                if key not in vals:
                    vals[key] = poly.evaluate(w)
                qv *= vals[key]
            if qv - pv <= 0 and not (qv == pv and v.is_zero()):
                return SubtractionFreeVerdict("failed-sample", "sampled", certificate=w,
                                              detail="q(w) - p(w) <= 0")
        return SubtractionFreeVerdict("positive-samples", "sampled", certificate={"k": k})
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# text format: header "n=<n> d=<d> coord=<bracket>", then "coeff: e_1 ... e_d"

def format_face_polynomial(p: Polynomial, n: int, coord: Sequence[int]) -> str:
    lines = [f"n={n} d={p.nvars} coord={format_index(coord)}"]
    for e in p.support():
        lines.append(f"{p.terms[e]}: " + " ".join(str(x) for x in e))
    return "\n".join(lines) + "\n"


def parse_face_polynomial(text: str) -> tuple[int, tuple[int, ...], Polynomial]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty polynomial file")
    head = dict(part.split("=", 1) for part in lines[0].split(" ", 2))
    n, d = int(head["n"]), int(head["d"])
    coord = parse_index_text(head["coord"], n)
    terms = {}
    for ln in lines[1:]:
        c, _, rest = ln.partition(":")
        e = tuple(int(x) for x in rest.split())
        if len(e) != d:
            raise ValueError(f"term {ln!r} does not have {d} exponents")
        terms[e] = terms.get(e, 0) + int(c)
    return n, coord, Polynomial(d, terms)
