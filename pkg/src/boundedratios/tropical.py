"""Tropical boundedness: leading exponents of Plücker polynomials under
face weights t^lam, and the inequality system F of bounded ratios.

Substituting face_j -> t^{lam_j} turns the Plücker coordinate Δ_i into a
polynomial in t with leading exponent T_i(lam) = max_{mu in M_i} lam.mu.
A ratio with exponent vector alpha stays bounded along that family iff
sum_i alpha_i T_i(lam) <= 0.  Each T_i is linear on the cones of the
common refinement of the normal fans of the Newton polytopes, so it is
enough to impose the inequality at the rays of that fan (and at both
signs of its lineality).
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from ._kernels import tropical_values
from ._linalg import Vector, dot, primitive, rank
from .cone import ConeH, Reduction, dd_facets, dd_rays, reduce
from .lp import BudgetExceeded, simplex
from .network import PlanarNetwork
from .pluecker import RatioVector, num_coords, st0_check, st0_rows


@dataclass(frozen=True)
class TropicalProfile:
    n: int
    d: int
    supports: tuple[tuple[Vector, ...], ...]

    def __post_init__(self):
        if len(self.supports) != num_coords(self.n):
            raise ValueError("one support per Plücker coordinate is required")
        if any(not s for s in self.supports):
            raise ValueError("empty support")

    def packed(self) -> tuple[np.ndarray, np.ndarray]:
        """All points stacked, with offsets per coordinate."""
        pts = [p for s in self.supports for p in s]
        offsets = np.zeros(len(self.supports) + 1, dtype=np.int64)
        offsets[1:] = np.cumsum([len(s) for s in self.supports])
        return np.array(pts, dtype=np.int64).reshape(len(pts), self.d), offsets


@lru_cache(maxsize=None)
def profile_for(n: int) -> TropicalProfile:
    net = PlanarNetwork(n)
    return TropicalProfile(n, net.d, tuple(tuple(p.support()) for p in net.all_plucker))


def tropical_value(points: Sequence[Vector], lam: Sequence[int]) -> tuple[int, list[Vector]]:
    """Max of lam.mu over the points, with the maximizing points."""
    vals = [dot(lam, p) for p in points]
    best = max(vals)
    return best, [p for p, v in zip(points, vals) if v == best]


def alpha_inequality(profile: TropicalProfile, lam: Sequence[int]) -> Vector:
    """Row (T_1(lam), ..., T_N(lam)); bounded ratios satisfy row.alpha <= 0."""
    return tuple(tropical_value(s, lam)[0] for s in profile.supports)


# ---------------------------------------------------------------------------
# common refinement fan

@dataclass
class FanCell:
    rows: tuple[Vector, ...]  # b.lam >= 0 on the cell
    point: tuple[Fraction, ...]  # strictly interior
    choice: tuple[int, ...] = ()  # argmax point index per refined support
    rays: tuple[Vector, ...] = ()
    lin: tuple[Vector, ...] = ()


def _translation_key(points: Sequence[Vector]) -> tuple:
    base = min(points)
    return tuple(sorted(tuple(a - b for a, b in zip(p, base)) for p in points))


def _interior_point(rows: Sequence[Vector], d: int, budget: float | None):
    """Some lam with b.lam >= 1 for all rows, or None if the cone is thin."""
    if not rows:
        return tuple(Fraction(0) for _ in range(d))
    m = len(rows)
    A = []
    for k, b in enumerate(rows):
        s = [0] * m
        s[k] = -1
        A.append(list(b) + [-x for x in b] + s)
    res = simplex([0] * (2 * d + m), A, [1] * m, budget)
    if res.status != "optimal":
        return None
    return tuple(res.x[i] - res.x[d + i] for i in range(d))


def refine_fan(profile: TropicalProfile, budget_seconds: float | None = None,
               with_rays: bool = True) -> list[FanCell]:
    """Maximal cones of the common refinement of all normal fans.

    Cells are split one support at a time by the normal cones of its
    points; a piece survives only if it has interior (LP), so only
    realizable combinations of leading monomials are ever built.
    """
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds

    def left():
        if deadline is None:
            return None
        rem = deadline - time.monotonic()
        if rem <= 0:
            raise BudgetExceeded("fan refinement time budget exhausted")
        return rem

    d = profile.d
    # translates share a normal fan; refine once per distinct shape
    shapes = {}
    for s in profile.supports:
        if len(s) > 1:
            shapes.setdefault(_translation_key(s), s)
    cells = [FanCell((), tuple(Fraction(0) for _ in range(d)))]
    for key in sorted(shapes, key=lambda k: (len(k), k)):
        pts = list(key)
        new_cells = []
        for cell in cells:
            vals = [sum(Fraction(a) * x for a, x in zip(p, cell.point)) for p in pts]
            top = max(vals)
            winners = [k for k, v in enumerate(vals) if v == top]
            for k, mu in enumerate(pts):
                extra = [primitive([a - b for a, b in zip(mu, nu)]) for nu in pts if nu != mu]
                rows = tuple(dict.fromkeys(cell.rows + tuple(extra)))
                if len(winners) == 1 and winners[0] == k:
                    new_cells.append(FanCell(rows, cell.point, cell.choice + (k,)))
                    continue
                pt = _interior_point(rows, d, left())
                if pt is not None:
                    new_cells.append(FanCell(rows, pt, cell.choice + (k,)))
        cells = new_cells
    if with_rays:
        for cell in cells:
            v = dd_rays(ConeH(d, tuple(tuple(-x for x in b) for b in cell.rows)), left())
            cell.rays, cell.lin = v.rays, v.lin
    cells.sort(key=lambda c: (c.rays, c.lin))
    return cells


def _shapes(profile: TropicalProfile) -> list[list[Vector]]:
    # translates share a normal fan; keep one representative per shape
    shapes = {}
    for s in profile.supports:
        if len(s) > 1:
            shapes.setdefault(_translation_key(s), s)
    return [list(k) for k in sorted(shapes, key=lambda k: (len(k), k))]


def _vertex_cones(pts: Sequence[Vector], d: int, left) -> dict[int, tuple[Vector, ...]]:
    """Irredundant rows a (a.lam <= 0) of the normal cone of each vertex."""
    out = {}
    for k, mu in enumerate(pts):
        rows = [primitive([a - b for a, b in zip(nu, mu)]) for nu in pts if nu != mu]
        v = dd_rays(ConeH(d, tuple(rows)), left())
        if rank(list(v.rays) + list(v.lin), d) == d:
            out[k] = dd_facets(v, left()).ineqs
    return out


def walk_fan(profile: TropicalProfile, budget_seconds: float | None = None,
             seed: int = 0) -> list[FanCell]:
    """Maximal cones of the common refinement by walking across facets.

    A cell is named by the vertex each normal fan contributes.  Its rays
    come from DD on the union of the irredundant vertex-cone rows.  To step
    across a facet a.lam = 0, take p in the relative interior of the facet
    (sum of its rays) and, per shape, the argmax of mu.p with ties broken
    by mu.a, i.e. the leading vertex at p + eps*a.  Everything is exact; a
    complete fan is connected through its facets, so the walk sees every
    cell.
    """
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds

    def left():
        if deadline is None:
            return None
        rem = deadline - time.monotonic()
        if rem <= 0:
            raise BudgetExceeded("fan walk time budget exhausted")
        return rem

    d = profile.d
    shapes = _shapes(profile)
    cones = [_vertex_cones(pts, d, left) for pts in shapes]

    def choice_at(p, a=None):
        ch = []
        for pts, per in zip(shapes, cones):
            best, arg, tied = None, None, False
            for k in per:
                key = (dot(pts[k], p),) if a is None else (dot(pts[k], p), dot(pts[k], a))
                if best is None or key > best:
                    best, arg, tied = key, k, False
                elif key == best:
                    tied = True
            if tied:
                return None
            ch.append(arg)
        return tuple(ch)

    rng = np.random.default_rng(seed)
    start = None
    while start is None:
        start = choice_at([int(x) for x in rng.integers(-10**6, 10**6 + 1, size=d)])
    seen = {start}
    queue = deque([start])
    cells = []
    while queue:
        ch = queue.popleft()
        rows = ConeH(d, tuple(r for per, k in zip(cones, ch) for r in per[k])).ineqs
        v = dd_rays(ConeH(d, rows), left())
        facets = []
        for a in rows:
            tight = [r for r in v.rays if dot(a, r) == 0]
            if rank(tight + list(v.lin), d) != d - 1:
                continue
            facets.append(a)
            p = [sum(c) for c in zip(*tight)] if tight else [0] * d
            nb = choice_at(p, a)
            if nb is None:
                raise ArithmeticError(f"tie across facet {a} is not resolved by the facet normal")
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
        point = tuple(Fraction(sum(c)) for c in zip(*v.rays)) if v.rays else (Fraction(0),) * d
        cells.append(FanCell(tuple(tuple(-x for x in a) for a in facets), point, ch, v.rays, v.lin))
    cells.sort(key=lambda c: (c.rays, c.lin))
    return cells


def fan_lambdas(cells: Sequence[FanCell]) -> list[Vector]:
    """Distinct rays of the fan, lineality taken with both signs."""
    out = {}
    for c in cells:
        for r in c.rays:
            out.setdefault(r, None)
        for l in c.lin:
            out.setdefault(l, None)
            out.setdefault(tuple(-x for x in l), None)
    return sorted(out)


# ---------------------------------------------------------------------------
# the system F

@dataclass
class FSystem:
    n: int
    cone: ConeH
    lambdas: list[Vector]  # generating lam per inequality of `cone`
    raw_rows: int
    cells: int
    fan_rays: list[Vector] = field(default_factory=list)
    reduction: Reduction | None = None

    def sidecar(self) -> str:
        return "\n".join(" ".join(str(x) for x in lam) for lam in self.lambdas) + "\n"


def build_F(n: int, budget_seconds: float | None = None, reduced: bool = True,
            method: str = "walk") -> FSystem:
    """Inequality system of bounded ratios: ST0 equalities plus one row per
    fan ray, deduplicated and optionally reduced.  `method` picks the fan
    construction: "walk" (facet adjacency) or "split" (LP refinement)."""
    t0 = time.monotonic()
    profile = profile_for(n)
    if method == "walk":
        cells = walk_fan(profile, budget_seconds)
    elif method == "split":
        cells = refine_fan(profile, budget_seconds)
    else:
        raise ValueError(f"unknown fan method {method!r}")
    lams = fan_lambdas(cells)
    rows: dict[Vector, Vector] = {}
    for lam in lams:
        row = primitive(alpha_inequality(profile, lam))
        if any(row):
            rows.setdefault(row, lam)
    eqs = tuple(st0_rows(n))
    cone = ConeH(num_coords(n), tuple(rows), eqs)
    red = None
    if reduced:
        rem = None if budget_seconds is None else max(1e-3, budget_seconds - (time.monotonic() - t0))
        red = reduce(cone, rem, certificates=True)
        cone = red.cone
    return FSystem(n, cone, [rows[r] for r in cone.ineqs], len(rows), len(cells), lams, red)


# ---------------------------------------------------------------------------
# boundedness verdicts

@dataclass
class BoundedVerdict:
    status: str  # "bounded", "unbounded", "no-counterexample"
    mode: str  # "exact", "sampled" or "st0"
    witness: Vector | None = None
    value: int | None = None
    samples: int = 0
    detail: str = ""

    @property
    def bounded(self) -> bool | None:
        if self.status == "bounded":
            return True
        if self.status == "unbounded":
            return False
        return None

    def label(self) -> str:
        return f"{self.status} ({self.mode})"


def sample_lambdas(d: int, k: int, rng: np.random.Generator, box: int = 20) -> np.ndarray:
    """k random integer directions in [-box, box]^d, then the 2d axis directions."""
    lams = rng.integers(-box, box + 1, size=(k, d), dtype=np.int64)
    axes = np.concatenate([np.eye(d, dtype=np.int64), -np.eye(d, dtype=np.int64)])
    return np.concatenate([lams, axes])


def bounded_check(v: RatioVector, mode: str = "sampled", F: FSystem | None = None,
                  k: int = 10_000, box: int = 20, rng: np.random.Generator | None = None,
                  extra_lambdas: Sequence[Vector] = ()) -> BoundedVerdict:
    ok, defects = st0_check(v)
    if not ok:
        return BoundedVerdict("unbounded", "st0", detail=f"ST0 defects {defects}")
    if not any(v.alpha):
        return BoundedVerdict("bounded", "exact", detail="constant ratio")
    profile = profile_for(v.n)
    if mode == "exact":
        if F is None:
            raise ValueError("exact mode needs the system F")
        bad = F.cone.violated(v.alpha)
        if bad:
            lam = F.lambdas[bad[0]]
            val = dot(alpha_inequality(profile, lam), v.alpha)
            return BoundedVerdict("unbounded", "exact", witness=lam, value=val)
        return BoundedVerdict("bounded", "exact", detail=f"satisfies all {len(F.cone.ineqs)} rows of F")
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = rng if rng is not None else np.random.default_rng(0)
    lams = sample_lambdas(profile.d, k, rng, box)
    more = list(extra_lambdas) + (F.fan_rays if F is not None else [])
    if more:
        lams = np.concatenate([lams, np.array(more, dtype=np.int64).reshape(-1, profile.d)])
    pts, offs = profile.packed()
    T = tropical_values(lams, pts, offs)
    vals = T @ np.asarray(v.alpha, dtype=np.int64)
    hit = np.flatnonzero(vals > 0)
    if hit.size:
        q = int(hit[0])
        lam = tuple(int(x) for x in lams[q])
        # recompute exactly in Python ints
        val = dot(alpha_inequality(profile, lam), v.alpha)
        return BoundedVerdict("unbounded", "sampled", witness=lam, value=val, samples=len(lams))
    return BoundedVerdict("no-counterexample", "sampled", samples=len(lams))
