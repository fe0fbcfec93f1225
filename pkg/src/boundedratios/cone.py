"""Exact polyhedral cones: double description, membership, reduction.

Everything here is integer or Fraction arithmetic.  A cone is held either as
an inequality system (ConeH: a.x <= 0 for each row a, e.x = 0 for each
equality e) or by generators (ConeV: nonnegative combinations of rays plus
arbitrary combinations of lineality vectors).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from ._linalg import Vector, dot, echelon_pivots, nullspace, primitive, rank
from .lp import BudgetExceeded, LPResult, simplex


def _clean_rows(rows: Iterable[Sequence], dim: int) -> tuple[Vector, ...]:
    out = []
    seen = set()
    for r in rows:
        if len(r) != dim:
            raise ValueError(f"row of length {len(r)} in a cone of dimension {dim}")
        v = primitive(r)
        if not any(v) or v in seen:
            continue
        seen.add(v)
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class ConeH:
    """{x : a.x <= 0 for a in ineqs, e.x = 0 for e in eqs}."""

    dim: int
    ineqs: tuple[Vector, ...] = ()
    eqs: tuple[Vector, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ineqs", _clean_rows(self.ineqs, self.dim))
        object.__setattr__(self, "eqs", _clean_rows(self.eqs, self.dim))

    def contains(self, x: Sequence) -> bool:
        return all(dot(a, x) <= 0 for a in self.ineqs) and all(dot(e, x) == 0 for e in self.eqs)

    def violated(self, x: Sequence) -> list[int]:
        return [k for k, a in enumerate(self.ineqs) if dot(a, x) > 0]


@dataclass(frozen=True)
class ConeV:
    """Nonnegative hull of rays plus the linear span of lin."""

    dim: int
    rays: tuple[Vector, ...] = ()
    lin: tuple[Vector, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rays", _clean_rows(self.rays, self.dim))
        object.__setattr__(self, "lin", _clean_rows(self.lin, self.dim))


# ---------------------------------------------------------------------------
# double description

def _popcount(x: int) -> int:
    return bin(x).count("1")


def _dd_core(rows: list[Vector], k: int, deadline: float | None) -> tuple[list[Vector], list[Vector]]:
    """Rays and lineality of {y in Q^k : a.y <= 0 for a in rows}."""
    lin: list[list[int]] = [[1 if i == j else 0 for i in range(k)] for j in range(k)]
    rays: list[list[int]] = []
    zeros: list[int] = []  # bitmask of processed rows tight at each ray
    for bit, a in enumerate(rows):
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded("double description time budget exhausted")
        mask = 1 << bit
        vals = [dot(a, l) for l in lin]
        p = next((t for t, v in enumerate(vals) if v), None)
        if p is not None:
            lp, vp = lin[p], vals[p]
            s = 1 if vp > 0 else -1
            new_lin = []
            for t, l in enumerate(lin):
                if t == p:
                    continue
                if vals[t]:
                    l = primitive([vp * x - vals[t] * y for x, y in zip(l, lp)])
                new_lin.append(list(l))
            for t, r in enumerate(rays):
                ar = dot(a, r)
                if ar:
                    rays[t] = list(primitive([abs(vp) * x - s * ar * y for x, y in zip(r, lp)]))
                zeros[t] |= mask
            rays.append([-s * y for y in lp])
            # tight on every earlier row (they vanish on lineality), loose on this one
            zeros.append(mask - 1)
            lin = new_lin
            continue
        vals = [dot(a, r) for r in rays]
        pos = [t for t, v in enumerate(vals) if v > 0]
        if not pos:
            for t, v in enumerate(vals):
                if v == 0:
                    zeros[t] |= mask
            continue
        neg = [t for t, v in enumerate(vals) if v < 0]
        need = k - len(lin) - 2
        new_rays, new_zeros = [], []
        for ip in pos:
            zp = zeros[ip]
            for iq in neg:
                z = zp & zeros[iq]
                if _popcount(z) < need:
                    continue
                adjacent = True
                for t, zt in enumerate(zeros):
                    if t != ip and t != iq and zt & z == z:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[ip], vals[iq]
                r = primitive([vp * x - vq * y for x, y in zip(rays[iq], rays[ip])])
                new_rays.append(list(r))
                new_zeros.append(z | mask)
        keep = [t for t, v in enumerate(vals) if v <= 0]
        rays = [rays[t] for t in keep] + new_rays
        zeros = [zeros[t] | (mask if vals[t] == 0 else 0) for t in keep] + new_zeros
    return [tuple(r) for r in rays], [tuple(l) for l in lin]


def _sort_key(row: Vector):
    return (sum(1 for x in row if x), row)


def dd_rays(c: ConeH, budget_seconds: float | None = None) -> ConeV:
    """Extreme rays and lineality of an H-cone."""
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    basis = nullspace(c.eqs, c.dim)
    k = len(basis)
    if k == 0:
        return ConeV(c.dim)
    proj = []
    for a in sorted(c.ineqs, key=_sort_key):
        row = primitive([dot(a, z) for z in basis])
        if any(row):
            proj.append(row)
    proj = list(dict.fromkeys(proj))
    rays, lin = _dd_core(proj, k, deadline)

    def lift(y):
        x = [0] * c.dim
        for coef, z in zip(y, basis):
            if coef:
                for i, zi in enumerate(z):
                    if zi:
                        x[i] += coef * zi
        return primitive(x)

    lifted = sorted(lift(r) for r in rays)
    return ConeV(c.dim, tuple(lifted), tuple(lift(l) for l in lin))


def dd_facets(c: ConeV, budget_seconds: float | None = None) -> ConeH:
    """Irredundant inequality description, by DD on the polar cone."""
    polar = dd_rays(ConeH(c.dim, c.rays, c.lin), budget_seconds)
    eqs = _independent(polar.lin)
    return ConeH(c.dim, polar.rays, eqs)


def _independent(rows: Sequence[Vector]) -> tuple[Vector, ...]:
    rows = list(rows)
    if not rows:
        return ()
    # pivot rows of the transpose pick an independent subset
    cols = [[r[i] for r in rows] for i in range(len(rows[0]))]
    keep = echelon_pivots(cols, len(rows))
    return tuple(rows[k] for k in keep)


# ---------------------------------------------------------------------------
# membership

@dataclass
class Membership:
    """Either x = sum coeffs*rays + sum lin_coeffs*lin, or a separating h."""

    member: bool
    coeffs: list[Fraction] | None = None
    lin_coeffs: list[Fraction] | None = None
    separator: Vector | None = None

    @property
    def kind(self) -> str:
        return "combination" if self.member else "separation"

    def verify(self, x: Sequence, cone: ConeV) -> bool:
        if self.member:
            if any(c < 0 for c in self.coeffs):
                return False
            total = [Fraction(0)] * cone.dim
            for c, r in zip(self.coeffs, cone.rays):
                if c:
                    for i, v in enumerate(r):
                        total[i] += c * v
            for c, l in zip(self.lin_coeffs, cone.lin):
                if c:
                    for i, v in enumerate(l):
                        total[i] += c * v
            return total == [Fraction(v) for v in x]
        h = self.separator
        return (dot(h, x) > 0 and all(dot(h, r) <= 0 for r in cone.rays)
                and all(dot(h, l) == 0 for l in cone.lin))


def member_v(x: Sequence, c: ConeV, budget_seconds: float | None = None) -> Membership:
    """Decide x in c exactly, returning a combination or a Farkas separator."""
    if len(x) != c.dim:
        raise ValueError("dimension mismatch")
    nr, nl = len(c.rays), len(c.lin)
    cols = list(c.rays) + list(c.lin) + [tuple(-v for v in l) for l in c.lin]
    A = [[col[i] for col in cols] for i in range(c.dim)]
    res = simplex([0] * len(cols), A, list(x), budget_seconds)
    if res.status == "optimal":
        coeffs = res.x[:nr]
        lin = [res.x[nr + t] - res.x[nr + nl + t] for t in range(nl)]
        return Membership(True, coeffs=coeffs, lin_coeffs=lin)
    if res.status != "infeasible":
        raise RuntimeError(f"unexpected LP status {res.status}")
    return Membership(False, separator=primitive(res.farkas))


def member_h(x: Sequence, c: ConeH) -> bool:
    return c.contains(x)


@dataclass
class ConeEquality:
    equal: bool
    v_in_h: bool
    h_rays_in_v: list[Membership]
    failures: list[str] = field(default_factory=list)


def cone_equality(h: ConeH, v: ConeV, h_rays: ConeV | None = None) -> ConeEquality:
    """Mutual inclusion: every generator of v satisfies h, and every
    generator of h (computed by DD) is certified inside v."""
    failures = []
    for r in v.rays:
        if not h.contains(r):
            failures.append(f"ray {r} of V violates H")
    for l in v.lin:
        if not (h.contains(l) and h.contains([-x for x in l])):
            failures.append(f"lineality {l} of V leaves H")
    v_in_h = not failures
    h_rays = h_rays or dd_rays(h)
    certs = []
    for r in list(h_rays.rays) + list(h_rays.lin) + [tuple(-x for x in l) for l in h_rays.lin]:
        m = member_v(r, v)
        certs.append(m)
        if not m.member:
            failures.append(f"generator {r} of H outside V")
    return ConeEquality(not failures, v_in_h, certs, failures)


# ---------------------------------------------------------------------------
# reduction

@dataclass
class Reduction:
    cone: ConeH
    # row -> (kind, certificate): "implicit-equality" or "redundant"
    removed: list[tuple[Vector, str, Membership]]
    kept_certificates: list[Membership]


def _has_strict_point(ineqs: Sequence[Vector], eqs: Sequence[Vector], dim: int,
                      budget_seconds: float | None) -> bool:
    """Is there x with a.x <= -1 for every inequality and e.x = 0?"""
    m = len(ineqs)
    A, b = [], []
    for k, a in enumerate(ineqs):
        s = [0] * m
        s[k] = 1
        A.append(list(a) + [-v for v in a] + s)
        b.append(-1)
    for e in eqs:
        A.append(list(e) + [-v for v in e] + [0] * m)
        b.append(0)
    return simplex([0] * (2 * dim + m), A, b, budget_seconds).status == "optimal"


def reduce(c: ConeH, budget_seconds: float | None = None, certificates: bool = False) -> ConeH | Reduction:
    """Irredundant subsystem defining the same cone.

    A row a is redundant when a lies in cone(other rows) + span(eqs); the
    LP combination is the certificate.  A row whose negation lies in
    cone(rows) + span(eqs) holds with equality on the whole cone and moves
    to the equalities.
    """
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds

    def left():
        if deadline is None:
            return None
        rem = deadline - time.monotonic()
        if rem <= 0:
            raise BudgetExceeded("reduce time budget exhausted")
        return rem

    ineqs = list(c.ineqs)
    eqs = list(_independent(c.eqs))
    removed: list[tuple[Vector, str, Membership]] = []
    # implicit equalities; one LP settles the common case where a point
    # strictly inside every inequality exists
    changed = ineqs and not _has_strict_point(ineqs, eqs, c.dim, left())
    while changed:
        changed = False
        for a in list(ineqs):
            neg = tuple(-x for x in a)
            m = member_v(neg, ConeV(c.dim, tuple(ineqs), tuple(eqs)), left())
            if m.member:
                ineqs.remove(a)
                if rank(eqs + [a], c.dim) > len(eqs):
                    eqs.append(a)
                removed.append((a, "implicit-equality", m))
                changed = True
                break
    # drop rows that are now inside the equality span
    for a in list(ineqs):
        if eqs and rank(eqs + [a], c.dim) == len(eqs):
            ineqs.remove(a)
            removed.append((a, "redundant", Membership(True, coeffs=[], lin_coeffs=[])))
    kept_certs = []
    t = 0
    while t < len(ineqs):
        a = ineqs[t]
        others = ineqs[:t] + ineqs[t + 1:]
        m = member_v(a, ConeV(c.dim, tuple(others), tuple(eqs)), left())
        if m.member:
            removed.append((a, "redundant", m))
            ineqs.pop(t)
        else:
            kept_certs.append(m)
            t += 1
    out = ConeH(c.dim, tuple(ineqs), tuple(eqs))
    if certificates:
        return Reduction(out, removed, kept_certs)
    return out


# ---------------------------------------------------------------------------
# extremality and optimisation

def cone_dimension(c: ConeH) -> int:
    """Dimension of the cone, via its implicit equalities."""
    red = reduce(c)
    return c.dim - rank(red.eqs, c.dim)


def extremality_test(x: Sequence, c: ConeH) -> bool:
    """Tight rows plus equalities have rank dim-1 (for a pointed cone)."""
    if not any(x):
        raise ValueError("the zero vector is not a ray")
    if not c.contains(x):
        raise ValueError("point violates the cone")
    tight = [a for a in c.ineqs if dot(a, x) == 0] + list(c.eqs)
    return rank(tight, c.dim) == c.dim - 1


def minimize(f: Sequence, c: ConeH, normal: Sequence, value=1,
             budget_seconds: float | None = None) -> LPResult:
    """min f.x over {x in c, normal.x = value}, exact.

    Free variables are split x = u - w; the slack of each inequality is a
    further nonnegative column.
    """
    dim = c.dim
    if len(f) != dim or len(normal) != dim:
        raise ValueError("dimension mismatch")
    m = len(c.ineqs)
    A, b = [], []
    for k, a in enumerate(c.ineqs):
        s = [0] * m
        s[k] = 1
        A.append(list(a) + [-v for v in a] + s)
        b.append(0)
    for e in c.eqs:
        A.append(list(e) + [-v for v in e] + [0] * m)
        b.append(0)
    A.append(list(normal) + [-v for v in normal] + [0] * m)
    b.append(value)
    cost = list(f) + [-v for v in f] + [0] * m
    res = simplex(cost, A, b, budget_seconds)
    if res.x is not None:
        res.x = [res.x[i] - res.x[dim + i] for i in range(dim)]
    if res.ray is not None:
        res.ray = [res.ray[i] - res.ray[dim + i] for i in range(dim)]
    return res


# ---------------------------------------------------------------------------
# file format

def write_cone(c: ConeH | ConeV, path: str | Path) -> None:
    Path(path).write_text(format_cone(c))


def format_cone(c: ConeH | ConeV) -> str:
    if isinstance(c, ConeH):
        head = f"H {c.dim} {len(c.ineqs)} {len(c.eqs)}"
        rows = list(c.ineqs) + list(c.eqs)
    else:
        head = f"V {c.dim} {len(c.rays)} {len(c.lin)}"
        rows = list(c.rays) + list(c.lin)
    return "\n".join([head] + [" ".join(str(x) for x in r) for r in rows]) + "\n"


def parse_cone(text: str) -> ConeH | ConeV:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty cone file")
    kind, dim, a, b = lines[0][0], *map(int, lines[0][1:4])
    rows = [tuple(int(x) for x in ln) for ln in lines[1:]]
    if len(rows) != a + b:
        raise ValueError(f"expected {a + b} rows, found {len(rows)}")
    if kind == "H":
        return ConeH(dim, tuple(rows[:a]), tuple(rows[a:]))
    if kind == "V":
        return ConeV(dim, tuple(rows[:a]), tuple(rows[a:]))
    raise ValueError(f"unknown cone kind {kind!r}")


def read_cone(path: str | Path) -> ConeH | ConeV:
    return parse_cone(Path(path).read_text())
