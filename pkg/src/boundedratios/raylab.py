"""Extreme rays of the n=4 cone: parsing, verification, discovery, and
weak-separation graphs."""
from __future__ import annotations

import json
import re
import time
from dataclasses import asdict, dataclass, field
from importlib import resources
from itertools import combinations
from typing import Sequence

import networkx as nx
import numpy as np

from ._linalg import Vector, primitive
from .cone import ConeH, ConeV, Membership, dd_facets, extremality_test, member_v, minimize
from .lp import BudgetExceeded
from .network import DEFAULT_TERM_CAP, PlanarNetwork, subtraction_free_check
from .pluecker import (
    RatioVector,
    all_indices,
    cyclic_shift,
    degree_balance,
    format_index,
    parse_index_text,
    reflect,
    st0_check,
)
from .primitive import factor_into_primitives, primitive_cone
from .tropical import FSystem, bounded_check

_BRACKETS = re.compile(r"\[[^\]]*\]")


class RatioParseError(ValueError):
    pass


def _side(text: str, n: int) -> list[tuple[int, ...]]:
    text = text.strip()
    found = _BRACKETS.findall(text)
    if _BRACKETS.sub("", text).strip():
        raise RatioParseError(f"stray characters in {text!r}")
    return [parse_index_text(b, n) for b in found]


def parse_ratio(text: str, n: int) -> RatioVector:
    """Parse "num / den [* num / den ...]" where each side is a run of
    bracketed index sets; repeated brackets add up."""
    body = text.split("#", 1)[0].strip()
    if not body:
        raise RatioParseError("empty ratio")
    num, den = [], []
    for factor in body.split("*"):
        parts = factor.split("/")
        if len(parts) > 2:
            raise RatioParseError(f"more than one '/' in factor {factor!r}")
        top = _side(parts[0], n)
        bottom = _side(parts[1], n) if len(parts) == 2 else []
        if not top and not bottom:
            raise RatioParseError(f"empty factor {factor!r}")
        num += top
        den += bottom
    return RatioVector.from_sets(n, num, den)


def format_ratio(v: RatioVector) -> str:
    num = "".join(format_index(s) for s in v.numerator())
    den = "".join(format_index(s) for s in v.denominator())
    return f"{num} / {den}"


def parse_ratio_file(text: str, n: int) -> list[RatioVector]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_ratio(line, n))
    return out


def bundled_rays() -> list[RatioVector]:
    """The nine rays shipped in data/rays.txt (item 1 carries a corrected bracket)."""
    text = resources.files("boundedratios").joinpath("data/rays.txt").read_text()
    return parse_ratio_file(text, 4)


def printed_ray1() -> RatioVector:
    """Item 1 as it was originally printed, before the bracket correction."""
    text = resources.files("boundedratios").joinpath("data/rays.txt").read_text()
    for line in text.splitlines():
        if line.startswith("# printed:"):
            return parse_ratio(line[len("# printed:"):], 4)
    raise LookupError("printed form of item 1 missing from the asset")


def orbit(v: RatioVector) -> list[RatioVector]:
    """Images under the dihedral group generated by the shift and reflection."""
    seen = {}
    w = v
    for _ in range(2 * v.n):
        seen.setdefault(w.alpha, w)
        r = reflect(w)
        seen.setdefault(r.alpha, r)
        w = cyclic_shift(w)
    return [seen[k] for k in sorted(seen)]


# ---------------------------------------------------------------------------
# verification pipeline

@dataclass
class RayReport:
    ratio: str
    st0: dict
    degree_balance: dict
    bounded: dict
    primitive_member: dict
    extremal: dict
    subtraction_free: dict
    elapsed: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True, default=str)

    @property
    def new_ray_evidence(self) -> bool:
        """Every check that ran agrees with a bounded ray outside the primitive cone."""
        checks = [self.st0["pass"], self.degree_balance["pass"],
                  self.bounded["status"] in ("bounded", "no-counterexample"),
                  self.primitive_member["kind"] == "separation" and self.primitive_member["verified"]]
        if self.extremal["status"] != "unknown":
            checks.append(self.extremal["status"] == "extremal")
        if self.subtraction_free["status"] != "unknown":
            checks.append(self.subtraction_free["passed"])
        return all(checks)


def _membership_dict(m: Membership, x, cone: ConeV) -> dict:
    d = {"kind": m.kind, "verified": m.verify(x, cone)}
    if m.member:
        d["coefficients"] = {k: str(c) for k, c in enumerate(m.coeffs) if c}
    else:
        d["separator"] = list(m.separator)
    return d


def verify_ray(v: RatioVector, F: FSystem | None = None, k: int = 10_000, seed: int = 0,
               term_cap: int = DEFAULT_TERM_CAP, sf_mode: str = "auto", sf_samples: int = 1000,
               symbolic_max_factors: int = 7, net: PlanarNetwork | None = None) -> RayReport:
    """Run every available check on one ratio; missing resources give "unknown"."""
    t0 = time.monotonic()
    rng = np.random.default_rng(seed)
    ok, defects = st0_check(v)
    st0 = {"pass": ok, "defects": list(defects)}
    bal = degree_balance(v)
    balance = {"pass": bal == 0, "value": bal}
    if F is not None:
        bv = bounded_check(v, "exact", F=F)
    else:
        bv = bounded_check(v, "sampled", k=k, rng=rng)
    bounded = {"status": bv.status, "mode": bv.mode, "witness": bv.witness, "value": bv.value,
               "samples": bv.samples, "detail": bv.detail}
    cone = primitive_cone(v.n)
    member = _membership_dict(factor_into_primitives(v), v.alpha, cone)
    if F is None:
        extremal = {"status": "unknown", "reason": "exact system F not available"}
    elif not F.cone.contains(v.alpha):
        extremal = {"status": "not-in-F"}
    else:
        extremal = {"status": "extremal" if extremality_test(v.alpha, F.cone) else "not-extremal"}
    if not ok:
        sf = {"status": "unknown", "reason": "ST0 fails", "passed": False}
    else:
        mode = sf_mode
        if mode == "auto":
            mode = "symbolic" if len(v.numerator()) <= symbolic_max_factors else "sampled"
        res = subtraction_free_check(v, mode, k=sf_samples, rng=rng, term_cap=term_cap, net=net)
        if res.status == "infeasible":
            note = res.detail
            res = subtraction_free_check(v, "sampled", k=sf_samples, rng=rng, net=net)
            res.detail = f"{note}; fell back to sampled"
        sf = {"status": res.status, "mode": res.mode, "passed": res.passed, "detail": res.detail,
              "certificate": res.certificate}
    return RayReport(format_ratio(v), st0, balance, bounded, member, extremal, sf,
                     round(time.monotonic() - t0, 3))


# ---------------------------------------------------------------------------
# discovery

@dataclass
class SearchResult:
    status: str  # "found", "conjecture-consistent", "no-vertex", "budget"
    rays: list[Vector] = field(default_factory=list)
    missing_facets: list[Vector] = field(default_factory=list)
    separators: list[Vector] = field(default_factory=list)
    rounds: int = 0
    detail: str = ""


def implied_by(row: Vector, F: ConeH, budget_seconds: float | None = None) -> Membership:
    """Is row.x <= 0 a consequence of F?  (row in cone(F rows) + span(F eqs))."""
    return member_v(row, ConeV(F.dim, F.ineqs, F.eqs), budget_seconds)


def missing_facets(F: ConeH, P: ConeH, budget_seconds: float | None = None) -> list[Vector]:
    return [l for l in P.ineqs if not implied_by(l, F, budget_seconds).member]


def _sample_missing(F: ConeH, P: ConeH, limit: int, rng: np.random.Generator,
                    deadline: float | None) -> list[Vector]:
    out = []
    for k in rng.permutation(len(P.ineqs)):
        rem = None if deadline is None else max(1e-3, deadline - time.monotonic())
        l = P.ineqs[int(k)]
        if not implied_by(l, F, rem).member:
            out.append(l)
            if len(out) >= limit:
                break
    return out


def search_method_1(F: ConeH, P: ConeH, seed: int = 0, tries: int = 3,
                    budget_seconds: float | None = None, facets: Sequence[Vector] | None = None,
                    generators: ConeV | None = None, max_facets: int | None = None) -> SearchResult:
    """Look for extreme rays of F on the wrong side of a facet l.x <= 0 of P
    that F does not imply.

    F is cut by l.x >= 0 and sliced by c.x = 1, with c = -(sum of F's rows)
    strictly positive on F (F is pointed modulo its equalities).  Random
    objectives tilted towards l pick vertices of the slice; those that are
    extreme in F with l.x > 0 are rays outside the hull.  With `generators`
    (a V-description of P) each ray also gets a separating functional.

    With `max_facets`, facets of P are visited in seeded random order and
    the search stops after that many missing ones; `missing_facets` then
    lists only the facets that were examined.
    """
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    rng = np.random.default_rng(seed)
    if facets is not None:
        miss = list(facets)
    elif max_facets is None:
        miss = missing_facets(F, P, budget_seconds)
    else:
        miss = _sample_missing(F, P, max_facets, rng, deadline)
    if not miss:
        return SearchResult("conjecture-consistent", detail="every facet of the hull is implied by F")
    c = [-sum(col) for col in zip(*F.ineqs)]
    found: dict[Vector, None] = {}
    for l in miss:
        flipped = ConeH(F.dim, F.ineqs + (tuple(-x for x in l),), F.eqs)
        for t in range(tries):
            if deadline is not None and time.monotonic() > deadline:
                return SearchResult("budget", list(found), miss, rounds=1)
            tilt = 0 if t == 0 else int(rng.integers(1, 1001))
            f = [int(x) - 1000 * x_l for x, x_l in zip(rng.integers(-tilt, tilt + 1, size=F.dim), l)]
            rem = None if deadline is None else max(1e-3, deadline - time.monotonic())
            try:
                res = minimize(f, flipped, c, 1, rem)
            except BudgetExceeded:
                return SearchResult("budget", list(found), miss, rounds=1)
            if res.status != "optimal":
                continue
            ray = primitive(res.x)
            if sum(a * b for a, b in zip(l, ray)) > 0 and extremality_test(ray, F):
                found.setdefault(ray, None)
    rays = list(found)
    seps = []
    if generators is not None:
        for ray in rays:
            m = member_v(ray, generators)
            if m.member:
                raise AssertionError(f"ray {ray} from a flipped facet lies in the hull")
            seps.append(m.separator)
    return SearchResult("found" if rays else "no-vertex", rays, miss, seps, 1)


def search_method_2(F: ConeH, generators: Sequence[Vector], rounds: int = 1, seed: int = 0,
                    tries: int = 3, budget_seconds: float | None = None) -> SearchResult:
    """Grow K by the rays found by method 1 until F implies every facet of K."""
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    gens = list(dict.fromkeys(tuple(g) for g in generators))
    new_rays: list[Vector] = []
    r = 0
    while True:
        rem = None if deadline is None else deadline - time.monotonic()
        if rem is not None and rem <= 0:
            return SearchResult("budget", new_rays, rounds=r)
        K = dd_facets(ConeV(F.dim, tuple(gens)), rem)
        res = search_method_1(F, K, seed + r, tries, rem)
        if res.status != "found":
            status = "found" if new_rays else res.status
            return SearchResult(status, new_rays, res.missing_facets, rounds=r + 1, detail=res.detail)
        for ray in res.rays:
            if ray not in gens:
                gens.append(ray)
                new_rays.append(ray)
        r += 1
        if r > rounds:
            return SearchResult("found", new_rays, rounds=r)


# ---------------------------------------------------------------------------
# weak separation

def weakly_separated(I: Sequence[int], J: Sequence[int], n: int) -> bool:
    """No a < b < c < d cyclically with a, c in I \\ J and b, d in J \\ I."""
    a, b = set(I) - set(J), set(J) - set(I)
    seq = [x in a for x in range(1, 2 * n + 1) if x in a or x in b]
    changes = sum(1 for k in range(len(seq)) if seq[k] != seq[k - 1])
    return changes <= 2


def ws_graph(v: RatioVector) -> nx.Graph:
    g = nx.Graph()
    idx = all_indices(v.n)
    for k, a in enumerate(v.alpha):
        if a:
            g.add_node(idx[k], side="num" if a > 0 else "den", exponent=a)
    for u, w in combinations(list(g.nodes), 2):
        if weakly_separated(u, w, v.n):
            g.add_edge(u, w)
    return g


def ws_isomorphic(g1: nx.Graph, g2: nx.Graph) -> bool:
    return nx.is_isomorphic(g1, g2, node_match=lambda x, y: x["side"] == y["side"])
