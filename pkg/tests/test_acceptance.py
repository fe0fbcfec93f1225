"""Acceptance criteria 1-10, each at its stated tolerance and time limit.

Every test prints one PASS/FAIL line; the lines are repeated in the pytest
terminal summary.  Criterion 11 is the stretch tier and only runs with
BOUNDEDRATIOS_STRETCH=1.
"""
import time
from contextlib import contextmanager
from math import comb

import numpy as np
import pytest

from boundedratios._linalg import rank
from boundedratios.cone import cone_equality, cone_dimension, dd_facets, extremality_test
from boundedratios.network import PlanarNetwork, subtraction_free_check
from boundedratios.pluecker import all_indices, degree_balance, minor_of, num_coords, st0_check
from boundedratios.primitive import (
    N3_OUTER_SETS,
    basis_B,
    enumerate_primitives,
    basis_size_formula,
    n3_labels,
    outer_sets,
    primitive_cone,
    rank_G,
    relations,
)
from boundedratios.raylab import (
    bundled_rays,
    orbit,
    search_method_1,
    ws_graph,
    ws_isomorphic,
)
from boundedratios.primitive import factor_into_primitives
from boundedratios.tropical import alpha_inequality, bounded_check, build_F, profile_for


@contextmanager
def criterion(log, num, title, limit):
    t0 = time.monotonic()
    try:
        yield
    except BaseException:
        line = f"criterion {num}: FAIL  {title}  ({time.monotonic() - t0:.1f}s)"
        print(line)
        log.append(line)
        raise
    dt = time.monotonic() - t0
    ok = dt < limit
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}  ({dt:.1f}s, limit {limit}s)"
    print(line)
    log.append(line)
    assert ok, f"criterion {num} exceeded its time limit: {dt:.1f}s >= {limit}s"


def test_c01_primitive_counts(acceptance_log):
    enumerate_primitives.cache_clear()
    with criterion(acceptance_log, 1, "primitive counts 18 (n=3) and 120 (n=4)", 1):
        assert len(enumerate_primitives(3)) == 18
        assert len(enumerate_primitives(4)) == 120


def test_c02_rank_and_free_columns(acceptance_log):
    with criterion(acceptance_log, 2, "rank 14 / 62 and free columns", 10):
        r3, r4 = rank_G(3), rank_G(4)
        assert r3.rank == 14 == comb(6, 3) - 6
        assert r4.rank == 62 == comb(8, 4) - 8
        fmt = lambda fr: {"".join(map(str, s)) for s in fr}
        assert fmt(r3.free) == {"156", "256", "356", "456", "345", "346"}
        assert fmt(r4.free) == {"1678", "2678", "3678", "4678", "5678", "4567", "4568", "4578"}


def test_c03_relations(acceptance_log):
    relations.cache_clear()
    with criterion(acceptance_log, 3, "relation chains exact; 32 at n=4, the two chains at n=3", 1):
        for n in (3, 4):
            for rel in relations(n):
                a, b, c = [(x.vector() - y.vector()).alpha for x, y in rel.pairs]
                assert a == b == c and any(a)
        assert len(relations(4)) == 32
        labels = n3_labels()
        chains = {frozenset(p for pair in rel.pairs for p in pair) for rel in relations(3)}
        expect = {frozenset(labels[f"v{k}"] for k in range(1, 7)),
                  frozenset(labels[f"v{k}"] for k in range(7, 13))}
        assert chains == expect
        assert not any(p.is_isolated() for c in chains for p in c)


def test_c04_basis(acceptance_log):
    with criterion(acceptance_log, 4, "basis sizes 14 / 62, independent and spanning; closed form n=3..8", 5):
        for n in (3, 4):
            target = comb(2 * n, n) - 2 * n
            B = [p.vector().alpha for p in basis_B(n)]
            assert len(B) == target
            assert rank(B, num_coords(n)) == target
            allv = [p.vector().alpha for p in enumerate_primitives(n)]
            assert rank(B + allv, num_coords(n)) == target
        for n in range(3, 9):
            assert basis_size_formula(n) == comb(2 * n, n) - 2 * n


def test_c05_n3_end_to_end(acceptance_log):
    with criterion(acceptance_log, 5, "F_3 equals the primitive hull; dim 14; 16 facets with exact outer sets", 300):
        F = build_F(3)
        hull = primitive_cone(3)
        eq = cone_equality(F.cone, hull)
        assert eq.equal, eq.failures
        for m in eq.h_rays_in_v:
            assert m.member
        # and every certificate checks out exactly
        assert all(m.verify(r, hull) for m, r in zip(eq.h_rays_in_v, _generators(F.cone)))
        assert cone_dimension(F.cone) == 14
        facets, outs = outer_sets(3)
        assert len(facets.ineqs) == 16
        assert sorted(map(sorted, (o.outer for o in outs))) == sorted(map(sorted, N3_OUTER_SETS))
        assert all(o.one_sided and o.maximal for o in outs)
        assert len(F.cone.ineqs) == 16


def _generators(h):
    from boundedratios.cone import dd_rays
    v = dd_rays(h)
    return list(v.rays) + list(v.lin) + [tuple(-x for x in l) for l in v.lin]


def test_c06_lindstrom_oracle(acceptance_log):
    with criterion(acceptance_log, 6, "Lindström polynomials equal determinant expansion (20 + 70 coords)", 120):
        for n in (3, 4):
            net = PlanarNetwork(n)
            for s in all_indices(n):
                assert net.plucker_polynomial(s) == net.det_oracle(minor_of(s, n))


def test_c07_nine_rays_sampled(acceptance_log):
    with criterion(acceptance_log, 7, "nine rays: ST0, degree, 10^4-sample boundedness, verified separation", 600):
        hull = primitive_cone(4)
        for k, v in enumerate(bundled_rays(), 1):
            assert st0_check(v)[0], k
            assert degree_balance(v) == 0, k
            verdict = bounded_check(v, "sampled", k=10_000, box=20, rng=np.random.default_rng(k))
            assert verdict.status == "no-counterexample", (k, verdict)
            m = factor_into_primitives(v)
            assert not m.member, k
            assert m.verify(v.alpha, hull), k
            # the separator is an inequality valid on every primitive but violated by the ray
            assert sum(a * b for a, b in zip(m.separator, v.alpha)) > 0


def test_c08_subtraction_free(acceptance_log):
    with criterion(acceptance_log, 8, "symbolic q-p >= 0 for rays 1-5 and 18 primitives; sampled for rays 6-9", 1800):
        net3, net4 = PlanarNetwork(3), PlanarNetwork(4)
        for p in enumerate_primitives(3):
            assert subtraction_free_check(p.vector(), "symbolic", net=net3).status == "nonneg", p
        rays = bundled_rays()
        for k, v in enumerate(rays[:5], 1):
            assert subtraction_free_check(v, "symbolic", net=net4).status == "nonneg", k
        for k, v in enumerate(rays[5:], 6):
            res = subtraction_free_check(v, "sampled", k=1000, rng=np.random.default_rng(k), net=net4)
            assert res.status == "positive-samples", k


def test_c09_weak_separation(acceptance_log):
    rays = bundled_rays()
    with criterion(acceptance_log, 9, "weak-separation graphs of rays 2 and 4 are isomorphic", 1):
        assert ws_isomorphic(ws_graph(rays[1]), ws_graph(rays[3]))


def test_c10_negative_control(acceptance_log):
    prof = profile_for(3)
    with criterion(acceptance_log, 10, "reciprocals of primitives get an explicit unboundedness witness", 1):
        for p in enumerate_primitives(3):
            v = -p.vector()
            verdict = bounded_check(v, "sampled", k=200, rng=np.random.default_rng(0))
            assert verdict.status == "unbounded"
            row = alpha_inequality(prof, verdict.witness)
            assert sum(a * b for a, b in zip(row, v.alpha)) > 0


@pytest.mark.stretch
@pytest.mark.slow
def test_c11_stretch_n4(acceptance_log):
    from boundedratios.cone import ConeV, member_v
    with criterion(acceptance_log, 11, "F_4 has 360 irredundant rows; nine rays extremal; method 1 hits a bundled orbit",
                   6 * 3600):
        F = build_F(4)
        red = F.reduction
        print(f"F_4: {F.cells} fan cells, {F.raw_rows} raw rows, {len(F.cone.ineqs)} irredundant, "
              f"{len(F.cone.eqs)} equalities, dimension {cone_dimension(F.cone)}")
        kept = ConeV(F.cone.dim, F.cone.ineqs, F.cone.eqs)
        assert all(member_v(r, kept).member for r, _, _ in red.removed)
        assert len(F.cone.ineqs) == 360
        rays = bundled_rays()
        for v in rays:
            assert F.cone.contains(v.alpha)
            assert extremality_test(v.alpha, F.cone)
        hull = primitive_cone(4)
        assert all(extremality_test(g, F.cone) for g in hull.rays)
        P = dd_facets(hull)
        res = search_method_1(F.cone, P, seed=0, tries=3, generators=hull, max_facets=5)
        orbits = {w.alpha for v in rays for w in orbit(v)}
        assert any(r in orbits for r in res.rays)
        for h, r in zip(res.separators, res.rays):
            assert sum(a * b for a, b in zip(h, r)) > 0
