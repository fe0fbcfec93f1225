import json

import pytest

from boundedratios.cone import dd_facets
from boundedratios.pluecker import RatioVector, cyclic_shift, index_table, st0_check
from boundedratios.primitive import enumerate_primitives, primitive_cone
from boundedratios.raylab import (
    RatioParseError,
    bundled_rays,
    format_ratio,
    orbit,
    parse_ratio,
    parse_ratio_file,
    printed_ray1,
    search_method_1,
    search_method_2,
    verify_ray,
    weakly_separated,
    ws_graph,
    ws_isomorphic,
)


def test_parse_examples():
    assert parse_ratio("[1 2 3 4] / [1 2 3 4]", 4).is_zero()
    v = parse_ratio("[1 3 5 8][1 4 6 8] / [1 2 3 4]  # comment", 4)
    assert v.numerator() == [(1, 3, 5, 8), (1, 4, 6, 8)]
    assert v.denominator() == [(1, 2, 3, 4)]
    assert parse_ratio(format_ratio(v), 4) == v
    assert parse_ratio("[1368] / [1358]", 4) == parse_ratio("[1 3 6 8] / [1 3 5 8]", 4)


@pytest.mark.parametrize("bad", ["", "# only", "[1 2 3 4] / [1 2 3 5] / [1 2 3 6]",
                                 "[1 2 3 4] x / [1 2 3 5]", "[1 2 3] / [1 2 3 4]", "/"])
def test_parse_errors(bad):
    with pytest.raises((RatioParseError, ValueError)):
        parse_ratio(bad, 4)


def test_bundled_asset():
    rays = bundled_rays()
    assert len(rays) == 9
    assert [len(r.numerator()) for r in rays] == [5, 5, 5, 5, 7, 13, 13, 14, 19]
    assert rays[7].alpha[index_table(4)[(1, 3, 4, 8)]] == 2
    assert parse_ratio_file("# x\n\n[1 2 3 4] / [1 2 3 5]\n", 4)[0].n == 4


def test_all_rays_pass_st0_and_printed_ray1_fails():
    assert all(st0_check(r)[0] for r in bundled_rays())
    ok, defects = st0_check(printed_ray1())
    assert not ok
    assert {i + 1: d for i, d in enumerate(defects) if d} == {4: 1, 8: -1}


def test_orbit():
    sizes = [len(orbit(r)) for r in bundled_rays()]
    assert sizes == [8, 4, 4, 4, 16, 8, 8, 8, 16]
    v = bundled_rays()[1]
    assert cyclic_shift(v) in orbit(v)
    assert all(len(orbit(w)) == len(orbit(v)) for w in orbit(v))


def test_weak_separation_examples():
    assert weakly_separated((1, 2, 3), (1, 2, 4), 3)
    assert weakly_separated((1, 2, 3), (4, 5, 6), 3)
    assert not weakly_separated((1, 3, 5), (2, 4, 6), 3)
    assert weakly_separated((1, 3), (2, 4), 2) is False


def test_ws_graph_iso_ray2_ray4():
    rays = bundled_rays()
    g2, g4 = ws_graph(rays[1]), ws_graph(rays[3])
    assert g2.number_of_nodes() == 10
    assert ws_isomorphic(g2, g4)
    # shift-invariance
    assert ws_isomorphic(g2, ws_graph(cyclic_shift(rays[1])))
    assert not ws_isomorphic(g2, ws_graph(rays[4]))


def test_verify_primitive_at_n3(F3, net3):
    p = enumerate_primitives(3)[3].vector()
    rep = verify_ray(p, F=F3, net=net3)
    assert rep.bounded["status"] == "bounded"
    assert rep.primitive_member["kind"] == "combination"
    assert rep.extremal["status"] == "extremal"
    assert rep.subtraction_free["status"] == "nonneg"
    assert not rep.new_ray_evidence
    assert json.loads(rep.to_json())["st0"]["pass"] is True


def test_verify_reciprocal_at_n3(F3, net3):
    rep = verify_ray(-enumerate_primitives(3)[3].vector(), F=F3, net=net3)
    assert rep.bounded["status"] == "unbounded" and rep.bounded["witness"] is not None
    assert rep.extremal["status"] == "not-in-F"
    assert rep.subtraction_free["status"] == "negative"


def test_verify_ray1_sampled(net4):
    rep = verify_ray(bundled_rays()[0], k=500, seed=7, net=net4)
    assert rep.bounded["status"] == "no-counterexample"
    assert rep.primitive_member["kind"] == "separation" and rep.primitive_member["verified"]
    assert rep.extremal["status"] == "unknown"
    assert rep.subtraction_free["status"] == "nonneg"
    assert rep.new_ray_evidence


def test_verify_non_st0():
    rep = verify_ray(printed_ray1(), k=100)
    assert not rep.st0["pass"]
    assert rep.bounded["mode"] == "st0"
    assert not rep.new_ray_evidence


def test_search_n3_is_conjecture_consistent(F3):
    gens = primitive_cone(3)
    P = dd_facets(gens)
    assert search_method_1(F3.cone, P, seed=1).status == "conjecture-consistent"
    res = search_method_2(F3.cone, gens.rays, rounds=2, seed=1)
    assert res.status == "conjecture-consistent" and res.rays == []


def test_search_finds_ray_of_smaller_hull(F3):
    # drop one generator: method 1 must recover a ray outside the smaller hull
    gens = primitive_cone(3)
    small = type(gens)(gens.dim, gens.rays[1:])
    res = search_method_1(F3.cone, dd_facets(small), seed=3, tries=4, generators=small)
    assert res.status == "found"
    for ray, sep in zip(res.rays, res.separators):
        assert sum(a * b for a, b in zip(sep, ray)) > 0
    assert gens.rays[0] in res.rays
    assert isinstance(RatioVector(3, res.rays[0]), RatioVector)


def test_method_2_regrows_hull(F3):
    gens = primitive_cone(3)
    res = search_method_2(F3.cone, gens.rays[2:], rounds=5, seed=0, tries=4)
    assert res.status == "found"
    assert set(res.rays) == set(gens.rays[:2])


def test_orbit_of_ray1_all_sampled_bounded():
    import numpy as np
    from boundedratios.tropical import bounded_check
    ray1 = bundled_rays()[0]
    orb = orbit(ray1)
    assert 16 % len(orb) == 0
    for k, w in enumerate(orb):
        v = bounded_check(w, k=1000, rng=np.random.default_rng(k))
        assert v.status == "no-counterexample"
    assert [w.alpha for w in orbit(RatioVector.zero(4))] == [RatioVector.zero(4).alpha]


def test_reciprocal_of_ray1_unbounded():
    import numpy as np
    from boundedratios.tropical import alpha_inequality, bounded_check, profile_for
    v = -bundled_rays()[0]
    res = bounded_check(v, k=10_000, rng=np.random.default_rng(0))
    assert res.status == "unbounded"
    row = alpha_inequality(profile_for(4), res.witness)
    assert sum(a * b for a, b in zip(row, v.alpha)) == res.value > 0
