from itertools import combinations, permutations
from math import comb

import pytest

from boundedratios._linalg import rank
from boundedratios.pluecker import all_indices, num_coords, st0_check
from boundedratios.primitive import (
    N3_OUTER_SETS,
    PrimitiveSpec,
    basis_B,
    enumerate_primitives,
    basis_size_formula,
    factor_into_primitives,
    n3_labels,
    isolated_primitives,
    outer_sets,
    rank_G,
    relation_equation_count,
    relations,
)


def brute_primitive_vectors(n):
    """All ratio vectors over ordered arcs (i, i+1), (j, j+1) and any Δ, deduplicated."""
    m = 2 * n
    idx = {s: k for k, s in enumerate(all_indices(n))}
    out = set()
    for i, j in permutations(range(1, m + 1), 2):
        i1, j1 = i % m + 1, j % m + 1
        if len({i, i1, j, j1}) < 4:
            continue
        rest = [x for x in range(1, m + 1) if x not in (i, i1, j, j1)]
        for d in combinations(rest, n - 2):
            a = [0] * num_coords(n)
            for s, c in [((i, j1), 1), ((i1, j), 1), ((i, j), -1), ((i1, j1), -1)]:
                a[idx[tuple(sorted(s + d))]] += c
            out.add(tuple(a))
    return out


@pytest.mark.parametrize("n,count", [(3, 18), (4, 120)])
def test_counts_match_brute_force(n, count):
    prims = enumerate_primitives(n)
    assert len(prims) == count
    assert {p.vector().alpha for p in prims} == brute_primitive_vectors(n)


def test_spec_canonical_and_validation():
    assert PrimitiveSpec(5, 1, (3,), 3) == PrimitiveSpec(1, 5, (3,), 3)
    assert str(PrimitiveSpec(1, 5, (3,), 3)) == "R 1 5 [3]"
    with pytest.raises(ValueError):
        PrimitiveSpec(1, 2, (5,), 3)
    with pytest.raises(ValueError):
        PrimitiveSpec(1, 4, (5, 6), 3)


@pytest.mark.parametrize("n", [3, 4])
def test_primitives_pass_st0(n):
    assert all(st0_check(p.vector())[0] for p in enumerate_primitives(n))


def test_isolated_counts():
    assert len(isolated_primitives(3)) == 6
    assert len(isolated_primitives(4)) == 8


def test_rank_and_free_columns():
    r3, r4 = rank_G(3), rank_G(4)
    assert (r3.rank, r4.rank) == (14, 62)
    fmt = lambda fr: ["".join(map(str, s)) for s in fr]
    assert fmt(r3.display_order(3)) == ["156", "256", "356", "456", "345", "346"]
    assert set(fmt(r4.free)) == {"1678", "2678", "3678", "4678", "5678", "4567", "4568", "4578"}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_rank_formula(n):
    assert rank_G(n).rank == comb(2 * n, n) - 2 * n


def test_relations():
    assert len(relations(4)) == 32
    assert relation_equation_count(4) == 64
    assert len(relations(3)) == 2
    assert all(r.holds() for n in (3, 4) for r in relations(n))
    used = {p for r in relations(3) for p in r.specs}
    assert len(used) == 12 and not any(p.is_isolated() for p in used)


@pytest.mark.parametrize("n", [3, 4])
def test_basis(n):
    B = basis_B(n)
    target = comb(2 * n, n) - 2 * n
    assert len(B) == target
    assert rank([p.vector().alpha for p in B], num_coords(n)) == target
    # spans every primitive
    allv = [p.vector().alpha for p in enumerate_primitives(n)]
    assert rank([p.vector().alpha for p in B] + allv, num_coords(n)) == target


@pytest.mark.parametrize("n", range(3, 9))
def test_basis_size_closed_form(n):
    assert basis_size_formula(n) == comb(2 * n, n) - 2 * n


def test_n3_labels_and_outer_sets():
    labels = n3_labels()
    assert len(labels) == 18 and len(set(labels.values())) == 18
    for k in range(13, 19):
        assert labels[f"v{k}"].is_isolated()
    facets, outs = outer_sets(3)
    assert len(facets.ineqs) == 16
    assert sorted(map(sorted, (o.outer for o in outs))) == sorted(map(sorted, N3_OUTER_SETS))
    assert all(o.one_sided and o.maximal and o.span_rank == 13 for o in outs)
    with pytest.raises(ValueError):
        outer_sets(4)


def test_factorization():
    prims = enumerate_primitives(3)
    v = prims[2].vector() + prims[9].vector()
    m = factor_into_primitives(v)
    assert m.member
    m2 = factor_into_primitives(-prims[2].vector())
    assert not m2.member and m2.separator is not None


def test_definition_example():
    v = PrimitiveSpec(1, 3, (5, 6), 4).vector()
    idx = {s: k for k, s in enumerate(all_indices(4))}
    nz = {s: v.alpha[k] for s, k in idx.items() if v.alpha[k]}
    assert nz == {(1, 4, 5, 6): 1, (2, 3, 5, 6): 1, (1, 3, 5, 6): -1, (2, 4, 5, 6): -1}


@pytest.mark.parametrize("n", [3, 4])
def test_isolated_are_independent_of_the_rest(n):
    allv = [p.vector().alpha for p in enumerate_primitives(n)]
    full = rank(allv, num_coords(n))
    for p in isolated_primitives(n):
        rest = [a for a in allv if a != p.vector().alpha]
        assert rank(rest, num_coords(n)) == full - 1


def test_F3_rays_are_the_primitives(F3):
    from boundedratios.cone import dd_rays
    v = dd_rays(F3.cone)
    assert v.lin == ()
    assert set(v.rays) == {p.vector().alpha for p in enumerate_primitives(3)}
