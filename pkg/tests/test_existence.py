import random

import pytest

from tsw.errors import NoneFound, NotHalfCrossing, NotTriangulation, WouldCreateForbidden
from tsw.existence import (
    balanced_wood, contract, contract_all, contractible_edge, crossing_wood, decontract_wood, half_crossing_orientation,
    is_middle_cycle, middle_walk, random_triangulation, to_crossing, to_half_crossing, vertex_split,
)
from tsw.fixtures import get_fixture
from tsw.orient_lattice import enumerate_3orientations, homologous, is_schnyder_orientation, lift_tri, orientation_type_tri
from tsw.schnyder import colors_from_orientation, mono_cycles, validate
from tsw.torus_map import completion, forbidden_configs, homology_class, insert_vertex, isomorphic

from conftest import corpus_map


def test_contraction_drops_one_three_two(k7):
    h, new, rec = contractible_edge(k7)
    assert (k7.n - new.n, k7.m - new.m, k7.f - new.f) == (1, 3, 2)
    assert new.is_triangulation() and forbidden_configs(new).clean
    assert len(rec.removed) == 2 and rec.edge == k7.edge_of[h]


@pytest.mark.parametrize("seed", range(10))
def test_contract_all_reaches_one_vertex(seed):
    m = corpus_map(seed)
    tr = contract_all(m)
    assert len(tr.records) == m.n - 1
    last = tr.records[-1].after if tr.records else m
    assert (last.n, last.m, last.f) == (1, 3, 2)


def test_single_vertex_has_no_contractible_edge(f1):
    with pytest.raises(NoneFound):
        contractible_edge(f1)


def test_contracting_a_loop_refused(f1):
    with pytest.raises(WouldCreateForbidden):
        contract(f1, 0)


def test_non_triangulation_rejected():
    with pytest.raises(NotTriangulation):
        balanced_wood(get_fixture("brick"))


def test_contracting_a_spoke_removes_the_stuffing(k7):
    m = insert_vertex(k7, 0)
    for h in m.rotation(7):
        new, rec = contract(m, h)
        assert isomorphic(new, k7)
        assert rec.u == 7


def test_decontract_checks_carrier(k7):
    _, new, rec = contractible_edge(k7)
    with pytest.raises(ValueError):
        decontract_wood(balanced_wood(k7), rec)


@pytest.mark.parametrize("name", ["three-loops", "k7", "grid3"])
def test_balanced_wood_fixtures(name):
    m = get_fixture(name)
    w = balanced_wood(m)
    assert validate(w).clean
    assert orientation_type_tri(w.one_way_orientation()).balanced


def test_balanced_wood_corpus():
    for seed in range(60):
        m = corpus_map(seed)
        w = balanced_wood(m)
        assert validate(w).clean, seed
        assert orientation_type_tri(w.one_way_orientation()).balanced, seed


def test_balanced_woods_are_one_class():
    # every balanced 3-orientation is homologous to the constructed one
    m = get_fixture("grid3")
    d = balanced_wood(m).one_way_orientation()
    for o in enumerate_3orientations(m):
        assert homologous(o, d) == orientation_type_tri(o).balanced


def test_stuffed_triangle_still_has_a_wood(k7):
    m = insert_vertex(k7, 3)
    assert validate(balanced_wood(m)).clean


def test_middle_walk_on_three_loops(f1):
    for o in enumerate_3orientations(f1):
        for h in o.tail:
            w = middle_walk(o, h)
            assert w.cycle and is_middle_cycle(o, w.cycle)
            assert homology_class(f1, w.cycle) != (0, 0)
            assert len(w.seq) <= f1.num_half


def test_middle_walk_needs_out_half(k7):
    o = balanced_wood(k7).one_way_orientation()
    h = next(h for h in range(k7.num_half) if not o.is_out(h))
    with pytest.raises(ValueError):
        middle_walk(o, h)


def test_middle_cycles_non_contractible_on_corpus():
    rng = random.Random(3)
    for seed in range(40):
        m = corpus_map(seed)
        o = balanced_wood(m).one_way_orientation()
        h = rng.choice(o.tail)
        cyc = middle_walk(o, h).cycle
        assert is_middle_cycle(o, cyc)
        assert homology_class(m, cyc) != (0, 0)


def test_half_crossing_keeps_outdegrees():
    for seed in range(40):
        m = corpus_map(seed)
        o = balanced_wood(m).one_way_orientation()
        h = half_crossing_orientation(o)
        assert h.outdeg() == o.outdeg()
        w = to_half_crossing(o)
        assert validate(w).clean
        assert mono_cycles(w).tag != "not-half-crossing"


def test_to_crossing_on_corpus():
    for seed in range(60):
        m = corpus_map(seed)
        w = crossing_wood(m)
        assert validate(w, crossing=True).clean, seed
        assert mono_cycles(w).tag == "crossing"


def test_to_crossing_rejects_non_half_crossing():
    m = get_fixture("grid3")
    cm = completion(m)
    for o in enumerate_3orientations(m):
        L = lift_tri(o, cm)
        if not is_schnyder_orientation(cm, L):
            continue
        w = colors_from_orientation(cm, L)
        if mono_cycles(w).tag == "not-half-crossing":
            with pytest.raises(NotHalfCrossing):
                to_crossing(w)
            return
    pytest.fail("grid3 has no non-half-crossing wood")


def test_random_triangulation_deterministic():
    a = random_triangulation(8, random.Random(42))
    b = random_triangulation(8, random.Random(42))
    assert (a.twin, a.nxt, a.vert) == (b.twin, b.nxt, b.vert)
    assert a.n == 8 and a.is_triangulation() and forbidden_configs(a).clean


def test_vertex_split_inverts_contraction(f1):
    m = vertex_split(f1, 0, 0, 3)
    assert (m.n, m.m, m.f) == (2, 6, 4)
    _, back, _ = contractible_edge(m)
    assert (back.n, back.m, back.f) == (1, 3, 2)


def test_vertex_split_range(f1):
    with pytest.raises(WouldCreateForbidden):
        vertex_split(f1, 0, 0, 1)
