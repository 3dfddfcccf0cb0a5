import functools
import random
from collections import Counter

import pytest

from tsw.errors import FaceNotDirected, NotACycle, NotThreeOrientation
from tsw.existence import balanced_wood, crossing_wood
from tsw.fixtures import get_fixture
from tsw.orient_lattice import (
    CCW, CW, EdgeOrientation, delta, diff_classify, dual_walk_left, dual_walk_right, enumerate_3orientations,
    flip_face, from_ornt, gamma, gamma_primal, gamma_tri, group_homologous, has_zero_homologous, hasse,
    homologous, is_balanced, is_schnyder_orientation, leq, lift_tri, maximize, minimize, orientation_type,
    orientation_type_tri, potentials, rigid_edges, to_ornt,
)
from tsw.schnyder import color_cycles
from tsw.torus_map import CompletionMap, completion, homology_basis, insert_vertex

from conftest import corpus_map
from test_torus_map import _random_closed_walk


def _loop_gammas(m, o):
    cm = completion(m)
    L = lift_tri(o, cm)
    return sorted(gamma_primal(cm, L, [h]) for h, _ in m.edges)


@functools.lru_cache(maxsize=None)
def _small(count=30):
    """(map, all 3-orientations) for the first corpus maps with at most 5 vertices."""
    out = []
    for seed in range(200):
        m = corpus_map(seed)
        if m.n <= 5:
            out.append((m, enumerate_3orientations(m, limit=2 ** 15)))
        if len(out) == count:
            break
    return out


def _random_cycle(m, rng, tries=200):
    """A closed walk without immediate backtracking."""
    for _ in range(tries):
        w = _random_closed_walk(m, rng, rng.randint(1, 6), rng.randrange(m.n))
        if all(w[i] != m.twin[w[i - 1]] for i in range(len(w))):
            return w
    return None


# ---------------------------------------------------------------- gamma


def test_three_loops_gamma_patterns(f1):
    pats = Counter(tuple(_loop_gammas(f1, o)) for o in enumerate_3orientations(f1))
    assert pats[(-2, 0, 2)] >= 1
    assert pats[(0, 0, 0)] >= 1
    assert sum(pats.values()) == 8


def test_gamma_reverses_with_direction(k7):
    d = balanced_wood(k7).one_way_orientation()
    rng = random.Random(0)
    for _ in range(20):
        w = _random_cycle(k7, rng)
        rev = [k7.twin[h] for h in reversed(w)]
        assert gamma(d, rev) == -gamma(d, w)


def test_gamma_rejects_open_walk(k7):
    d = balanced_wood(k7).one_way_orientation()
    with pytest.raises(NotACycle):
        gamma(d, [k7.first[0]])


def test_gamma_tri_matches_completion():
    rng = random.Random(11)
    checked = 0
    for m, os_ in _small():
        o = rng.choice(os_)
        cm = completion(m)
        L = lift_tri(o, cm)
        w = _random_cycle(m, rng)
        if w is None:
            continue
        assert gamma_tri(o, w) == gamma_primal(cm, L, w)
        checked += 1
    assert checked >= 25


def test_facial_triangle_gamma_by_counting(k7):
    # three vertices with 9 outgoing edges, 3 of them on the triangle, none inside the face
    for o in hasse(balanced_wood(k7).one_way_orientation(), 0).nodes[:30]:
        for fc in k7.faces:
            assert gamma_tri(o, list(fc)) == 6
    for m, os_ in _small(10):
        for o in os_:
            assert all(gamma_tri(o, list(fc)) == 6 for fc in m.faces)


# ---------------------------------------------------------------- delta


def _around_vertex(M, x):
    """Closed dual walk around completion vertex x."""
    rot = M.rotation(x)
    for cand in (rot, rot[::-1], [M.twin[h] for h in rot], [M.twin[h] for h in rot[::-1]]):
        k = len(cand)
        if all(M.face_of[M.twin[cand[i]]] == M.face_of[cand[(i + 1) % k]] for i in range(k)):
            return cand
    raise AssertionError("no closed walk around vertex")


def test_delta_faces_mod3(k7):
    cm = completion(k7)
    L = lift_tri(balanced_wood(k7).one_way_orientation(), cm)
    for x in range(cm.map.n):
        assert delta(cm, L, _around_vertex(cm.map, x)) % 3 == 0
    assert delta(cm, L, []) == 0


def test_gamma_splits_into_left_and_right_delta():
    rng = random.Random(5)
    for m, os_ in _small():
        cm = completion(m)
        o = rng.choice(os_)
        L = lift_tri(o, cm)
        w = _random_cycle(m, rng)
        if w is None:
            continue
        cw = cm.lift_primal(w)
        assert gamma(L, cw) == delta(cm, L, dual_walk_left(cm, cw)) + delta(cm, L, dual_walk_right(cm, cw))


# ---------------------------------------------------------------- characterization and type


def test_schnyder_orientation_gate(f1):
    cm = completion(f1)
    for o in enumerate_3orientations(f1):
        g = _loop_gammas(f1, o)
        assert is_schnyder_orientation(cm, lift_tri(o, cm)) == all(x % 3 == 0 for x in g)


def test_wrong_outdegree_is_not_schnyder(k7):
    cm = completion(k7)
    L = lift_tri(balanced_wood(k7).one_way_orientation(), cm)
    # turn one edge-vertex around: a primal vertex drops to out-degree 2
    h = k7.first[0]
    o = balanced_wood(k7).one_way_orientation()
    e = k7.edge_of[h]
    bad = o.reversed([e])
    assert not is_schnyder_orientation(cm, lift_tri(bad, cm))
    assert is_schnyder_orientation(cm, L)
    with pytest.raises(NotThreeOrientation):
        orientation_type(cm, lift_tri(bad, cm))


def test_k7_balanced_type(k7):
    cm = completion(k7)
    L = lift_tri(balanced_wood(k7).one_way_orientation(), cm)
    t = orientation_type(cm, L)
    assert (t.gamma_b1, t.gamma_b2) == (0, 0) and t.balanced


def test_balancedness_independent_of_basis():
    rng = random.Random(2)
    for seed, (m, os_) in enumerate(_small()):
        cm = completion(m)
        o = rng.choice(os_)
        L = lift_tri(o, cm)
        other = homology_basis(m, rng.randrange(m.n), random.Random(seed))
        assert is_balanced(cm, L) == is_balanced(cm, L, other)
        t1, t2 = orientation_type_tri(o), orientation_type(cm, L)
        assert (t1.gamma_b1, t1.gamma_b2) == (t2.gamma_b1, t2.gamma_b2)


# ---------------------------------------------------------------- enumeration and classes


def test_enumerate_three_loops(f1):
    assert len(enumerate_3orientations(f1)) == 8


def test_grid3_schnyder_orientations_twenty_and_two():
    m = get_fixture("grid3")
    cm = completion(m)
    allo = enumerate_3orientations(m)
    assert len(allo) == 80
    schn = [o for o in allo if is_schnyder_orientation(cm, lift_tri(o, cm))]
    assert len(schn) == 22
    groups = sorted(len(g) for g in group_homologous(schn))
    assert groups == [1, 1, 20]
    assert sum(orientation_type_tri(o).balanced for o in schn) == 20


def test_grouping_is_a_partition():
    m = get_fixture("grid3")
    allo = enumerate_3orientations(m)
    groups = group_homologous(allo)
    assert sum(len(g) for g in groups) == len(allo)
    for g in groups:
        for a in g:
            assert all(homologous(a, b) for b in g)
    for i in range(len(groups)):
        for j in range(i + 1, len(groups)):
            assert not homologous(groups[i][0], groups[j][0])


# ---------------------------------------------------------------- differences


def test_diff_classify_identity(k7):
    d = balanced_wood(k7).one_way_orientation()
    assert diff_classify(d, d) == "zero-homologous"


def test_diff_classify_same_type_pairs(f1):
    cm = completion(f1)
    schn = [o for o in enumerate_3orientations(f1) if is_schnyder_orientation(cm, lift_tri(o, cm))]
    for a in schn:
        for b in schn:
            if orientation_type_tri(a) == orientation_type_tri(b):
                assert diff_classify(a, b) == "zero-homologous"


def test_diff_classify_all_grid3_pairs():
    m = get_fixture("grid3")
    cm = completion(m)
    schn = [o for o in enumerate_3orientations(m) if is_schnyder_orientation(cm, lift_tri(o, cm))]
    seen = Counter()
    for a in schn:
        for b in schn:
            same = orientation_type_tri(a) == orientation_type_tri(b)
            got = diff_classify(a, b)
            assert got == ("zero-homologous" if same else "eulerian-partitionable")
            seen[got] += 1
    assert seen["eulerian-partitionable"] == 82


def test_diff_classify_single_reversed_cycle(k7):
    # one monochromatic cycle turned around leaves the Schnyder class
    w = crossing_wood(k7)
    d = w.one_way_orientation()
    cyc = color_cycles(w)[0][0]
    d2 = d.reversed({k7.edge_of[h] for h in cyc})
    cm = completion(k7)
    assert d2.outdeg() == d.outdeg()
    assert not is_schnyder_orientation(cm, lift_tri(d2, cm))
    assert diff_classify(d, d2) == "not-partitionable"


# ---------------------------------------------------------------- flips and order


def test_flip_roundtrip_and_order(k7):
    d = balanced_wood(k7).one_way_orientation()
    H = hasse(d, 0)
    seen = 0
    for o in H.nodes[:50]:
        for F in range(1, k7.f):
            try:
                o2 = flip_face(o, F, CCW)
            except FaceNotDirected:
                continue
            assert flip_face(o2, F, CW) == o
            assert orientation_type_tri(o2) == orientation_type_tri(o)
            assert leq(o, o2, 0) and not leq(o2, o, 0)
            seen += 1
    assert seen > 0


def test_flip_needs_directed_face(k7):
    d = balanced_wood(k7).one_way_orientation()
    for F in range(k7.f):
        try:
            flip_face(d, F, CCW)
        except FaceNotDirected:
            break
    else:
        pytest.fail("every face directed ccw")


def test_rigid_edges_k7_empty(k7):
    assert rigid_edges(balanced_wood(k7).one_way_orientation()) == set()


def test_rigid_edges_stuffed_triangle(k7):
    m = insert_vertex(k7, 0)
    d = balanced_wood(m).one_way_orientation()
    spokes = {m.edge_of[h] for h in m.rotation(7)}
    assert rigid_edges(d) == spokes


def test_unbalanced_grid3_schnyder_classes_fully_rigid():
    m = get_fixture("grid3")
    cm = completion(m)
    for o in enumerate_3orientations(m):
        if is_schnyder_orientation(cm, lift_tri(o, cm)) and not orientation_type_tri(o).balanced:
            assert rigid_edges(o) == set(range(m.m))
            assert len(hasse(o, 0).nodes) == 1


def test_hasse_size_matches_class_size():
    m = get_fixture("grid3")
    for g in group_homologous(enumerate_3orientations(m)):
        assert len(hasse(g[0], 0).nodes) == len(g)


def _class_by_enumeration(d):
    return [o for o in enumerate_3orientations(d.carrier) if homologous(o, d)]


@pytest.mark.parametrize("src", ["three-loops", "grid3", 0, 1, 2, 5])
def test_minimize_matches_exhaustive(src):
    m = get_fixture(src) if isinstance(src, str) else corpus_map(src)
    if m.f > 6:
        m = get_fixture("grid3")
    d = balanced_wood(m).one_way_orientation()
    for f0 in range(m.f):
        cls = _class_by_enumeration(d)
        mins = [o for o in cls if all(leq(o, x, f0) for x in cls)]
        maxs = [o for o in cls if all(leq(x, o, f0) for x in cls)]
        assert len(mins) == 1 and len(maxs) == 1
        assert minimize(d, f0) == mins[0]
        assert maximize(d, f0) == maxs[0]
        assert minimize(mins[0], f0) == mins[0]


def test_minimize_independent_of_start(k7):
    d = balanced_wood(k7).one_way_orientation()
    H = hasse(d, 0)
    rng = random.Random(4)
    ref = minimize(d, 0)
    for o in rng.sample(H.nodes, 5):
        assert minimize(o, 0) == ref


def test_hasse_grid3_structure():
    m = get_fixture("grid3")
    d = balanced_wood(m).one_way_orientation()
    H = hasse(d, 0)
    assert len(H.nodes) == 20
    assert H.is_connected() and H.is_acyclic() and H.check_labels()
    assert len(H.sources()) == len(H.sinks()) == 1
    assert H.nodes[H.sources()[0]] == minimize(d, 0)


def test_potentials_closed_under_min_and_max():
    m = get_fixture("grid3")
    d = balanced_wood(m).one_way_orientation()
    H = hasse(d, 0)
    lo = minimize(d, 0)
    vecs = {tuple(potentials(lo, o, 0)) for o in H.nodes}
    assert len(vecs) == 20
    for a in vecs:
        assert min(a) >= 0
        for b in vecs:
            assert tuple(map(min, a, b)) in vecs
            assert tuple(map(max, a, b)) in vecs


def test_minimum_has_no_cw_zero_homologous_subgraph(k7):
    d = balanced_wood(k7).one_way_orientation()
    lo, hi = minimize(d, 0), maximize(d, 0)
    assert not has_zero_homologous(lo, 0, CW)
    assert has_zero_homologous(lo, 0, CCW)
    assert not has_zero_homologous(hi, 0, CCW)


def test_ornt_roundtrip(k7):
    d = balanced_wood(k7).one_way_orientation()
    assert from_ornt(to_ornt(d), k7) == d


def test_edge_orientation_outdeg(f1):
    o = EdgeOrientation(f1, [0, 1, 2])
    assert o.outdeg() == [3]
    cm = completion(f1)
    L = lift_tri(o, cm)
    for x, r in enumerate(cm.role):
        assert L.outdeg()[x] == (1 if r == CompletionMap.EDGE else 3)
