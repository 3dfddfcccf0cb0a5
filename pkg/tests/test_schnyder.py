from collections import Counter

import pytest

from tsw.errors import FormatError, NotEdgeLabeling, NotSchnyderOrientation
from tsw.existence import balanced_wood
from tsw.fixtures import get_fixture
from tsw.orient_lattice import enumerate_3orientations, gamma_primal, is_schnyder_orientation, lift_tri
from tsw.schnyder import (
    AngleLabeling, SchnyderWood, color_cycles, color_successor, colors_from_orientation, completion_orientation,
    dual_wood, from_wood, is_half_crossing, labeling_from_wood, mono_cycles, schnyder_property, to_wood, validate,
    wood_from_labeling,
)
from tsw.torus_map import completion, homology_class

from conftest import crossing

SOURCES = ["k7", "three-loops", "grid3", 0, 1, 2, 3, 7]


def _det(a, b):
    return a[0] * b[1] - a[1] * b[0]


@pytest.mark.parametrize("src", SOURCES)
def test_crossing_woods_validate(src):
    w = crossing(src)
    rep = validate(w, crossing=True)
    assert rep.clean, rep
    assert mono_cycles(w).tag == "crossing"


@pytest.mark.parametrize("src", SOURCES)
def test_labeling_roundtrip(src):
    w = crossing(src)
    lab = labeling_from_wood(w)
    assert wood_from_labeling(lab) == w


def test_perturbed_label_rejected(k7):
    w = crossing("k7")
    base = labeling_from_wood(w).label
    for h in range(k7.num_half):
        lab = list(base)
        lab[h] = (lab[h] + 1) % 3
        try:
            bad = wood_from_labeling(AngleLabeling(k7, tuple(lab)))
        except NotEdgeLabeling:
            continue
        assert not validate(bad).clean


def test_swapped_colors_break_vertex_property(k7):
    w = crossing("k7")
    v = 0
    h0, h1 = w.out_half(v, 0), w.out_half(v, 1)
    col = list(w.color)
    for h in (h0, h1):
        col[h] = col[k7.twin[h]] = (w.color[h0] + w.color[h1]) - w.color[h]
    bad = SchnyderWood(k7, w.out, col)
    assert schnyder_property(bad, v) == "outgoing colors not in ccw order"
    assert not validate(bad).clean


def test_reversed_edge_breaks_outdegree(k7):
    w = crossing("k7")
    h = w.out_half(0, 0)
    out = list(w.out)
    out[h], out[k7.twin[h]] = False, True
    rep = validate(SchnyderWood(k7, out, w.color))
    assert any(v == 0 for v, _ in rep.vertex_violations)


def test_one_way_orientation_is_three_orientation():
    for src in SOURCES:
        d = crossing(src).one_way_orientation()
        assert set(d.outdeg()) == {3}


def test_color_successor_unique_out():
    w = crossing("k7")
    for c in range(3):
        succ = color_successor(w, c)
        assert all(w.carrier.vert[h] == v for v, h in enumerate(succ))


@pytest.mark.parametrize("src", SOURCES)
def test_mono_cycles_parallel_and_non_contractible(src):
    w = crossing(src)
    m = w.carrier
    rep = mono_cycles(w)
    for i in range(3):
        assert rep.cycles[i]
        # every i-cycle is a directed closed walk of color i
        for cyc in rep.cycles[i]:
            assert all(m.head(cyc[k - 1]) == m.vert[cyc[k]] for k in range(len(cyc)))
            assert all(w.out[h] and w.color[h] == i for h in cyc)
        cls = rep.classes[i]
        assert all(c != (0, 0) for c in cls)
        assert all(_det(cls[0], c) == 0 for c in cls)
        assert all(c == cls[0] for c in cls)
    assert rep.omega == tuple(abs(_det(rep.classes[i - 1][0], rep.classes[(i + 1) % 3][0])) for i in range(3))
    assert min(rep.omega) >= 1
    assert is_half_crossing(rep)


def test_cycle_classes_sum_to_zero():
    # one cycle of each color, counted with multiplicity, closes up
    for src in SOURCES:
        w = crossing(src)
        rep = mono_cycles(w)
        c = [rep.classes[i][0] for i in range(3)]
        o = rep.omega
        for k in range(2):
            assert sum(o[i] * c[i][k] for i in range(3)) == 0


def test_cycles_start_at_smallest_half():
    w = crossing("grid3")
    for per in color_cycles(w):
        for cyc in per:
            assert cyc[0] == min(cyc)


@pytest.mark.parametrize("src", SOURCES)
def test_dual_wood_swaps_edge_types(src):
    w = crossing(src)
    dw = dual_wood(w)
    assert validate(dw).clean
    assert all(w.edge_type(e) + dw.edge_type(e) == 3 for e in range(w.carrier.m))
    ddw = dual_wood(dw)
    assert validate(ddw).clean
    assert Counter(ddw.edge_type(e) for e in range(w.carrier.m)) == Counter(w.edge_type(e) for e in range(w.carrier.m))


@pytest.mark.parametrize("src", SOURCES)
def test_completion_orientation_recovers_colors(src):
    w = crossing(src)
    cm = completion(w.carrier)
    o = completion_orientation(w, cm)
    assert is_schnyder_orientation(cm, o)
    assert colors_from_orientation(cm, o) == w


def test_three_loops_orientations_gate(f1):
    cm = completion(f1)
    ok = 0
    for o in enumerate_3orientations(f1):
        L = lift_tri(o, cm)
        if is_schnyder_orientation(cm, L):
            w = colors_from_orientation(cm, L)
            assert validate(w).clean
            ok += 1
        else:
            with pytest.raises(NotSchnyderOrientation):
                colors_from_orientation(cm, L)
    assert ok == 2


def test_balanced_wood_loops_have_zero_gamma(f1):
    w = balanced_wood(f1)
    cm = completion(f1)
    L = completion_orientation(w, cm)
    assert all(gamma_primal(cm, L, [h]) == 0 for h, _ in f1.edges)


@pytest.mark.parametrize("src", ["k7", "grid3", 4])
def test_wood_text_roundtrip(src):
    w = crossing(src)
    assert from_wood(to_wood(w), w.carrier) == w
    dw = dual_wood(w)
    assert from_wood(to_wood(dw), dw.carrier) == dw


def test_wood_text_errors(k7):
    with pytest.raises(FormatError):
        from_wood("tree 1\n", k7)
    with pytest.raises(FormatError):
        from_wood("wood 1\nw 0 1 999 0\n", k7)


def test_homology_of_cycles_matches_classes():
    w = crossing("grid3")
    m = w.carrier
    rep = mono_cycles(w)
    for i in range(3):
        for cyc, cls in zip(rep.cycles[i], rep.classes[i]):
            assert homology_class(m, list(cyc)) == cls


def test_grid3_cycle_taxonomy():
    # counts from exhaustive enumeration of all 22 Schnyder orientations
    m = get_fixture("grid3")
    cm = completion(m)
    tags = Counter()
    for o in enumerate_3orientations(m):
        L = lift_tri(o, cm)
        if is_schnyder_orientation(cm, L):
            tags[mono_cycles(colors_from_orientation(cm, L)).tag] += 1
    assert tags == {
        "crossing": 2,
        "half-crossing(0)": 6,
        "half-crossing(1)": 3,
        "half-crossing(2)": 3,
        "not-half-crossing": 8,
    }
