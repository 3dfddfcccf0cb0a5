import dataclasses
import random
from collections import deque

import pytest

from tsw.errors import FormatError, NotIntersecting
from tsw.flat_draw import (
    AreaPotential, Line, bound_t, dominance_pairs, embed, emit_drawing, from_draw, line_system, period_vectors,
    predicted_periods, project, reduce_basis, region_vector, to_draw, validate_drawing,
)
from tsw.flat_draw import _d_term
from tsw.fixtures import get_fixture
from tsw.schnyder import colors_from_orientation, mono_cycles
from tsw.orient_lattice import enumerate_3orientations, is_schnyder_orientation, lift_tri
from tsw.torus_map import completion, face_offsets

from conftest import corpus_map, crossing
from test_torus_map import _random_closed_walk

SOURCES = ["k7", "grid3", "three-loops", 0, 1, 5, 9]


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _flood_area(m, walk, start):
    """Signed face count enclosed by a closed lifted walk, by winding numbers.

    Lifted faces are (F, q) with q the copy of F's base.  Crossing half h from
    its left face to its right face lowers the winding by the number of times
    the walk uses lifted h and raises it by the uses of its twin.
    """
    basis = m.basis()
    shift = basis.shift
    off = face_offsets(m, basis)
    use = {}
    p = start
    pts = [p]
    for h in walk:
        use[(h, p)] = use.get((h, p), 0) + 1
        p = (p[0] + shift[h][0], p[1] + shift[h][1])
        pts.append(p)
    assert p == start, "walk does not close in the cover"
    R = max(max(abs(x), abs(y)) for x, y in pts) + 3
    inside = lambda q: abs(q[0]) <= R and abs(q[1]) <= R  # noqa: E731
    # faces on the rim of the box are far from the walk and have winding 0
    wind = {(F, (a, b)): 0 for F in range(m.f) for a in range(-R, R + 1) for b in range(-R, R + 1) if R in (abs(a), abs(b))}
    dq = deque(wind)
    while dq:
        F, q = dq.popleft()
        for h in m.faces[F]:
            tail = (q[0] + off[h][0], q[1] + off[h][1])
            t = m.twin[h]
            ttail = (tail[0] + shift[h][0], tail[1] + shift[h][1])
            G = m.face_of[t]
            qg = (ttail[0] - off[t][0], ttail[1] - off[t][1])
            if not inside(qg):
                continue
            val = wind[(F, q)] - use.get((h, tail), 0) + use.get((t, ttail), 0)
            if (G, qg) in wind:
                assert wind[(G, qg)] == val, "winding numbers inconsistent"
                continue
            wind[(G, qg)] = val
            dq.append((G, qg))
    return sum(wind.values())


# ---------------------------------------------------------------- area potential


@pytest.mark.parametrize("src", ["k7", "grid3", "three-loops", "two-loops", "brick", 3])
def test_faces_have_unit_area(src):
    m = get_fixture(src) if isinstance(src, str) else corpus_map(src)
    pot = AreaPotential(m)
    assert abs(pot.scale) == 2
    off = face_offsets(m, m.basis())
    for fc in m.faces:
        for q in ((0, 0), (3, -2)):
            base = (q[0] + off[fc[0]][0], q[1] + off[fc[0]][1])
            assert pot.area(list(fc), base) == 1


def test_area_matches_flood_oracle():
    rng = random.Random(8)
    checked = 0
    for seed in range(40):
        m = corpus_map(seed)
        pot = AreaPotential(m)
        for _ in range(15):
            w = _random_closed_walk(m, rng, rng.randint(2, 12), rng.randrange(m.n))
            cov = pot.shift
            cls = (sum(cov[h][0] for h in w), sum(cov[h][1] for h in w))
            if cls != (0, 0):
                continue
            p = (rng.randint(-2, 2), rng.randint(-2, 2))
            assert pot.area(w, p) == _flood_area(m, w, p)
            checked += 1
    assert checked >= 50


# ---------------------------------------------------------------- lines


@pytest.mark.parametrize("src", SOURCES)
def test_line_sizes_partition_faces(src):
    ls = line_system(crossing(src))
    f = ls.wood.carrier.f
    for j in range(3):
        assert sum(ls.sizes[j]) == f
        assert all(s > 0 for s in ls.sizes[j])
        assert sorted(ls.order[j]) == list(range(len(ls.cycles[j])))
        if len(ls.cycles[j]) == 1:
            assert ls.sizes[j] == [f]


def test_line_value_depends_on_line_only():
    ls = line_system(crossing(0))
    for j in range(3):
        c = ls.classes[j]
        for k in range(len(ls.cycles[j])):
            L = Line(j, k, (1, 2))
            L2 = Line(j, k, (1 + 3 * c[0], 2 + 3 * c[1]))
            assert ls._strip_value(L) == ls._strip_value(L2)


def test_origin_line_value_zero():
    for src in SOURCES:
        ls = line_system(crossing(src))
        assert all(ls.value(ls.origins[j]) == 0 for j in range(3))


def test_d_term_area_matches_flood_oracle():
    for src in ["k7", "grid3", 0, 5]:
        ls = line_system(crossing(src))
        m = ls.wood.carrier
        for v in range(m.n):
            for i in range(3):
                d, La, Lb = _d_term(ls, i, v, (0, 0))
                pa, La2, ta = ls.reach((i - 1) % 3, v, (0, 0))
                pb, Lb2, tb = ls.reach((i + 1) % 3, v, (0, 0))
                za, zb = ls.meet(La2, ta, Lb2, tb)
                walk = pb + ls.walk(Lb2, tb, zb) + ls.walk(La2, za, ta) + [m.twin[h] for h in reversed(pa)]
                assert d == _flood_area(m, walk, (0, 0))


def test_lines_meet_at_common_vertex():
    ls = line_system(crossing("grid3"))
    for v in range(ls.wood.carrier.n):
        for i in range(3):
            _, La, ta = ls.reach((i - 1) % 3, v, (0, 0))
            _, Lb, tb = ls.reach((i + 1) % 3, v, (0, 0))
            za, zb = ls.meet(La, ta, Lb, tb)
            assert ls.point(La, za) == ls.point(Lb, zb)


def test_line_system_needs_intersecting_wood():
    m = get_fixture("grid3")
    cm = completion(m)
    for o in enumerate_3orientations(m):
        L = lift_tri(o, cm)
        if is_schnyder_orientation(cm, L):
            w = colors_from_orientation(cm, L)
            if mono_cycles(w).tag == "not-half-crossing":
                with pytest.raises(NotIntersecting):
                    line_system(w)
                return
    pytest.fail("no witness")


# ---------------------------------------------------------------- periods


@pytest.mark.parametrize("src", SOURCES)
def test_periods(src):
    w = crossing(src)
    ls = line_system(w)
    m = w.carrier
    N = bound_t(ls.omega, m.f) + m.n
    per = period_vectors(ls, N)
    assert sum(per.S) == 0 and sum(per.S2) == 0
    assert (per.S, per.S2) == predicted_periods(ls, N)
    assert _cross(per.S, per.S2) != (0, 0, 0)
    tot = [sum(ls.omega[i] * per.Z[i][k] for i in range(3)) for k in range(3)]
    assert tot == [0, 0, 0]
    # Y, Y' span the same lattice as S, S'
    assert abs(sum(_cross(per.Y, per.Y2))) == abs(sum(_cross(per.S, per.S2)))
    bound = 6 * max(ls.omega) * N * m.f
    assert max(sum(x * x for x in per.Y), sum(x * x for x in per.Y2)) <= bound * bound


def test_reduce_basis_keeps_lattice():
    rng = random.Random(1)
    for _ in range(50):
        u = tuple(rng.randint(-30, 30) for _ in range(3))
        w = tuple(rng.randint(-30, 30) for _ in range(3))
        if _cross(u, w) == (0, 0, 0):
            continue
        a, b = reduce_basis(u, w)
        assert _cross(a, b) in (_cross(u, w), tuple(-x for x in _cross(u, w)))
        na, nb = sum(x * x for x in a), sum(x * x for x in b)
        assert na <= nb
        dot = sum(x * y for x, y in zip(a, b))
        assert 2 * abs(dot) <= na


def test_k7_straight_numbers(k7):
    d = embed(crossing("k7"), "straight")
    assert (d.N, d.t, d.omega) == (91, 84, (1, 1, 1))
    assert d.S == (-1274, -1274, 2548) and d.S2 == (-1274, 2548, -1274)


# ---------------------------------------------------------------- drawings


@pytest.mark.parametrize("src", SOURCES)
@pytest.mark.parametrize("mode", ["straight", "geodesic"])
def test_drawing_valid(src, mode):
    d = embed(crossing(src), mode)
    rep = validate_drawing(d, 1)
    assert rep.ok, rep.lines()
    assert rep.faces_checked == 9 * d.carrier.f
    assert rep.max_edge_delta <= 2 * d.N * d.carrier.f


@pytest.mark.parametrize("src", SOURCES)
def test_anchors_incomparable_and_normals_positive(src):
    d = embed(crossing(src), "geodesic")
    assert dominance_pairs(d, 1) == []
    m = d.carrier
    off = face_offsets(m, m.basis())
    for fc in m.faces:
        a, b, c = (d.position(m.vert[h], off[h]) for h in fc)
        assert all(x > 0 for x in _cross(_sub(b, a), _sub(c, a)))


def test_projection_preserves_orientation():
    rng = random.Random(2)
    for how in ("plane", "xy", "yz", "zx"):
        for _ in range(100):
            a = tuple(rng.randint(-9, 9) for _ in range(3))
            b = tuple(rng.randint(-9, 9) for _ in range(3))
            pa, pb = project(a, how), project(b, how)
            det2 = pa[0] * pb[1] - pa[1] * pb[0]
            n = _cross(a, b)
            want = {"plane": sum(n), "xy": n[2], "yz": n[0], "zx": n[1]}[how]
            assert det2 == want
    with pytest.raises(ValueError):
        project((0, 0, 0), "xz")


def test_unit_perturbation_breaks_periodicity():
    for src in ["k7", "grid3"]:
        d = embed(crossing(src), "straight")
        for v in range(d.carrier.n):
            for ax in range(3):
                a = list(d.anchors)
                x = list(a[v])
                x[ax] += 1
                a[v] = tuple(x)
                rep = validate_drawing(dataclasses.replace(d, anchors=a), 1)
                assert rep.period_violations and not rep.ok


@pytest.mark.parametrize("src, expected", [("k7", 27), ("grid3", 18)])
def test_reflected_anchor_flips_faces(src, expected):
    # mirror vertex 0 through one of its neighbours: faces around it turn over
    d = embed(crossing(src), "straight")
    m = d.carrier
    h = m.first[0]
    pu = d.position(m.head(h), m.basis().shift[h])
    a = list(d.anchors)
    a[0] = tuple(2 * x - y for x, y in zip(pu, d.anchors[0]))
    rep = validate_drawing(dataclasses.replace(d, anchors=a, wood=None), 1)
    assert len(rep.orientation_violations) == expected
    assert not rep.ok


def test_embed_argument_checks():
    w = crossing("k7")
    with pytest.raises(ValueError):
        embed(w, "curved")
    with pytest.raises(ValueError):
        embed(w, "straight", N=3)


def test_region_vector_copy_translation():
    w = crossing(1)
    ls = line_system(w)
    d = embed(w)
    for v in range(w.carrier.n):
        assert region_vector(ls, v, (2, -1), d.N) == d.position(v, (2, -1))


# ---------------------------------------------------------------- text and SVG


def test_draw_roundtrip():
    d = embed(crossing("grid3"), "geodesic", projection="xy")
    back = from_draw(to_draw(d), d.carrier, d.wood)
    assert back == d
    assert validate_drawing(back).ok


def test_draw_errors(k7):
    with pytest.raises(FormatError):
        from_draw("draw 2\n", k7)
    with pytest.raises(FormatError):
        from_draw("draw 1\nN 3\n", k7)


def test_svg_deterministic_and_tiled():
    d = embed(crossing("k7"))
    s0 = emit_drawing(d, 0)
    assert s0 == emit_drawing(d, 0)
    assert s0.count("<circle") == 7
    s1 = emit_drawing(d, 1)
    assert s1.count("<circle") == 63
    assert s1.startswith("<svg") and s1.rstrip().endswith("</svg>")


def test_svg_seams_consistent():
    # every edge drawn from the central tile ends on a drawn vertex
    d = embed(crossing("grid3"))
    m = d.carrier
    shift = m.basis().shift
    verts = {d.coords2d(v, (a, b)) for a in (-1, 0, 1) for b in (-1, 0, 1) for v in range(m.n)}
    for h in range(m.num_half):
        assert d.coords2d(m.head(h), shift[h]) in verts
        assert d.position(m.head(h), (1 + shift[h][0], shift[h][1])) == tuple(
            x + y for x, y in zip(d.position(m.head(h), shift[h]), d.S)
        )
