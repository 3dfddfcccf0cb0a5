"""Constructions of balanced, half-crossing and crossing woods on toroidal triangulations.

Contraction merges the two ends of an edge and drops the two edges that
become parallel to remaining ones.  Decontraction re-inserts them and
searches the few local orientations and colorings around the split vertex;
every candidate is certified by full validation and by gamma on the
homology basis, so only balance-preserving completions are accepted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import (
    NoApplicableRule,
    NoneFound,
    NonTermination,
    NotHalfCrossing,
    NotSchnyderOrientation,
    NotThreeOrientation,
    NotTriangulation,
    TSWError,
    WouldCreateForbidden,
)
from .orient_lattice import (
    EdgeOrientation,
    enumerate_3orientations,
    hasse,
    lift_tri,
    orientation_type_tri,
)
from .schnyder import (
    SchnyderWood,
    colors_from_orientation,
    mono_cycles,
    schnyder_property,
    validate,
)
from .torus_map import ToroidalMap, build_map, completion, forbidden_configs, homology_class, vneg
from .fixtures import three_loops


# ---------------------------------------------------------------- contraction


@dataclass
class ContractionRecord:
    before: ToroidalMap
    after: ToroidalMap
    edge: int                       # contracted edge of ``before``
    half: int                       # its half-edge at u
    u: int
    v: int
    x: int
    y: int
    removed: tuple[int, ...]        # edges of ``before`` dropped as duplicates
    identified: bool                # some of u, v, x, y coincide
    old_half: tuple[int, ...]       # half-edge of ``after`` -> half-edge of ``before``
    old_vert: tuple[int, ...]


@dataclass
class ContractionTrace:
    records: list[ContractionRecord] = field(default_factory=list)


def _check_tri(m: ToroidalMap) -> None:
    if not m.is_triangulation():
        raise NotTriangulation("expected a toroidal triangulation")


def _build(rots, twin):
    """Map from rotation lists of arbitrary half-edge ids; returns it with the id list."""
    ids = [x for rot in rots for x in rot]
    new_id = {x: k for k, x in enumerate(ids)}
    pairs = [(new_id[x], new_id[twin[x]]) for x in ids if x < twin[x]]
    return build_map([[new_id[x] for x in rot] for rot in rots], pairs), ids


def contract(tri: ToroidalMap, h: int) -> tuple[ToroidalMap, ContractionRecord]:
    """Contract the edge of half-edge h (from u to v).

    The two faces beside the edge become digons; one edge of each digon is
    dropped, preferring the ones around v.  When the neighbours coincide the
    digons share an edge and a second pass removes the leftover digon.
    """
    m = tri
    if m.is_loop(h):
        raise WouldCreateForbidden("cannot contract a loop")
    t = m.twin[h]
    u, v = m.vert[h], m.vert[t]
    ra, rb = m.rotation(u), m.rotation(v)
    i, j = ra.index(h), rb.index(t)
    a = ra[i + 1:] + ra[:i]
    b = rb[j + 1:] + rb[:j]
    a1, ak, b1, bl = a[0], a[-1], b[0], b[-1]
    prefer = {m.edge_of[b1], m.edge_of[bl]}
    rots = [a + b if w == u else m.rotation(w) for w in range(m.n) if w != v]
    old_vert = [w for w in range(m.n) if w != v]
    removed = []
    dead = {h, t}
    try:
        while True:
            rots = [[x for x in rot if x not in dead] for rot in rots]
            if any(not rot for rot in rots):
                raise WouldCreateForbidden("a vertex lost all its edges")
            new, ids = _build(rots, m.twin)
            digons = [F for F in new.faces if len(F) == 2]
            if not digons:
                break
            pick = [m.edge_of[ids[x]] for x in digons[0]]
            e = next((e for e in pick if e in prefer), pick[0])
            removed.append(e)
            dead |= set(m.edges[e])
    except TSWError as exc:
        raise WouldCreateForbidden(str(exc)) from None
    if not new.is_triangulation() or (new.n, new.m, new.f) != (m.n - 1, m.m - 3, m.f - 2):
        raise WouldCreateForbidden("result is not a triangulation")
    if not forbidden_configs(new).clean:
        raise WouldCreateForbidden("contraction creates a contractible loop or homotopic pair")
    x, y = m.head(a1), m.head(ak)
    rec = ContractionRecord(
        before=m, after=new, edge=m.edge_of[h], half=h, u=u, v=v, x=x, y=y,
        removed=tuple(removed), identified=len({u, v, x, y}) < 4,
        old_half=tuple(ids), old_vert=tuple(old_vert),
    )
    return new, rec


def contractible_edge(tri: ToroidalMap) -> tuple[int, ToroidalMap, ContractionRecord]:
    """First half-edge (by edge order) whose contraction keeps the map clean."""
    _check_tri(tri)
    if tri.n < 2:
        raise NoneFound("a single-vertex map has no contractible edge")
    for h, _ in tri.edges:
        if tri.is_loop(h):
            continue
        try:
            new, rec = contract(tri, h)
        except WouldCreateForbidden:
            continue
        return h, new, rec
    raise NoneFound("no edge can be contracted")


def contract_all(tri: ToroidalMap) -> ContractionTrace:
    trace = ContractionTrace()
    m = tri
    while m.n > 1:
        _, m, rec = contractible_edge(m)
        trace.records.append(rec)
    return trace


# ---------------------------------------------------------------- decontraction


def _is_balanced_tri(wood: SchnyderWood) -> bool:
    try:
        return orientation_type_tri(wood.one_way_orientation()).balanced
    except (ValueError, NotThreeOrientation):
        return False


def decontract_wood(wood: SchnyderWood, rec: ContractionRecord) -> SchnyderWood:
    """Extend a balanced wood of ``rec.after`` to a balanced wood of ``rec.before``."""
    m = rec.before
    if wood.carrier is not rec.after:
        raise ValueError("wood lives on another map")
    out = [False] * m.num_half
    col = [0] * m.num_half
    for k, x in enumerate(rec.old_half):
        out[x] = wood.out[k]
        col[x] = wood.color[k]
    h = rec.half
    t = m.twin[h]
    local = [rec.edge, m.edge_of[m.nxt[h]], m.edge_of[m.prv[h]], m.edge_of[m.nxt[t]], m.edge_of[m.prv[t]]]
    local += list(rec.removed)
    local = list(dict.fromkeys(local))
    checkpoints = {}
    touched = [{m.vert[p], m.vert[m.twin[p]]} for p in (m.edges[e][0] for e in local)]
    pending = {w: sum(w in s for s in touched) for w in set().union(*touched)}
    for k, s in enumerate(touched):
        for w in s:
            pending[w] -= 1
            if pending[w] == 0:
                checkpoints.setdefault(k, []).append(w)
    opts = [(d, c) for d in (0, 1) for c in range(3)]

    def assign(k, d, c):
        p, q = m.edges[local[k]]
        if d:
            p, q = q, p
        out[p], out[q] = True, False
        col[p] = col[q] = c

    def rec_search(k):
        if k == len(local):
            w = SchnyderWood(m, out, col)
            if validate(w).clean and _is_balanced_tri(w):
                return w
            return None
        for d, c in opts:
            assign(k, d, c)
            w = SchnyderWood(m, out, col)
            if all(schnyder_property(w, z) is None for z in checkpoints.get(k, ())):
                got = rec_search(k + 1)
                if got is not None:
                    return got
        return None

    res = rec_search(0)
    if res is None:
        raise NoApplicableRule(f"no balanced completion around edge {rec.edge}")
    return res


def base_wood(m: ToroidalMap) -> SchnyderWood:
    """Balanced wood of a one-vertex triangulation, found among its 8 orientations."""
    cm = completion(m)
    for o in enumerate_3orientations(m):
        if not orientation_type_tri(o).balanced:
            continue
        try:
            return colors_from_orientation(cm, lift_tri(o, cm))
        except NotSchnyderOrientation:
            continue
    raise NoneFound("one-vertex map without balanced wood")


def balanced_wood(tri: ToroidalMap, trace: ContractionTrace | None = None) -> SchnyderWood:
    _check_tri(tri)
    if not forbidden_configs(tri).clean:
        raise WouldCreateForbidden("input has a contractible loop or homotopic pair")
    trace = trace or contract_all(tri)
    base = trace.records[-1].after if trace.records else tri
    wood = base_wood(base)
    for rec in reversed(trace.records):
        wood = decontract_wood(wood, rec)
    return wood


# ---------------------------------------------------------------- random triangulations


def vertex_split(m: ToroidalMap, w: int, s: int, k: int) -> ToroidalMap:
    """Inverse contraction: w keeps k consecutive halves from index s, a new vertex takes the rest."""
    rot = m.rotation(w)
    d = len(rot)
    if not 2 <= k < d:
        raise WouldCreateForbidden("split sizes out of range")
    a = [rot[(s + i) % d] for i in range(k)]
    rest = [rot[(s + k + i) % d] for i in range(d - k)]
    H = m.num_half
    h, hp, b1, tb1, bl, tbl = range(H, H + 6)
    rots = [m.rotation(z) for z in range(m.n)]
    rots[w] = [h] + a
    rots.append([hp, b1] + rest + [bl])
    a1, ak = a[0], a[-1]

    def insert(target, new, after):
        for r in rots:
            if target in r:
                i = r.index(target)
                r.insert(i + 1 if after else i, new)
                return
        raise AssertionError("half-edge not found")

    insert(m.twin[ak], tb1, after=False)
    insert(m.twin[a1], tbl, after=True)
    pairs = [(x, m.twin[x]) for x in range(H) if x < m.twin[x]] + [(h, hp), (b1, tb1), (bl, tbl)]
    try:
        new = build_map(rots, pairs)
    except TSWError as exc:
        raise WouldCreateForbidden(str(exc)) from None
    if not new.is_triangulation() or not forbidden_configs(new).clean:
        raise WouldCreateForbidden("split breaks the triangulation")
    return new


def random_triangulation(n: int, rng: random.Random | None = None, max_tries: int = 10000) -> ToroidalMap:
    """Triangulation on n vertices grown from the one-vertex map by random vertex splits."""
    rng = rng or random.Random(0)
    m = three_loops()
    tries = 0
    while m.n < n:
        tries += 1
        if tries > max_tries:
            raise NonTermination("vertex splitting keeps failing")
        w = rng.randrange(m.n)
        d = m.degree(w)
        if d < 3:
            continue
        try:
            m = vertex_split(m, w, rng.randrange(d), rng.randrange(2, d))
        except WouldCreateForbidden:
            continue
    return m


# ---------------------------------------------------------------- middle walks


@dataclass
class MiddleWalk:
    start: int
    seq: list[int]
    cycle: list[int]
    prefix: list[int]


def middle_out(orient: EdgeOrientation, h: int) -> int:
    """Second out-edge met ccw from the twin of h at its head."""
    m = orient.carrier
    g = m.twin[h]
    seen = 0
    while True:
        g = m.nxt[g]
        if orient.is_out(g):
            seen += 1
            if seen == 2:
                return g


def middle_walk(orient: EdgeOrientation, start: int) -> MiddleWalk:
    if not orient.is_out(start):
        raise ValueError("start half-edge must be outgoing")
    if any(d != 3 for d in orient.outdeg()):
        raise NotThreeOrientation("middle walks need a 3-orientation")
    pos = {}
    seq = []
    h = start
    while h not in pos:
        pos[h] = len(seq)
        seq.append(h)
        h = middle_out(orient, h)
    i = pos[h]
    return MiddleWalk(start, seq, seq[i:], seq[:i])


def is_middle_cycle(orient: EdgeOrientation, cyc) -> bool:
    return all(middle_out(orient, cyc[i - 1]) == cyc[i] for i in range(len(cyc)))


def _weakly_homologous(a, b) -> bool:
    return a == b or a == vneg(b)


def _leaving(orient: EdgeOrientation, cyc) -> int:
    m = orient.carrier
    on = set(cyc)
    for h in cyc:
        for g in m.rotation(m.vert[h]):
            if orient.is_out(g) and g not in on:
                return g
    raise AssertionError("a middle cycle always has leaving edges")


def half_crossing_orientation(orient: EdgeOrientation) -> EdgeOrientation:
    """Reverse weakly homologous middle cycles until two middle cycles cross."""
    m = orient.carrier
    _check_tri(m)
    basis = m.basis()
    o = orient
    c = middle_walk(o, o.tail[0]).cycle
    cls = homology_class(m, c, basis)
    for _ in range(max(1, m.m * m.n)):
        w = middle_walk(o, _leaving(o, c))
        wc = homology_class(m, w.cycle, basis)
        if not _weakly_homologous(wc, cls):
            return o
        same = set(w.cycle) == set(c)
        o = o.reversed({m.edge_of[x] for x in w.cycle})
        if same:
            c = [m.twin[x] for x in reversed(c)]
            cls = vneg(cls)
    raise NonTermination("middle-walk reversals did not reach a crossing pair")


def to_half_crossing(orient: EdgeOrientation) -> SchnyderWood:
    o = half_crossing_orientation(orient)
    cm = completion(o.carrier)
    return colors_from_orientation(cm, lift_tri(o, cm))


# ---------------------------------------------------------------- crossing woods


def _wood_of(o: EdgeOrientation) -> SchnyderWood:
    cm = completion(o.carrier)
    return colors_from_orientation(cm, lift_tri(o, cm))


def _region_flip(wood: SchnyderWood, i: int):
    """Candidate orientations from reversing the border of C' + P + part of C."""
    m = wood.carrier
    basis = m.basis()
    rep = mono_cycles(wood, basis)
    om = rep.omega[(i + 1) % 3]
    o = wood.one_way_orientation()
    for cp in rep.cycles[(i + 1) % 3]:
        cpv = {m.vert[x] for x in cp}
        for c in rep.cycles[i]:
            pos = {m.vert[x]: k for k, x in enumerate(c)}
            for v in sorted(cpv & set(pos)):
                path = []
                z = v
                hits = 0
                for _ in range(3 * m.n * (om + 2)):
                    g = wood.out_half(z, (i - 1) % 3)
                    path.append(g)
                    z = m.head(g)
                    if z in pos:
                        hits += 1
                        if hits == max(om, 1):
                            break
                else:
                    continue
                k0, k1 = pos[z], pos[v]
                arc = [c[(k0 + j) % len(c)] for j in range((k1 - k0) % len(c))]
                walk = list(cp) + path + arc
                edges = [m.edge_of[x] for x in walk]
                if len(set(edges)) != len(edges):
                    continue
                total = homology_class(m, cp, basis)
                tail = path + arc
                if tail:
                    total = tuple(p + q for p, q in zip(total, homology_class(m, tail, basis)))
                if total != (0, 0):
                    continue
                yield o.reversed(edges)


def crossing_step(wood: SchnyderWood) -> SchnyderWood | None:
    rep = mono_cycles(wood)
    i = rep.crossing_color
    if i is None:
        raise NotHalfCrossing(f"wood is {rep.tag}")
    for o in _region_flip(wood, i):
        try:
            w = _wood_of(o)
        except NotSchnyderOrientation:
            continue
        r = mono_cycles(w)
        if r.tag != "not-half-crossing":
            return w
    return None


def _progress(rep) -> tuple:
    if rep.tag == "crossing":
        return (0,)
    i = rep.crossing_color
    return (1, max(rep.omega), len(rep.cycles[(i + 1) % 3]) if i is not None else 99)


def to_crossing(wood: SchnyderWood, search_limit: int = 200000) -> SchnyderWood:
    """Region flips as long as they make progress, then a lattice search if needed."""
    m = wood.carrier
    _check_tri(m)
    rep = mono_cycles(wood)
    if rep.tag == "not-half-crossing" or (rep.tag != "crossing" and rep.crossing_color is None):
        raise NotHalfCrossing(f"wood is {rep.tag}")
    cur, cur_rep = wood, rep
    for _ in range(max(1, m.n * m.m)):
        if cur_rep.tag == "crossing":
            return cur
        nxt_wood = crossing_step(cur)
        if nxt_wood is None:
            break
        nrep = mono_cycles(nxt_wood)
        if _progress(nrep) >= _progress(cur_rep):
            break
        cur, cur_rep = nxt_wood, nrep
    if cur_rep.tag == "crossing":
        return cur
    hs = hasse(cur.one_way_orientation(), 0, limit=search_limit)
    for o in hs.nodes:
        try:
            w = _wood_of(o)
        except NotSchnyderOrientation:
            continue
        if mono_cycles(w).tag == "crossing":
            return w
    raise NonTermination("no crossing wood reached")


def crossing_wood(tri: ToroidalMap) -> SchnyderWood:
    w = balanced_wood(tri)
    h = to_half_crossing(w.one_way_orientation())
    return to_crossing(h)


__all__ = [
    "ContractionRecord", "ContractionTrace", "MiddleWalk", "balanced_wood", "base_wood", "contract",
    "contract_all", "contractible_edge", "crossing_step", "crossing_wood", "decontract_wood",
    "half_crossing_orientation", "is_middle_cycle", "middle_out", "middle_walk", "random_triangulation",
    "to_crossing", "to_half_crossing", "vertex_split",
]
