"""Schnyder woods, angle labelings and monochromatic cycles.

Colors are integers mod 3.  ``label[h]`` is the color of the angle that
follows half-edge ``h`` counterclockwise at its origin.  A wood stores per
half-edge whether the edge leaves the origin in that direction (``out``)
and the color of that direction (``color``).  For a one-way edge both
halves carry the edge color.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import FormatError, NotEdgeLabeling, NotSchnyderOrientation
from .orient_lattice import EdgeOrientation, delta_step
from .torus_map import CompletionMap, HomologyBasis, ToroidalMap, completion, dual, homology_class


@dataclass(frozen=True)
class AngleLabeling:
    carrier: ToroidalMap
    label: tuple[int, ...]


class SchnyderWood:
    """Colored bi-orientation: ``out[h]`` and ``color[h]`` per half-edge."""

    __slots__ = ("carrier", "out", "color")

    def __init__(self, carrier: ToroidalMap, out, color):
        self.carrier = carrier
        self.out = tuple(bool(x) for x in out)
        self.color = tuple(int(c) % 3 for c in color)

    def edge_type(self, e: int) -> int:
        h, t = self.carrier.edges[e]
        return int(self.out[h]) + int(self.out[t])

    def out_half(self, v: int, c: int) -> int | None:
        for h in self.carrier.rotation(v):
            if self.out[h] and self.color[h] == c:
                return h
        return None

    def recolored(self, shift: int) -> "SchnyderWood":
        return SchnyderWood(self.carrier, self.out, [(c + shift) % 3 for c in self.color])

    def one_way_orientation(self) -> EdgeOrientation:
        """Primal orientation; requires every edge to be of type 1."""
        tails = []
        for e, (h, t) in enumerate(self.carrier.edges):
            if self.edge_type(e) != 1:
                raise ValueError(f"edge {e} is not one-way")
            tails.append(h if self.out[h] else t)
        return EdgeOrientation(self.carrier, tails)

    def key(self):
        return (self.out, self.color)

    def __eq__(self, other):
        return isinstance(other, SchnyderWood) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"SchnyderWood({self.carrier!r})"


def wood_from_orientation(orient: EdgeOrientation, color) -> SchnyderWood:
    """One-way wood from a primal orientation and a color per edge."""
    m = orient.carrier
    out = [False] * m.num_half
    col = [0] * m.num_half
    for e, (h, t) in enumerate(m.edges):
        out[orient.tail[e]] = True
        col[h] = col[t] = color[e]
    return SchnyderWood(m, out, col)


# ---------------------------------------------------------------- labelings


def labeling_from_wood(wood: SchnyderWood) -> AngleLabeling:
    m = wood.carrier
    lab = []
    for h in range(m.num_half):
        a = (wood.color[h] - 1) % 3 if wood.out[h] else wood.color[h]
        g = m.nxt[h]
        b = (wood.color[g] + 1) % 3 if wood.out[g] else wood.color[g]
        if a != b:
            raise NotEdgeLabeling(f"angle after half-edge {h} gets colors {a} and {b}")
        lab.append(a)
    return AngleLabeling(m, tuple(lab))


def wood_from_labeling(labeling: AngleLabeling) -> SchnyderWood:
    m = labeling.carrier
    lab = labeling.label
    out = [False] * m.num_half
    col = [0] * m.num_half
    for h in range(m.num_half):
        a, b = lab[m.prv[h]] % 3, lab[h] % 3
        if a == b:
            col[h] = a
        elif b == (a + 1) % 3:
            out[h] = True
            col[h] = (b + 1) % 3
        else:
            raise NotEdgeLabeling(f"angles around half-edge {h} jump from {a} to {b}")
    for e, (h, t) in enumerate(m.edges):
        k = out[h] + out[t]
        if k < 2 and col[h] != col[t]:
            raise NotEdgeLabeling(f"edge {e} has mismatched colors")
        if k == 2 and col[h] == col[t]:
            raise NotEdgeLabeling(f"bi-oriented edge {e} uses one color twice")
    return SchnyderWood(m, out, col)


def is_edge_labeling(labeling: AngleLabeling) -> bool:
    """Direct pattern test on the four angles around every edge."""
    m = labeling.carrier
    lab = labeling.label
    for h, t in m.edges:
        # angles met clockwise around the edge starting at the tail side
        a1, a2 = lab[h] % 3, lab[m.prv[t]] % 3
        a3, a4 = lab[t] % 3, lab[m.prv[h]] % 3
        if a1 == a2 == a3 == a4:
            continue
        ok = False
        for s in range(4):
            seq = [(a1, a2, a3, a4)[(s + j) % 4] for j in range(4)]
            i = seq[1]
            if seq[0] == (i - 1) % 3 and seq[2] == i and seq[3] == (i + 1) % 3:
                ok = True
                break
        if not ok:
            return False
    return True


def vertex_type(labeling: AngleLabeling, v: int) -> int | None:
    """k such that the ccw angle sequence at v has 3k increments (None if invalid)."""
    m = labeling.carrier
    seq = [labeling.label[h] for h in m.rotation(v)]
    return _cyclic_type(seq)


def face_type(labeling: AngleLabeling, F: int) -> int | None:
    m = labeling.carrier
    seq = [labeling.label[h] for h in m.faces[F]]
    return _cyclic_type(seq)


def _cyclic_type(seq) -> int | None:
    inc = 0
    for i in range(len(seq)):
        d = (seq[(i + 1) % len(seq)] - seq[i]) % 3
        if d == 2:
            return None
        inc += d
    if inc % 3:
        return None
    return inc // 3


# ---------------------------------------------------------------- completion orientations


def completion_orientation(wood: SchnyderWood, cm: CompletionMap | None = None) -> EdgeOrientation:
    """Orientation of the completion: x -> e exactly when the labels on both sides differ."""
    cm = cm or completion(wood.carrier)
    m = wood.carrier
    lab = labeling_from_wood(wood).label
    tails = [0] * cm.map.m
    for h in range(m.num_half):
        t = m.twin[h]
        a = 4 * h
        tails[cm.map.edge_of[a]] = a if lab[h] != lab[m.prv[h]] else a + 1
        b = 4 * h + 2
        tails[cm.map.edge_of[b]] = b if lab[h] != lab[m.prv[t]] else b + 1
    return EdgeOrientation(cm.map, tails)


def face_labels_from_orientation(cm: CompletionMap, orient: EdgeOrientation):
    """Completion face labels by delta along BFS paths from face 0; None if inconsistent."""
    M = cm.map
    lab = [None] * M.f
    lab[0] = 0
    dq = deque([0])
    while dq:
        F = dq.popleft()
        for g in M.faces[F]:
            G = M.face_of[M.twin[g]]
            val = (lab[F] + delta_step(cm, orient, g)) % 3
            if lab[G] is None:
                lab[G] = val
                dq.append(G)
            elif lab[G] != val:
                return None
    return lab


def colors_from_orientation(cm: CompletionMap, orient: EdgeOrientation) -> SchnyderWood:
    """Recover the wood of a Schnyder orientation of the completion."""
    flab = face_labels_from_orientation(cm, orient)
    if flab is None:
        raise NotSchnyderOrientation("delta is not 0 mod 3 on some closed walk")
    m = cm.source
    lab = tuple(flab[cm.angle_face(h)] for h in range(m.num_half))
    try:
        wood = wood_from_labeling(AngleLabeling(m, lab))
    except NotEdgeLabeling as exc:
        raise NotSchnyderOrientation(str(exc)) from None
    if completion_orientation(wood, cm).tail != orient.tail:
        raise NotSchnyderOrientation("labels do not reproduce the orientation")
    return wood


# ---------------------------------------------------------------- validation


@dataclass
class WoodReport:
    vertex_violations: list = field(default_factory=list)
    face_violations: list = field(default_factory=list)
    edge_violations: list = field(default_factory=list)
    crossing_violations: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.vertex_violations or self.face_violations or self.edge_violations or self.crossing_violations)


def schnyder_property(wood: SchnyderWood, v: int) -> str | None:
    """None if v satisfies the Schnyder property, else a short reason."""
    m = wood.carrier
    rot = m.rotation(v)
    outs = [(i, wood.color[h]) for i, h in enumerate(rot) if wood.out[h]]
    if sorted(c for _, c in outs) != [0, 1, 2]:
        return "out-degree is not one per color"
    # rotate so that color 0 comes first, then require 0,1,2 in ccw order
    k = next(i for i, c in outs if c == 0)
    order = sorted(outs, key=lambda x: (x[0] - k) % len(rot))
    if [c for _, c in order] != [0, 1, 2]:
        return "outgoing colors not in ccw order"
    pos = {c: i for i, c in outs}
    for i, h in enumerate(rot):
        if wood.out[h]:
            continue
        c = wood.color[h]
        lo, hi = pos[(c + 1) % 3], pos[(c - 1) % 3]
        if not (0 < (i - lo) % len(rot) < (hi - lo) % len(rot)):
            return f"incoming color {c} outside its sector"
    return None


def validate(wood: SchnyderWood, crossing: bool = False) -> WoodReport:
    m = wood.carrier
    rep = WoodReport()
    for e, (h, t) in enumerate(m.edges):
        k = wood.out[h] + wood.out[t]
        if k == 0:
            rep.edge_violations.append((e, "type 0"))
        elif k == 1 and wood.color[h] != wood.color[t]:
            rep.edge_violations.append((e, "color mismatch"))
        elif k == 2 and wood.color[h] == wood.color[t]:
            rep.edge_violations.append((e, "bi-oriented with one color"))
    for v in range(m.n):
        why = schnyder_property(wood, v)
        if why:
            rep.vertex_violations.append((v, why))
    if not rep.edge_violations and not rep.vertex_violations:
        lab = labeling_from_wood(wood)
        for F in range(m.f):
            tp = face_type(lab, F)
            if tp != 1:
                rep.face_violations.append((F, "monochromatic boundary" if tp == 0 else f"face type {tp}"))
    if crossing and not rep.vertex_violations:
        rep.crossing_violations = crossing_conditions(wood)
    return rep


def crossing_conditions(wood: SchnyderWood) -> list[str]:
    """Failures of the pairwise-intersection and no-reversal conditions."""
    cyc = color_cycles(wood)
    out = []
    for i in range(3):
        for j in range(i + 1, 3):
            if not any(_intersect(wood, a, b) for a in cyc[i] for b in cyc[j]):
                out.append(f"no {i}-cycle meets a {j}-cycle")
            if any(_reversal(wood, a, b) for a in cyc[i] for b in cyc[j]):
                out.append(f"some {i}-cycle is the reversal of a {j}-cycle")
    return out


# ---------------------------------------------------------------- monochromatic cycles


def color_successor(wood: SchnyderWood, c: int) -> list[int]:
    """Out half-edge of color c at every vertex."""
    m = wood.carrier
    succ = [-1] * m.n
    for h in range(m.num_half):
        if wood.out[h] and wood.color[h] == c:
            if succ[m.vert[h]] >= 0:
                raise ValueError(f"vertex {m.vert[h]} has two outgoing edges of color {c}")
            succ[m.vert[h]] = h
    if -1 in succ:
        raise ValueError(f"some vertex has no outgoing edge of color {c}")
    return succ


def color_cycles(wood: SchnyderWood) -> list[list[tuple[int, ...]]]:
    """Per color, the directed cycle of every component, each starting at its smallest half-edge."""
    m = wood.carrier
    res = []
    for c in range(3):
        succ = color_successor(wood, c)
        state = [0] * m.n
        cycles = []
        for s in range(m.n):
            path = []
            v = s
            while state[v] == 0:
                state[v] = 1
                path.append(v)
                v = m.head(succ[v])
            if state[v] == 1:
                cyc = []
                w = v
                while True:
                    cyc.append(succ[w])
                    w = m.head(succ[w])
                    if w == v:
                        break
                k = cyc.index(min(cyc))
                cycles.append(tuple(cyc[k:] + cyc[:k]))
            for x in path:
                state[x] = 2
        res.append(sorted(cycles))
    return res


def cycle_vertices(m: ToroidalMap, cyc) -> set[int]:
    return {m.vert[h] for h in cyc}


def _intersect(wood, a, b) -> bool:
    m = wood.carrier
    return bool(cycle_vertices(m, a) & cycle_vertices(m, b))


def _reversal(wood, a, b) -> bool:
    m = wood.carrier
    return len(a) == len(b) and {m.twin[h] for h in a} == set(b)


def _det(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


@dataclass
class CycleReport:
    cycles: list[list[tuple[int, ...]]]
    classes: list[list[tuple[int, int]]]
    omega: tuple[int, int, int]
    tag: str
    crossing_color: int | None = None

    @property
    def kind(self) -> str:
        return self.tag


def mono_cycles(wood: SchnyderWood, basis: HomologyBasis | None = None) -> CycleReport:
    m = wood.carrier
    basis = basis or m.basis()
    cyc = color_cycles(wood)
    classes = [[homology_class(m, c, basis) for c in cyc[i]] for i in range(3)]
    omega = tuple(abs(_det(classes[(i - 1) % 3][0], classes[(i + 1) % 3][0])) for i in range(3))

    def crosses(a, b):
        return _intersect(wood, a, b) and not _reversal(wood, a, b)

    crossing = all(
        any(crosses(a, b) for b in cyc[j]) for i in range(3) for a in cyc[i] for j in range(3) if j != i
    )
    intersecting = all(
        any(_intersect(wood, a, b) for b in cyc[j]) for i in range(3) for a in cyc[i] for j in range(3) if j != i
    )
    icross = None
    for i in range(3):
        if all(crosses(a, b) for a in cyc[i] for j in range(3) if j != i for b in cyc[j]):
            icross = i
            break
    half = any(crosses(a, b) for i in range(3) for j in range(i + 1, 3) for a in cyc[i] for b in cyc[j])
    if crossing:
        tag = "crossing"
    elif intersecting:
        tag = "intersecting"
    elif half:
        tag = f"half-crossing({icross})"
    else:
        tag = "not-half-crossing"
    return CycleReport(cyc, classes, omega, tag, icross)


def is_half_crossing(rep: CycleReport) -> bool:
    return rep.tag != "not-half-crossing"


# ---------------------------------------------------------------- duality


def dual_wood(wood: SchnyderWood) -> SchnyderWood:
    """Wood of the dual map read off the same angle labels."""
    m = wood.carrier
    lab = labeling_from_wood(wood).label
    d = dual(m)
    dlab = tuple(lab[m.phi(h)] for h in range(m.num_half))
    return wood_from_labeling(AngleLabeling(d, dlab))


# ---------------------------------------------------------------- WOOD text format


def to_wood(wood: SchnyderWood) -> str:
    m = wood.carrier
    lines = ["wood 1"]
    for e, (h, t) in enumerate(m.edges):
        k = wood.edge_type(e)
        if k == 1:
            o = h if wood.out[h] else t
            lines.append(f"w {e} 1 {o} {wood.color[o]}")
        elif k == 2:
            lines.append(f"w {e} 2 {wood.color[h]} {wood.color[t]}")
        else:
            lines.append(f"w {e} 0 {wood.color[h]}")
    return "\n".join(lines) + "\n"


def from_wood(text: str, carrier: ToroidalMap) -> SchnyderWood:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != ["wood", "1"]:
        raise FormatError("missing 'wood 1' header")
    out = [False] * carrier.num_half
    col = [0] * carrier.num_half
    seen = set()
    for p in lines[1:]:
        try:
            if p[0] != "w":
                raise ValueError
            e, k = int(p[1]), int(p[2])
            h, t = carrier.edges[e]
            if k == 1:
                o, c = int(p[3]), int(p[4])
                if o not in (h, t):
                    raise ValueError
                out[o] = True
                col[h] = col[t] = c
            elif k == 2:
                out[h] = out[t] = True
                col[h], col[t] = int(p[3]), int(p[4])
            elif k == 0:
                col[h] = col[t] = int(p[3])
            else:
                raise ValueError
        except (ValueError, IndexError):
            raise FormatError(f"bad line {' '.join(p)!r}") from None
        seen.add(e)
    if len(seen) != carrier.m:
        raise FormatError("some edge is missing")
    return SchnyderWood(carrier, out, col)
