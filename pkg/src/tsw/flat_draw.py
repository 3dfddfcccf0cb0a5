"""Region vectors and periodic drawings of the universal cover.

Face counts between monochromatic paths and lines are computed as signed
areas of closed lifted walks.  An area potential ``A`` on lifted half-edges
makes every ccw face boundary sum to one, so the area of a closed walk in
the cover is the sum of ``A`` along it.  ``A`` is affine in the copy index,
which keeps it exact on the whole cover without building patches.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegeneratePeriods, FormatError, NotIntersecting
from .schnyder import SchnyderWood, color_cycles, color_successor, mono_cycles
from .torus_map import ToroidalMap, Vec, face_offsets, vadd, vsub

Vec3 = tuple[int, int, int]


def _det(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


# ---------------------------------------------------------------- area potential


class AreaPotential:
    """Integer potential scaled by ``scale``: ``area(walk) = sum / scale``."""

    def __init__(self, m: ToroidalMap):
        self.m = m
        basis = m.basis()
        self.shift = basis.shift
        self.basis = basis
        off = face_offsets(m, basis)
        # B(h) = f * J shift(h), so <p, B(h)> = f * det(shift(h), p)
        K = sum(_det(self.shift[h], off[h]) for fc in m.faces for h in fc)
        if K == 0:
            raise DegeneratePeriods("cup product of the homology cocycle vanishes")
        self.scale = K
        r = [K - m.f * sum(_det(self.shift[h], off[h]) for h in fc) for fc in m.faces]
        a0: list[int | None] = [None] * m.num_half
        fparent = [-1] * m.f
        seen = [False] * m.f
        seen[0] = True
        order = [0]
        dq = deque([0])
        while dq:
            F = dq.popleft()
            for h in m.faces[F]:
                G = m.face_of[m.twin[h]]
                if not seen[G]:
                    seen[G] = True
                    fparent[G] = m.twin[h]
                    order.append(G)
                    dq.append(G)
        tree = {fparent[G] for G in order[1:]} | {m.twin[fparent[G]] for G in order[1:]}
        for h in range(m.num_half):
            if h not in tree:
                a0[h] = 0
        for G in reversed(order[1:]):
            p = fparent[G]
            s = sum(a0[h] for h in m.faces[G] if h != p)
            a0[p] = r[G] - s
            a0[m.twin[p]] = -a0[p]
        self.a0 = tuple(a0)

    def value(self, h: int, p: Vec) -> int:
        return self.a0[h] + self.m.f * _det(self.shift[h], p)

    def area(self, walk, start: Vec) -> int:
        p = start
        tot = 0
        for h in walk:
            tot += self.value(h, p)
            p = vadd(p, self.shift[h])
        q, r = divmod(tot, self.scale)
        if r:
            raise ArithmeticError("walk area is not an integer; walk is not closed")
        return q


# ---------------------------------------------------------------- lines


@dataclass(frozen=True)
class Line:
    """Lift of cycle ``k`` of color ``color`` whose first half-edge leaves copy ``base``."""

    color: int
    k: int
    base: Vec


@dataclass
class LineSystem:
    wood: SchnyderWood
    cycles: list[list[tuple[int, ...]]]
    classes: list[Vec]
    order: list[list[int]]
    sizes: list[list[int]]
    origins: list[Line]
    omega: tuple[int, int, int]
    tag: str
    _pot: AreaPotential = field(repr=False)
    _prefix: list[list[list[Vec]]] = field(repr=False)
    _on: list[dict] = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def crossing(self) -> bool:
        return self.tag == "crossing"

    def line_key(self, L: Line):
        return (L.color, L.k, _det(self.classes[L.color], L.base))

    def value(self, L: Line) -> int:
        """Signed face count per period between the origin line and ``L``."""
        key = self.line_key(L)
        if key not in self._cache:
            self._cache[key] = self._strip_value(L)
        return self._cache[key]

    def _strip_value(self, L: Line) -> int:
        m = self.wood.carrier
        j = L.color
        org = self.origins[j]
        cyc0, cyc = self.cycles[j][org.k], self.cycles[j][L.k]
        x = m.vert[cyc0[0]]
        y = m.vert[cyc[0]]
        conn = _connect(self.wood.carrier, self._pot.basis, x, y, vsub(L.base, org.base))
        walk = list(cyc0) + conn + [m.twin[h] for h in reversed(cyc)] + _reverse(m, conn)
        return -self._pot.area(walk, org.base)

    # positions along a lifted line are integers; index t sits on cycle position t mod len
    def point(self, L: Line, t: int):
        cyc = self.cycles[L.color][L.k]
        q, r = divmod(t, len(cyc))
        p = vadd(L.base, vadd(self._prefix[L.color][L.k][r], (q * self.classes[L.color][0], q * self.classes[L.color][1])))
        return self.wood.carrier.vert[cyc[r]], p

    def walk(self, L: Line, t0: int, t1: int) -> list[int]:
        m = self.wood.carrier
        cyc = self.cycles[L.color][L.k]
        k = len(cyc)
        if t1 >= t0:
            return [cyc[t % k] for t in range(t0, t1)]
        return [m.twin[cyc[t % k]] for t in range(t0 - 1, t1 - 1, -1)]

    def reach(self, color: int, v: int, p: Vec):
        """Follow color ``color`` from ``(v, p)`` to its line; returns (path, line, index)."""
        m = self.wood.carrier
        succ = self._succ[color]
        path = []
        while v not in self._on[color]:
            h = succ[v]
            path.append(h)
            p = vadd(p, self._pot.shift[h])
            v = m.head(h)
        k, pos = self._on[color][v]
        base = vsub(p, self._prefix[color][k][pos])
        return path, Line(color, k, base), pos

    def meet(self, L1: Line, t1: int, L2: Line, t2: int) -> tuple[int, int]:
        """Indices on ``L1`` and ``L2`` of a common vertex, closest to ``t1`` and ``t2``."""
        m = self.wood.carrier
        c1, c2 = self.classes[L1.color], self.classes[L2.color]
        cyc1, cyc2 = self.cycles[L1.color][L1.k], self.cycles[L2.color][L2.k]
        pos2 = {m.vert[h]: j for j, h in enumerate(cyc2)}
        D = _det(c1, c2)
        best = None
        for j1, h in enumerate(cyc1):
            w = m.vert[h]
            if w not in pos2:
                continue
            j2 = pos2[w]
            d = vsub(vadd(L2.base, self._prefix[L2.color][L2.k][j2]), vadd(L1.base, self._prefix[L1.color][L1.k][j1]))
            if D != 0:
                sn, tn = _det(d, c2), -_det(c1, d)
                if sn % D or tn % D:
                    continue
                cands = [(sn // D, tn // D)]
            else:
                # parallel lines: c2 = +-c1, common vertices need d on the line of c1
                if _det(c1, d) != 0:
                    continue
                lam = Fraction(d[0], c1[0]) if c1[0] else Fraction(d[1], c1[1])
                if lam.denominator != 1:
                    continue
                sg = 1 if c2 == c1 else -1
                s0 = (t1 - j1) // len(cyc1)
                cands = [(s, sg * (s - int(lam))) for s in (s0, s0 + 1)]
            for s, t in cands:
                i1 = j1 + s * len(cyc1)
                i2 = j2 + t * len(cyc2)
                cost = abs(i1 - t1) + abs(i2 - t2)
                if best is None or (cost, i1, i2) < best:
                    best = (cost, i1, i2)
        if best is None:
            raise NotIntersecting(f"lines of colors {L1.color} and {L2.color} do not meet")
        return best[1], best[2]


def _reverse(m: ToroidalMap, walk) -> list[int]:
    return [m.twin[h] for h in reversed(walk)]


def _tree_parent(m: ToroidalMap, basis) -> list[int]:
    parent = [-1] * m.n
    seen = [False] * m.n
    seen[0] = True
    dq = deque([0])
    while dq:
        v = dq.popleft()
        for h in m.rotation(v):
            if m.edge_of[h] in basis.tree and not seen[m.head(h)]:
                seen[m.head(h)] = True
                parent[m.head(h)] = h
                dq.append(m.head(h))
    return parent


def _to_root(m: ToroidalMap, parent, v: int) -> list[int]:
    out = []
    while v != 0:
        out.append(m.twin[parent[v]])
        v = m.vert[parent[v]]
    return out


def _connect(m: ToroidalMap, basis, x: int, y: int, delta: Vec) -> list[int]:
    """Walk from ``x`` to ``y`` whose lift moves by ``delta`` copies."""
    parent = _tree_parent(m, basis)
    walk = _to_root(m, parent, x)
    for idx, loop in ((0, basis.b1), (1, basis.b2)):
        a = m.vert[loop[0]]
        there = _reverse(m, _to_root(m, parent, a))
        cyc = there + list(loop) + _to_root(m, parent, a)
        k = delta[idx]
        piece = cyc if k > 0 else _reverse(m, cyc)
        walk += piece * abs(k)
    walk += _reverse(m, _to_root(m, parent, y))
    return walk


def line_system(wood: SchnyderWood) -> LineSystem:
    m = wood.carrier
    rep = mono_cycles(wood)
    if rep.tag not in ("crossing", "intersecting"):
        raise NotIntersecting(f"wood is {rep.tag}")
    pot = AreaPotential(m)
    cycles = color_cycles(wood)
    classes = []
    prefix = []
    on = []
    for j in range(3):
        cls = {rep.classes[j][k] for k in range(len(cycles[j]))}
        if len(cls) != 1:
            raise NotIntersecting(f"cycles of color {j} are not homologous")
        classes.append(rep.classes[j][0])
        pj = []
        oj = {}
        for k, cyc in enumerate(cycles[j]):
            p = (0, 0)
            pre = []
            for pos, h in enumerate(cyc):
                pre.append(p)
                p = vadd(p, pot.shift[h])
                oj[m.vert[h]] = (k, pos)
            pj.append(pre)
        prefix.append(pj)
        on.append(oj)
    origins = []
    for j in range(3):
        cyc = cycles[j][0]
        pos = min(range(len(cyc)), key=lambda i: m.vert[cyc[i]])
        origins.append(Line(j, 0, vsub((0, 0), prefix[j][0][pos])))
    ls = LineSystem(wood, cycles, classes, [], [], origins, rep.omega, rep.tag, pot, prefix, on)
    ls._succ = [color_successor(wood, j) for j in range(3)]
    for j in range(3):
        vals = []
        for k in range(len(cycles[j])):
            vals.append((ls.value(Line(j, k, (0, 0))) % m.f if k else 0, k))
        vals.sort()
        order = [k for _, k in vals]
        sizes = [(vals[i + 1][0] if i + 1 < len(vals) else m.f) - vals[i][0] for i in range(len(vals))]
        ls.order.append(order)
        ls.sizes.append(sizes)
    return ls


# ---------------------------------------------------------------- region vectors


def _d_term(ls: LineSystem, i: int, v: int, p: Vec):
    """Signed face count d_i(v, z_i(v)) and the two lines through v."""
    pa, La, ta = ls.reach((i - 1) % 3, v, p)
    pb, Lb, tb = ls.reach((i + 1) % 3, v, p)
    za, zb = ls.meet(La, ta, Lb, tb)
    m = ls.wood.carrier
    walk = pb + ls.walk(Lb, tb, zb) + ls.walk(La, za, ta) + _reverse(m, pa)
    return ls._pot.area(walk, p), La, Lb


def region_vector(ls: LineSystem, v: int, p: Vec, N: int) -> Vec3:
    out = []
    for i in range(3):
        d, La, Lb = _d_term(ls, i, v, p)
        out.append(d + N * (ls.value(Lb) - ls.value(La)))
    return tuple(out)


def region_vectors(ls: LineSystem, N: int, copy: Vec = (0, 0)) -> list[Vec3]:
    return [region_vector(ls, v, copy, N) for v in range(ls.wood.carrier.n)]


# ---------------------------------------------------------------- periods


def _sub3(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add3(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _mul3(k, a):
    return tuple(k * x for x in a)


def _dot3(a, b):
    return sum(x * y for x, y in zip(a, b))


def _cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def reduce_basis(u: Vec3, w: Vec3) -> tuple[Vec3, Vec3]:
    """Lagrange-Gauss reduction of a rank-2 integer lattice in Z^3."""
    if _dot3(u, u) > _dot3(w, w):
        u, w = w, u
    while True:
        k = round(Fraction(_dot3(u, w), _dot3(u, u)))
        w = _sub3(w, _mul3(k, u))
        if _dot3(w, w) >= _dot3(u, u):
            return u, w
        u, w = w, u


@dataclass(frozen=True)
class Periods:
    S: Vec3
    S2: Vec3
    Z: tuple[Vec3, Vec3, Vec3]
    Y: Vec3
    Y2: Vec3


def predicted_periods(ls: LineSystem, N: int) -> tuple[Vec3, Vec3]:
    """Periods from the cycle classes alone.

    A copy shift e moves the i-th coordinate by N f (det(e, c_{i+1}) - det(e, c_{i-1})),
    negated when the homology basis is positively oriented against the map.
    """
    f = ls.wood.carrier.f
    c = ls.classes
    sg = -1 if ls._pot.scale > 0 else 1
    res = []
    for e in ((1, 0), (0, 1)):
        res.append(tuple(sg * N * f * (_det(e, c[(i + 1) % 3]) - _det(e, c[(i - 1) % 3])) for i in range(3)))
    return res[0], res[1]


def period_vectors(ls: LineSystem, N: int, anchors: list[Vec3] | None = None) -> Periods:
    m = ls.wood.carrier
    if anchors is None:
        anchors = region_vectors(ls, N)
    Ss = []
    for e in ((1, 0), (0, 1)):
        diffs = {_sub3(region_vector(ls, v, e, N), anchors[v]) for v in range(m.n)}
        if len(diffs) != 1:
            raise DegeneratePeriods(f"copy shift {e} does not translate all vertices alike")
        Ss.append(diffs.pop())
    S, S2 = Ss
    if _cross3(S, S2) == (0, 0, 0):
        raise DegeneratePeriods("period vectors are collinear")
    w = ls.omega
    nf = N * m.f
    Z = (
        ((w[1] + w[2]) * nf, -w[1] * nf, -w[2] * nf),
        (-w[0] * nf, (w[0] + w[2]) * nf, -w[2] * nf),
        (-w[0] * nf, -w[1] * nf, (w[0] + w[1]) * nf),
    )
    Y, Y2 = reduce_basis(S, S2)
    return Periods(S, S2, Z, Y, Y2)


# ---------------------------------------------------------------- drawings


PROJECTIONS = ("plane", "xy", "yz", "zx")


def project(p: Vec3, how: str = "plane") -> tuple[int, int]:
    """Integer 2D coordinates; orientation preserving for normals in the positive octant."""
    x, y, z = p
    if how == "plane":
        return (y - x, z - x)
    if how == "xy":
        return (x, y)
    if how == "yz":
        return (y, z)
    if how == "zx":
        return (z, x)
    raise ValueError(f"unknown projection {how!r}")


@dataclass
class FlatDrawing:
    carrier: ToroidalMap
    anchors: list[Vec3]
    S: Vec3
    S2: Vec3
    Y: Vec3
    Y2: Vec3
    N: int
    omega: tuple[int, int, int]
    t: int
    mode: str = "straight"
    projection: str = "plane"
    wood: SchnyderWood | None = None

    def position(self, v: int, p: Vec) -> Vec3:
        return _add3(self.anchors[v], _add3(_mul3(p[0], self.S), _mul3(p[1], self.S2)))

    def coords2d(self, v: int, p: Vec = (0, 0)) -> tuple[int, int]:
        return project(self.position(v, p), self.projection)


def bound_t(omega, f: int) -> int:
    return (5 * min(omega) + max(omega)) * f


def embed(wood: SchnyderWood, mode: str = "straight", N: int | None = None, projection: str = "plane") -> FlatDrawing:
    m = wood.carrier
    ls = line_system(wood)
    t = bound_t(ls.omega, m.f)
    if N is None:
        N = m.n if mode == "geodesic" else t + m.n
    elif mode == "straight" and N < m.n:
        raise ValueError("N must be at least n")
    if mode not in ("straight", "geodesic"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "straight" and not m.is_triangulation():
        raise ValueError("straight mode needs a triangulation")
    anchors = region_vectors(ls, N)
    per = period_vectors(ls, N, anchors)
    return FlatDrawing(m, anchors, per.S, per.S2, per.Y, per.Y2, N, ls.omega, t, mode, projection, wood)


@dataclass
class DrawingReport:
    faces_checked: int = 0
    orientation_violations: list = field(default_factory=list)
    edge_violations: list = field(default_factory=list)
    period_violations: list = field(default_factory=list)
    periods_checked: bool = False
    sum_range: tuple[int, int] | None = None
    sum_violations: list = field(default_factory=list)
    max_edge_delta: int = 0
    edge_bound: int = 0
    period_norm2: tuple[int, int] = (0, 0)
    period_bound2: int = 0
    width: int = 0
    height: int = 0

    @property
    def periods_small(self) -> bool:
        return max(self.period_norm2) <= self.period_bound2

    @property
    def ok(self) -> bool:
        return not (self.orientation_violations or self.edge_violations or self.period_violations or self.sum_violations) and self.periods_small

    def lines(self) -> list[str]:
        return [
            f"faces checked: {self.faces_checked}",
            f"orientation violations: {len(self.orientation_violations)}",
            f"edge deltas: max {self.max_edge_delta} bound {self.edge_bound} violations {len(self.edge_violations)}",
            f"periodicity: {'exact' if self.periods_checked and not self.period_violations else 'not checked' if not self.periods_checked else 'violated'}",
            f"coordinate sums: {self.sum_range} violations {len(self.sum_violations)}",
            f"period norms^2: {self.period_norm2} bound {self.period_bound2}",
            f"grid of one tile: {self.width} x {self.height}",
            "ok" if self.ok else "FAILED",
        ]


def _det2(a, b, c) -> int:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def validate_drawing(d: FlatDrawing, k: int = 1) -> DrawingReport:
    m = d.carrier
    basis = m.basis()
    off = face_offsets(m, basis)
    rep = DrawingReport()
    copies = [(a, b) for a in range(-k, k + 1) for b in range(-k, k + 1)]
    for q in copies:
        for F, fc in enumerate(m.faces):
            pts = [project(d.position(m.vert[h], vadd(q, off[h])), d.projection) for h in fc]
            rep.faces_checked += 1
            r = len(pts)
            if any(_det2(pts[j], pts[(j + 1) % r], pts[(j + 2) % r]) <= 0 for j in range(r)):
                rep.orientation_violations.append((F, q))
    rep.edge_bound = 2 * d.N * m.f
    for h in range(m.num_half):
        a = d.position(m.vert[h], (0, 0))
        b = d.position(m.head(h), basis.shift[h])
        delta = max(abs(x) for x in _sub3(b, a))
        rep.max_edge_delta = max(rep.max_edge_delta, delta)
        if delta > rep.edge_bound:
            rep.edge_violations.append(h)
    if d.wood is not None:
        ls = line_system(d.wood)
        rep.periods_checked = True
        for e, P in (((1, 0), d.S), ((0, 1), d.S2), ((-1, 1), _sub3(d.S2, d.S))):
            for v in range(m.n):
                if region_vector(ls, v, e, d.N) != _add3(d.anchors[v], P):
                    rep.period_violations.append((v, e))
    sums = [sum(a) for a in d.anchors]
    rep.sum_range = (min(sums), max(sums))
    for v, s in enumerate(sums):
        if not 0 <= s <= d.t:
            rep.sum_violations.append(v)
    rep.period_norm2 = (_dot3(d.Y, d.Y), _dot3(d.Y2, d.Y2))
    rep.period_bound2 = (6 * max(d.omega) * d.N * m.f) ** 2
    xs = [d.coords2d(v)[0] for v in range(m.n)]
    ys = [d.coords2d(v)[1] for v in range(m.n)]
    ys2 = [project(d.Y, d.projection), project(d.Y2, d.projection)]
    rep.width = max(xs) - min(xs) + abs(ys2[0][0]) + abs(ys2[1][0])
    rep.height = max(ys) - min(ys) + abs(ys2[0][1]) + abs(ys2[1][1])
    return rep


def dominance_pairs(d: FlatDrawing, k: int = 1) -> list:
    """Pairs of distinct lifted vertices where one anchor dominates the other."""
    pts = [((v, (a, b)), d.position(v, (a, b))) for a in range(-k, k + 1) for b in range(-k, k + 1) for v in range(d.carrier.n)]
    bad = []
    for i in range(len(pts)):
        for j in range(len(pts)):
            if i != j and all(x <= y for x, y in zip(pts[i][1], pts[j][1])):
                bad.append((pts[i][0], pts[j][0]))
    return bad


# ---------------------------------------------------------------- DRAW text format


def to_draw(d: FlatDrawing) -> str:
    def v3(x):
        return " ".join(map(str, x))

    lines = [
        "draw 1",
        f"mode {d.mode}",
        f"projection {d.projection}",
        f"N {d.N}",
        f"S {v3(d.S)}",
        f"S' {v3(d.S2)}",
        f"Y {v3(d.Y)}",
        f"Y' {v3(d.Y2)}",
        f"omega {v3(d.omega)}",
        f"t {d.t}",
    ]
    for v, a in enumerate(d.anchors):
        lines.append(f"p {v} {v3(a)}")
    return "\n".join(lines) + "\n"


def from_draw(text: str, carrier: ToroidalMap, wood: SchnyderWood | None = None) -> FlatDrawing:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or rows[0] != ["draw", "1"]:
        raise FormatError("missing 'draw 1' header")
    hdr = {}
    pts = {}
    try:
        for r in rows[1:]:
            if r[0] == "p":
                pts[int(r[1])] = tuple(int(x) for x in r[2:5])
            elif r[0] in ("mode", "projection"):
                hdr[r[0]] = r[1]
            else:
                hdr[r[0]] = tuple(int(x) for x in r[1:])
        anchors = [pts[v] for v in range(carrier.n)]
        return FlatDrawing(
            carrier, anchors, hdr["S"], hdr["S'"], hdr["Y"], hdr["Y'"], hdr["N"][0], hdr["omega"], hdr["t"][0],
            hdr.get("mode", "straight"), hdr.get("projection", "plane"), wood,
        )
    except (KeyError, ValueError, IndexError) as exc:
        raise FormatError(f"bad draw document: {exc}") from None


# ---------------------------------------------------------------- SVG output


_COLORS = ("#d62728", "#2ca02c", "#1f77b4")


def emit_drawing(d: FlatDrawing, tiles: int = 0, size: int = 800, arrows: bool = True) -> str:
    """SVG of ``(2 tiles + 1)^2`` copies, clipped to the central parallelogram's neighbourhood."""
    m = d.carrier
    basis = m.basis()
    copies = [(a, b) for a in range(-tiles, tiles + 1) for b in range(-tiles, tiles + 1)]
    segs = []
    for q in copies:
        for h in range(m.num_half):
            if h > m.twin[h]:
                continue
            a = d.coords2d(m.vert[h], q)
            b = d.coords2d(m.head(h), vadd(q, basis.shift[h]))
            c = None
            if d.wood is not None and arrows:
                o = h if d.wood.out[h] else m.twin[h]
                c = _COLORS[d.wood.color[o]] if d.wood.edge_type(m.edge_of[h]) == 1 else "#555555"
                if o != h:
                    a, b = b, a
            segs.append((a, b, c))
    verts = [d.coords2d(v, q) for q in copies for v in range(m.n)]
    s1 = project(d.S, d.projection)
    s2 = project(d.S2, d.projection)
    base = d.coords2d(0)
    para = [base, (base[0] + s1[0], base[1] + s1[1]), (base[0] + s1[0] + s2[0], base[1] + s1[1] + s2[1]), (base[0] + s2[0], base[1] + s2[1])]
    allp = verts + para + [p for s in segs for p in s[:2]]
    xs = [p[0] for p in allp]
    ys = [p[1] for p in allp]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1)
    sc = (size - 40) / span

    def tr(p):
        return (20 + (p[0] - x0) * sc, size - 20 - (p[1] - y0) * sc)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        '<defs><marker id="a" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="5" markerHeight="5" orient="auto">'
        '<path d="M0,0 L10,5 L0,10 z" fill="context-stroke"/></marker></defs>',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    pp = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(tr, para))
    out.append(f'<polygon points="{pp}" fill="#f2f2f2" stroke="black" stroke-width="1.5"/>')
    for a, b, c in segs:
        (ax, ay), (bx, by) = tr(a), tr(b)
        col = c or "#333333"
        mk = ' marker-end="url(#a)"' if c and c != "#555555" else ""
        out.append(f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" stroke="{col}" stroke-width="1"{mk}/>')
    for q in copies:
        for v in range(m.n):
            x, y = tr(d.coords2d(v, q))
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2.5" fill="black"><title>{v} {q[0]} {q[1]}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


__all__ = [
    "AreaPotential", "DrawingReport", "FlatDrawing", "Line", "LineSystem", "Periods", "bound_t",
    "dominance_pairs", "embed", "emit_drawing", "from_draw", "line_system", "period_vectors",
    "predicted_periods", "project", "reduce_basis", "region_vector", "region_vectors", "to_draw",
    "validate_drawing",
]
