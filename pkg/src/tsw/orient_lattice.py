"""Orientations, the gamma/delta functionals and the lattice of homologous orientations.

An :class:`EdgeOrientation` records, for every edge of its carrier map, the
half-edge at the tail.  The carrier is any :class:`ToroidalMap`: a primal
map or the map of a :class:`CompletionMap`.

Dual arcs.  An edge whose tail half is ``h`` has ``left = face_of[h]`` and
``right = face_of[twin h]``.  Orientation potentials satisfy
``lam[left] - lam[right] = t(h)`` where ``t(h)`` is 1 when the edge belongs
to the difference and is oriented along ``h``.  A counterclockwise face
flip therefore raises the order ``<=_{f0}``.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field

from .errors import FaceNotDirected, NotACycle, NotThreeOrientation, NotTriangulation, TooLarge, WalkNotClosed
from .torus_map import CompletionMap, HomologyBasis, ToroidalMap, check_closed, dual, homology_basis

CCW, CW = "ccw", "cw"


def max_enum() -> int:
    return int(os.environ.get("TSW_MAX_ENUM", str(1 << 24)))


class EdgeOrientation:
    """One direction per edge, given by its tail half-edge."""

    __slots__ = ("carrier", "tail", "_hash")

    def __init__(self, carrier: ToroidalMap, tail):
        self.carrier = carrier
        self.tail = tuple(tail)
        if len(self.tail) != carrier.m:
            raise ValueError("one tail per edge expected")
        for e, h in enumerate(self.tail):
            if carrier.edge_of[h] != e:
                raise ValueError(f"half-edge {h} is not on edge {e}")
        self._hash = hash(self.tail)

    @classmethod
    def from_out_halves(cls, carrier: ToroidalMap, halves) -> "EdgeOrientation":
        tail = [-1] * carrier.m
        for h in halves:
            tail[carrier.edge_of[h]] = h
        if -1 in tail:
            raise ValueError("some edge has no tail")
        return cls(carrier, tail)

    def is_out(self, h: int) -> bool:
        return self.tail[self.carrier.edge_of[h]] == h

    def outdeg(self) -> list[int]:
        d = [0] * self.carrier.n
        for h in self.tail:
            d[self.carrier.vert[h]] += 1
        return d

    def reversed(self, edges) -> "EdgeOrientation":
        t = list(self.tail)
        for e in edges:
            t[e] = self.carrier.twin[t[e]]
        return EdgeOrientation(self.carrier, t)

    def diff_edges(self, other: "EdgeOrientation") -> list[int]:
        return [e for e in range(self.carrier.m) if self.tail[e] != other.tail[e]]

    def __eq__(self, other):
        return isinstance(other, EdgeOrientation) and self.tail == other.tail and self.carrier is other.carrier

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"EdgeOrientation(m={len(self.tail)})"


def lift_tri(orient: EdgeOrientation, cm: CompletionMap) -> EdgeOrientation:
    """Completion orientation of a one-way orientation: u->e->v, faces -> e."""
    src = cm.source
    if orient.carrier is not src:
        raise ValueError("orientation is not on the completion's source map")
    halves = []
    for h in orient.tail:
        t = src.twin[h]
        halves += [4 * h, 4 * t + 1, 4 * h + 2, 4 * t + 2]
    return EdgeOrientation.from_out_halves(cm.map, halves)


# ---------------------------------------------------------------- gamma and delta


def gamma(orient: EdgeOrientation, walk) -> int:
    """Out-edges leaving a closed walk on its right minus those on its left."""
    m = orient.carrier
    try:
        check_closed(m, walk)
    except WalkNotClosed as exc:
        raise NotACycle(str(exc)) from None
    k = len(walk)
    total = 0
    for i in range(k):
        b = walk[i]
        back = m.twin[walk[i - 1]]
        if back == b:
            continue
        g = m.nxt[b]
        while g != back:
            if orient.is_out(g):
                total -= 1
            g = m.nxt[g]
        g = m.nxt[back]
        while g != b:
            if orient.is_out(g):
                total += 1
            g = m.nxt[g]
    return total


def gamma_tri(orient: EdgeOrientation, walk) -> int:
    if not orient.carrier.is_triangulation():
        raise NotTriangulation("gamma_tri needs a triangulation")
    return gamma(orient, walk)


def gamma_primal(cm: CompletionMap, orient: EdgeOrientation, walk) -> int:
    return gamma(orient, cm.lift_primal(walk))


def gamma_dual(cm: CompletionMap, orient: EdgeOrientation, walk) -> int:
    return gamma(orient, cm.lift_dual(walk))


def _is_out_edge(cm: CompletionMap, orient: EdgeOrientation, g: int) -> int:
    """+1 if the edge of g is an out-edge oriented along g, -1 if against, else 0."""
    t = orient.tail[cm.map.edge_of[g]]
    if cm.role[cm.map.vert[t]] == CompletionMap.EDGE:
        return 0
    return 1 if t == g else -1


def delta_step(cm: CompletionMap, orient: EdgeOrientation, g: int) -> int:
    """Contribution of crossing completion half-edge g from its left face to its right face."""
    return -_is_out_edge(cm, orient, g)


def delta(cm: CompletionMap, orient: EdgeOrientation, walk) -> int:
    """Signed out-edge count across a closed walk of the completion's dual.

    The walk is a sequence of completion half-edges, each crossed from the
    face on its left to the face on its right.
    """
    M = cm.map
    k = len(walk)
    for i in range(k):
        if M.face_of[M.twin[walk[i]]] != M.face_of[walk[(i + 1) % k]]:
            raise WalkNotClosed(f"dual walk breaks after position {i}")
    return sum(delta_step(cm, orient, g) for g in walk)


def dual_walk_left(cm: CompletionMap, walk) -> list[int]:
    """Closed dual walk just left of a completion cycle, same direction."""
    M = cm.map
    out = []
    for i in range(len(walk)):
        b, back = walk[i], M.twin[walk[i - 1]]
        g = M.prv[back]
        while g != b:
            out.append(g)
            g = M.prv[g]
    return out


def dual_walk_right(cm: CompletionMap, walk) -> list[int]:
    """Closed dual walk just right of a completion cycle, same direction."""
    M = cm.map
    out = []
    for i in range(len(walk)):
        b, back = walk[i], M.twin[walk[i - 1]]
        g = M.nxt[back]
        while g != b:
            out.append(M.twin[g])
            g = M.nxt[g]
    return out


def is_mod3_orientation(cm: CompletionMap, orient: EdgeOrientation) -> bool:
    d = orient.outdeg()
    for x, r in enumerate(cm.role):
        want = 1 if r == CompletionMap.EDGE else 0
        if d[x] % 3 != want:
            return False
    return True


def is_schnyder_orientation(cm: CompletionMap, orient: EdgeOrientation, basis: HomologyBasis | None = None) -> bool:
    """Mod-3 out-degrees plus gamma of both basis cycles divisible by 3."""
    if not is_mod3_orientation(cm, orient):
        return False
    basis = basis or cm.source.basis()
    return all(gamma_primal(cm, orient, b) % 3 == 0 for b in (basis.b1, basis.b2))


@dataclass(frozen=True)
class OrientationType:
    gamma_b1: int
    gamma_b2: int

    @property
    def balanced(self) -> bool:
        return self.gamma_b1 == 0 and self.gamma_b2 == 0


def is_three_orientation(cm: CompletionMap, orient: EdgeOrientation) -> bool:
    d = orient.outdeg()
    return all(d[x] == (1 if r == CompletionMap.EDGE else 3) for x, r in enumerate(cm.role))


def orientation_type(cm: CompletionMap, orient: EdgeOrientation, basis: HomologyBasis | None = None) -> OrientationType:
    if not is_three_orientation(cm, orient):
        raise NotThreeOrientation("expected out-degrees 3/3/1")
    basis = basis or cm.source.basis()
    return OrientationType(gamma_primal(cm, orient, basis.b1), gamma_primal(cm, orient, basis.b2))


def is_balanced(cm: CompletionMap, orient: EdgeOrientation, basis: HomologyBasis | None = None) -> bool:
    return orientation_type(cm, orient, basis).balanced


def orientation_type_tri(orient: EdgeOrientation, basis: HomologyBasis | None = None) -> OrientationType:
    """Type of a 3-orientation of a triangulation, computed on the map itself."""
    m = orient.carrier
    if any(d != 3 for d in orient.outdeg()):
        raise NotThreeOrientation("expected out-degree 3 at every vertex")
    basis = basis or m.basis()
    return OrientationType(gamma_tri(orient, basis.b1), gamma_tri(orient, basis.b2))


# ---------------------------------------------------------------- enumeration


def enumerate_orientations(m: ToroidalMap, alpha, limit: int | None = None) -> list[EdgeOrientation]:
    """All orientations with out-degree ``alpha[v]`` at every vertex."""
    limit = max_enum() if limit is None else limit
    if m.m >= 63 or (1 << m.m) > limit:
        raise TooLarge(f"2^{m.m} candidate orientations exceed the limit {limit}")
    rem = list(alpha)
    slots = [0] * m.n
    for h, t in m.edges:
        slots[m.vert[h]] += 1
        if m.vert[t] != m.vert[h]:
            slots[m.vert[t]] += 1
    out = []
    tail = [0] * m.m

    def rec(e):
        if e == m.m:
            if not any(rem):
                out.append(EdgeOrientation(m, tail))
            return
        h, t = m.edges[e]
        u, v = m.vert[h], m.vert[t]
        slots[u] -= 1
        if v != u:
            slots[v] -= 1
        for a, b in ((h, u), (t, v)):
            rem[b] -= 1
            if rem[b] >= 0 and rem[u] <= slots[u] and rem[v] <= slots[v]:
                tail[e] = a
                rec(e + 1)
            rem[b] += 1
        slots[u] += 1
        if v != u:
            slots[v] += 1

    rec(0)
    return out


def enumerate_3orientations(m: ToroidalMap, limit: int | None = None) -> list[EdgeOrientation]:
    return enumerate_orientations(m, [3] * m.n, limit)


def difference_class(d1: EdgeOrientation, d2: EdgeOrientation, basis: HomologyBasis | None = None):
    """Homology class of the oriented difference d1 minus d2 (as a flow)."""
    m = d1.carrier
    basis = basis or m.basis()
    a = b = 0
    for e in d1.diff_edges(d2):
        s = basis.shift[d1.tail[e]]
        a += s[0]
        b += s[1]
    return (a, b)


def homologous(d1: EdgeOrientation, d2: EdgeOrientation, basis: HomologyBasis | None = None) -> bool:
    return d1.outdeg() == d2.outdeg() and difference_class(d1, d2, basis) == (0, 0)


def group_homologous(orients, basis: HomologyBasis | None = None) -> list[list[EdgeOrientation]]:
    groups: list[list[EdgeOrientation]] = []
    for d in orients:
        for g in groups:
            if homologous(g[0], d, basis):
                g.append(d)
                break
        else:
            groups.append([d])
    return groups


# ---------------------------------------------------------------- differences


def _t_of_half(d1: EdgeOrientation, diff: set, h: int) -> int:
    e = d1.carrier.edge_of[h]
    if e not in diff:
        return 0
    return 1 if d1.tail[e] == h else -1


def _face_labels_mod3(d1: EdgeOrientation, diff: set):
    """Label faces by beta(T, path) mod 3; None if some closed walk is not 0 mod 3."""
    m = d1.carrier
    lab = [None] * m.f
    lab[0] = 0
    dq = deque([0])
    while dq:
        F = dq.popleft()
        for h in m.faces[F]:
            G = m.face_of[m.twin[h]]
            # crossing h from left to right; T along h crosses from right to left
            val = (lab[F] - _t_of_half(d1, diff, h)) % 3
            if lab[G] is None:
                lab[G] = val
                dq.append(G)
            elif lab[G] != val:
                return None
    return lab


def diff_classify(d1: EdgeOrientation, d2: EdgeOrientation, basis: HomologyBasis | None = None) -> str:
    m = d1.carrier
    diff = set(d1.diff_edges(d2))
    if not diff:
        return "zero-homologous"
    lab = _face_labels_mod3(d1, diff)
    if lab is None:
        return "not-partitionable"
    parts = {0: [], 1: [], 2: []}
    for e in diff:
        h = d1.tail[e]
        left, right = lab[m.face_of[h]], lab[m.face_of[m.twin[h]]]
        parts[(left + 1) % 3].append(h)
    for hs in parts.values():
        bal = [0] * m.n
        for h in hs:
            bal[m.vert[h]] += 1
            bal[m.head(h)] -= 1
        if any(bal):
            return "partitionable"
    if difference_class(d1, d2, basis) == (0, 0):
        return "zero-homologous"
    return "eulerian-partitionable"


# ---------------------------------------------------------------- face flips and the order


def flip_face(orient: EdgeOrientation, F: int, sense: str) -> EdgeOrientation:
    m = orient.carrier
    bd = m.faces[F]
    edges = {m.edge_of[h] for h in bd}
    for h in bd:
        if m.face_of[m.twin[h]] == F:
            raise FaceNotDirected("face boundary uses an edge twice")
        along = orient.is_out(h)
        if along != (sense == CCW):
            raise FaceNotDirected(f"face {F} is not directed {sense}")
    return orient.reversed(edges)


def potentials(d: EdgeOrientation, d2: EdgeOrientation, f0: int = 0):
    """Face potentials of d minus d2 with lam[f0] = 0, or None if not 0-homologous."""
    m = d.carrier
    if d.outdeg() != d2.outdeg():
        return None
    diff = set(d.diff_edges(d2))
    lam = [None] * m.f
    lam[f0] = 0
    dq = deque([f0])
    while dq:
        F = dq.popleft()
        for h in m.faces[F]:
            G = m.face_of[m.twin[h]]
            val = lam[F] - _t_of_half(d, diff, h)
            if lam[G] is None:
                lam[G] = val
                dq.append(G)
            elif lam[G] != val:
                return None
    return lam


def leq(d1: EdgeOrientation, d2: EdgeOrientation, f0: int = 0) -> bool:
    """d1 <= d2 iff d1 minus d2 is a nonnegative sum of faces other than f0."""
    lam = potentials(d1, d2, f0)
    if lam is None:
        raise ValueError("orientations are not homologous")
    return all(x >= 0 for x in lam)


def _arcs(d: EdgeOrientation, forward: bool):
    """Dual arcs left->right (forward) or right->left for every edge."""
    m = d.carrier
    adj = [[] for _ in range(m.f)]
    for e, h in enumerate(d.tail):
        a, b = m.face_of[h], m.face_of[m.twin[h]]
        if forward:
            adj[a].append((b, e))
        else:
            adj[b].append((a, e))
    return adj


def _reaching(d: EdgeOrientation, f0: int, forward: bool) -> set[int]:
    """Faces with a dual path to f0 along the chosen arc direction."""
    m = d.carrier
    radj = [[] for _ in range(m.f)]
    for a, lst in enumerate(_arcs(d, forward)):
        for b, _ in lst:
            radj[b].append(a)
    seen = {f0}
    dq = deque([f0])
    while dq:
        x = dq.popleft()
        for y in radj[x]:
            if y not in seen:
                seen.add(y)
                dq.append(y)
    return seen


def _extremize(d: EdgeOrientation, f0: int, forward: bool) -> EdgeOrientation:
    m = d.carrier
    for _ in range(m.f * m.m + 1):
        X = _reaching(d, f0, forward)
        if len(X) == m.f:
            return d
        cut = [e for e, h in enumerate(d.tail) if (m.face_of[h] in X) != (m.face_of[m.twin[h]] in X)]
        d = d.reversed(cut)
    raise RuntimeError("cut reversal did not converge")


def minimize(d: EdgeOrientation, f0: int = 0) -> EdgeOrientation:
    """Minimum of the homology class of d for <=_{f0}."""
    return _extremize(d, f0, True)


def maximize(d: EdgeOrientation, f0: int = 0) -> EdgeOrientation:
    return _extremize(d, f0, False)


def _scc(nv: int, adj) -> list[int]:
    """Strongly connected component id per node (iterative Tarjan)."""
    index = [None] * nv
    low = [0] * nv
    comp = [-1] * nv
    onstack = [False] * nv
    stack = []
    counter = 0
    ncomp = 0
    for s in range(nv):
        if index[s] is not None:
            continue
        work = [(s, 0)]
        index[s] = low[s] = counter
        counter += 1
        stack.append(s)
        onstack[s] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if index[w] is None:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack[w] = True
                    work.append((w, 0))
                elif onstack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    low[work[-1][0]] = min(low[work[-1][0]], low[v])
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        onstack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
    return comp


def merged_faces(d: EdgeOrientation) -> list[int]:
    """Component id per face: faces glued along rigid edges."""
    adj = [[b for b, _ in lst] for lst in _arcs(d, True)]
    return _scc(d.carrier.f, adj)


def rigid_edges(d: EdgeOrientation) -> set[int]:
    m = d.carrier
    comp = merged_faces(d)
    return {e for e, h in enumerate(d.tail) if comp[m.face_of[h]] == comp[m.face_of[m.twin[h]]]}


def _bellman_ford(nv: int, arcs) -> bool:
    """True iff the difference-constraint system x_j - x_i <= w has a solution."""
    dist = [0] * nv
    for _ in range(nv):
        changed = False
        for i, j, w in arcs:
            if dist[i] + w < dist[j]:
                dist[j] = dist[i] + w
                changed = True
        if not changed:
            return True
    return False


def _potential_constraints(d: EdgeOrientation, f0: int):
    """x_L - x_R in [0, 1] per edge, x_F in [-m, m], x_f0 = 0 (arc list, node f0 anchored)."""
    m = d.carrier
    arcs = []
    for h in d.tail:
        L, R = m.face_of[h], m.face_of[m.twin[h]]
        arcs.append((R, L, 1))   # x_L - x_R <= 1
        arcs.append((L, R, 0))   # x_R - x_L <= 0
    for F in range(m.f):
        arcs.append((f0, F, m.m))
        arcs.append((F, f0, m.m))
    return arcs


def has_zero_homologous(d: EdgeOrientation, f0: int, sense: str) -> bool:
    """Is there a non-empty ccw (or cw) 0-homologous oriented subgraph w.r.t. f0?

    Searched as integer potentials: each edge of d gets lam[L]-lam[R] in {0,1},
    lam[f0] = 0, all lam of one sign and some face nonzero.
    """
    m = d.carrier
    base = _potential_constraints(d, f0)
    for F in range(m.f):
        if F == f0:
            continue
        arcs = list(base)
        for G in range(m.f):
            if sense == CCW:
                arcs.append((G, f0, 0))   # x_G >= 0
            else:
                arcs.append((f0, G, 0))   # x_G <= 0
        if sense == CCW:
            arcs.append((F, f0, -1))      # x_F >= 1
        else:
            arcs.append((f0, F, -1))      # x_F <= -1
        if _bellman_ford(m.f, arcs):
            return True
    return False


def zero_homologous_through(d: EdgeOrientation, e: int) -> bool:
    """Is edge e contained in some 0-homologous oriented subgraph of d?"""
    m = d.carrier
    h = d.tail[e]
    L, R = m.face_of[h], m.face_of[m.twin[h]]
    if L == R:
        return False
    arcs = _potential_constraints(d, 0)
    arcs.append((L, R, -1))  # x_R - x_L <= -1
    return _bellman_ford(m.f, arcs)


# ---------------------------------------------------------------- Hasse diagram


@dataclass
class Hasse:
    nodes: list[EdgeOrientation]
    edges: list[tuple[int, int, int]]          # (lower, upper, merged-face label)
    f0: int
    comp: list[int] = field(default_factory=list)

    def out_edges(self):
        adj = [[] for _ in self.nodes]
        for a, b, c in self.edges:
            adj[a].append((b, c))
        return adj

    def in_edges(self):
        adj = [[] for _ in self.nodes]
        for a, b, c in self.edges:
            adj[b].append((a, c))
        return adj

    def sources(self) -> list[int]:
        has_in = {b for _, b, _ in self.edges}
        return [i for i in range(len(self.nodes)) if i not in has_in]

    def sinks(self) -> list[int]:
        has_out = {a for a, _, _ in self.edges}
        return [i for i in range(len(self.nodes)) if i not in has_out]

    def is_connected(self) -> bool:
        adj = [[] for _ in self.nodes]
        for a, b, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.nodes)

    def is_acyclic(self) -> bool:
        indeg = [0] * len(self.nodes)
        for _, b, _ in self.edges:
            indeg[b] += 1
        out = self.out_edges()
        q = [i for i, k in enumerate(indeg) if k == 0]
        seen = 0
        while q:
            x = q.pop()
            seen += 1
            for y, _ in out[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    q.append(y)
        return seen == len(self.nodes)

    def check_labels(self) -> bool:
        """Edge-label conditions that make a cover graph the diagram of a distributive lattice."""
        out, inn = self.out_edges(), self.in_edges()
        lab = {(a, b): c for a, b, c in self.edges}
        for u in range(len(self.nodes)):
            ups = out[u]
            for i in range(len(ups)):
                for j in range(i + 1, len(ups)):
                    (v, cv), (w, cw) = ups[i], ups[j]
                    if cv == cw:
                        return False
                    if not any(lab.get((w, z)) == cv and lab.get((v, z)) == cw for z, _ in out[v]):
                        return False
            downs = inn[u]
            for i in range(len(downs)):
                for j in range(i + 1, len(downs)):
                    (v, cv), (w, cw) = downs[i], downs[j]
                    if cv == cw:
                        return False
                    if not any(lab.get((x, v)) == cw and lab.get((x, w)) == cv for x, _ in inn[v]):
                        return False
        return True


def _directed_merged(d: EdgeOrientation, comp, c: int, sense: str) -> list[int] | None:
    """Boundary edges of merged face c if they are all directed in ``sense``."""
    m = d.carrier
    edges = []
    for e, h in enumerate(d.tail):
        L, R = comp[m.face_of[h]], comp[m.face_of[m.twin[h]]]
        if L == R:
            continue
        if L == c:
            if sense != CCW:
                return None
            edges.append(e)
        elif R == c:
            if sense != CW:
                return None
            edges.append(e)
    return edges or None


def hasse(d0: EdgeOrientation, f0: int = 0, limit: int | None = None) -> Hasse:
    """Whole homology class of d0 with its cover relations (merged-face flips)."""
    limit = max_enum() if limit is None else limit
    m = d0.carrier
    comp = merged_faces(d0)
    c0 = comp[f0]
    labels = sorted(set(comp) - {c0})
    index = {d0: 0}
    nodes = [d0]
    edges = set()
    dq = deque([d0])
    while dq:
        d = dq.popleft()
        i = index[d]
        for c in labels:
            for sense in (CCW, CW):
                bd = _directed_merged(d, comp, c, sense)
                if bd is None:
                    continue
                d2 = d.reversed(bd)
                if d2 not in index:
                    if len(nodes) >= limit:
                        raise TooLarge(f"class exceeds {limit} orientations")
                    index[d2] = len(nodes)
                    nodes.append(d2)
                    dq.append(d2)
                j = index[d2]
                edges.add((i, j, c) if sense == CCW else (j, i, c))
    return Hasse(nodes, sorted(edges), f0, comp)


# ---------------------------------------------------------------- ORNT text format


def to_ornt(orient: EdgeOrientation) -> str:
    lines = ["ornt 1"] + [f"o {e} {h}" for e, h in enumerate(orient.tail)]
    return "\n".join(lines) + "\n"


def from_ornt(text: str, carrier: ToroidalMap) -> EdgeOrientation:
    from .errors import FormatError

    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != ["ornt", "1"]:
        raise FormatError("missing 'ornt 1' header")
    tail = [-1] * carrier.m
    for parts in lines[1:]:
        if len(parts) != 3 or parts[0] != "o":
            raise FormatError(f"bad line {' '.join(parts)!r}")
        e, h = int(parts[1]), int(parts[2])
        if not 0 <= e < carrier.m:
            raise FormatError(f"edge id {e} out of range")
        tail[e] = h
    if -1 in tail:
        raise FormatError("some edge is missing")
    try:
        return EdgeOrientation(carrier, tail)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
