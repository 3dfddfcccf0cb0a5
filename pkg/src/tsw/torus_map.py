"""Half-edge maps on the torus.

A map is stored as three integer arrays indexed by half-edge id:
``twin`` (the other half of the same edge), ``nxt`` (the counterclockwise
successor around the origin vertex) and ``vert`` (the origin vertex).
Faces are the orbits of ``phi(h) = prev(twin(h))``; the face of ``h`` is the
one on its left, and the angle following ``h`` counterclockwise at
``vert[h]`` lies in that face.  Angles are therefore identified with
half-edges.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .errors import FormatError, GenusMismatch, MalformedRotation, WalkNotClosed

Vec = tuple[int, int]
ZERO: Vec = (0, 0)


def vadd(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def vsub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def vneg(a: Vec) -> Vec:
    return (-a[0], -a[1])


class ToroidalMap:
    """Immutable rotation system; validated on construction."""

    def __init__(self, twin, nxt, vert, *, check_genus: bool = True):
        self.twin = tuple(twin)
        self.nxt = tuple(nxt)
        self.vert = tuple(vert)
        H = len(self.twin)
        if H == 0 or H % 2:
            raise MalformedRotation("need a positive even number of half-edges")
        if len(self.nxt) != H or len(self.vert) != H:
            raise MalformedRotation("array lengths differ")
        for h, t in enumerate(self.twin):
            if not 0 <= t < H or t == h or self.twin[t] != h:
                raise MalformedRotation(f"twin is not a fixed-point-free involution at {h}")
        if sorted(self.nxt) != list(range(H)):
            raise MalformedRotation("next_around_vertex is not a permutation")
        nv = max(self.vert) + 1
        counts = [0] * nv
        for v in self.vert:
            if v < 0:
                raise MalformedRotation("negative vertex id")
            counts[v] += 1
        if 0 in counts:
            raise MalformedRotation("vertex ids are not dense")
        for h in range(H):
            if self.vert[self.nxt[h]] != self.vert[h]:
                raise MalformedRotation(f"rotation at {h} leaves its vertex")
        self.num_half = H
        self.n = nv
        self.m = H // 2
        prv = [0] * H
        for h, g in enumerate(self.nxt):
            prv[g] = h
        self.prv = tuple(prv)

        first = [-1] * nv
        for h in range(H):
            if first[self.vert[h]] < 0:
                first[self.vert[h]] = h
        self.first = tuple(first)
        for v in range(nv):
            k, h = 1, self.nxt[first[v]]
            while h != first[v]:
                k += 1
                h = self.nxt[h]
            if k != counts[v]:
                raise MalformedRotation(f"rotation at vertex {v} is not a single cycle")

        face_of = [-1] * H
        faces = []
        for h in range(H):
            if face_of[h] >= 0:
                continue
            fid = len(faces)
            orbit = []
            g = h
            while face_of[g] < 0:
                face_of[g] = fid
                orbit.append(g)
                g = self.prv[self.twin[g]]
            faces.append(tuple(orbit))
        self.face_of = tuple(face_of)
        self.faces = tuple(faces)
        self.f = len(faces)
        pos = [0] * H
        for fc in faces:
            for i, g in enumerate(fc):
                pos[g] = i
        self.face_pos = tuple(pos)

        edge_of = [-1] * H
        edges = []
        for h in range(H):
            if h < self.twin[h]:
                edge_of[h] = edge_of[self.twin[h]] = len(edges)
                edges.append((h, self.twin[h]))
        self.edge_of = tuple(edge_of)
        self.edges = tuple(edges)

        seen = {0}
        stack = [0]
        while stack:
            h = stack.pop()
            for g in (self.nxt[h], self.twin[h]):
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        if len(seen) != H:
            raise MalformedRotation("map is not connected")

        self.euler = self.n - self.m + self.f
        if check_genus and self.euler != 0:
            raise GenusMismatch(f"Euler characteristic {self.euler}, expected 0")
        self._basis = None

    # navigation
    def phi(self, h: int) -> int:
        return self.prv[self.twin[h]]

    def head(self, h: int) -> int:
        return self.vert[self.twin[h]]

    def rotation(self, v: int) -> list[int]:
        out = [self.first[v]]
        h = self.nxt[out[0]]
        while h != out[0]:
            out.append(h)
            h = self.nxt[h]
        return out

    def degree(self, v: int) -> int:
        return len(self.rotation(v))

    def is_loop(self, h: int) -> bool:
        return self.vert[h] == self.vert[self.twin[h]]

    def is_triangulation(self) -> bool:
        return all(len(fc) == 3 for fc in self.faces)

    def rotations(self) -> list[list[int]]:
        return [self.rotation(v) for v in range(self.n)]

    def basis(self) -> "HomologyBasis":
        if self._basis is None:
            self._basis = homology_basis(self)
        return self._basis

    def __repr__(self):
        return f"ToroidalMap(n={self.n}, m={self.m}, f={self.f})"


def build_map(rotation_data, twin_pairs, *, check_genus: bool = True) -> ToroidalMap:
    """Build a map from per-vertex ccw half-edge lists and a twin pairing."""
    hs = [h for rot in rotation_data for h in rot]
    H = len(hs)
    if sorted(hs) != list(range(H)):
        raise MalformedRotation("rotation lists do not partition 0..2m-1")
    twin = [-1] * H
    for a, b in twin_pairs:
        if not (0 <= a < H and 0 <= b < H) or a == b or twin[a] >= 0 or twin[b] >= 0:
            raise MalformedRotation(f"bad twin pair ({a}, {b})")
        twin[a], twin[b] = b, a
    if -1 in twin:
        raise MalformedRotation("twin pairing is not perfect")
    nxt = [0] * H
    vert = [0] * H
    for v, rot in enumerate(rotation_data):
        if not rot:
            raise MalformedRotation(f"vertex {v} has an empty rotation")
        for i, h in enumerate(rot):
            nxt[h] = rot[(i + 1) % len(rot)]
            vert[h] = v
    return ToroidalMap(twin, nxt, vert, check_genus=check_genus)


def relabel(m: ToroidalMap, hperm, vperm=None) -> ToroidalMap:
    """Rename half-edge h to hperm[h] (and vertex v to vperm[v])."""
    H = m.num_half
    twin = [0] * H
    nxt = [0] * H
    vert = [0] * H
    for h in range(H):
        twin[hperm[h]] = hperm[m.twin[h]]
        nxt[hperm[h]] = hperm[m.nxt[h]]
        vert[hperm[h]] = vperm[m.vert[h]] if vperm is not None else m.vert[h]
    return ToroidalMap(twin, nxt, vert, check_genus=False)


def dual(m: ToroidalMap) -> ToroidalMap:
    """Dual map sharing half-edge ids.

    Dual half-edge ``h`` sits at face ``face_of[h]`` and points to the face of
    ``twin[h]``; dual vertex ids are face ids.
    """
    nxt = [m.phi(h) for h in range(m.num_half)]
    return ToroidalMap(m.twin, nxt, m.face_of, check_genus=False)


def canonical_form(m: ToroidalMap, root: int) -> tuple:
    """Rooted canonical code: BFS numbering along nxt and twin from ``root``."""
    order = {root: 0}
    queue = [root]
    i = 0
    while i < len(queue):
        h = queue[i]
        i += 1
        for g in (m.nxt[h], m.twin[h]):
            if g not in order:
                order[g] = len(queue)
                queue.append(g)
    return tuple((order[m.nxt[h]], order[m.twin[h]]) for h in queue)


def rooted_isomorphic(a: ToroidalMap, ra: int, b: ToroidalMap, rb: int) -> bool:
    return a.num_half == b.num_half and canonical_form(a, ra) == canonical_form(b, rb)


def isomorphic(a: ToroidalMap, b: ToroidalMap) -> bool:
    if (a.n, a.m, a.f) != (b.n, b.m, b.f):
        return False
    ca = canonical_form(a, 0)
    return any(canonical_form(b, r) == ca for r in range(b.num_half))


# ---------------------------------------------------------------- homology


@dataclass(frozen=True)
class HomologyBasis:
    """Tree-cotree basis with an integer cocycle on half-edges.

    ``shift[h]`` is the class contribution of traversing ``h``; the class of
    a closed walk is the sum over its half-edges.  Faces sum to zero, the
    two leftover edges carry (1,0) and (0,1).
    """

    b1: tuple[int, ...]
    b2: tuple[int, ...]
    shift: tuple[Vec, ...]
    tree: frozenset
    cotree: frozenset
    leftover: tuple[int, int]

    def class_of(self, m: ToroidalMap, walk) -> Vec:
        return homology_class(m, walk, self)


def _tree_path(m: ToroidalMap, parent_half, depth, a: int, b: int) -> list[int]:
    up_a, up_b = [], []
    while depth[a] > depth[b]:
        up_a.append(m.twin[parent_half[a]])
        a = m.vert[parent_half[a]]
    while depth[b] > depth[a]:
        up_b.append(parent_half[b])
        b = m.vert[parent_half[b]]
    while a != b:
        up_a.append(m.twin[parent_half[a]])
        a = m.vert[parent_half[a]]
        up_b.append(parent_half[b])
        b = m.vert[parent_half[b]]
    return up_a + up_b[::-1]


def homology_basis(m: ToroidalMap, root: int = 0, rng: random.Random | None = None) -> HomologyBasis:
    H = m.num_half
    parent_half = [-1] * m.n
    depth = [0] * m.n
    tree = set()
    seen = [False] * m.n
    seen[root] = True
    dq = deque([root])
    while dq:
        v = dq.popleft()
        rot = m.rotation(v)
        if rng is not None:
            rng.shuffle(rot)
        for h in rot:
            w = m.head(h)
            if not seen[w]:
                seen[w] = True
                parent_half[w] = h
                depth[w] = depth[v] + 1
                tree.add(m.edge_of[h])
                dq.append(w)

    froot = rng.randrange(m.f) if rng is not None else 0
    fparent = [-1] * m.f
    fseen = [False] * m.f
    fseen[froot] = True
    forder = [froot]
    cotree = set()
    dq = deque([froot])
    while dq:
        F = dq.popleft()
        bd = list(m.faces[F])
        if rng is not None:
            rng.shuffle(bd)
        for h in bd:
            if m.edge_of[h] in tree:
                continue
            G = m.face_of[m.twin[h]]
            if not fseen[G]:
                fseen[G] = True
                fparent[G] = m.twin[h]
                cotree.add(m.edge_of[h])
                forder.append(G)
                dq.append(G)

    left = [e for e in range(m.m) if e not in tree and e not in cotree]
    if len(left) != 2:
        raise GenusMismatch(f"tree-cotree leaves {len(left)} edges, expected 2")
    shift = [None] * H
    for h in range(H):
        if m.edge_of[h] in tree:
            shift[h] = ZERO
    e1h, e2h = m.edges[left[0]][0], m.edges[left[1]][0]
    shift[e1h], shift[m.twin[e1h]] = (1, 0), (-1, 0)
    shift[e2h], shift[m.twin[e2h]] = (0, 1), (0, -1)
    for F in reversed(forder[1:]):
        p = fparent[F]
        s = ZERO
        for g in m.faces[F]:
            if g != p:
                s = vadd(s, shift[g])
        shift[p] = vneg(s)
        shift[m.twin[p]] = s

    b = []
    for h in (e1h, e2h):
        b.append(tuple([h] + _tree_path(m, parent_half, depth, m.head(h), m.vert[h])))
    return HomologyBasis(b[0], b[1], tuple(shift), frozenset(tree), frozenset(cotree), (e1h, e2h))


def check_closed(m: ToroidalMap, walk) -> None:
    k = len(walk)
    for i in range(k):
        if m.head(walk[i]) != m.vert[walk[(i + 1) % k]]:
            raise WalkNotClosed(f"walk breaks after position {i}")


def homology_class(m: ToroidalMap, walk, basis: HomologyBasis | None = None) -> Vec:
    """Coordinates of a closed walk over the basis cycles."""
    if basis is None:
        basis = m.basis()
    check_closed(m, walk)
    a = b = 0
    for h in walk:
        s = basis.shift[h]
        a += s[0]
        b += s[1]
    return (a, b)


# ---------------------------------------------------------------- cover


def face_offsets(m: ToroidalMap, basis: HomologyBasis) -> tuple[Vec, ...]:
    """Copy offset of each half-edge's tail relative to its face's first corner."""
    off = [ZERO] * m.num_half
    for fc in m.faces:
        p = ZERO
        for h in fc:
            off[h] = p
            p = vadd(p, basis.shift[h])
    return tuple(off)


class Cover:
    """Lifting helpers for the universal cover of a map.

    Lifted vertex ``(v, p)``; lifted half-edge ``(h, p)`` with tail copy ``p``;
    lifted face ``(F, q)`` where ``q`` is the copy of the tail of its first corner.
    """

    def __init__(self, m: ToroidalMap, basis: HomologyBasis | None = None):
        self.m = m
        self.basis = basis or m.basis()
        self.shift = self.basis.shift
        self.off = face_offsets(m, self.basis)

    def head(self, h: int, p: Vec) -> tuple[int, Vec]:
        return (self.m.head(h), vadd(p, self.shift[h]))

    def left_face(self, h: int, p: Vec) -> tuple[int, Vec]:
        return (self.m.face_of[h], vsub(p, self.off[h]))

    def right_face(self, h: int, p: Vec) -> tuple[int, Vec]:
        t = self.m.twin[h]
        return self.left_face(t, vadd(p, self.shift[h]))

    def edge_key(self, h: int, p: Vec) -> tuple[int, Vec]:
        t = self.m.twin[h]
        if h < t:
            return (h, p)
        return (t, vadd(p, self.shift[h]))

    def face_halves(self, F: int, q: Vec):
        for h in self.m.faces[F]:
            yield h, vadd(q, self.off[h])

    def face_vertices(self, F: int, q: Vec) -> list[tuple[int, Vec]]:
        return [(self.m.vert[h], p) for h, p in self.face_halves(F, q)]

    def lift_walk(self, walk, start: Vec = ZERO) -> list[tuple[int, Vec]]:
        """Lifted tails of the walk's half-edges plus the final endpoint."""
        p = start
        out = []
        for h in walk:
            out.append((self.m.vert[h], p))
            p = vadd(p, self.shift[h])
        if walk:
            out.append((self.m.head(walk[-1]), p))
        return out

    def flood(self, start, blocked, cap: int):
        """Faces reachable from ``start`` without crossing ``blocked``; None past ``cap``."""
        seen = {start}
        dq = deque([start])
        while dq:
            F, q = dq.popleft()
            for h, p in self.face_halves(F, q):
                if self.edge_key(h, p) in blocked:
                    continue
                nb = self.right_face(h, p)
                if nb not in seen:
                    seen.add(nb)
                    if len(seen) > cap:
                        return None
                    dq.append(nb)
        return seen

    def bounded_region(self, walk, cap: int | None = None):
        """Disk bounded by a closed walk whose lift is a simple closed curve.

        Returns ``(faces, interior_vertices)`` of the bounded side in the cover,
        or None if the walk is not closed, not 0-homologous, or its lift is not
        simple.
        """
        m = self.m
        try:
            check_closed(m, walk)
        except WalkNotClosed:
            return None
        pts = self.lift_walk(walk)
        if pts[-1] != pts[0] or len(set(pts[:-1])) != len(walk):
            return None
        if cap is None:
            cap = m.f
        blocked = set()
        halves = []
        for h, (v, p) in zip(walk, pts):
            blocked.add(self.edge_key(h, p))
            halves.append((h, p))
        h0, p0 = halves[0]
        region = self.flood(self.left_face(h0, p0), blocked, cap)
        if region is None:
            region = self.flood(self.right_face(h0, p0), blocked, cap)
        if region is None:
            return None
        bd = set(pts[:-1])
        inner = set()
        for F, q in region:
            for x in self.face_vertices(F, q):
                if x not in bd:
                    inner.add(x)
        return region, inner


@dataclass(frozen=True)
class TilePatch:
    copies: tuple[Vec, ...]
    vertices: tuple[tuple[int, Vec], ...]
    halfedges: tuple[tuple[int, Vec, tuple[int, Vec]], ...]
    identifications: tuple[tuple[int, Vec, tuple[int, Vec]], ...]
    faces: tuple[tuple[int, Vec, tuple[tuple[int, Vec], ...]], ...]


def tile_patch(m: ToroidalMap, k: int, basis: HomologyBasis | None = None) -> TilePatch:
    """(2k+1)^2 copies of the fundamental domain with their gluings."""
    if k < 0:
        raise ValueError("k must be non-negative")
    cov = Cover(m, basis)
    copies = tuple((a, b) for a in range(-k, k + 1) for b in range(-k, k + 1))
    verts = tuple((v, c) for c in copies for v in range(m.n))
    halves, ident = [], []
    for c in copies:
        for h in range(m.num_half):
            tgt = cov.head(h, c)
            halves.append((h, c, tgt))
            if cov.shift[h] != ZERO:
                ident.append((h, c, tgt))
    faces = []
    for c in copies:
        for F in range(m.f):
            faces.append((F, c, tuple(cov.face_vertices(F, c))))
    return TilePatch(copies, verts, tuple(halves), tuple(ident), tuple(faces))


# ---------------------------------------------------------------- forbidden configurations


def contractible_loops(m: ToroidalMap, basis: HomologyBasis | None = None) -> list[int]:
    basis = basis or m.basis()
    return [e for e, (h, _) in enumerate(m.edges) if m.is_loop(h) and basis.shift[h] == ZERO]


def homotopic_pairs(m: ToroidalMap, basis: HomologyBasis | None = None) -> list[tuple[int, int]]:
    basis = basis or m.basis()
    groups: dict = {}
    for e, (h, t) in enumerate(m.edges):
        u, v = m.vert[h], m.vert[t]
        if m.is_loop(h):
            s = basis.shift[h]
            s = max(s, vneg(s))
            key = ("loop", u, s)
        else:
            if u > v:
                h = t
                u, v = v, u
            key = ("edge", u, v, basis.shift[h])
        groups.setdefault(key, []).append(e)
    out = []
    for es in groups.values():
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                out.append((es[i], es[j]))
    return sorted(out)


def separating_triangles(m: ToroidalMap, basis: HomologyBasis | None = None) -> list[tuple[tuple[int, ...], frozenset]]:
    """Non-facial 0-homologous 3-cycles bounding a disk, with interior vertices."""
    cov = Cover(m, basis)
    found = {}
    for h1 in range(m.num_half):
        for h2 in m.rotation(m.head(h1)):
            if h2 == m.twin[h1]:
                continue
            for h3 in m.rotation(m.head(h2)):
                if h3 == m.twin[h2] or m.head(h3) != m.vert[h1] or h1 == m.twin[h3]:
                    continue
                key = frozenset(m.edge_of[x] for x in (h1, h2, h3))
                if len(key) != 3 or key in found:
                    continue
                res = cov.bounded_region([h1, h2, h3], cap=m.f)
                if res is None:
                    continue
                region, inner = res
                if len(region) > 1:
                    found[key] = frozenset(v for v, _ in inner)
    return sorted(((tuple(sorted(k)), v) for k, v in found.items()), key=lambda x: x[0])


@dataclass(frozen=True)
class ForbiddenReport:
    contractible_loops: tuple[int, ...]
    homotopic_pairs: tuple[tuple[int, int], ...]
    separating_triangles: tuple[tuple[tuple[int, ...], frozenset], ...]

    @property
    def clean(self) -> bool:
        return not self.contractible_loops and not self.homotopic_pairs


def forbidden_configs(m: ToroidalMap, basis: HomologyBasis | None = None) -> ForbiddenReport:
    basis = basis or m.basis()
    tris = separating_triangles(m, basis) if m.is_triangulation() else []
    return ForbiddenReport(
        tuple(contractible_loops(m, basis)), tuple(homotopic_pairs(m, basis)), tuple(tris)
    )


def insert_vertex(m: ToroidalMap, F: int) -> ToroidalMap:
    """Add a vertex inside face ``F`` joined to each of its corners.

    Existing half-edge ids are kept; the spoke for corner ``h`` gets id
    ``2m + 2i`` at the corner and ``2m + 2i + 1`` at the new vertex.
    """
    H = m.num_half
    face = m.faces[F]
    after = {h: H + 2 * i for i, h in enumerate(face)}
    rots = []
    for v in range(m.n):
        rot = []
        for h in m.rotation(v):
            rot.append(h)
            if h in after:
                rot.append(after[h])
        rots.append(rot)
    rots.append([H + 2 * i + 1 for i in range(len(face))])
    pairs = list(m.edges) + [(H + 2 * i, H + 2 * i + 1) for i in range(len(face))]
    return build_map(rots, pairs)


def angle_map(m: ToroidalMap) -> ToroidalMap:
    """Bipartite map between vertices and faces, one edge per angle.

    Angle ``h`` gives half-edges ``2h`` (at vertex ``vert[h]``) and ``2h+1``
    (at face vertex ``n + face_of[h]``).
    """
    rots = [[2 * h for h in m.rotation(v)] for v in range(m.n)]
    rots += [[2 * h + 1 for h in fc] for fc in m.faces]
    pairs = [(2 * h, 2 * h + 1) for h in range(m.num_half)]
    return build_map(rots, pairs, check_genus=False)


def _closed_walks(a: ToroidalMap, length: int):
    """Closed non-backtracking walks of the given length, each start half-edge."""

    def ext(walk):
        if len(walk) == length:
            if a.head(walk[-1]) == a.vert[walk[0]] and walk[0] != a.twin[walk[-1]]:
                yield list(walk)
            return
        for g in a.rotation(a.head(walk[-1])):
            if g != a.twin[walk[-1]]:
                walk.append(g)
                yield from ext(walk)
                walk.pop()

    for h in range(a.num_half):
        yield from ext([h])


def essentially_3connected(m: ToroidalMap) -> bool:
    """No short 0-homologous angle-map walk bounds a disk other than a face."""
    a = angle_map(m)
    cov = Cover(a)
    for length in (2, 4):
        for walk in _closed_walks(a, length):
            res = cov.bounded_region(walk, cap=a.f)
            if res is None:
                continue
            region, inner = res
            if len(region) > 1 or inner:
                return False
            (F, _), = region
            if len(a.faces[F]) != length:
                return False
    return True


# ---------------------------------------------------------------- completion


class CompletionMap:
    """Primal-dual completion.

    Vertex ids: primal ``v``, dual ``n + F``, edge-vertex ``n + f + e``.
    For a primal half-edge ``h`` the completion half-edges are ``4h`` (at
    ``vert[h]`` towards the edge-vertex), ``4h+1`` (its twin), ``4h+2`` (at the
    face ``face_of[h]`` towards the edge-vertex) and ``4h+3`` (its twin).
    """

    PRIMAL, DUAL, EDGE = "primal", "dual", "edge"

    def __init__(self, src: ToroidalMap):
        self.source = src
        n, f = src.n, src.f
        rots = [[4 * h for h in src.rotation(v)] for v in range(n)]
        rots += [[4 * h + 2 for h in fc] for fc in src.faces]
        for h, t in src.edges:
            rots.append([4 * h + 1, 4 * t + 3, 4 * t + 1, 4 * h + 3])
        pairs = []
        for h in range(src.num_half):
            pairs.append((4 * h, 4 * h + 1))
            pairs.append((4 * h + 2, 4 * h + 3))
        self.map = build_map(rots, pairs)
        self.role = tuple([self.PRIMAL] * n + [self.DUAL] * f + [self.EDGE] * src.m)
        self.ref = tuple(list(range(n)) + list(range(f)) + list(range(src.m)))

    def vertex_of_face(self, F: int) -> int:
        return self.source.n + F

    def vertex_of_edge(self, e: int) -> int:
        return self.source.n + self.source.f + e

    def angle_face(self, h: int) -> int:
        """Completion face containing the primal angle ``h``."""
        return self.map.face_of[4 * h]

    def lift_primal(self, walk) -> list[int]:
        out = []
        for h in walk:
            out += [4 * h, 4 * self.source.twin[h] + 1]
        return out

    def lift_dual(self, walk) -> list[int]:
        out = []
        for g in walk:
            out += [4 * g + 2, 4 * self.source.twin[g] + 3]
        return out


def completion(m: ToroidalMap) -> CompletionMap:
    return CompletionMap(m)


# ---------------------------------------------------------------- TMAP text format


def to_tmap(m: ToroidalMap) -> str:
    lines = ["tmap 1", f"halfedges {m.num_half}"]
    for v in range(m.n):
        lines.append(f"v {v}: " + " ".join(map(str, m.rotation(v))))
    for e, (h, t) in enumerate(m.edges):
        lines.append(f"e {e}: {h} {t}")
    return "\n".join(lines) + "\n"


def from_tmap(text: str) -> ToroidalMap:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0] != "tmap 1":
        raise FormatError("missing 'tmap 1' header")
    try:
        tag, count = lines[1].split()
        if tag != "halfedges":
            raise ValueError
        H = int(count)
    except (IndexError, ValueError):
        raise FormatError("bad halfedges line") from None
    rots: dict[int, list[int]] = {}
    pairs = []
    for ln in lines[2:]:
        head, _, rest = ln.partition(":")
        kind, _, ident = head.partition(" ")
        try:
            ids = [int(x) for x in rest.split()]
            idx = int(ident)
        except ValueError:
            raise FormatError(f"bad line {ln!r}") from None
        if kind == "v":
            rots[idx] = ids
        elif kind == "e":
            if len(ids) != 2:
                raise FormatError(f"bad edge line {ln!r}")
            pairs.append(tuple(ids))
        else:
            raise FormatError(f"unknown record {ln!r}")
    if sorted(rots) != list(range(len(rots))):
        raise FormatError("vertex ids not dense")
    rot_list = [rots[v] for v in range(len(rots))]
    if sum(len(r) for r in rot_list) != H:
        raise FormatError("halfedges count mismatch")
    return build_map(rot_list, pairs)
