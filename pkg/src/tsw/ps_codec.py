"""Angle-graph traversal to unicellular maps with stems, closure, and the bit codec.

Conventions of this module.  A unicellular map keeps the half-edge ids of
the map it came from.  A stem is the outgoing half of a cut edge; the id of
its missing partner is stored in ``twin`` so that closure restores it.  The
root of a unicellular map is an item ``root`` at ``v0``: the root angle is
the one just before ``root`` in counterclockwise order, which is how the
traversal reads an angle ``(v, e)``.

The traversal walks the single face keeping it on its right, i.e. it turns
counterclockwise around vertices.  Closure walks the other way, keeping the
face on its left.  Dual edges of stems therefore go from the face left of
the original edge to the face on its right inside this module; callers only
see primal objects.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import DanglingLocator, FormatError, MalformedWord, NoAdmissibleTriple, StemWrapsRoot, TSWError
from .orient_lattice import EdgeOrientation, minimize
from .torus_map import ToroidalMap, build_map, rooted_isomorphic


# ---------------------------------------------------------------- unicellular maps with stems


@dataclass
class UnicellularMap:
    rot: list[list[int]]            # ccw items per vertex
    twin: dict[int, int]            # partner id; for stems the id it gets on closure
    stems: set[int]
    root: int | None = None
    tail: set[int] = field(default_factory=set)   # outgoing halves of real edges, if known

    def __post_init__(self):
        self._index()

    def _index(self):
        self.vert = {}
        self.nxt = {}
        self.prv = {}
        for v, r in enumerate(self.rot):
            for i, x in enumerate(r):
                self.vert[x] = v
                self.nxt[x] = r[(i + 1) % len(r)]
                self.prv[x] = r[i - 1]

    def copy(self) -> "UnicellularMap":
        return UnicellularMap([list(r) for r in self.rot], dict(self.twin), set(self.stems), self.root, set(self.tail))

    @property
    def n(self) -> int:
        return len(self.rot)

    def items(self):
        return [x for r in self.rot for x in r]

    def edge_halves(self):
        return [x for x in self.items() if x not in self.stems]

    @property
    def num_edges(self) -> int:
        return len(self.edge_halves()) // 2

    def head(self, x: int) -> int:
        return self.vert[self.twin[x]]

    def phi(self, x: int) -> int:
        """Next item along the face, face on the left (clockwise around vertices)."""
        return self.prv[x] if x in self.stems else self.prv[self.twin[x]]

    def psi(self, x: int) -> int:
        """Inverse of phi: the traversal direction."""
        return self.nxt[x] if x in self.stems else self.nxt[self.twin[x]]

    def faces(self) -> list[list[int]]:
        seen = set()
        out = []
        for x in self.items():
            if x in seen:
                continue
            f = []
            y = x
            while y not in seen:
                seen.add(y)
                f.append(y)
                y = self.phi(y)
            out.append(f)
        return out

    def is_connected(self) -> bool:
        if not self.rot:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for x in self.rot[v]:
                if x not in self.stems:
                    w = self.head(x)
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        return len(seen) == self.n


def u_canonical(u: UnicellularMap) -> tuple:
    """Relabelling-invariant form of a rooted unicellular map."""
    if u.root is None:
        raise ValueError("canonical form needs a root")
    lab = {}
    vlab = {}
    order = []
    queue = [u.root]
    while queue:
        s = queue.pop(0)
        v = u.vert[s]
        if v in vlab:
            continue
        vlab[v] = len(order)
        r = u.rot[v]
        k = r.index(s)
        seq = r[k:] + r[:k]
        order.append(seq)
        for x in seq:
            lab[x] = len(lab)
        for x in seq:
            if x not in u.stems and u.head(x) not in vlab:
                queue.append(u.twin[x])
    if len(order) != u.n:
        raise ValueError("map is not connected")
    return tuple(
        tuple(("s",) if x in u.stems else ("e", lab[u.twin[x]]) for x in seq) for seq in order
    )


# ---------------------------------------------------------------- root choice


def choose_root_angle(tri: ToroidalMap, wood) -> int:
    """Half-edge g0 at a vertex of the 0-cycle reached from vertex 0; root angle is just before g0."""
    seen = set()
    v = 0
    while v not in seen:
        seen.add(v)
        v = tri.head(wood.out_half(v, 0))
    return tri.rotation(v)[0]


def root_face(tri: ToroidalMap, g0: int) -> int:
    return tri.face_of[tri.prv[g0]]


# ---------------------------------------------------------------- the traversal


@dataclass
class PSResult:
    u: UnicellularMap
    log: list[int]                  # state half-edges in order; the angle is the one before each
    kept: set[int]                  # edges of the input kept in u
    stems: set[int]                 # out-halves cut into stems
    visited: set[int]
    num_angles: int

    @property
    def spanning(self) -> bool:
        return len(self.visited) == self.u.n

    @property
    def hamiltonian(self) -> bool:
        return len(self.log) == len(set(self.log)) == self.num_angles

    @property
    def unicellular(self) -> bool:
        u = self.u
        return u.is_connected() and len(u.faces()) == 1 and u.n - u.num_edges + 1 == 0


def algorithm_ps(m: ToroidalMap, orient: EdgeOrientation, g0: int) -> PSResult:
    marked = [False] * m.m
    kept, stems, log = set(), set(), []
    g = g0
    for _ in range(4 * m.num_half + 4):
        log.append(g)
        e = m.edge_of[g]
        entering = not orient.is_out(g)
        if not marked[e]:
            marked[e] = True
            if entering:
                kept.add(e)
                g = m.nxt[m.twin[g]]
            else:
                stems.add(g)
                g = m.nxt[g]
        else:
            g = m.nxt[g] if entering else m.nxt[m.twin[g]]
        if g == g0:
            break
    else:
        raise AssertionError("traversal did not return to the root angle")
    present = set(stems)
    for e in kept:
        present.update(m.edges[e])
    rot = [[x for x in m.rotation(v) if x in present] for v in range(m.n)]
    twin = {x: m.twin[x] for x in present}
    tail = {orient.tail[e] for e in kept}
    u = UnicellularMap(rot, twin, stems, g0, tail)
    visited = {m.vert[x] for x in log}
    return PSResult(u, log, kept, stems, visited, m.num_half)


def ps_from_wood(tri: ToroidalMap, wood, g0: int | None = None) -> tuple[PSResult, int, EdgeOrientation]:
    """Minimal orientation w.r.t. the root face, then the traversal."""
    g0 = choose_root_angle(tri, wood) if g0 is None else g0
    o = minimize(wood.one_way_orientation(), root_face(tri, g0))
    return algorithm_ps(tri, o, g0), g0, o


# ---------------------------------------------------------------- closure


def _close(u: UnicellularMap, e1: int, s: int) -> None:
    """Attach stem s to the origin of e1, creating a triangle on its left."""
    t = u.twin[s]
    u.twin[t] = s
    r = u.rot[u.vert[e1]]
    r.insert(r.index(e1) + 1, t)
    u.stems.discard(s)
    u.tail.add(s)
    u._index()


def _to_map(u: UnicellularMap) -> ToroidalMap:
    if u.stems:
        raise NoAdmissibleTriple("stems left after closure")
    ids = sorted(u.items())
    if ids != list(range(len(ids))):
        new = {x: k for k, x in enumerate(ids)}
    else:
        new = {x: x for x in ids}
    pairs = [(new[x], new[u.twin[x]]) for x in ids if x < u.twin[x]]
    return build_map([[new[x] for x in r] for r in u.rot], pairs)


def admissible_triples(u: UnicellularMap, face: list[int]) -> list[tuple[int, int, int]]:
    k = len(face)
    out = []
    for i in range(k):
        e1, e2, s = face[i], face[(i + 1) % k], face[(i + 2) % k]
        if e1 not in u.stems and e2 not in u.stems and s in u.stems:
            out.append((e1, e2, s))
    return out


def _special_face(u: UnicellularMap) -> list[int]:
    for f in u.faces():
        if any(x in u.stems for x in f):
            return f
    return []


def complete_closure(u: UnicellularMap, rng: random.Random | None = None) -> ToroidalMap:
    """Close admissible triples one at a time, the first one or a random one."""
    u = u.copy()
    surplus = []
    while u.stems:
        face = _special_face(u)
        ne = sum(x not in u.stems for x in face)
        surplus.append(ne - sum(x in u.stems for x in face))
        if surplus[-1] != 3:
            raise NoAdmissibleTriple(f"special face has {ne} edges for {len(u.stems)} stems")
        cand = admissible_triples(u, face)
        if not cand:
            raise NoAdmissibleTriple("no admissible triple")
        e1, _, s = rng.choice(cand) if rng else cand[0]
        _close(u, e1, s)
    return _to_map(u)


def recover_with_root(u: UnicellularMap) -> ToroidalMap:
    """Single counterclockwise pass from the root angle with a stack of edges."""
    if u.root is None:
        raise ValueError("root needed")
    u = u.copy()
    stack = []
    faces = u.faces()
    if len(faces) != 1:
        raise NoAdmissibleTriple("input is not unicellular")
    x = u.prv[u.root]
    for _ in range(len(faces[0])):
        if x in u.stems:
            if len(stack) < 2:
                raise StemWrapsRoot("stem met with fewer than two edges before it")
            stack.pop()
            e1 = stack.pop()
            nx = u.phi(x)
            _close(u, e1, x)
            stack.append(u.twin[x])
            x = nx
        else:
            stack.append(x)
            x = u.phi(x)
    if u.stems:
        raise StemWrapsRoot("stems left after one round")
    return _to_map(u)


def recover_without_root(u: UnicellularMap) -> ToroidalMap:
    """Two rounds from an arbitrary item, closing every admissible triple met."""
    u = u.copy()
    face = u.faces()
    if len(face) != 1:
        raise NoAdmissibleTriple("input is not unicellular")
    x = face[0][0]
    window = []
    for _ in range(2 * len(face[0])):
        if x in u.stems and len(window) >= 2 and window[-1] not in u.stems and window[-2] not in u.stems:
            e1 = window[-2]
            nx = u.phi(x)
            _close(u, e1, x)
            window[-2:] = [u.twin[x]]
            x = nx
            continue
        window.append(x)
        x = u.phi(x)
    if u.stems:
        raise NoAdmissibleTriple("stems left after two rounds")
    return _to_map(u)


# ---------------------------------------------------------------- code classes


def _traversal_order(u: UnicellularMap):
    """Items in traversal order from the root, with the first-met half of every edge."""
    x = u.root
    seq, first = [], {}
    for _ in range(len(u.twin) + len(u.stems) + 2):
        seq.append(x)
        if x not in u.stems:
            key = frozenset((x, u.twin[x]))
            first.setdefault(key, x)
        x = u.psi(x)
        if x == u.root:
            break
    return seq, first


def orientation_from_root(u: UnicellularMap) -> set[int]:
    """Tail halves: an edge is oriented toward the side it is first traversed from."""
    _, first = _traversal_order(u)
    return {u.twin[x] for x in first.values()}


def discovery_tree(u: UnicellularMap):
    """Parent item per non-root vertex and the two non-tree edges (as first-met halves)."""
    seq, _ = _traversal_order(u)
    v0 = u.vert[u.root]
    parent = {}
    special = []
    seen = {v0}
    done = set()
    for x in seq:
        if x in u.stems:
            continue
        key = frozenset((x, u.twin[x]))
        if key in done:
            continue
        done.add(key)
        w = u.head(x)
        if w in seen:
            special.append(x)
        else:
            seen.add(w)
            parent[w] = u.twin[x]
    return parent, special


def core_degrees(u: UnicellularMap) -> list[int]:
    deg = [0] * u.n
    adj = [[] for _ in range(u.n)]
    for x in u.edge_halves():
        deg[u.vert[x]] += 1
        adj[u.vert[x]].append(u.head(x))
    alive = [True] * u.n
    stack = [v for v in range(u.n) if deg[v] == 1]
    while stack:
        v = stack.pop()
        if not alive[v] or deg[v] != 1:
            continue
        alive[v] = False
        for w in adj[v]:
            if alive[w]:
                deg[w] -= 1
                deg[v] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return [deg[v] if alive[v] else 0 for v in range(u.n)]


def _gamma_u(u: UnicellularMap, walk, out: set[int]) -> int:
    total = 0
    for i in range(len(walk)):
        b = walk[i]
        back = u.twin[walk[i - 1]]
        if back == b:
            continue
        g = u.nxt[b]
        while g != back:
            total -= g in out
            g = u.nxt[g]
        g = u.nxt[back]
        while g != b:
            total += g in out
            g = u.nxt[g]
    return total


def fundamental_cycles(u: UnicellularMap) -> list[list[int]]:
    parent, special = discovery_tree(u)

    def up(v):
        path = []
        while v in parent:
            path.append(parent[v])
            v = u.head(parent[v])
        return path

    cycles = []
    for x in special:
        a, b = u.vert[x], u.head(x)
        pa, pb = up(a), up(b)
        while pa and pb and pa[-1] == pb[-1]:
            pa.pop()
            pb.pop()
        cycles.append([x] + pb + [u.twin[h] for h in reversed(pa)])
    return cycles


@dataclass
class CodeClass:
    in_ur: bool
    safe: bool
    gamma0: bool
    reasons: list[str] = field(default_factory=list)


def check_code_class(u: UnicellularMap) -> CodeClass:
    why = []
    n = u.n
    if not u.is_connected() or len(u.faces()) != 1:
        why.append("not unicellular")
    if u.num_edges != n + 1 or len(u.stems) != 2 * n - 1:
        why.append("wrong edge or stem count")
    if u.root is None:
        why.append("no root")
    if not why:
        cd = core_degrees(u)
        v0 = u.vert[u.root]
        for v in range(n):
            want = 2 - max(0, cd[v] - 2) + (v == v0)
            if sum(x in u.stems for x in u.rot[v]) != want:
                why.append(f"vertex {v} has the wrong number of stems")
                break
    in_ur = not why
    safe = False
    if in_ur:
        try:
            recover_with_root(u)
            safe = True
        except TSWError:
            why.append("closure wraps over the root")
    g0 = False
    if in_ur:
        out = orientation_from_root(u) | u.stems
        cyc = fundamental_cycles(u)
        g0 = len(cyc) == 2 and all(_gamma_u(u, c, out) == 0 for c in cyc)
        if not g0:
            why.append("gamma does not vanish on the cycles")
    return CodeClass(in_ur, safe, g0, why)


# ---------------------------------------------------------------- bit codec


@dataclass(frozen=True)
class BitCode:
    n: int
    word: str
    meta: tuple[int, ...]           # root offset, then (stem index, vertex, position) per special edge

    def ones(self) -> int:
        return self.word.count("1")


def encode_bits(u: UnicellularMap) -> BitCode:
    if u.root is None:
        raise ValueError("root needed")
    parent, special = discovery_tree(u)
    if len(special) != 2:
        raise MalformedWord("expected exactly two non-tree edges")
    # cut each special edge: the tail keeps a stem, the first-met half disappears
    cut_in = set(special)
    cut_stem = {u.twin[x] for x in special}
    stems = set(u.stems) | cut_stem
    v0 = u.vert[u.root]
    r0 = u.rot[v0]
    k = r0.index(u.root)
    s0 = next(x for x in r0[k:] + r0[:k] if x in stems)
    children = {}
    for w, p in parent.items():
        children[u.twin[p]] = w

    def ordered(v, entry):
        r = u.rot[v]
        i = r.index(entry)
        return [x for x in r[i + 1:] + r[:i] if x not in cut_in]

    bits = []
    pre = {v0: 0}
    stem_order = []
    entry_of = {v0: s0}
    stack = [(v0, iter(ordered(v0, s0)))]
    while stack:
        v, it = stack[-1]
        x = next(it, None)
        if x is None:
            stack.pop()
            if stack:
                bits.append("0")
            continue
        if x in stems:
            bits.append("0")
            stem_order.append(x)
        elif x in children:
            w = children[x]
            bits.append("1")
            pre[w] = len(pre)
            entry_of[w] = u.twin[x]
            stack.append((w, iter(ordered(w, u.twin[x]))))
        # parent half: never listed since the walk starts right after it
    if len(pre) != u.n:
        raise MalformedWord("tree does not span")
    meta = []

    def full(v):
        r = u.rot[v]
        i = r.index(entry_of[v])
        return r[i:] + r[:i]

    lr = full(v0)
    meta.append(lr.index(u.root))
    for j, x in enumerate(special):
        b = u.vert[x]
        later = set(special[j + 1:])
        lst = [y for y in full(b) if y not in later]
        meta += [stem_order.index(u.twin[x]), pre[b], lst.index(x)]
    word = "".join(bits)
    n = u.n
    if len(word) != 4 * n - 2 or word.count("1") != n - 1:
        raise MalformedWord("stem profile does not give a 4n-2 bit word")
    return BitCode(n, word, tuple(meta))


def decode_bits(code: BitCode) -> UnicellularMap:
    n, word = code.n, code.word
    if len(word) != 4 * n - 2 or word.count("1") != n - 1 or set(word) - {"0", "1"}:
        raise MalformedWord("word length or one-count does not match n")
    if len(code.meta) != 7:
        raise DanglingLocator("expected 7 metadata integers")
    nid = iter(range(1 << 30))
    twin = {}
    stems = set()
    s0 = next(nid)
    stems.add(s0)
    twin[s0] = next(nid)
    rot = [[s0]]
    nst = [0]
    stem_order = []
    stack = [0]
    for c in word:
        if not stack:
            raise MalformedWord("word continues past the root")
        v = stack[-1]
        if c == "1":
            w = len(rot)
            a, b = next(nid), next(nid)
            twin[a], twin[b] = b, a
            rot[v].append(a)
            rot.append([b])
            nst.append(0)
            stack.append(w)
        elif nst[v] < 2:
            s = next(nid)
            twin[s] = next(nid)
            stems.add(s)
            rot[v].append(s)
            nst[v] += 1
            stem_order.append(s)
        else:
            stack.pop()
    if stack != [0] or len(rot) != n or any(k != 2 for k in nst):
        raise MalformedWord("word does not describe a tree with two stems per vertex")
    root_off, meta = code.meta[0], code.meta[1:]
    for j in range(2):
        si, vb, pos = meta[3 * j:3 * j + 3]
        if not (0 <= si < len(stem_order) and 0 <= vb < n and 0 < pos <= len(rot[vb])):
            raise DanglingLocator(f"special edge {j} points outside the tree")
        s = stem_order[si]
        if s not in stems:
            raise DanglingLocator("special edge reuses a stem")
        stems.discard(s)
        twin[twin[s]] = s
        rot[vb].insert(pos, twin[s])
    if not 0 <= root_off < len(rot[0]):
        raise DanglingLocator("root offset out of range")
    u = UnicellularMap(rot, twin, stems, rot[0][root_off])
    u.tail = orientation_from_root(u)
    return u


def to_psc(code: BitCode) -> str:
    return f"psc 1 n={code.n}\n{' '.join(map(str, code.meta))}\n{code.word}\n"


def from_psc(text: str) -> BitCode:
    lines = text.splitlines()
    if len(lines) < 3 or not lines[0].startswith("psc 1 n="):
        raise FormatError("missing 'psc 1 n=<n>' header")
    try:
        n = int(lines[0].split("=", 1)[1])
        meta = tuple(int(x) for x in lines[1].split())
    except ValueError:
        raise FormatError("bad integers in header") from None
    return BitCode(n, lines[2].strip(), meta)


# ---------------------------------------------------------------- full pipeline


@dataclass
class Encoded:
    code: BitCode
    root: int
    ps: PSResult


def encode_triangulation(tri: ToroidalMap, wood=None) -> Encoded:
    from .existence import balanced_wood

    wood = wood or balanced_wood(tri)
    res, g0, _ = ps_from_wood(tri, wood)
    return Encoded(encode_bits(res.u), g0, res)


def decode_triangulation(code: BitCode) -> tuple[ToroidalMap, int]:
    """Triangulation and its root half-edge (the root angle is just before it)."""
    u = decode_bits(code)
    return _to_map_rooted(u)


def _to_map_rooted(u: UnicellularMap) -> tuple[ToroidalMap, int]:
    ids = sorted(set(u.items()) | {u.twin[s] for s in u.stems})
    new = {x: k for k, x in enumerate(ids)}
    w = UnicellularMap([[new[x] for x in r] for r in u.rot], {new[a]: new[b] for a, b in u.twin.items()},
                       {new[s] for s in u.stems}, new[u.root])
    return recover_with_root(w), w.root


def same_rooted(a: ToroidalMap, ra: int, b: ToroidalMap, rb: int) -> bool:
    return rooted_isomorphic(a, ra, b, rb)
