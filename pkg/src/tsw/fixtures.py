"""Small named toroidal maps used by tests and the CLI."""

from __future__ import annotations

from .torus_map import ToroidalMap, build_map


def three_loops() -> ToroidalMap:
    """One vertex, three loops in ccw order a+ b+ c+ a- b- c-."""
    return build_map([[0, 1, 2, 3, 4, 5]], [(0, 3), (1, 4), (2, 5)])


def two_loops() -> ToroidalMap:
    """One vertex, two loops a+ b+ a- b-; a single quadrangle."""
    return build_map([[0, 1, 2, 3]], [(0, 2), (1, 3)])


def brick() -> ToroidalMap:
    """Two vertices joined by three edges; one hexagonal face."""
    return build_map([[0, 1, 2], [3, 4, 5]], [(0, 3), (1, 4), (2, 5)])


def basic(k: int) -> ToroidalMap:
    """Horizontal cycle on k vertices plus one vertical loop per vertex."""
    if k < 1:
        raise ValueError("k must be at least 1")
    rots = [[4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3] for i in range(k)]
    pairs = [(4 * i, 4 * ((i + 1) % k) + 2) for i in range(k)]
    pairs += [(4 * i + 1, 4 * i + 3) for i in range(k)]
    return build_map(rots, pairs)


def k7() -> ToroidalMap:
    """Complete graph on 7 vertices; rotation at v is v+1, v+3, v+2, v-1, v-3, v-2."""
    steps = [1, 3, 2, 6, 4, 5]

    def hid(v, w):
        return 6 * v + steps.index((w - v) % 7)

    rots = [[hid(v, (v + s) % 7) for s in steps] for v in range(7)]
    pairs = [(hid(v, w), hid(w, v)) for v in range(7) for w in range(v + 1, 7)]
    return build_map(rots, pairs)


def grid(a: int, b: int = 1) -> ToroidalMap:
    """Triangulated a x b grid on the torus (edge vectors (1,0), (1,1), (0,1)).

    ``grid(3)`` is the 3-vertex, 6-face triangulation whose Schnyder woods
    split into a 20-element balanced class and two rigid unbalanced ones.
    """
    def vid(x, y):
        return (x % a) * b + (y % b)

    dirs = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
    rots = [[6 * vid(x, y) + i for i in range(6)] for x in range(a) for y in range(b)]
    pairs = []
    for x in range(a):
        for y in range(b):
            for i in range(3):
                dx, dy = dirs[i]
                pairs.append((6 * vid(x, y) + i, 6 * vid(x + dx, y + dy) + i + 3))
    return build_map(rots, pairs)


FIXTURES = {
    "three-loops": three_loops,
    "two-loops": two_loops,
    "brick": brick,
    "k7": k7,
    "grid3": lambda: grid(3),
}


def get_fixture(name: str) -> ToroidalMap:
    if name in FIXTURES:
        return FIXTURES[name]()
    if name.startswith("basic-"):
        return basic(int(name.split("-", 1)[1]))
    if name.startswith("grid-"):
        a, _, b = name.split("-", 1)[1].partition("x")
        return grid(int(a), int(b or 1))
    raise KeyError(f"unknown fixture {name!r}")
