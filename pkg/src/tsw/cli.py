"""Command-line driver.

Documents are plain text and can be concatenated on one stream, so that
commands pipe into each other: a map (``tmap 1``), then optionally a wood
(``wood 1``), an orientation (``ornt 1``), a code (``psc 1``) or a drawing
(``draw 1``).
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from . import __version__
from .errors import FormatError, TSWError
from .torus_map import ToroidalMap, essentially_3connected, forbidden_configs, from_tmap, to_tmap

HEADERS = ("tmap", "wood", "ornt", "psc", "draw")


def split_docs(text: str) -> dict[str, str]:
    docs: dict[str, list[str]] = {}
    cur = None
    for ln in text.splitlines():
        word = ln.split(" ", 1)[0] if ln.strip() else ""
        if word in HEADERS and ln.split()[1:2] == ["1"]:
            cur = word
            if cur in docs:
                raise FormatError(f"two {cur!r} documents on one stream")
            docs[cur] = []
        if cur is None:
            if ln.strip() and not ln.startswith("#"):
                raise FormatError(f"text before the first document: {ln!r}")
            continue
        docs[cur].append(ln)
    return {k: "\n".join(v) + "\n" for k, v in docs.items()}


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


class Stream:
    def __init__(self, text: str):
        self.docs = split_docs(text)
        self._map = None

    def need(self, kind: str) -> str:
        if kind not in self.docs:
            raise FormatError(f"input has no {kind!r} document")
        return self.docs[kind]

    @property
    def map(self) -> ToroidalMap:
        if self._map is None:
            self._map = from_tmap(self.need("tmap"))
        return self._map

    def wood(self):
        from .schnyder import from_wood

        return from_wood(self.need("wood"), self.map)

    def orientation(self):
        from .orient_lattice import from_ornt

        if "ornt" in self.docs:
            return from_ornt(self.docs["ornt"], self.map)
        if "wood" in self.docs:
            return self.wood().one_way_orientation()
        raise FormatError("input has neither an orientation nor a wood")


# ---------------------------------------------------------------- commands


def cmd_validate(a) -> int:
    s = Stream(_read(a.input))
    m = s.map
    out = [f"n={m.n} m={m.m} f={m.f} euler={m.euler}", f"triangulation: {m.is_triangulation()}"]
    fc = forbidden_configs(m)
    out.append(f"contractible loops: {len(fc.contractible_loops)}")
    out.append(f"homotopic multiple edges: {len(fc.homotopic_pairs)}")
    out.append(f"separating triangles: {len(fc.separating_triangles)}")
    if m.num_half <= 60:
        out.append(f"essentially 3-connected: {essentially_3connected(m)}")
    status = 0
    if "wood" in s.docs:
        from .schnyder import validate

        rep = validate(s.wood())
        out.append(f"wood: {'clean' if rep.clean else 'violations'}")
        for v in rep.vertex_violations + rep.edge_violations + rep.face_violations:
            out.append(f"  {v}")
        status = 0 if rep.clean else 1
    _write("\n".join(out) + "\n", a.output)
    return status


def cmd_schnyder(a) -> int:
    from .schnyder import dual_wood, mono_cycles, to_wood, validate

    s = Stream(_read(a.input))
    if a.action == "build":
        from .existence import balanced_wood, to_crossing, to_half_crossing

        w = balanced_wood(s.map)
        if a.kind in ("half-crossing", "crossing"):
            w = to_half_crossing(w.one_way_orientation())
        if a.kind == "crossing":
            w = to_crossing(w)
        _write(to_tmap(s.map) + to_wood(w), a.output)
        return 0
    w = s.wood()
    if a.action == "dual":
        d = dual_wood(w)
        _write(to_tmap(d.carrier) + to_wood(d), a.output)
        return 0
    from .orient_lattice import orientation_type
    from .torus_map import completion
    from .schnyder import completion_orientation

    rep = validate(w)
    cm = completion(s.map)
    tp = orientation_type(cm, completion_orientation(w, cm))
    cyc = mono_cycles(w)
    types = [w.edge_type(e) for e in range(s.map.m)]
    out = [
        f"valid: {rep.clean}",
        f"edge types: 0:{types.count(0)} 1:{types.count(1)} 2:{types.count(2)}",
        f"type: ({tp.gamma_b1},{tp.gamma_b2}) balanced: {tp.balanced}",
        f"cycles per color: {[len(c) for c in cyc.cycles]}",
        f"classes: {[c[0] for c in cyc.classes]}",
        f"omega: {cyc.omega}",
        f"kind: {cyc.tag}",
    ]
    _write("\n".join(out) + "\n", a.output)
    return 0 if rep.clean else 1


def cmd_lattice(a) -> int:
    from .orient_lattice import hasse, minimize, to_ornt

    s = Stream(_read(a.input))
    if a.action == "enumerate":
        from .orient_lattice import enumerate_3orientations, group_homologous, orientation_type_tri

        if not s.map.is_triangulation():
            raise FormatError("enumerate works on triangulations")
        allo = enumerate_3orientations(s.map)
        groups = group_homologous(allo)
        out = [f"3-orientations: {len(allo)}", f"homology classes: {len(groups)}"]
        for g in groups:
            tp = orientation_type_tri(g[0])
            out.append(f"  type ({tp.gamma_b1},{tp.gamma_b2}): {len(g)}")
        _write("\n".join(out) + "\n", a.output)
        return 0
    d = s.orientation()
    if a.action == "min":
        _write(to_tmap(s.map) + to_ornt(minimize(d, a.f0)), a.output)
        return 0
    H = hasse(d, a.f0)
    out = [
        f"nodes: {len(H.nodes)}",
        f"cover relations: {len(H.edges)}",
        f"sources: {len(H.sources())} sinks: {len(H.sinks())}",
        f"connected: {H.is_connected()} acyclic: {H.is_acyclic()} labels: {H.check_labels()}",
    ]
    _write("\n".join(out) + "\n", a.output)
    return 0


def cmd_encode(a) -> int:
    from .ps_codec import encode_triangulation, to_psc

    s = Stream(_read(a.input))
    wood = s.wood() if "wood" in s.docs else None
    enc = encode_triangulation(s.map, wood)
    _write(to_psc(enc.code), a.output)
    return 0


def cmd_decode(a) -> int:
    from .ps_codec import decode_triangulation, from_psc

    s = Stream(_read(a.input))
    m, root = decode_triangulation(from_psc(s.need("psc")))
    _write(f"# root {root}\n" + to_tmap(m), a.output)
    return 0


def audit(seed: int, count: int, max_n: int, log=None) -> list[str]:
    """Run the construction, encoding and drawing pipeline on random triangulations."""
    from .existence import balanced_wood, random_triangulation, to_crossing, to_half_crossing
    from .flat_draw import embed, validate_drawing
    from .ps_codec import (complete_closure, decode_bits, decode_triangulation, encode_bits, ps_from_wood,
                           recover_with_root, recover_without_root, same_rooted)
    from .schnyder import mono_cycles, validate

    rng = random.Random(seed)
    fails = []
    for k in range(count):
        n = rng.randint(1, max_n)
        m = random_triangulation(n, rng)
        tag = f"#{k} n={n}"
        try:
            w = balanced_wood(m)
            if not validate(w).clean:
                fails.append(f"{tag}: balanced wood invalid")
                continue
            res, g0, _ = ps_from_wood(m, w)
            if not (res.spanning and res.hamiltonian and res.unicellular):
                fails.append(f"{tag}: PS output is not a unicellular spanning map")
            for name, mm in (("closure", complete_closure(res.u.copy(), random.Random(k))),
                             ("with-root", recover_with_root(res.u.copy())),
                             ("without-root", recover_without_root(res.u.copy()))):
                if mm.nxt != m.nxt or mm.twin != m.twin:
                    fails.append(f"{tag}: {name} does not rebuild the map")
            code = encode_bits(res.u)
            if encode_bits(decode_bits(code)) != code:
                fails.append(f"{tag}: bit code does not round-trip")
            dm, droot = decode_triangulation(code)
            if not same_rooted(m, g0, dm, droot):
                fails.append(f"{tag}: decoded map differs")
            c = to_crossing(to_half_crossing(w.one_way_orientation()))
            rep = mono_cycles(c)
            if rep.tag != "crossing" or min(rep.omega) < 1:
                fails.append(f"{tag}: crossing construction gave {rep.tag}")
                continue
            if not validate_drawing(embed(c, "straight"), 1).ok:
                fails.append(f"{tag}: straight-line drawing check failed")
        except TSWError as exc:
            fails.append(f"{tag}: {type(exc).__name__}: {exc}")
        if log:
            log(f"{tag} done")
    return fails


def cmd_audit(a) -> int:
    t = time.time()
    fails = audit(a.seed, a.count, a.max_n)
    out = fails + [f"audit: {a.count - len({f.split(':')[0] for f in fails})}/{a.count} passed in {time.time() - t:.1f}s"]
    _write("\n".join(out) + "\n", a.output)
    return 1 if fails else 0


def cmd_draw(a) -> int:
    from .flat_draw import embed, emit_drawing, to_draw
    from .schnyder import to_wood

    s = Stream(_read(a.input))
    w = s.wood()
    d = embed(w, a.mode, a.n_param, a.projection)
    if a.format == "svg":
        _write(emit_drawing(d, a.tiles), a.output)
    else:
        _write(to_tmap(s.map) + to_wood(w) + to_draw(d), a.output)
    return 0


def cmd_check_draw(a) -> int:
    from .flat_draw import from_draw, validate_drawing

    s = Stream(_read(a.input))
    w = s.wood() if "wood" in s.docs else None
    d = from_draw(s.need("draw"), s.map, w)
    rep = validate_drawing(d, a.tiles)
    _write("\n".join(rep.lines()) + "\n", a.output)
    return 0 if rep.ok else 1


def cmd_gen(a) -> int:
    from .existence import random_triangulation

    m = random_triangulation(a.n, random.Random(a.seed))
    _write(to_tmap(m), a.output)
    return 0


def cmd_fixtures(a) -> int:
    from .fixtures import FIXTURES, get_fixture

    if a.action == "list":
        _write("\n".join(list(FIXTURES) + ["basic-<k>", "grid-<a>x<b>"]) + "\n", a.output)
        return 0
    try:
        m = get_fixture(a.name)
    except (KeyError, ValueError) as exc:
        raise FormatError(str(exc)) from None
    _write(to_tmap(m), a.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tsw", description="Toroidal Schnyder woods toolkit")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    def io(q, inp=True):
        if inp:
            q.add_argument("input", nargs="?", default="-")
        q.add_argument("-o", "--output", default="-")

    q = sub.add_parser("validate", help="check a map (and a wood if present)")
    io(q)
    q.set_defaults(func=cmd_validate)

    q = sub.add_parser("schnyder", help="build, classify or dualize woods")
    q.add_argument("action", choices=["build", "classify", "dual"])
    g = q.add_mutually_exclusive_group()
    g.add_argument("--balanced", dest="kind", action="store_const", const="balanced")
    g.add_argument("--half-crossing", dest="kind", action="store_const", const="half-crossing")
    g.add_argument("--crossing", dest="kind", action="store_const", const="crossing")
    q.set_defaults(kind="crossing")
    io(q)
    q.set_defaults(func=cmd_schnyder)

    q = sub.add_parser("lattice", help="orientation lattice tools")
    q.add_argument("action", choices=["min", "hasse", "enumerate"])
    q.add_argument("--f0", type=int, default=0)
    io(q)
    q.set_defaults(func=cmd_lattice)

    q = sub.add_parser("encode", help="encode a triangulation as a bit word")
    io(q)
    q.set_defaults(func=cmd_encode)
    q = sub.add_parser("decode", help="decode a bit word")
    io(q)
    q.set_defaults(func=cmd_decode)

    q = sub.add_parser("audit", help="run the full pipeline on random triangulations")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--count", type=int, default=20)
    q.add_argument("--max-n", type=int, default=12)
    io(q, inp=False)
    q.set_defaults(func=cmd_audit)

    q = sub.add_parser("draw", help="periodic drawing from a crossing wood")
    q.add_argument("--mode", choices=["straight", "geodesic"], default="straight")
    q.add_argument("--n-param", type=int, default=None, help="override N")
    q.add_argument("--projection", choices=["plane", "xy", "yz", "zx"], default="plane")
    q.add_argument("--format", choices=["draw", "svg"], default="draw")
    q.add_argument("--tiles", type=int, default=1)
    io(q)
    q.set_defaults(func=cmd_draw)

    q = sub.add_parser("check-draw", help="validate a drawing")
    q.add_argument("--tiles", type=int, default=1, help="patch radius")
    io(q)
    q.set_defaults(func=cmd_check_draw)

    q = sub.add_parser("gen", help="random toroidal triangulation")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    io(q, inp=False)
    q.set_defaults(func=cmd_gen)

    q = sub.add_parser("fixtures", help="built-in maps")
    q.add_argument("action", choices=["export", "list"])
    q.add_argument("name", nargs="?", default="k7")
    io(q, inp=False)
    q.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    p = build_parser()
    args, rest = p.parse_known_args(argv)
    # argparse drops an optional positional that follows a flag ("build --crossing FILE")
    if len(rest) == 1 and not rest[0].startswith("-") and getattr(args, "input", None) == "-":
        args.input = rest[0]
    elif rest:
        p.error("unrecognized arguments: " + " ".join(rest))
    try:
        return args.func(args)
    except TSWError as exc:
        print(f"tsw: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"tsw: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
