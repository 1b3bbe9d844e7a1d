"""Command-line front end.

Every command accepts ``--format human|records``.  Records are one line per
item of ``key=value`` fields in a fixed order, values with spaces quoted.
"""
from __future__ import annotations

import argparse
import shlex
import sys
from typing import Iterable, Optional, Sequence

from . import catalog as _catalog
from .core import is_connected, isomorphic, load_gem, format_gem
from .embedding import all_cyclic_permutations, regular_embedding, semi_equivelar_type
from .enumerator import admissibility_note, enumerate_types, gem_admissible_types
from .errors import GemError, NonNegativeChi, ParseError, VertexBoundExceeded
from .search import DEFAULT_MAX_NODES, SearchQuery, search
from .topology import Status, Surface, manifold_status, surface_of

EXIT_OK, EXIT_FAIL, EXIT_IO, EXIT_BUDGET = 0, 1, 2, 3


def _record(fields: Iterable[tuple[str, object]]) -> str:
    out = []
    for k, v in fields:
        s = str(v)
        if not s or any(ch.isspace() for ch in s) or "'" in s or '"' in s:
            s = shlex.quote(s)
        out.append(f"{k}={s}")
    return " ".join(out)


def _fmt_inv(inv) -> str:
    return ",".join(f"{{{a},{b}}}:{n}" for (a, b), n in sorted(inv.items()))


def _load(path: str, out):
    """Load a gem file; returns (gem, exit code)."""
    try:
        return load_gem(path), EXIT_OK
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror or exc}", file=sys.stderr)
        return None, EXIT_IO
    except ParseError as exc:
        where = f":{exc.line}" if exc.line else ""
        print(f"{path}{where}: ParseError: {exc}", file=sys.stderr)
        return None, EXIT_FAIL
    except GemError as exc:
        line = getattr(exc, "line", None)
        where = f":{line}" if line else ""
        print(f"{path}{where}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return None, EXIT_FAIL


# --- commands --------------------------------------------------------------

def cmd_validate(args) -> int:
    gem, code = _load(args.file, sys.stdout)
    if gem is None:
        return code
    if args.format == "records":
        print(_record([("file", args.file), ("valid", "true"), ("vertices", gem.n_vertices),
                       ("colors", gem.color_count), ("connected", str(is_connected(gem)).lower())]))
    else:
        conn = "connected" if is_connected(gem) else "disconnected"
        print(f"{args.file}: valid, {gem.n_vertices} vertices, {gem.color_count} colors, {conn}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    gem, code = _load(args.file, sys.stdout)
    if gem is None:
        return code
    if not is_connected(gem):
        print(f"{args.file}: Disconnected: analysis needs a connected graph", file=sys.stderr)
        return EXIT_FAIL
    classes = all_cyclic_permutations(gem.color_count) if args.all_embeddings else [None]
    recs = args.format == "records"
    for eps in classes:
        rep = regular_embedding(gem, eps)
        t = semi_equivelar_type(gem, eps)
        if recs:
            print(_record([("embedding", rep.permutation), ("faces", _fmt_inv(rep.face_inventory())),
                           ("V", rep.v_count), ("E", rep.e_count), ("F", rep.f_count),
                           ("chi", rep.euler_characteristic), ("orientable", str(rep.orientable).lower()),
                           ("type", t or "none")]))
        else:
            print(f"embedding {rep.permutation}: faces {_fmt_inv(rep.face_inventory())}; "
                  f"V-E+F = {rep.v_count}-{rep.e_count}+{rep.f_count} = {rep.euler_characteristic}; "
                  f"{'orientable' if rep.orientable else 'non-orientable'}; type {t or 'none'}")
    rep = regular_embedding(gem)
    t = semi_equivelar_type(gem)
    st = manifold_status(gem)
    surf = surface_of(gem) if gem.color_count == 3 else None
    if recs:
        fields = [("type", t or "none"), ("chi", rep.euler_characteristic)]
        if surf is not None:
            fields.append(("surface", surf))
        fields.append(("status", st.status.value))
        if st.witness is not None:
            w = st.witness
            fields += [("witness_colors", ",".join(map(str, w.colors))),
                       ("witness_vertices", ",".join(map(str, w.vertices))), ("witness_chi", w.chi)]
        print(_record(fields))
    else:
        parts = [f"type {t}" if t else "not semi-equivelar", f"chi={rep.euler_characteristic}"]
        if surf is not None:
            parts.append(f"surface {surf}")
        parts.append({Status.MANIFOLD: "manifold", Status.NOT_MANIFOLD: "NOT a manifold",
                      Status.UNKNOWN: "manifold status unknown"}[st.status])
        print(", ".join(parts))
        if st.witness is not None:
            w = st.witness
            print(f"  witness: residue on colors {w.colors}, vertices {list(w.vertices)}, chi={w.chi} (not a 2-sphere)")
        elif args.all_embeddings or st.status is Status.UNKNOWN:
            for line in st.trail:
                print(f"  {line}")
    return EXIT_OK


def cmd_types(args) -> int:
    try:
        if args.gems_only:
            cands = gem_admissible_types(args.chi, args.allow_2_gons)
        else:
            cands = enumerate_types(args.chi, args.allow_2_gons)
    except NonNegativeChi as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    for c in cands:
        for t in c.cyclic_expansions:
            if args.format == "records":
                print(_record([("type", t), ("rank", c.rank), ("p", c.p), ("multiset", c.multiset),
                               ("gem", admissibility_note(c, args.chi).replace(" ", "_"))]))
            else:
                print(t)
    return EXIT_OK


def cmd_catalog(args) -> int:
    try:
        reports = _catalog.verify_catalog(names=[args.entry] if args.entry else None)
    except (OSError, GemError, ValueError) as exc:
        print(f"error: catalog failed to load: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.entry and not reports:
        print(f"error: no catalog entry named {args.entry!r}", file=sys.stderr)
        return EXIT_FAIL
    for r in reports:
        if args.format == "records":
            for c in r.checks:
                print(_record([("entry", c.entry), ("check", c.check),
                               ("result", "pass" if c.passed else "fail"), ("witness", c.witness)]))
        else:
            print(r.table())
    failed = [r for r in reports if not r.passed]
    for r in failed:
        c = r.first_failure
        print(f"{r.entry}: {c.check} mismatch: {c.witness}", file=sys.stderr)
    if args.format != "records":
        print(f"{len(reports) - len(failed)}/{len(reports)} entries verified")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_search(args) -> int:
    from .embedding import SeType
    try:
        target = SeType.parse(args.type)
        surf = Surface.parse(args.surface) if args.surface else None
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    q = SearchQuery(target, require_gem=args.gems_only, require_surface=surf,
                    color_mode="fixed" if args.fix_colors else "permutable",
                    max_nodes=args.budget, force=args.force)
    try:
        res = search(q)
    except VertexBoundExceeded as exc:
        print(f"warning: {exc}; not searched", file=sys.stderr)
        _summary(args, target, [], False, 0, {})
        return EXIT_BUDGET
    for i, h in enumerate(res.hits, 1):
        g = h.gem
        name = f"hit{i}"
        note = "gem" if h.status is Status.MANIFOLD else (
            "not a gem" if h.status is Status.NOT_MANIFOLD else "manifold status unknown")
        if args.format == "records":
            print(_record([("hit", i), ("status", h.status.value), ("surface", h.surface or "none"),
                           ("gem", format_gem(g, name).strip().replace("\n", "; "))]))
        else:
            print(f"# {name}: {note}" + (f", surface {h.surface}" if h.surface else ""))
            print(format_gem(g, name), end="")
    _summary(args, target, res.hits, res.exhausted, res.nodes, res.prunes)
    return EXIT_OK if res.exhausted else EXIT_BUDGET


def _summary(args, target, hits, exhausted, nodes, prunes):
    if args.format == "records":
        print(_record([("type", target), ("found", len(hits)), ("exhausted", str(exhausted).lower()),
                       ("nodes", nodes)] + sorted(prunes.items())))
    else:
        pr = ", ".join(f"{k}={v}" for k, v in sorted(prunes.items()))
        print(f"# {target}: {len(hits)} found, {'exhaustive' if exhausted else 'INCOMPLETE (budget)'}, "
              f"{nodes} nodes" + (f"; {pr}" if pr else ""))


def cmd_iso(args) -> int:
    g1, c1 = _load(args.file1, sys.stdout)
    if g1 is None:
        return c1
    g2, c2 = _load(args.file2, sys.stdout)
    if g2 is None:
        return c2
    iso = isomorphic(g1, g2, "fixed" if args.fix_colors else "permutable")
    if args.format == "records":
        fields = [("isomorphic", str(iso is not None).lower())]
        if iso:
            fields += [("colors", ",".join(map(str, iso.color_map))),
                       ("vertices", ",".join(f"{u}:{v}" for u, v in sorted(iso.vertex_map.items())))]
        print(_record(fields))
    elif iso:
        print("isomorphic")
        print("  colors: " + " ".join(f"{c}->{d}" for c, d in enumerate(iso.color_map)))
        print("  vertices: " + " ".join(f"{u}->{v}" for u, v in sorted(iso.vertex_map.items())))
    else:
        print("not isomorphic")
    return EXIT_OK if iso else EXIT_FAIL


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["human", "records"], default=argparse.SUPPRESS,
                     help="output style (default human)")
    p = argparse.ArgumentParser(prog="semigem", parents=[fmt],
                                description="Semi-equivelar colored graphs and their regular embeddings.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[fmt], help="check that a gem file is well formed")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", parents=[fmt], help="embeddings, type, surface and manifold status")
    s.add_argument("file")
    s.add_argument("--all-embeddings", action="store_true", help="report every cyclic color order")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("types", parents=[fmt], help="list candidate types for a negative Euler characteristic")
    s.add_argument("--chi", type=int, required=True)
    s.add_argument("--gems-only", action="store_true", help="drop ranks no gem can realize")
    s.add_argument("--allow-2-gons", action="store_true", help="admit faces of length 2")
    s.set_defaults(func=cmd_types)

    s = sub.add_parser("catalog", parents=[fmt], help="bundled figure gems")
    csub = s.add_subparsers(dest="action", required=True)
    v = csub.add_parser("verify", parents=[fmt], help="verify catalog entries")
    v.add_argument("--entry", help="verify a single entry, e.g. fig7")
    v.set_defaults(func=cmd_catalog)

    s = sub.add_parser("search", parents=[fmt], help="exhaustive search for graphs of one type")
    s.add_argument("--type", required=True, help='e.g. "[(8^3);8]"')
    s.add_argument("--gems-only", action="store_true")
    s.add_argument("--surface", help='e.g. "#3RP2", "S_2"')
    s.add_argument("--budget", type=_positive, default=DEFAULT_MAX_NODES, help="maximum search nodes")
    s.add_argument("--force", action="store_true", help="ignore the vertex-count bound")
    s.add_argument("--fix-colors", action="store_true", help="do not identify graphs that differ by recoloring")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("iso", parents=[fmt], help="test two gem files for isomorphism")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--fix-colors", action="store_true", help="require the identity on colors")
    s.set_defaults(func=cmd_iso)
    return p


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if not hasattr(args, "format"):
        args.format = "human"
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
