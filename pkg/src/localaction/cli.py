"""The ``lad`` command line tool.

Exit codes: 0 success, 1 a domain-level negative result (invalid diagram,
no isomorphism, failed check), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import classify as _classify
from .constructors import box_product, burger_mozes, from_pair
from .correspondence import recompute_lad
from .deltatree import ball_group, build_ball, independence_report
from .diagram import DiagramError, LocalActionDiagram, dumps, loads, validate
from .export import export_dot
from .isomorphism import iso
from .library import EXAMPLES, example
from .perm import FinitePermGroup, PermError
from .properties import property_report
from .scopo import cotree_scopo, scopo_features, scopos, smallest_cotree


class UsageError(Exception):
    pass


def _emit(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _load(path: str) -> LocalActionDiagram:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def _load_valid(path: str) -> LocalActionDiagram:
    d = _load(path)
    report = validate(d)
    if not report.ok:
        raise UsageError(f"{path} is not a valid diagram:\n{report}")
    return d


def _group(domain: str, gens: Sequence[str] | None) -> FinitePermGroup:
    points = [p for p in domain.replace(",", " ").split() if p]
    return FinitePermGroup.from_cycles(points, gens or [])


def _root(d: LocalActionDiagram, root: str | None) -> str:
    if root is None:
        return d.vertices[0]
    if root not in d.actions:
        raise UsageError(f"unknown vertex {root!r}")
    return root


# -- commands ------------------------------------------------------------------


def cmd_validate(args) -> tuple[int, str]:
    report = validate(_load(args.file))
    if args.format == "json":
        return (0 if report.ok else 1), _emit({"ok": report.ok, "violations": list(report.violations)})
    return (0 if report.ok else 1), str(report) + "\n"


def cmd_iso(args) -> tuple[int, str]:
    d1, d2 = _load_valid(args.first), _load_valid(args.second)
    found = iso(d1, d2)
    if found is None:
        return 1, ("not isomorphic\n" if args.format == "text" else _emit({"isomorphic": False}))
    if args.format == "text":
        lines = ["isomorphic"]
        lines += [f"vertex {v} -> {w}" for v, w in sorted(found.vertex_map.items())]
        lines += [f"arc {a} -> {b}" for a, b in sorted(found.arc_map.items())]
        return 0, "\n".join(lines) + "\n"
    return 0, _emit({"isomorphic": True, "witness": found.to_json_obj()})


def cmd_make(args) -> tuple[int, str]:
    if args.kind == "bm":
        d = burger_mozes(_group(args.domain, args.gen))
    elif args.kind == "pair":
        pairing = [int(x) for x in args.pairing.replace(",", " ").split()] if args.pairing else {}
        d = from_pair(_group(args.domain, args.gen), pairing)
    else:
        if not args.domain2:
            raise UsageError("make box needs --domain2")
        d = box_product(_group(args.domain, args.gen), _group(args.domain2, args.gen2))
    text = export_dot(d) if args.format == "dot" else dumps(d)
    return _write_or_print(args, text)


def _write_or_print(args, text: str) -> tuple[int, str]:
    if getattr(args, "out", None):
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc.strerror}") from None
        return 0, ""
    return 0, text


def cmd_scopos(args) -> tuple[int, str]:
    d = _load_valid(args.file)
    found = [sorted(s) for s in scopos(d)]
    feats = scopo_features(d)
    if args.format == "json":
        return 0, _emit({"scopos": found, "features": feats.to_json_obj()})
    lines = ["{" + ", ".join(s) + "}" for s in found]
    lines.append(f"stray leaves: {', '.join(feats.stray_leaves) or 'none'}")
    lines.append(f"focal cycle: {'yes' if feats.is_focal_cycle else 'no'}")
    lines.append(f"stray half-trees: {', '.join(feats.stray_half_trees) or 'none'}")
    lines.append("horocyclic ends: none")
    return 0, "\n".join(lines) + "\n"


def cmd_props(args) -> tuple[int, str]:
    report = property_report(_load_valid(args.file))
    if args.format == "json":
        return 0, _emit(report.to_json_obj())
    return 0, report.to_text() + "\n"


def cmd_cotree(args) -> tuple[int, str]:
    d = _load_valid(args.file)
    c = smallest_cotree(d)
    scopo = sorted(cotree_scopo(d, c))
    if args.format == "json":
        obj = c.to_json_obj()
        obj["scopo"] = scopo
        return 0, _emit(obj)
    lines = [f"cotree: {', '.join(sorted(c.vertices))}", f"scopo: {{{', '.join(scopo)}}}"]
    lines += [f"path from {v}: {' '.join(p)}" for v, p in sorted(c.projecting_paths.items())]
    return 0, "\n".join(lines) + "\n"


def cmd_tree(args) -> tuple[int, str]:
    d = _load_valid(args.file)
    ball = build_ball(d, _root(d, args.root), args.radius)
    if args.format == "dot":
        return 0, export_dot(ball)
    if args.format == "json":
        return 0, _emit(ball.to_json_obj())
    lines = [f"{len(ball)} vertices"]
    lines += ["  " * ball.depth(x) + ("." + "/".join(ball.labels[x]) if ball.labels[x] else "root") + f" [{ball.pi[x]}]"
              for x in range(len(ball))]
    return 0, "\n".join(lines) + "\n"


def cmd_ballgroup(args) -> tuple[int, str]:
    d = _load_valid(args.file)
    bg = ball_group(d, _root(d, args.root), args.radius)
    if args.format == "json":
        return 0, _emit(bg.to_json_obj())
    return 0, f"ball vertices: {len(bg.ball)}\norder: {bg.order}\ngenerators: {len(bg.generators)}\n"


def cmd_check_p(args) -> tuple[int, str]:
    d = _load_valid(args.file)
    arcs = [args.edge] if args.edge else sorted(d.arcs)
    if args.edge and args.edge not in d.arcs:
        raise UsageError(f"unknown arc {args.edge!r}")
    results = [independence_report(d, a, args.radius) for a in arcs]
    ok = all(r.holds for r in results)
    if args.format == "json":
        return (0 if ok else 1), _emit([r.to_json_obj() for r in results])
    lines = [
        f"{r.arc}: {'independent' if r.holds else 'NOT independent'} "
        f"({r.stabilizer_order} vs {r.near_order} x {r.far_order})"
        for r in results
    ]
    return (0 if ok else 1), "\n".join(lines) + "\n"


def cmd_roundtrip(args) -> tuple[int, str]:
    d = _load_valid(args.file)
    res = recompute_lad(d, args.radius_given)
    if args.format == "json":
        obj = res.to_json_obj()
        obj["diagram"] = json.loads(dumps(res.diagram))
        return (0 if res.isomorphic else 1), _emit(obj)
    verdict = "isomorphic to the input" if res.isomorphic else "NOT isomorphic to the input"
    text = f"radius {res.radius}: recovered {len(res.diagram.vertices)} vertices, {len(res.diagram.arcs)} arcs, {verdict}\n"
    return (0 if res.isomorphic else 1), text


def cmd_classify(args) -> tuple[int, str]:
    if args.degree is None:
        raise UsageError("classify needs --degree")
    if not args.out:
        raise UsageError("classify needs --out")
    try:
        summary = _classify.catalog(args.degree, args.out, jobs=args.jobs)
    except OSError as exc:
        raise UsageError(f"cannot write to {args.out}: {exc.strerror}") from None
    if args.format == "json":
        return 0, _emit(summary)
    lines = [f"degree {summary['degree']}: {summary['count']} classes"]
    for c in summary["classes"]:
        lines.append(
            f"class{c['id']}: |H|={c['subgroup_order']} orbits={c['orbit_sizes']} pairing={c['pairing']}"
            f"{' burger-mozes' if c['burger_mozes'] else ''}"
        )
    return 0, "\n".join(lines) + "\n"


def cmd_examples(args) -> tuple[int, str]:
    if not args.out:
        return 0, "\n".join(EXAMPLES) + "\n"
    folder = Path(args.out)
    try:
        folder.mkdir(parents=True, exist_ok=True)
        for name in EXAMPLES:
            (folder / f"{name}.lad.json").write_text(dumps(example(name)), encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write to {args.out}: {exc.strerror}") from None
    return 0, ""


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lad", description="Local action diagrams and their universal groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str, file: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        if file:
            p.add_argument("file")
        p.add_argument("--format", choices=["json", "dot", "text"], default="text")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the diagram invariants")
    p = add("iso", cmd_iso, "decide isomorphism of two diagrams", file=False)
    p.add_argument("first")
    p.add_argument("second")

    p = add("make", cmd_make, "build a diagram from permutation groups", file=False)
    p.add_argument("kind", choices=["bm", "box", "pair"])
    p.add_argument("--domain", required=True, help="points of the (first) group, comma or space separated")
    p.add_argument("--gen", action="append", help="generator in cycle notation; repeatable")
    p.add_argument("--domain2", help="points of the second box factor")
    p.add_argument("--gen2", action="append", help="generator of the second box factor; repeatable")
    p.add_argument("--pairing", help="orbit involution as a list of orbit indices, e.g. 1,0")
    p.add_argument("--out")

    add("scopos", cmd_scopos, "list all scopos and their shapes")
    add("props", cmd_props, "property report")
    add("cotree", cmd_cotree, "smallest cotree and its scopo")
    for name, func, help in (
        ("tree", cmd_tree, "build a ball of the Δ-tree"),
        ("ballgroup", cmd_ballgroup, "order of the root-fixing ball group"),
        ("check-p", cmd_check_p, "check edge independence on a ball"),
    ):
        p = add(name, func, help)
        p.add_argument("--root")
        p.add_argument("--radius", type=int, default=2)
        if name == "check-p":
            p.add_argument("--edge")
    p = add("roundtrip", cmd_roundtrip, "recover the diagram from the ball action")
    p.add_argument("--radius", type=int, dest="radius_given", help="default: diameter + 2")

    p = add("classify", cmd_classify, "classify vertex-transitive actions of degree d", file=False)
    p.add_argument("--degree", type=int)
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)

    p = add("examples", cmd_examples, "list or write the bundled diagrams", file=False)
    p.add_argument("--out")
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, text = args.func(args)
    except (UsageError, DiagramError, PermError, ValueError) as exc:
        print(f"lad: {exc}", file=stderr)
        return 2
    stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
