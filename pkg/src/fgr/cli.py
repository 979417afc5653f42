"""Command line entry point: ``fgr <command> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import graphs as G
from .analysis import (AnalysisError, explore_counterexample_classes, explore_stencil_classes,
                       is_primitive_rank2, rewrite_in_subgroup_basis)
from .category import FgrError, FgrObject, apply_functor, format_images, parse_images
from .coords import CoordinateError, verify_counterexample
from .graphs import GraphError, format_wedge
from .partition import decompose
from .solver import Problem, ScriptedPicker, SolverError, lex_picker, render_report, solve
from .words import WordError, format_word, parse_word, substitute

EXIT_OK, EXIT_NEGATIVE, EXIT_INCONCLUSIVE = 0, 1, 2
EXIT_USAGE, EXIT_DOMAIN = 64, 65

VERDICT_EXIT = {"Positive": EXIT_OK, "Negative": EXIT_NEGATIVE, "Inconclusive": EXIT_INCONCLUSIVE}
DOMAIN_ERRORS = (WordError, GraphError, FgrError, SolverError, CoordinateError, AnalysisError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _emit(doc, text: str, as_json: bool, out):
    if as_json:
        json.dump(doc, out, indent=2, ensure_ascii=False)
        out.write("\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _load_json_arg(text: str):
    p = Path(text)
    if not text.lstrip().startswith(("{", "[")) and p.exists():
        text = p.read_text()
    return json.loads(text)


def _object_arg(text: str | None, default_gens) -> FgrObject:
    if text is None:
        return FgrObject(sorted(default_gens))
    return FgrObject.from_json(_load_json_arg(text))


def _graph_arg(args) -> G.LabeledGraph:
    if args.subgroup:
        return G.subgroup_graph(G.parse_subgroup(args.subgroup))
    if args.word:
        return G.subgroup_graph([parse_word(args.word)])
    raise UsageError("need --subgroup or --word")


def _write_json_file(path, doc):
    Path(path).write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def cmd_core(args, out):
    g = _graph_arg(args)
    if args.dot:
        out.write(G.to_dot(g) + "\n")
        return EXIT_OK
    doc = G.graph_to_json(g)
    _emit(doc, json.dumps(doc, ensure_ascii=False), True, out)
    return EXIT_OK


def cmd_whitehead(args, out):
    g = _graph_arg(args)
    pairs = sorted(G.whitehead_graph(g))
    names = [format_wedge(p) for p in pairs]
    _emit({"whitehead": names}, "{" + ", ".join(names) + "}", args.json, out)
    return EXIT_OK


def cmd_apply(args, out):
    images = parse_images(args.images)
    if args.word:
        img = substitute(parse_word(args.word), images)
        _emit({"word": str(img)}, str(img), args.json, out)
        return EXIT_OK
    g = G.core(apply_functor(images, _graph_arg(args)))
    if args.dot:
        out.write(G.to_dot(g) + "\n")
        return EXIT_OK
    doc = G.graph_to_json(g)
    _emit(doc, G.describe(g), args.json, out)
    return EXIT_OK


def cmd_decompose(args, out):
    from .category import FgrMorphism

    images = parse_images(args.images)
    obj = _object_arg(args.object, images)
    d = decompose(FgrMorphism(obj, None, images).check())
    lines = [fm.describe() for fm in d.steps]
    lines.append(f"residual: {format_images(d.residual.images)}")
    lines.append(f"final object: {d.residual.domain!r}")
    _emit(d.to_json(), "\n".join(lines), args.json, out)
    return EXIT_OK


def _picker_arg(name, script=None):
    if script:
        return ScriptedPicker({k: tuple(v) for k, v in script.items()})
    if name in (None, "lex"):
        return lex_picker
    if name == "paper":
        raise UsageError("--picker paper only applies to verify-counterexample "
                         "or a problem file with a \"script\"")
    raise UsageError(f"unknown picker {name}")


def cmd_solve(args, out):
    data = _load_json_arg(args.problem)
    p = Problem.from_json(data)
    picker = _picker_arg(args.picker, data.get("script"))
    tree = solve(p, args.budget, picker, args.max_witness_len, parallel=args.parallel)
    if args.json_out:
        _write_json_file(args.json_out, tree.to_json())
    _emit(tree.to_json(), render_report(tree), args.json, out)
    return VERDICT_EXIT[tree.verdict]


def cmd_verify(args, out):
    res = verify_counterexample(args.budget, args.picker, args.table,
                                args.max_witness_len, args.parallel)
    doc = res.tree.to_json()
    doc["root_verdicts"] = res.root_verdicts()
    if args.json_out:
        _write_json_file(args.json_out, doc)
    _emit(doc, render_report(res.tree), args.json, out)
    return VERDICT_EXIT[res.verdict]


def _class_doc(ex):
    return {
        "closed": ex.closed,
        "undecided_pairs": ex.undecided,
        "classes": [{
            "label": c.label,
            "graph": [format_word(w) for w in G.fundamental_group_basis(c.graph)],
            "object": c.obj.to_json(),
            "provenance": [fm.describe() for fm in c.provenance()],
        } for c in ex.classes],
    }


def cmd_stencil(args, out):
    if args.counterexample_roots:
        ex = explore_counterexample_classes(args.budget, args.picker or "paper")
    else:
        if not args.word and not args.subgroup:
            raise UsageError("need --word, --subgroup or --counterexample-roots")
        g = _graph_arg(args)
        picker = _picker_arg(args.picker) if args.picker else lex_picker
        ex = explore_stencil_classes(g, _object_arg(args.object, g.alphabet()), args.budget, picker)
    doc = _class_doc(ex)
    lines = [f"{len(ex.classes)} maximal classes, closed={str(ex.closed).lower()}"]
    for c in doc["classes"]:
        lines.append(f"  {c['label']}: <{', '.join(c['graph'])}>")
    _emit(doc, "\n".join(lines), args.json, out)
    return EXIT_OK if ex.closed else EXIT_INCONCLUSIVE


def cmd_primitive(args, out):
    w = parse_word(args.word)
    ok = is_primitive_rank2(w)
    _emit({"word": str(w), "primitive": ok}, str(ok).lower(), args.json, out)
    return EXIT_OK


def cmd_rewrite(args, out):
    w = parse_word(args.word)
    basis = G.parse_subgroup(args.subgroup)
    r = rewrite_in_subgroup_basis(w, basis)
    text = "none" if r is None else str(r)
    _emit({"word": str(w), "rewritten": None if r is None else str(r)}, text, args.json, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fgr", description="Core graphs, FGR morphisms and surjectivity problems.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_opts(p):
        p.add_argument("--subgroup", help="generators, e.g. 'b,abA' or 'u,v;~u'")
        p.add_argument("--word")

    def common(p):
        p.add_argument("--json", action="store_true", help="machine readable output")

    p = sub.add_parser("core", help="core graph of a subgroup")
    graph_opts(p)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("whitehead", help="Whitehead graph of a core graph")
    graph_opts(p)
    common(p)
    p.set_defaults(func=cmd_whitehead)

    p = sub.add_parser("apply", help="substitute into a word, or push a graph through F_phi")
    graph_opts(p)
    p.add_argument("--images", required=True)
    p.add_argument("--dot", action="store_true")
    common(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("decompose", help="factor a morphism into folding morphisms")
    p.add_argument("--images", required=True)
    p.add_argument("--object", help="domain object as JSON text or file")
    common(p)
    p.set_defaults(func=cmd_decompose)

    def solver_opts(p):
        p.add_argument("--budget", type=int, default=2000)
        p.add_argument("--max-witness-len", type=int, default=2)
        p.add_argument("--parallel", action="store_true")
        p.add_argument("--json-out", metavar="FILE", help="also write the tree JSON to FILE")

    p = sub.add_parser("solve", help="solve a surjectivity problem file")
    p.add_argument("problem", help="problem JSON file or text")
    p.add_argument("--picker", choices=["lex", "paper"], default=None)
    solver_opts(p)
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify-counterexample", help="solve the eight counterexample cases")
    p.add_argument("--picker", choices=["paper", "lex"], default="paper")
    p.add_argument("--table", choices=["printed", "complete"], default="printed")
    solver_opts(p)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stencil-classes", help="maximal stencil spaces of a graph")
    graph_opts(p)
    p.add_argument("--object")
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--picker", choices=["paper", "lex"], default=None)
    p.add_argument("--counterexample-roots", action="store_true")
    common(p)
    p.set_defaults(func=cmd_stencil)

    p = sub.add_parser("primitive", help="rank two primitivity test")
    p.add_argument("--word", required=True)
    common(p)
    p.set_defaults(func=cmd_primitive)

    p = sub.add_parser("rewrite", help="write a word in a subgroup basis")
    p.add_argument("--word", required=True)
    p.add_argument("--subgroup", required=True)
    common(p)
    p.set_defaults(func=cmd_rewrite)
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not hasattr(args, "json"):
            args.json = False
        return args.func(args, out)
    except UsageError as e:
        err.write(str(e).rstrip("\n") + "\n")
        return EXIT_USAGE
    except (json.JSONDecodeError, OSError) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except DOMAIN_ERRORS as e:
        err.write(f"error: {e}\n")
        return EXIT_DOMAIN


def main():
    sys.exit(run())
