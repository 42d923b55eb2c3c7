"""Command line front end.

Exit codes: 0 success, 1 invalid input, 2 classification not confirmed or a
selftest failure, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .algebra import Algebra
from .flor import block_display, flor_decompose, parse_matrix_file
from .modules import injective_module, is_isomorphic, is_self_injective, loewy_report, projective_module
from .search import BudgetExceeded, SearchBounds, check_candidate, classify, run_search
from .selftest import data_dir, run_selftest
from .tree import emit_tree_spec, parse_tree_spec
from .twocat import cell_rep_matrices, cells

SCHEMA_VERSION = 1

EXIT_OK, EXIT_INPUT, EXIT_THEOREM, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def resolve_input(path: str) -> Path:
    """An existing path, or the name of a bundled fixture (``examples/`` prefixes are ignored)."""
    p = Path(path)
    if p.exists():
        return p
    bundled = data_dir() / p.name
    if bundled.exists():
        return bundled
    raise FileNotFoundError(f"no such file or bundled fixture: {path}")


def load_algebra(path: str) -> Algebra:
    return Algebra(parse_tree_spec(resolve_input(path).read_text()))


def _matrix(a) -> list[list[int]]:
    return np.asarray(a).tolist()


def _fmt_matrix(a) -> str:
    rows = [[str(x) for x in row] for row in np.asarray(a).tolist()]
    width = max((len(x) for row in rows for x in row), default=1)
    return "\n".join("  " + " ".join(x.rjust(width) for x in row) for row in rows)


def _instance_doc(alg: Algebra) -> dict:
    inst = alg.instance
    return {"n": inst.n, "edges": [list(e) for e in inst.edges], "S": sorted(inst.special)}


# each handler returns (document, text, exit code)


def cmd_algebra(args):
    alg = load_algebra(args.input)
    doc = {
        "instance": _instance_doc(alg),
        "dim": alg.dim,
        "basis": [b.label() for b in alg.basis],
        "relations": len(alg.relations()),
        "nonzero_products": len(alg.mult_table()),
        "associative": alg.check_associativity(),
        "self_injective": is_self_injective(alg),
    }
    text = [emit_tree_spec(alg.instance).rstrip(), f"dim A = {alg.dim}",
            "basis: " + " ".join(doc["basis"]),
            f"associative: {doc['associative']}", f"self-injective: {doc['self_injective']}"]
    return doc, "\n".join(text), EXIT_OK


def cmd_cartan(args):
    alg = load_algebra(args.input)
    c = alg.cartan_matrix()
    return {"instance": _instance_doc(alg), "cartan": _matrix(c)}, "Cartan matrix:\n" + _fmt_matrix(c), EXIT_OK


def cmd_projectives(args):
    alg = load_algebra(args.input)
    injectives = [injective_module(alg, j) for j in range(1, alg.n + 1)]
    out, text = [], []
    for i in range(1, alg.n + 1):
        p = projective_module(alg, i)
        rep = loewy_report(p)
        inj = any(is_isomorphic(p, q) for q in injectives if q.dim_vector == p.dim_vector)
        out.append({"vertex": i, "dim": p.dim, "dim_vector": list(p.dim_vector),
                    "injective": inj, "loewy": rep.as_dict()})
        layers = " | ".join(" ".join(f"L{v}" if c == 1 else f"{c}L{v}" for v, c in sorted(layer.items()))
                            for layer in rep.layers)
        text.append(f"P{i}: dim {p.dim}, Loewy length {rep.loewy_length}, layers {layers}, "
                    f"socle {sorted(rep.socle)}, injective {inj}")
    return {"instance": _instance_doc(alg), "projectives": out}, "\n".join(text), EXIT_OK


def cmd_cells(args):
    alg = load_algebra(args.input)
    cs = cells(alg)
    text = [f"two-sided cells: {cs.two_sided_cells}", f"left cells: {cs.left_cells}",
            f"right cells: {cs.right_cells}"]
    return {"instance": _instance_doc(alg), **cs.as_dict()}, "\n".join(text), EXIT_OK


def cmd_cellmatrices(args):
    alg = load_algebra(args.input)
    mats = cell_rep_matrices(alg, args.cell)
    doc = {"instance": _instance_doc(alg), "left_cell": args.cell,
           "matrices": [{"i": i, "j": k, "matrix": _matrix(m)} for (i, k), m in sorted(mats.items())]}
    text = [f"[F({i},{k})]:\n{_fmt_matrix(m)}" for (i, k), m in sorted(mats.items())]
    return doc, "\n".join(text), EXIT_OK


def cmd_flor(args):
    mat = parse_matrix_file(resolve_input(args.input).read_text())
    form = flor_decompose(mat)
    return form.as_dict(), block_display(mat, form), EXIT_OK


def _bounds(args, alg: Algebra) -> SearchBounds:
    return SearchBounds(r_max=args.rmax or alg.n + 1, entry_cap=args.cap, node_budget=args.budget)


def cmd_search(args):
    alg = load_algebra(args.input)
    bounds = _bounds(args, alg)
    res = run_search(alg, bounds, require_faithful=args.faithful, require_diag_dichotomy=args.dichotomy,
                     require_xy_symmetry=args.xy)
    sols = []
    for rep in res.solutions:
        d = rep.as_dict()
        d["checks"] = check_candidate(alg, rep).as_dict()["checks"]
        sols.append(d)
    doc = {"instance": _instance_doc(alg),
           "bounds": {"r_max": bounds.r_max, "entry_cap": bounds.entry_cap, "node_budget": bounds.node_budget},
           "flags": {"faithful": args.faithful, "dichotomy": args.dichotomy, "xy": args.xy},
           "solutions": sols, "nodes": res.nodes}
    text = [f"{len(sols)} solution(s), {res.nodes} nodes"]
    for d in sols:
        failed = [k for k, v in d["checks"].items() if not v]
        text.append(f"r={d['r']} cartanB={d['cartanB']} failed checks: {failed or 'none'}")
    return doc, "\n".join(text), EXIT_OK


def cmd_classify(args):
    alg = load_algebra(args.input)
    verdict = classify(alg, _bounds(args, alg))
    doc = {"instance": _instance_doc(alg), "verdict": verdict.as_dict(alg)}
    text = [
        f"confirmed: {verdict.confirmed}",
        f"faithful solutions with the dichotomy: {len(verdict.faithful_solutions)}",
        f"unfaithful solutions: {len(verdict.unfaithful_solutions)}",
        f"extra solutions without the dichotomy: {len(verdict.extras)}",
    ]
    for rep, violated in verdict.extras:
        text.append(f"  r={rep.r} cartanB={rep.cartan_b.tolist()} violates {', '.join(violated) or 'nothing'}")
    if verdict.note:
        text.append(f"note: {verdict.note}")
    text.append(f"nodes: {verdict.nodes}")
    return doc, "\n".join(text), EXIT_OK if verdict.confirmed else EXIT_THEOREM


def cmd_selftest(args):
    results = run_selftest(seed=args.seed, full=args.full, directory=args.data_dir)
    ok = all(r.passed for r in results)
    doc = {"seed": args.seed, "passed": ok,
           "criteria": [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
                        for r in results]}
    return doc, "\n".join(r.line() for r in results), EXIT_OK if ok else EXIT_THEOREM


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="treecells", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, handler, help_text, input_help="tree spec file or bundled fixture name"):
        p = sub.add_parser(name, help=help_text)
        if input_help:
            p.add_argument("input", help=input_help)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(handler=handler)
        return p

    verb("algebra", cmd_algebra, "basis and multiplication summary")
    verb("cartan", cmd_cartan, "Cartan matrix")
    verb("projectives", cmd_projectives, "Loewy data of the indecomposable projectives")
    verb("cells", cmd_cells, "left, right and two-sided cells")
    verb("cellmatrices", cmd_cellmatrices, "matrices of the cell 2-representation").add_argument(
        "--cell", type=int, default=1, help="left cell index j")
    verb("flor", cmd_flor, "normal form of a quasi-idempotent matrix", "matrix file")
    for name, handler, help_text in (("search", cmd_search, "enumerate candidate 2-representations"),
                                     ("classify", cmd_classify, "compare all candidates with the cell one")):
        p = verb(name, handler, help_text)
        p.add_argument("--rmax", type=int, default=None, help="maximum rank (default n + 1)")
        p.add_argument("--cap", type=int, default=2, help="entry cap")
        p.add_argument("--budget", type=int, default=50_000_000, help="node budget")
        if name == "search":
            p.add_argument("--faithful", action=argparse.BooleanOptionalAction, default=False)
            p.add_argument("--dichotomy", action=argparse.BooleanOptionalAction, default=False)
            p.add_argument("--xy", action=argparse.BooleanOptionalAction, default=True,
                           help="require equal row and column supports")
    p = verb("selftest", cmd_selftest, "run the bundled fixture suite", input_help=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--full", action="store_true", help="include the slow star classification")
    p.add_argument("--data-dir", type=Path, default=None, help=argparse.SUPPRESS)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        doc, text, code = args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=err)
        return EXIT_BUDGET
    if args.format == "json":
        print(json.dumps({"schema_version": SCHEMA_VERSION, "command": args.verb, **doc}, indent=2), file=out)
    else:
        print(text, file=out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
