"""Command-line entry point.

Every subcommand reads one matroid document (a path, ``-`` for stdin, or
``--corpus NAME``) and writes JSON with sorted keys to stdout.  Exit codes:
0 success (whatever the verdict), 2 malformed input, 3 the bases violate the
matroid axioms, 4 an ordering search ran out of budget.
"""

from __future__ import annotations

import argparse
import json
import sys

import jsonschema

from . import bitset as bs
from . import families
from .activity import OrderedMatroid
from .errors import BudgetExceeded, MatroidAxiomError, MatroidError, PreconditionUnmet
from .internal_order import build, dumps, to_dot, to_json
from .linalg import RationalMatrix, parse_rational
from .matroid import Graph, Matroid, contract, delete, dual, from_bases, from_graph, from_matrix, uniform
from .perfection import (
    CheckReport,
    find_perfect_order,
    is_internally_perfect,
    is_perfect,
    verify_contraction_theorem,
    verify_deletion_corollary,
    verify_minor_theorem,
)
from .stanley import h_vector, stanley_certificate

EXIT_SCHEMA, EXIT_AXIOM, EXIT_BUDGET = 2, 3, 4

_ELEMENTS = {"type": "array", "items": {"type": "integer", "minimum": 1}}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["type"],
    "properties": {
        "type": {"enum": ["bases", "matrix", "graph", "uniform"]},
        "n": {"type": "integer", "minimum": 0},
        "bases": {"type": "array", "items": _ELEMENTS},
        "rows": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "array",
                "items": {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"},
            },
        },
        "vertices": {"type": "integer", "minimum": 1},
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 1},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "r": {"type": "integer", "minimum": 0},
        "modifiers": {
            "type": "array",
            "items": {
                "oneOf": [
                    {
                        "type": "object",
                        "properties": {"op": {"const": "dual"}},
                        "required": ["op"],
                        "additionalProperties": False,
                    },
                    {
                        "type": "object",
                        "properties": {"op": {"enum": ["delete", "contract"]}, "set": _ELEMENTS},
                        "required": ["op", "set"],
                        "additionalProperties": False,
                    },
                ]
            },
        },
        "order": _ELEMENTS,
    },
    "allOf": [
        {"if": {"properties": {"type": {"const": "bases"}}}, "then": {"required": ["n", "bases"]}},
        {"if": {"properties": {"type": {"const": "matrix"}}}, "then": {"required": ["rows"]}},
        {"if": {"properties": {"type": {"const": "graph"}}}, "then": {"required": ["vertices", "edges"]}},
        {"if": {"properties": {"type": {"const": "uniform"}}}, "then": {"required": ["r", "n"]}},
    ],
}


class InputError(Exception):
    """Malformed document; maps to exit code 2."""


def validate(doc) -> None:
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InputError(f"schema: {exc.message}") from None


def _base_matroid(doc: dict) -> Matroid:
    kind = doc["type"]
    if kind == "bases":
        return from_bases(doc["n"], [bs.mask(b) for b in doc["bases"]])
    if kind == "matrix":
        rows = doc["rows"]
        if len({len(r) for r in rows}) != 1:
            raise InputError("matrix rows differ in length")
        return from_matrix(RationalMatrix.from_rows([[parse_rational(x) for x in r] for r in rows]))
    if kind == "graph":
        return from_graph(Graph(doc["vertices"], tuple(tuple(e) for e in doc["edges"])))
    return uniform(doc["r"], doc["n"])


def load_document(doc: dict) -> OrderedMatroid:
    """Build the ordered matroid a document describes; ``order`` refers to
    the ground set left after all modifiers."""
    validate(doc)
    try:
        m = _base_matroid(doc)
        for mod in doc.get("modifiers", []):
            if mod["op"] == "dual":
                m = dual(m)
            else:
                t = bs.mask(mod["set"])
                if t & ~m.ground:
                    raise InputError(f"{mod['op']} set {mod['set']} is outside the ground set")
                m = (delete if mod["op"] == "delete" else contract)(m, t)[0]
        return OrderedMatroid(m, doc.get("order"))
    except MatroidAxiomError:
        raise
    except (MatroidError, ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None


def _read(args) -> tuple[dict, int]:
    if args.corpus:
        try:
            entry = families.corpus_entry(args.corpus)
        except KeyError:
            raise InputError(f"unknown corpus entry {args.corpus!r}") from None
        return entry.document, entry.label_base
    if args.doc is None:
        raise InputError("give a document path, '-' or --corpus")
    try:
        if args.doc == "-":
            doc = json.load(sys.stdin)
        else:
            with open(args.doc, encoding="utf-8") as fh:
                doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from None
    return doc, 1


def _sets(masks) -> list[list[int]]:
    return [list(bs.elements(m)) for m in masks]


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj))


def cmd_bases(om, args):
    _emit({"n": om.n, "rank": om.rank, "bases": _sets(om.bases)})


def cmd_circuits(om, args):
    _emit({"circuits": _sets(om.matroid.circuits)})


def cmd_cocircuits(om, args):
    _emit({"cocircuits": _sets(om.matroid.cocircuits)})


def cmd_hvector(om, args):
    _emit({"h": h_vector(om.matroid)})


def cmd_internal_order(om, args):
    io = build(om)
    if args.format == "dot":
        sys.stdout.write(to_dot(io, args.label_base))
    else:
        _emit(to_json(io))


def cmd_classify(om, args):
    report = is_internally_perfect(om, args.strategy)
    _emit(report.to_json(label=lambda b: om.sta(b).label(args.label_base)))


def cmd_perfect_search(om, args):
    def progress(tested):
        print(f"tested {tested}", file=sys.stderr, flush=True)

    result = find_perfect_order(
        om.matroid, budget=args.budget, workers=args.workers,
        progress=None if args.quiet else progress,
    )
    _emit(result.to_json())


def cmd_stanley(om, args):
    _emit(stanley_certificate(om).to_json())


def _report(fn, *a) -> dict:
    try:
        return fn(*a).to_json()
    except PreconditionUnmet as exc:
        return CheckReport(fn.__name__, "unmet", None, {"reason": str(exc)}).to_json()


def cmd_minor_check(om, args):
    if args.contract or args.delete:
        _emit(_report(verify_minor_theorem, om, args.contract or [], args.delete or []))
        return
    # no sets given: every single-element minor the theorems cover
    deletions = [
        _report(verify_deletion_corollary, om, e)
        for e in bs.elements(om.matroid.ground)
        if not bs.bit(e) & om.b0 & ~om.matroid.coloops
    ]
    _emit({
        "contraction": verify_contraction_theorem(om).to_json(),
        "deletions": deletions,
    })


def _family_document(args) -> dict:
    if args.family == "mr":
        return families.graph_document(families.mr_graph(args.params[0]))
    if args.family == "nnd":
        n, *diag = args.params
        rows = families.nnd_matrix(n, diag)
        return families.matrix_document(rows, [{"op": "dual"}])
    if args.family == "uniform":
        r, n = args.params
        uniform(r, n)
        return {"type": "uniform", "r": r, "n": n}
    raise InputError(f"unknown family {args.family!r}")


def cmd_family(args):
    try:
        _emit(_family_document(args))
    except (ValueError, MatroidError) as exc:
        raise InputError(str(exc)) from None


def _probe_del_reorder(max_rank: int) -> list[dict]:
    out = []
    for entry in families.example_corpus():
        om = entry.ordered_matroid
        if om.rank > max_rank or not is_perfect(om):
            continue
        for e in bs.elements(om.b0 & ~om.matroid.coloops):
            minor = delete(om.matroid, bs.bit(e))[0]
            res = find_perfect_order(minor)
            out.append({"matroid": entry.name, "delete": e, **res.to_json()})
    return out


def _probe_minor_closed(max_n: int) -> list[dict]:
    out = []
    for entry in families.example_corpus():
        m = entry.matroid
        if m.n > max_n or not is_perfect(entry.ordered_matroid):
            continue
        for e in bs.elements(m.ground):
            for op, fn in (("delete", delete), ("contract", contract)):
                res = find_perfect_order(fn(m, bs.bit(e))[0])
                out.append({"matroid": entry.name, op: e, **res.to_json()})
    return out


def _probe_nnd(max_n: int) -> list[dict]:
    out = []
    for n in range(3, max_n + 1):
        om = families.family_nnd(n)
        out.append({"n": n, "rank": om.rank, "bases": len(om.bases), "perfect": is_perfect(om)})
    return out


def cmd_conjecture_probe(args):
    if args.probe == "del-reorder":
        rows = _probe_del_reorder(args.max_rank)
    elif args.probe == "minor-closed":
        rows = _probe_minor_closed(args.max_n)
    else:
        rows = _probe_nnd(args.max_n)
    holds = all(r.get("found", r.get("perfect")) for r in rows)
    _emit({"probe": args.probe, "cases": rows, "holds": holds})


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="perfectmat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def doc_command(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("doc", nargs="?", help="matroid document path or '-' for stdin")
        sp.add_argument("--corpus", help="use a named example instead of a document")
        sp.set_defaults(fn=fn, needs_doc=True)
        return sp

    doc_command("bases", cmd_bases, "list bases")
    doc_command("circuits", cmd_circuits, "list circuits")
    doc_command("cocircuits", cmd_cocircuits, "list cocircuits")
    doc_command("hvector", cmd_hvector, "h-vector of the independence complex")
    sp = doc_command("internal-order", cmd_internal_order, "internal order as DOT or JSON")
    sp.add_argument("--format", choices=["dot", "json"], default="dot")
    sp.add_argument("--label-base", type=int, default=None, help="number of the first element in labels")
    sp = doc_command("classify", cmd_classify, "perfect / abundant / deficient bases")
    sp.add_argument("--strategy", choices=["coatoms", "all"], default="coatoms")
    sp.add_argument("--label-base", type=int, default=None)
    sp = doc_command("perfect-search", cmd_perfect_search, "search orderings for perfection")
    sp.add_argument("--budget", type=int, default=None, help="maximum orderings to test")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--quiet", action="store_true", help="no progress lines on stderr")
    doc_command("stanley", cmd_stanley, "pure order ideal certificate")
    sp = doc_command("minor-check", cmd_minor_check, "check the minor theorems")
    sp.add_argument("--contract", type=int, nargs="*")
    sp.add_argument("--delete", type=int, nargs="*")

    sp = sub.add_parser("family", help="emit a family member as a matroid document")
    sp.add_argument("family", choices=["mr", "nnd", "uniform"])
    sp.add_argument("params", type=int, nargs="+", help="mr R | nnd N [DIAG...] | uniform R N")
    sp.set_defaults(fn=cmd_family, needs_doc=False)

    sp = sub.add_parser("conjecture-probe", help="report on open conjectures (never fails)")
    sp.add_argument("probe", choices=["del-reorder", "minor-closed", "nnd"])
    sp.add_argument("--max-rank", type=int, default=4)
    sp.add_argument("--max-n", type=int, default=5)
    sp.set_defaults(fn=cmd_conjecture_probe, needs_doc=False)
    return p


def main(argv=None) -> int:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8", newline="\n")
    args = _parser().parse_args(argv)
    try:
        if not args.needs_doc:
            args.fn(args)
            return 0
        doc, label_base = _read(args)
        if getattr(args, "label_base", 0) is None:
            args.label_base = label_base
        om = load_document(doc)
        args.fn(om, args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except MatroidAxiomError as exc:
        print(f"error: not a matroid: {exc}", file=sys.stderr)
        return EXIT_AXIOM
    except BudgetExceeded as exc:
        print(f"error: budget exhausted after {exc.tested} orderings", file=sys.stderr)
        return EXIT_BUDGET
    return 0


if __name__ == "__main__":
    sys.exit(main())
