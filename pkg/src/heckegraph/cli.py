"""Command-line front end: catalog, coset arithmetic, closures, certificates.

Every command is a thin adapter around the library: parse flags, call one
module entry point, render JSON (sorted keys, no floats except the crude
bound) or DOT or a short text summary.  Identical configuration yields byte
identical output.

Exit codes: 0 success, 2 budget exhaustion when it was not expected (pass
--expect-exhausted to flip that), 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import sys
from random import Random

from . import catalog, certify, commutators, graph
from .algebra import HeckeAlgebra
from .core import BudgetExhausted, HeckeError

DEFAULT_COSET_BUDGET = 10_000
DEFAULT_CLOSURE_BUDGET = 256
DEFAULT_SEED = commutators.DEFAULT_SEED

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_EXHAUSTED = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="heckegraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, formats=("json", "text")):
        p.add_argument("--pair", required=True, choices=catalog.names())
        p.add_argument("--p", type=int, default=None,
                       help="prime parameter for parameterized pairs")
        p.add_argument("--elem", required=True,
                       help="element in the pair's syntax (see 'catalog')")
        p.add_argument("--coset-budget", type=int, default=DEFAULT_COSET_BUDGET)
        p.add_argument("--format", choices=formats, default="json")
        p.add_argument("--out", default=None, help="write output to this path")
        p.add_argument("--expect-exhausted", action="store_true",
                       help="budget exhaustion is the expected outcome")

    sub.add_parser("catalog", help="list the shipped pairs").add_argument(
        "--format", choices=("json", "text"), default="json")

    add_common(sub.add_parser("coset", help="L, R, delta and left cosets of one element"))

    p_prod = sub.add_parser("product", help="expand a product of two double cosets")
    p_prod.add_argument("--pair", required=True, choices=catalog.names())
    p_prod.add_argument("--p", type=int, default=None)
    p_prod.add_argument("--a", required=True, help="left factor element")
    p_prod.add_argument("--b", required=True, help="right factor element")
    p_prod.add_argument("--coset-budget", type=int, default=DEFAULT_COSET_BUDGET)
    p_prod.add_argument("--format", choices=("json", "text"), default="json")
    p_prod.add_argument("--out", default=None)
    p_prod.add_argument("--expect-exhausted", action="store_true")

    p_clo = sub.add_parser("closure", help="successor closure of one double coset")
    add_common(p_clo, formats=("json", "dot", "text"))
    p_clo.add_argument("--budget", type=int, default=DEFAULT_CLOSURE_BUDGET,
                       help="vertex budget for the closure")

    p_cert = sub.add_parser("certify", help="closure plus certified norm bounds")
    add_common(p_cert)
    p_cert.add_argument("--budget", type=int, default=DEFAULT_CLOSURE_BUDGET)

    p_cls = sub.add_parser("classify", help="directedness/quadratic/protonormal/stabilization probes")
    add_common(p_cls)
    p_cls.add_argument("--samples", type=int, default=100)
    p_cls.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_cls.add_argument("--horizon", type=int, default=6)

    p_self = sub.add_parser("selftest", help="run the oracle and structure checks")
    p_self.add_argument("--pair", choices=catalog.names(), default=None,
                        help="restrict to one pair (default: all)")
    p_self.add_argument("--p", type=int, default=None)
    p_self.add_argument("--samples", type=int, default=200)
    p_self.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_self.add_argument("--format", choices=("json", "text"), default="json")
    p_self.add_argument("--out", default=None)
    return parser


def _entry_for(args):
    params = {}
    if getattr(args, "p", None) is not None:
        params["p"] = args.p
    _, entry = catalog.build(args.pair, **params)
    return entry


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _run_catalog(args) -> int:
    docs = catalog.catalog_json()
    if args.format == "text":
        lines = []
        for doc in docs:
            tags = ",".join(t["family"] for t in doc["tags"])
            lines.append(f"{doc['name']}: tags={tags} seed={doc['seed_coset']}")
            lines.append(f"  elements: {doc['element_syntax']}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _json(docs))
    return EXIT_OK


def _run_coset(args) -> int:
    entry = _entry_for(args)
    pair = entry.make_pair(args.coset_budget)
    g = entry.oracle.parse_element(args.elem)
    dc = pair.double_coset(g)
    fmt = entry.oracle.format_element
    doc = {
        "element": fmt(g),
        "key": fmt(dc.key),
        "L": dc.L,
        "R": dc.R,
        "delta": f"{dc.delta.numerator}/{dc.delta.denominator}",
        "left_reps": [fmt(r) for r in dc.left_reps],
    }
    if args.format == "text":
        _emit(args, f"key {doc['key']}  L={dc.L} R={dc.R} delta={doc['delta']}\n"
                    f"left cosets: {', '.join(doc['left_reps'])}\n")
    else:
        _emit(args, _json(doc))
    return EXIT_OK


def _run_product(args) -> int:
    entry = _entry_for(args)
    pair = entry.make_pair(args.coset_budget)
    algebra = HeckeAlgebra(pair)
    a = pair.double_coset(entry.oracle.parse_element(args.a))
    b = pair.double_coset(entry.oracle.parse_element(args.b))
    product = algebra.coset_product(a, b)
    if args.format == "text":
        _emit(args, repr(product) + "\n")
    else:
        _emit(args, _json(algebra.to_json_dict(product)))
    return EXIT_OK


def _closure_for(args, entry):
    pair = entry.make_pair(args.coset_budget)
    algebra = HeckeAlgebra(pair)
    root = pair.double_coset(entry.oracle.parse_element(args.elem))
    return algebra, graph.closure(algebra, root, budget=args.budget)


def _status_exit(args, complete: bool) -> int:
    if args.expect_exhausted:
        return EXIT_OK if not complete else EXIT_EXHAUSTED
    return EXIT_OK if complete else EXIT_EXHAUSTED


def _run_closure(args) -> int:
    entry = _entry_for(args)
    algebra, report = _closure_for(args, entry)
    if args.format == "dot":
        _emit(args, graph.export_dot(report, algebra))
    elif args.format == "text":
        _emit(args, f"status {report.status.value}, {len(report.vertices)} vertices, "
                    f"{len(report.edges)} edges\n")
    else:
        _emit(args, graph.export_json(report, algebra) + "\n")
    return _status_exit(args, report.complete)


def _run_certify(args) -> int:
    entry = _entry_for(args)
    algebra, report = _closure_for(args, entry)
    if not report.complete:
        _emit(args, _json({"error": "budget_exhausted",
                           "detail": "closure did not complete, no certificate"}))
        return _status_exit(args, False)
    cert = certify.l1_certificate(algebra, report)
    doc = certify.certificate_json_dict(cert, algebra)
    doc["closure_size"] = len(report.vertices)
    if args.format == "text":
        fmt = algebra.pair.oracle.format_element
        bounds = ", ".join(f"{fmt(dc.key)}: {cert.bounds[dc.key]}"
                           for dc in cert.relations.cosets)
        _emit(args, f"checks all pass; beta^2={cert.beta_squared!r}\nbounds: {bounds}\n")
    else:
        _emit(args, _json(doc))
    return EXIT_OK


def _run_classify(args) -> int:
    entry = _entry_for(args)
    pair = entry.make_pair(args.coset_budget)
    algebra = HeckeAlgebra(pair)
    g = entry.oracle.parse_element(args.elem)
    dc = pair.double_coset(g)
    reports = [
        commutators.directed_test(pair, g).to_json_dict(),
        commutators.quadratic_relation_test(algebra, dc).to_json_dict(),
        commutators.protonormal_falsifier(
            pair, g, samples=args.samples, seed=args.seed).to_json_dict(),
        commutators.stabilization_probe(
            pair, g, samples=args.samples, horizon=args.horizon,
            seed=args.seed).to_json_dict(),
    ]
    if args.format == "text":
        lines = [f"{r['test']}: {r.get('verdict', '-')}" for r in reports]
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _json(reports))
    return EXIT_OK


def _run_selftest(args) -> int:
    names = [args.pair] if args.pair else list(catalog.names())
    results = []
    ok = True
    for name in names:
        params = {"p": args.p} if (args.p is not None and name in
                                   ("quasicyclic-dihedral", "sl2-localized")) else {}
        _, entry = catalog.build(name, **params)
        problems = catalog.entry_selfcheck(entry, Random(args.seed), samples=args.samples)
        ok = ok and not problems
        results.append({"pair": name, "passed": not problems, "problems": problems})
    if args.format == "text":
        lines = [f"{r['pair']}: {'ok' if r['passed'] else '; '.join(r['problems'])}"
                 for r in results]
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _json(results))
    return EXIT_OK if ok else EXIT_ERROR


_RUNNERS = {
    "catalog": _run_catalog,
    "coset": _run_coset,
    "product": _run_product,
    "closure": _run_closure,
    "certify": _run_certify,
    "classify": _run_classify,
    "selftest": _run_selftest,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _RUNNERS[args.command](args)
    except BudgetExhausted as exc:
        _emit(args, _json({"error": "budget_exhausted", "detail": str(exc),
                           "budget": exc.budget}))
        return EXIT_OK if getattr(args, "expect_exhausted", False) else EXIT_EXHAUSTED
    except (HeckeError, ValueError) as exc:
        _emit(args, _json({"error": type(exc).__name__, "detail": str(exc)}))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
