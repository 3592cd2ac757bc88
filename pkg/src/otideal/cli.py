"""Command line interface.

Every subcommand prints one report on stdout (JSON by default, or a
fixed-width text summary) and exits with 0 when all checks pass, 2 when a
search was inconclusive (budget exhausted, certificate not found) and 1 on
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import arrangement as arr
from . import covers, files, formality
from .errors import BudgetExceeded, OTIdealError, ParseError
from .exactla import format_rational
from .polynomial import TermOrder, relation_generators

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2
DEFAULT_CIRCUIT_BUDGET = 200_000


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def claim(value, provenance, **extra):
    """A reported number together with how it was obtained."""
    out = {"value": value, "provenance": provenance}
    out.update(extra)
    return out


def _gamma(g):
    return sorted(g)


def _relation_entry(r):
    return {"support": sorted(r.support), "length": r.length,
            "coefficients": files.relation_to_doc(r), "text": str(r)}


def _parse_order(text, n):
    if text in (None, "grevlex"):
        return TermOrder.grevlex(n)
    if text == "lex":
        return TermOrder.lex(n)
    if text.startswith("perm:"):
        try:
            perm = [int(t) - 1 for t in text[5:].split(",")]
            return TermOrder.grevlex(n, perm)
        except ValueError as exc:
            raise ParseError(f"bad --order {text!r}: {exc}") from None
    raise ParseError(f"unknown --order {text!r}; use grevlex, lex or perm:<i1,i2,...>")


def _relations(choice, a):
    if choice == "circuits":
        return arr.circuit_set(a)
    if choice == "circuits3":
        return arr.circuit_set(a, 3)
    if choice == "basis":
        basis = arr.relation_space(a)
        return arr.relation_set(a, [arr.Relation.from_vector(v) for v in basis.vectors])
    if choice.startswith("file:"):
        path = choice[5:]
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"{path}: {exc.strerror}") from None
        return files.relations_from_doc(files.load_json(text, path), a, path)
    raise ParseError(f"unknown --relations {choice!r}; use circuits, circuits3, basis or file:<path>")


def _workers():
    return covers.default_workers()


def _arrangement_summary(a):
    return {
        "n": claim(a.n, "input"),
        "dim": claim(a.dim, "input"),
        "rank": claim(a.rank, "formula"),
        "relation_space_dim": claim(a.n - a.rank, "formula", formula="n - rank"),
    }


def _formality_doc(rep):
    return {
        "codim_I": claim(rep.codim_I, "formula", formula="n - rank"),
        "codim_quadratic": claim(rep.codim_quadratic, "search", witness_cover=_gamma(rep.quadratic_witness)),
        "two_formal": rep.two_formal,
        "k_generated": {str(k): v for k, v in sorted(rep.k_generated.items())},
        "ratio": None if rep.ratio_note is None else format_rational(rep.ratio_note),
    }


def _primes_doc(primes):
    return [{
        "cover": _gamma(p.gamma),
        "codim": claim(p.codim, "search", formula="|cover| + dim span R0"),
        "r0_size": len(p.r0),
        "r0_circuits": [str(r) for r in p.r0_circuits],
    } for p in primes]


def cmd_analyze(args):
    a = files.read_arrangement(args.source)
    status = EXIT_OK
    doc = {"command": "analyze", "arrangement": _arrangement_summary(a)}
    budget = args.budget if args.budget is not None else DEFAULT_CIRCUIT_BUDGET
    cost = arr.circuit_enumeration_cost(a, args.max_length)
    if cost > budget:
        doc["circuits"] = {"status": "budget_exceeded", "estimated_candidates": cost}
        status = EXIT_INCONCLUSIVE
    else:
        cs = arr.circuits(a, args.max_length)
        doc["circuits"] = {
            "count": claim(len(cs), "search"),
            "by_length": {str(k): v for k, v in sorted(Counter(r.length for r in cs).items())},
            "max_length": args.max_length,
        }
    try:
        rep = formality.formality_report(a, budget=args.budget, workers=_workers())
        doc["formality"] = _formality_doc(rep)
    except BudgetExceeded as exc:
        doc["formality"] = {"status": "budget_exceeded", "message": str(exc), "partial": _partial(exc)}
        status = EXIT_INCONCLUSIVE
    rs = _relations(args.relations, a)
    doc["relations"] = {"choice": args.relations, "size": len(rs), "span_dim": claim(rs.dim, "formula")}
    try:
        doc["minimal_primes"] = _primes_doc(covers.minimal_primes(rs, args.budget))
    except BudgetExceeded as exc:
        doc["minimal_primes"] = {"status": "budget_exceeded", "message": str(exc)}
        status = EXIT_INCONCLUSIVE
    return doc, status


def _partial(exc):
    if isinstance(exc.partial, tuple):
        value, gamma = exc.partial
        return {"upper_bound": value, "witness_cover": _gamma(gamma)}
    return None


def cmd_circuits(args):
    a = files.read_arrangement(args.source)
    cost = arr.circuit_enumeration_cost(a, args.max_length)
    if args.budget is not None and cost > args.budget:
        raise BudgetExceeded(f"circuit enumeration needs about {cost} candidates")
    cs = arr.circuits(a, args.max_length)
    return {
        "command": "circuits",
        "arrangement": _arrangement_summary(a),
        "max_length": args.max_length,
        "count": claim(len(cs), "search"),
        "circuits": [_relation_entry(r) for r in cs],
    }, EXIT_OK


def cmd_formality(args):
    a = files.read_arrangement(args.source)
    doc = {"command": "formality", "arrangement": _arrangement_summary(a)}
    if args.k is not None:
        gens = formality.truncated_ot_generators(a, args.k)
        doc["k"] = args.k
        doc["k_generated"] = formality.is_k_generated(a, args.k)
        doc["generators"] = [g.to_text() for g in gens]
        return doc, EXIT_OK
    rep = formality.formality_report(a, budget=args.budget, workers=_workers())
    doc["formality"] = _formality_doc(rep)
    return doc, EXIT_OK


def cmd_codim(args):
    a = files.read_arrangement(args.source)
    rs = _relations(args.relations, a)
    value, gamma = covers.codim_J(rs, method=args.method, budget=args.budget, workers=_workers())
    r0, _ = covers.split(rs, gamma)
    return {
        "command": "codim",
        "arrangement": _arrangement_summary(a),
        "relations": {"choice": args.relations, "size": len(rs), "span_dim": claim(rs.dim, "formula")},
        "codim_J": claim(value, "search", witness_cover=_gamma(gamma),
                         witness_r0_dim=r0.dim, method=args.method),
    }, EXIT_OK


def cmd_primes(args):
    a = files.read_arrangement(args.source)
    rs = _relations(args.relations, a)
    primes = covers.minimal_primes(rs, args.budget)
    cert = covers.prime_certificate(rs)
    return {
        "command": "primes",
        "arrangement": _arrangement_summary(a),
        "relations": {"choice": args.relations, "size": len(rs)},
        "minimal_primes": _primes_doc(primes),
        "prime_certificate": None if cert is None else {
            "enumeration": [k + 1 for k in cert.enumeration],
            "codim": claim(cert.codim, "certificate"),
            "complete_intersection": cert.complete_intersection,
        },
    }, EXIT_OK


def cmd_gen(args):
    if args.variant == "builtin":
        a = files.builtin(args.name)
    else:
        g = files.named_graph(args.name)
        a = arr.graphic_arrangement(g) if args.variant == "graphic" else arr.vertex_edge_arrangement(g)
    return files.arrangement_to_doc(a), EXIT_OK


def cmd_verify(args):
    a = files.read_arrangement(args.source)
    rs = _relations(args.relations, a)
    order = _parse_order(args.order, a.n)
    rec = formality.verify_spanning_saturation(a, rs, args.degree_bound, order, strict=False)
    gens = relation_generators(rs)
    sat = []
    for e in rec.saturation:
        entry = {"relation": str(e.relation), "target_degree": e.target.degree,
                 "status": "certificate" if e.passed else "not_found"}
        if e.passed:
            entry["cofactors"] = {str(k + 1): q.to_text() for k, q in e.certificate.cofactors.items()}
            entry["max_cofactor_degree"] = claim(e.certificate.max_cofactor_degree(), "certificate")
        sat.append(entry)
    doc = {
        "command": "verify",
        "arrangement": _arrangement_summary(a),
        "relations": {"choice": args.relations, "size": len(rs), "spans_relation_space": rec.spans},
        "degree_bound": args.degree_bound,
        "generators": [g.to_text() for g in gens],
        "saturation": sat,
        "containment": [{"relation": str(r), "remainder": rem.to_text()} for r, rem in rec.containment],
        "summary": {"saturation_passed": rec.saturation_passed,
                    "containment_passed": rec.containment_passed},
    }
    if not rec.containment_passed:
        return doc, EXIT_ERROR
    return doc, EXIT_OK if rec.saturation_passed else EXIT_INCONCLUSIVE


def render_text(doc, indent=0) -> str:
    lines = []
    pad = " " * indent
    for key, value in doc.items():
        if isinstance(value, dict) and set(value) >= {"value", "provenance"}:
            extra = ", ".join(f"{k}={_flat(v)}" for k, v in value.items() if k not in ("value", "provenance"))
            lines.append(f"{pad}{key:<24}{_flat(value['value'])}  [{value['provenance']}]"
                         + (f"  {extra}" if extra else ""))
        elif isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 2))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for k, item in enumerate(value, 1):
                lines.append(f"{pad}  [{k}]")
                lines.append(render_text(item, indent + 4))
        else:
            lines.append(f"{pad}{key:<24}{_flat(value)}")
    return "\n".join(line for line in lines if line)


def _flat(v):
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_flat(x)}" for k, x in v.items()) + "}"
    if v is None:
        return "-"
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="otideal", description="Relation spaces and Orlik-Terao ideals of arrangements.")
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def source(sp):
        sp.add_argument("source", help="arrangement JSON file, '-' for stdin, or builtin:<name>")

    def fmt(sp):
        sp.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)

    sp = sub.add_parser("analyze", help="full report")
    source(sp), fmt(sp)
    sp.add_argument("--relations", default="circuits3")
    sp.add_argument("--max-length", type=int, default=None)
    sp.add_argument("--budget", type=int, default=None)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("circuits", help="enumerate circuit relations")
    source(sp), fmt(sp)
    sp.add_argument("--max-length", type=int, default=None)
    sp.add_argument("--budget", type=int, default=None)
    sp.set_defaults(func=cmd_circuits)

    sp = sub.add_parser("formality", help="k-generation and quadratic codimension")
    source(sp), fmt(sp)
    sp.add_argument("-k", type=int, default=None)
    sp.add_argument("--budget", type=int, default=None)
    sp.set_defaults(func=cmd_formality)

    sp = sub.add_parser("codim", help="codimension of J(R)")
    source(sp), fmt(sp)
    sp.add_argument("--relations", default="circuits3")
    sp.add_argument("--method", choices=("auto", "exhaustive", "killset"), default="auto")
    sp.add_argument("--budget", type=int, default=None)
    sp.set_defaults(func=cmd_codim)

    sp = sub.add_parser("primes", help="minimal primes of J(R)")
    source(sp), fmt(sp)
    sp.add_argument("--relations", default="circuits3")
    sp.add_argument("--budget", type=int, default=None)
    sp.set_defaults(func=cmd_primes)

    sp = sub.add_parser("gen", help="emit an arrangement file")
    fmt(sp)
    sp.add_argument("variant", choices=("graphic", "vertex-edge", "builtin"))
    sp.add_argument("name", help="K<m>, P<m>, C<m>, wheel, glued:<k>; or a builtin name")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="certify the saturation and containment identities")
    source(sp), fmt(sp)
    sp.add_argument("--relations", default="circuits3")
    sp.add_argument("--degree-bound", type=int, default=None)
    sp.add_argument("--order", default="grevlex")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, status = args.func(args)
    except BudgetExceeded as exc:
        doc = {"command": args.command, "status": "budget_exceeded", "message": str(exc),
               "partial": _partial(exc)}
        status = EXIT_INCONCLUSIVE
    except OTIdealError as exc:
        print(f"otideal: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "text" and args.command != "gen":
        sys.stdout.write(render_text(doc) + "\n")
    else:
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
