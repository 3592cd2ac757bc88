"""Reading and writing arrangement and relation files (JSON)."""

from __future__ import annotations

import json
import re

from . import arrangement as arr
from .arrangement import Arrangement, Graph, Relation, RelationSet
from .errors import OTIdealError, ParseError
from .exactla import format_rational, parse_rational

BUILTINS = ("wheel", "glued:<k>", "yuzvinsky", "triangle", "generic4")


def _fail(where, msg):
    raise ParseError(f"{where}: {msg}")


def _rational(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        _fail(where, f"expected an integer or a 'p/q' string, got {value!r}")
    try:
        return parse_rational(value)
    except (ValueError, ZeroDivisionError):
        _fail(where, f"not a rational number: {value!r}")


def _count(doc, key, where):
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        _fail(f"{where}.{key}", f"expected a non-negative integer, got {v!r}")
    return v


def load_json(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        context = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) else ""
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}\n    {context}") from None


def builtin(name: str) -> Arrangement:
    if name == "wheel":
        return arr.graphic_arrangement(arr.wheel_graph())
    if name == "yuzvinsky":
        return arr.yuzvinsky_variant()
    if name == "triangle":
        return arr.triangle()
    if name == "generic4":
        return arr.generic4()
    m = re.fullmatch(r"glued:(\d+)", name)
    if m:
        return arr.graphic_arrangement(arr.glued_wheel(int(m.group(1))))
    raise ParseError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")


def named_graph(name: str) -> Graph:
    """K<m>, P<m>, C<m>, wheel, or glued:<k>."""
    if name == "wheel":
        return arr.wheel_graph()
    m = re.fullmatch(r"glued:(\d+)", name)
    if m:
        return arr.glued_wheel(int(m.group(1)))
    m = re.fullmatch(r"([KPC])(\d+)", name)
    if m:
        size = int(m.group(2))
        return {"K": arr.complete_graph, "P": arr.path_graph, "C": arr.cycle_graph}[m.group(1)](size)
    raise ParseError(f"unknown graph {name!r}; use K<m>, P<m>, C<m>, wheel or glued:<k>")


def arrangement_from_doc(doc, where="arrangement") -> Arrangement:
    if not isinstance(doc, dict):
        _fail(where, "expected a JSON object")
    kind = doc.get("kind")
    try:
        if kind == "forms":
            dim = _count(doc, "dim", where)
            forms = doc.get("forms")
            if not isinstance(forms, list):
                _fail(f"{where}.forms", "expected a list of forms")
            cols = []
            for i, f in enumerate(forms):
                if not isinstance(f, list):
                    _fail(f"{where}.forms[{i}]", "expected a list of coefficients")
                cols.append([_rational(c, f"{where}.forms[{i}][{j}]") for j, c in enumerate(f)])
            return arr.new_arrangement(dim, cols)
        if kind == "graph":
            m = _count(doc, "m", where)
            edges = doc.get("edges")
            if not isinstance(edges, list) or not all(
                    isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e) for e in edges):
                _fail(f"{where}.edges", "expected a list of [i, j] vertex pairs")
            g = Graph(m, tuple(tuple(e) for e in edges))
            variant = doc.get("variant")
            if variant == "graphic":
                return arr.graphic_arrangement(g)
            if variant == "vertex-edge":
                return arr.vertex_edge_arrangement(g)
            _fail(f"{where}.variant", f"expected 'graphic' or 'vertex-edge', got {variant!r}")
        if kind == "builtin":
            return builtin(str(doc.get("name")))
    except ParseError:
        raise
    except OTIdealError as exc:
        _fail(where, str(exc))
    _fail(f"{where}.kind", f"expected 'forms', 'graph' or 'builtin', got {kind!r}")


def read_arrangement(source: str) -> Arrangement:
    """Load from a path, ``-`` for stdin, or ``builtin:<name>``."""
    if source.startswith("builtin:"):
        return builtin(source[len("builtin:"):])
    if source == "-":
        import sys
        text = sys.stdin.read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"{source}: {exc.strerror}") from None
    return arrangement_from_doc(load_json(text, source), source)


def arrangement_to_doc(a: Arrangement) -> dict:
    return {
        "kind": "forms",
        "dim": a.dim,
        "forms": [[format_rational(c) for c in col] for col in a.columns()],
    }


def relations_from_doc(doc, a: Arrangement, where="relations") -> RelationSet:
    """``{"relations": [...]}`` with dense coefficient lists or sparse
    ``{"index": coefficient}`` maps (1-based)."""
    if isinstance(doc, dict):
        doc = doc.get("relations")
    if not isinstance(doc, list):
        _fail(where, "expected a list of relations")
    rels = []
    for k, item in enumerate(doc):
        at = f"{where}[{k}]"
        if isinstance(item, list):
            if len(item) != a.n:
                _fail(at, f"expected {a.n} coefficients")
            vec = [_rational(c, f"{at}[{j}]") for j, c in enumerate(item)]
        elif isinstance(item, dict):
            vec = [0] * a.n
            for key, c in item.items():
                if not str(key).isdigit() or not 1 <= int(key) <= a.n:
                    _fail(at, f"index {key!r} outside 1..{a.n}")
                vec[int(key) - 1] = _rational(c, f"{at}[{key}]")
        else:
            _fail(at, "expected a coefficient list or an index map")
        if not any(vec):
            _fail(at, "zero relation")
        rels.append(Relation.from_vector(vec))
    try:
        return arr.relation_set(a, rels)
    except OTIdealError as exc:
        _fail(where, str(exc))


def relation_to_doc(r: Relation) -> dict:
    return {str(i): format_rational(c) for i, c in r.terms}
