"""Central arrangements, their relation spaces and circuits.

Hyperplane indices are 1-based throughout (``x1..xn``), matching the way
relations and covers are written down by hand. Dense vectors are 0-based
tuples of Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from . import exactla
from .errors import InvalidParameter, NotInRelationSpace, ProportionalForms, ZeroForm
from .exactla import RationalMatrix, SubspaceBasis


@dataclass(frozen=True)
class Arrangement:
    dim: int
    forms: RationalMatrix  # dim rows, one column per hyperplane

    @property
    def n(self) -> int:
        return self.forms.ncols

    @cached_property
    def rank(self) -> int:
        return exactla.rank(self.forms)

    def form(self, i: int) -> tuple:
        """Coefficients of the i-th form (1-based)."""
        return self.forms.column(i - 1)

    def columns(self) -> list:
        return self.forms.columns()


def new_arrangement(dim: int, columns: Sequence[Sequence]) -> Arrangement:
    """Validate and build an arrangement from its defining forms."""
    cols = [exactla.vector(c) for c in columns]
    for i, c in enumerate(cols, 1):
        if len(c) != dim:
            raise InvalidParameter(f"form {i} has {len(c)} coefficients, expected {dim}")
        if not any(c):
            raise ZeroForm(i)
    for (i, a), (j, b) in combinations(enumerate(cols, 1), 2):
        if _proportional(a, b):
            raise ProportionalForms(i, j)
    return Arrangement(dim, RationalMatrix.from_columns(cols, dim))


def _proportional(a, b) -> bool:
    k = next(t for t in range(len(a)) if a[t])
    if not b[k]:
        return False
    ratio = b[k] / a[k]
    return all(y == ratio * x for x, y in zip(a, b))


def rank_of(a: Arrangement) -> int:
    return a.rank


@dataclass(frozen=True)
class Relation:
    """A nonzero linear relation ``sum a_i x_i``, scaled so the coefficient
    at the smallest support index is 1."""

    n: int
    terms: tuple  # ((index, coefficient), ...) sorted by 1-based index

    @classmethod
    def from_vector(cls, v: Sequence) -> "Relation":
        v = exactla.vector(v)
        terms = [(i + 1, c) for i, c in enumerate(v) if c]
        if not terms:
            raise ValueError("the zero vector is not a relation")
        lead = terms[0][1]
        return cls(len(v), tuple((i, c / lead) for i, c in terms))

    @classmethod
    def from_terms(cls, n: int, terms) -> "Relation":
        v = [Fraction(0)] * n
        for i, c in dict(terms).items():
            v[i - 1] = exactla.as_fraction(c)
        return cls.from_vector(v)

    @cached_property
    def vector(self) -> tuple:
        v = [Fraction(0)] * self.n
        for i, c in self.terms:
            v[i - 1] = c
        return tuple(v)

    @cached_property
    def support(self) -> frozenset:
        return frozenset(i for i, _ in self.terms)

    @property
    def length(self) -> int:
        return len(self.terms)

    def coefficient(self, i: int) -> Fraction:
        return dict(self.terms).get(i, Fraction(0))

    def sort_key(self):
        return tuple(sorted(self.support))

    def __str__(self):
        out = []
        for i, c in self.terms:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = f"x{i}" if mag == 1 else f"{exactla.format_rational(mag)}*x{i}"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text


@dataclass(frozen=True)
class RelationSet:
    """A finite subset of a relation space, in a fixed order."""

    n: int
    members: tuple = ()

    def __post_init__(self):
        for r in self.members:
            if r.n != self.n:
                raise InvalidParameter("relation lives in a different number of variables")

    @cached_property
    def span(self) -> SubspaceBasis:
        return exactla.span([r.vector for r in self.members], self.n)

    @property
    def dim(self) -> int:
        return self.span.dim

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, k):
        return self.members[k]

    def subset(self, indices: Iterable[int]) -> "RelationSet":
        return RelationSet(self.n, tuple(self.members[k] for k in indices))

    def contains_in_span(self, r) -> bool:
        v = r.vector if isinstance(r, Relation) else r
        return exactla.span_contains(self.span, v)


def relation_set(a: Arrangement, relations: Iterable) -> RelationSet:
    """Build a RelationSet, checking every member lies in F(a)."""
    members = []
    for r in relations:
        if not isinstance(r, Relation):
            r = Relation.from_vector(r)
        if r.n != a.n:
            raise InvalidParameter(f"relation has {r.n} coefficients, arrangement has {a.n} forms")
        if any(a.forms.apply(r.vector)):
            raise NotInRelationSpace(f"{r} is not a relation of the arrangement")
        members.append(r)
    return RelationSet(a.n, tuple(members))


def relation_space(a: Arrangement) -> SubspaceBasis:
    return exactla.kernel_basis(a.forms)


def _complement_rows(w: SubspaceBasis) -> list:
    """Rows of a full-rank matrix whose kernel is w."""
    return list(exactla.orthogonal_complement(w).vectors)


def minimal_support_vectors(w: SubspaceBasis, max_length: int | None = None,
                            constraint_rows: Sequence | None = None) -> list:
    """Minimal-support nonzero vectors of w, one canonical Relation each.

    Two strategies, picked by the number of candidates they visit:

    * by support: test each index set S (by increasing size, skipping
      supersets of circuits already found) for a one-dimensional space of
      vectors of w supported in S;
    * by zero set: every circuit is the unique (up to scale) vector of w
      vanishing on some ``dim w - 1`` coordinates.
    """
    n = w.ambient_dim
    k = w.dim
    if k == 0:
        return []
    rows = list(constraint_rows) if constraint_rows is not None else _complement_rows(w)
    top = n - k + 1 if max_length is None else min(max_length, n - k + 1)
    cost_support, cost_zero = _strategy_costs(n, k, max_length)
    if cost_zero <= cost_support:
        found = _circuits_by_zero_set(w, max_length)
    else:
        found = _circuits_by_support(rows, n, top)
    return sorted(found, key=Relation.sort_key)


def _strategy_costs(n, k, max_length):
    top = n - k + 1 if max_length is None else min(max_length, n - k + 1)
    return sum(comb(n, s) for s in range(1, top + 1)), comb(n, k - 1)


def circuit_enumeration_cost(a: Arrangement, max_length: int | None = None) -> int:
    """Number of candidate index sets the circuit search will visit."""
    k = a.n - a.rank
    return min(_strategy_costs(a.n, k, max_length)) if k else 0


def _circuits_by_support(rows, n, top):
    columns = [tuple(row[j] for row in rows) for j in range(n)]
    dim = len(rows)
    found = []
    supports = []
    for size in range(1, top + 1):
        for s in combinations(range(n), size):
            ss = frozenset(s)
            if any(c <= ss for c in supports):
                continue
            sub = RationalMatrix.from_columns([columns[j] for j in s], dim) if dim else \
                RationalMatrix.zeros(0, size)
            ker = exactla.kernel_basis(sub)
            if ker.dim == 0:
                continue
            # No proper subset is dependent, so the kernel is one-dimensional.
            v = [Fraction(0)] * n
            for j, c in zip(s, ker.vectors[0]):
                v[j] = c
            found.append(Relation.from_vector(v))
            supports.append(ss)
    return found


def _circuits_by_zero_set(w, max_length):
    n, k = w.ambient_dim, w.dim
    seen = {}
    for z in combinations(range(n), k - 1):
        if z:
            m = RationalMatrix.from_rows([[b[j] for b in w.vectors] for j in z], k)
            ker = exactla.kernel_basis(m)
            if ker.dim != 1:
                continue
            coef = ker.vectors[0]
        else:
            coef = (Fraction(1),)
        v = [sum((c * b[j] for c, b in zip(coef, w.vectors) if c), Fraction(0)) for j in range(n)]
        rel = Relation.from_vector(v)
        if max_length is not None and rel.length > max_length:
            continue
        seen.setdefault(rel.support, rel)
    return list(seen.values())


def circuits(a: Arrangement, max_length: int | None = None) -> list:
    """One relation per circuit of the arrangement, sorted by support."""
    w = relation_space(a)
    red, pivots, _ = exactla.rref(a.forms)
    return minimal_support_vectors(w, max_length, constraint_rows=red.rows[: len(pivots)])


def circuit_set(a: Arrangement, max_length: int | None = None) -> RelationSet:
    return RelationSet(a.n, tuple(circuits(a, max_length)))


def subspace_arrangement(rs: RelationSet) -> Arrangement:
    """The arrangement of coordinate hyperplanes restricted to the common zero
    locus of ``rs``; its relation space is exactly the span of ``rs``."""
    z = exactla.orthogonal_complement(rs.span)
    cols = [tuple(b[i] for b in z.vectors) for i in range(rs.n)]
    return new_arrangement(z.dim, cols)


def circuits_of_span(rs: RelationSet, max_length: int | None = None) -> list:
    return minimal_support_vectors(rs.span, max_length)


# -- graphs and builders ----------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices 1..m. Edge pairs keep the given orientation,
    which fixes the sign of the form ``y_i - y_j``."""

    m: int
    edges: tuple = field(default=())

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            if len(e) != 2:
                raise InvalidParameter(f"edge {e} is not a pair")
            i, j = e
            if not (1 <= i <= self.m and 1 <= j <= self.m):
                raise InvalidParameter(f"edge {e} has an endpoint outside 1..{self.m}")
            if i == j:
                raise InvalidParameter(f"loop at vertex {i}")
            key = frozenset(e)
            if key in seen:
                raise InvalidParameter(f"duplicate edge {e}")
            seen.add(key)
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))

    @property
    def num_components(self) -> int:
        parent = list(range(self.m + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.edges:
            parent[find(i)] = find(j)
        return len({find(v) for v in range(1, self.m + 1)})


def graphic_arrangement(g: Graph) -> Arrangement:
    cols = []
    for i, j in g.edges:
        c = [0] * g.m
        c[i - 1], c[j - 1] = 1, -1
        cols.append(c)
    return new_arrangement(g.m, cols)


def vertex_edge_arrangement(g: Graph) -> Arrangement:
    """Coordinate forms y_1..y_m followed by y_i + y_j for each edge."""
    cols = []
    for v in range(g.m):
        c = [0] * g.m
        c[v] = 1
        cols.append(c)
    for i, j in g.edges:
        c = [0] * g.m
        c[i - 1] = c[j - 1] = 1
        cols.append(c)
    return new_arrangement(g.m, cols)


def vertex_edge_relations(g: Graph) -> RelationSet:
    """The relations x_e - x_i - x_j of the vertex-edge arrangement."""
    n = g.m + len(g.edges)
    rels = []
    for t, (i, j) in enumerate(g.edges):
        rels.append(Relation.from_terms(n, {g.m + t + 1: 1, i: -1, j: -1}))
    return RelationSet(n, tuple(rels))


def complete_graph(m: int) -> Graph:
    return Graph(m, tuple(combinations(range(1, m + 1), 2)))


def path_graph(m: int) -> Graph:
    return Graph(m, tuple((i, i + 1) for i in range(1, m)))


def cycle_graph(m: int) -> Graph:
    if m < 3:
        raise InvalidParameter("a cycle needs at least 3 vertices")
    return Graph(m, tuple((i, i + 1) for i in range(1, m)) + ((m, 1),))


def _wheel_copy(center, rim):
    """Edges (rim1..rim4, spoke1..spoke4) of one wheel with 4 rim vertices.

    Spoke i joins the center to rim[i]; rim edge 1 joins rim[0] and rim[3],
    rim edge i > 1 joins rim[i-1] and rim[i-2]. With these orientations the
    four triangles give x_rim1 + x_s1 - x_s4, x_rim2 - x_s1 + x_s2, ...
    """
    u1, u2, u3, u4 = rim
    rims = [(u1, u4), (u2, u1), (u3, u2), (u4, u3)]
    spokes = [(center, u) for u in rim]
    return rims, spokes


def wheel_graph() -> Graph:
    """Four-cycle with a center joined to every rim vertex.

    Vertices 1..4 are the rim, 5 the center. Edges 1..4 are rim edges and
    5..8 the spokes, so the triangle relations are x1+x5-x8, x2-x5+x6,
    x3-x6+x7 and x4-x7+x8.
    """
    return glued_wheel(1)


def glued_wheel(k: int) -> Graph:
    """k wheels glued in a chain, each along one spoke of the previous copy.

    Copy t+1 has the second spoke of copy t as its fourth spoke: its center
    is the rim endpoint of that spoke and the old center becomes its fourth
    rim vertex. Each new copy labels its four rim edges, then its three new
    spokes. For k=2 this yields the cover {5,6,7,8,13,14,15} of spokes.
    """
    if k < 1:
        raise InvalidParameter("k must be at least 1")
    rims, spokes = _wheel_copy(5, (1, 2, 3, 4))
    edges = rims + spokes
    center, rim = 5, (1, 2, 3, 4)
    next_vertex = 6
    for _ in range(k - 1):
        new_center, old_center = rim[1], center
        rim = (next_vertex, next_vertex + 1, next_vertex + 2, old_center)
        next_vertex += 3
        center = new_center
        rims, spokes = _wheel_copy(center, rim)
        edges += rims + spokes[:3]
    return Graph(next_vertex - 1, tuple(edges))


YUZVINSKY_FORMS = (
    (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (2, 1, 1),
    (2, 3, 1), (2, 3, 4), (1, 0, 1), (2, 2, 3),
)


def yuzvinsky_variant() -> Arrangement:
    """Nine planes in Q^3: y, z, w, y+z+w, 2y+z+w, 2y+3z+w, 2y+3z+4w, y+w,
    2y+2z+3w."""
    return new_arrangement(3, YUZVINSKY_FORMS)


def triangle() -> Arrangement:
    """x, y, x+y in Q^2."""
    return new_arrangement(2, [(1, 0), (0, 1), (1, 1)])


def generic4() -> Arrangement:
    """x, y, z, x+y+z in Q^3."""
    return new_arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
