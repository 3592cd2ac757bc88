"""Covers of a relation set and the minimal primes of J(R).

A cover is an index set meeting every support in 0 or at least 2 indices.
Each cover G gives the prime ``Q_G = (x_i : i in G) + I(R_0(G))`` of
codimension ``|G| + dim span R_0(G)``, where R_0(G) are the members whose
support misses G; the minimal primes of J(R) are the minimal Q_G.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from . import exactla
from .arrangement import Relation, RelationSet, circuits_of_span
from .errors import BudgetExceeded, NotACover, OverlapTooLarge

EXHAUSTIVE_LIMIT = 16


def cover_key(gamma):
    """Total order on covers: smaller first, then lexicographic."""
    g = tuple(sorted(gamma))
    return (len(g), g)


def is_cover(gamma, rs: RelationSet) -> bool:
    gamma = frozenset(gamma)
    return all(len(gamma & r.support) != 1 for r in rs)


def _require_cover(gamma, rs):
    if not is_cover(gamma, rs):
        raise NotACover(gamma)


def split(rs: RelationSet, gamma):
    """``(R_0, R_+)``: members missing gamma, and the rest."""
    gamma = frozenset(gamma)
    _require_cover(gamma, rs)
    r0 = tuple(r for r in rs if not (r.support & gamma))
    rplus = tuple(r for r in rs if r.support & gamma)
    return RelationSet(rs.n, r0), RelationSet(rs.n, rplus)


def candidate_codim(gamma, rs: RelationSet) -> int:
    r0, _ = split(rs, gamma)
    return len(frozenset(gamma)) + r0.dim


def contains_iota(gamma, rs: RelationSet, r: Relation) -> bool:
    """Whether the image of r lies in Q_gamma(rs).

    It does not exactly when r is outside span R_0(gamma) and meets gamma
    in at most one index.
    """
    gamma = frozenset(gamma)
    r0, _ = split(rs, gamma)
    if len(gamma & r.support) >= 2:
        return True
    return r0.contains_in_span(r)


@dataclass(frozen=True)
class PrimeCandidate:
    gamma: frozenset
    r0: RelationSet
    r0_circuits: tuple
    codim: int

    @property
    def key(self):
        return cover_key(self.gamma)

    def contains_candidate(self, other: "PrimeCandidate", rs: RelationSet) -> bool:
        """Whether ``other`` (as an ideal) is contained in this candidate."""
        if not other.gamma <= self.gamma:
            return False
        return all(_contains_iota_r0(self.gamma, self.r0, r) for r in other.r0_circuits)


def _contains_iota_r0(gamma, r0: RelationSet, r: Relation) -> bool:
    return len(gamma & r.support) >= 2 or r0.contains_in_span(r)


def prime_candidate(gamma, rs: RelationSet) -> PrimeCandidate:
    gamma = frozenset(gamma)
    r0, _ = split(rs, gamma)
    return PrimeCandidate(gamma, r0, tuple(circuits_of_span(r0)), len(gamma) + r0.dim)


# -- cover enumeration -------------------------------------------------------


def iter_covers(rs: RelationSet, budget: int | None = None):
    """All covers, by depth-first search over indices 1..n.

    Only indices appearing in some support matter; other indices can be
    added freely to any cover, so they are never included (a cover using
    them has a strictly larger Q and is never minimal or optimal).
    """
    supports = [r.support for r in rs]
    relevant = sorted(set().union(*supports)) if supports else []
    # last position (in relevant order) at which each support is decided
    pos = {i: p for p, i in enumerate(relevant)}
    closing = [[] for _ in relevant]
    for s in supports:
        closing[max(pos[i] for i in s)].append(s)
    visited = 0
    chosen = []

    def rec(p):
        nonlocal visited
        if p == len(relevant):
            visited += 1
            if budget is not None and visited > budget:
                raise BudgetExceeded(f"cover enumeration exceeded budget {budget}")
            yield frozenset(chosen)
            return
        i = relevant[p]
        for take in (True, False):
            if take:
                chosen.append(i)
            g = set(chosen)
            if all(len(g & s) != 1 for s in closing[p]):
                yield from rec(p + 1)
            if take:
                chosen.pop()

    yield from rec(0)


def codim_exhaustive(rs: RelationSet):
    """Minimum of |G| + dim span R_0(G) over every cover G."""
    best = None
    for gamma in iter_covers(rs):
        if best is not None and len(gamma) > best[0]:
            continue
        r0 = [r.vector for r in rs if not (r.support & gamma)]
        value = len(gamma) + exactla.rank_of_vectors(r0, rs.n)
        cand = (value, cover_key(gamma))
        if best is None or cand < best:
            best = cand
    return best[0], frozenset(best[1][1])


# -- kill-set branch and bound ------------------------------------------------


def _multicover(requirements, best_size):
    """Smallest index set meeting every requirement set at least twice.

    Returns the lexicographically least optimal set (as a sorted tuple), or
    None if nothing of size < best_size exists.
    """
    if not requirements:
        return ()
    universe = sorted(set().union(*requirements))
    reqs = [frozenset(r) for r in requirements]
    best = [float("inf") if best_size is None else best_size, None]
    chosen = []

    def lower_bound(deficits, remaining_from):
        live = [d for d in deficits if d > 0]
        if not live:
            return 0
        rest = universe[remaining_from:]
        reach = max((sum(1 for k, r in enumerate(reqs) if deficits[k] > 0 and e in r) for e in rest), default=0)
        if reach == 0:
            return None
        return max(max(live), -(-sum(live) // reach))

    def rec(p, deficits):
        # a requirement that can no longer reach its quota kills the branch
        for k, r in enumerate(reqs):
            if deficits[k] > sum(1 for e in universe[p:] if e in r):
                return
        lb = lower_bound(deficits, p)
        if lb is None:
            return
        if len(chosen) + lb >= best[0]:
            return
        if lb == 0:
            best[0], best[1] = len(chosen), tuple(chosen)
            return
        e = universe[p]
        hit = [k for k, r in enumerate(reqs) if e in r]
        if any(deficits[k] > 0 for k in hit):
            chosen.append(e)
            rec(p + 1, [d - 1 if k in hit else d for k, d in enumerate(deficits)])
            chosen.pop()
        rec(p + 1, deficits)

    rec(0, [2] * len(reqs))
    return best[1]


def _killset_search(rs: RelationSet, budget=None, prefix=()):
    """Branch and bound over which members the cover meets ("kills").

    A cover G kills exactly the members whose support meets it, and must
    avoid the support of every kept member. For a fixed kill set the best
    cover is a small multicover problem; the kept members contribute the
    dimension of their span. Both parts only grow along a branch, which
    gives the bound. ``prefix`` fixes the keep (False) / kill (True)
    decision for the first members.
    """
    members = list(rs)
    m = len(members)
    supports = [r.support for r in members]
    best = [None, None]  # value, cover key
    nodes = [0]

    def leaf(killed, forbidden, kept_dim):
        reqs = [supports[k] - forbidden for k in killed]
        limit = None if best[0] is None else best[0] - kept_dim + 1
        cover = _multicover(reqs, limit)
        if cover is None:
            return
        cand = (len(cover) + kept_dim, cover_key(cover))
        if best[0] is None or cand < tuple(best):
            best[0], best[1] = cand

    def rec(p, killed, kept_basis, forbidden):
        nodes[0] += 1
        if budget is not None and nodes[0] > budget:
            partial = None if best[0] is None else (best[0], frozenset(best[1][1]))
            raise BudgetExceeded(f"kill-set search exceeded budget {budget}", partial=partial)
        kept_dim = kept_basis.dim
        reqs = [supports[k] - forbidden for k in killed]
        if any(len(r) < 2 for r in reqs):
            return
        if best[0] is not None and reqs:
            reach = max(sum(1 for r in reqs if e in r) for e in set().union(*reqs))
            lb = max(2, -(-2 * len(reqs) // reach))
            if kept_dim + lb > best[0]:
                return
        if best[0] is not None and kept_dim > best[0]:
            return
        if p == m:
            leaf(killed, forbidden, kept_dim)
            return
        choices = (False, True) if p >= len(prefix) else (prefix[p],)
        for kill in choices:
            if kill:
                rec(p + 1, killed + [p], kept_basis, forbidden)
            else:
                v = members[p].vector
                basis = kept_basis
                if any(exactla.reduce_against(kept_basis, v)):
                    basis = exactla.span(list(kept_basis.vectors) + [v], rs.n)
                rec(p + 1, killed, basis, forbidden | supports[p])

    rec(0, [], exactla.span([], rs.n), frozenset())
    if best[0] is None:
        return None
    return best[0], frozenset(best[1][1])


def _killset_task(args):
    return _killset_search(*args)


def codim_killset(rs: RelationSet, budget: int | None = None, workers: int = 1):
    """Kill-set branch and bound, optionally split over worker processes.

    With several workers the keep/kill choices of the first few members
    are fixed per task; results are merged by (value, cover key), so the
    answer does not depend on the worker count.
    """
    if workers <= 1 or len(rs) < 10:
        return _killset_search(rs, budget)
    depth = min(len(rs), max(1, (4 * workers - 1).bit_length()))
    prefixes = [tuple(bool(b >> (depth - 1 - t) & 1) for t in range(depth)) for b in range(2 ** depth)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_killset_task, [(rs, budget, pre) for pre in prefixes]))
    results = [r for r in results if r is not None]
    value, gamma = min(results, key=lambda t: (t[0], cover_key(t[1])))
    return value, gamma


def default_workers() -> int:
    env = os.environ.get("OTIDEAL_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def codim_J(rs: RelationSet, method: str = "auto", budget: int | None = None, workers: int = 1):
    """Codimension of J(rs) and a minimising cover.

    ``method`` is "exhaustive" (all covers), "killset" (branch and bound over
    killed members) or "auto": exhaustive when n <= 16 and there are no
    more covers than kill sets, kill-set search otherwise. Ties between
    minimising covers go to the smallest, then lexicographically least.
    """
    if len(rs) == 0:
        return 0, frozenset()
    if method == "auto":
        method = "exhaustive" if rs.n <= EXHAUSTIVE_LIMIT and rs.n <= len(rs) else "killset"
    if method == "exhaustive":
        return codim_exhaustive(rs)
    if method == "killset":
        return codim_killset(rs, budget, workers)
    raise ValueError(f"unknown method {method!r}")


# -- minimal primes -----------------------------------------------------------


def minimal_primes(rs: RelationSet, budget: int | None = None) -> list:
    """Minimal elements of {Q_G : G a cover}, sorted by cover.

    Covers are visited by increasing size; a candidate is minimal iff no
    minimal candidate found earlier is contained in it (containment forces
    a strictly smaller cover).
    """
    if rs.n > EXHAUSTIVE_LIMIT and budget is None:
        raise BudgetExceeded(f"{rs.n} hyperplanes exceeds the exhaustive limit "
                             f"{EXHAUSTIVE_LIMIT}; pass an explicit budget")
    try:
        covers = sorted(iter_covers(rs, budget), key=cover_key)
    except BudgetExceeded as exc:
        raise BudgetExceeded(str(exc), partial=[]) from None
    found = []
    span_cache = {}
    for gamma in covers:
        r0_members = tuple(r for r in rs if not (r.support & gamma))
        r0 = RelationSet(rs.n, r0_members)
        if any(p.gamma < gamma and all(_contains_iota_r0(gamma, r0, r) for r in p.r0_circuits)
               for p in found):
            continue
        if r0_members not in span_cache:
            span_cache[r0_members] = tuple(circuits_of_span(r0))
        found.append(PrimeCandidate(gamma, r0, span_cache[r0_members], len(gamma) + r0.dim))
    return sorted(found, key=lambda p: p.key)


# -- induced relations, intersection graphs, simpleness -----------------------


def is_induced(r: Relation, rs: RelationSet, budget: int | None = None) -> bool:
    """Whether r is a combination of members r_1, ..., r_m such that each
    support meets the union of the earlier ones in at most one index.

    The reachable member sets are exactly the simple subsets; the search
    walks them (memoised) and checks span membership of r.
    """
    members = list(rs)
    supports = [x.support for x in members]
    target = r.vector
    seen = set()
    count = 0

    def rec(chosen, union):
        nonlocal count
        count += 1
        if budget is not None and count > budget:
            raise BudgetExceeded("induced-relation search exceeded budget")
        if chosen and exactla.span_contains(exactla.span([members[k].vector for k in chosen], rs.n), target):
            return True
        for k in range(len(members)):
            if k in chosen:
                continue
            if chosen and len(supports[k] & union) > 1:
                continue
            nxt = chosen | {k}
            if nxt in seen:
                continue
            seen.add(nxt)
            if rec(nxt, union | supports[k]):
                return True
        return False

    return rec(frozenset(), frozenset())


@dataclass(frozen=True)
class IntersectionGraph:
    """Vertices are member positions; each edge carries its shared index."""

    size: int
    edges: tuple  # ((a, b), label) with a < b

    def adjacency(self):
        adj = {v: [] for v in range(self.size)}
        for (a, b), label in self.edges:
            adj[a].append((b, label))
            adj[b].append((a, label))
        return adj


def intersection_graph(rs: RelationSet) -> IntersectionGraph:
    edges = []
    for a, b in combinations(range(len(rs)), 2):
        common = rs[a].support & rs[b].support
        if len(common) > 1:
            raise OverlapTooLarge(a, b, common)
        if common:
            edges.append(((a, b), next(iter(common))))
    return IntersectionGraph(len(rs), tuple(edges))


def find_proper_cycle(g: IntersectionGraph):
    """A cycle with pairwise distinct edge labels, as a vertex list, or None."""
    adj = g.adjacency()
    for start in range(g.size):
        # cycles are reported from their smallest vertex
        stack = [(start, [start], frozenset())]
        while stack:
            v, path, labels = stack.pop()
            for w, lab in adj[v]:
                if lab in labels:
                    continue
                if w == start and len(path) >= 3:
                    return path
                if w <= start or w in path:
                    continue
                stack.append((w, path + [w], labels | {lab}))
    return None


def is_quasi_acyclic(g: IntersectionGraph) -> bool:
    return find_proper_cycle(g) is None


def peel_order(rs: RelationSet):
    """An enumeration witnessing simpleness, or None.

    Repeatedly removes a member meeting the union of the remaining others'
    supports in at most one index; the removal order reversed is a valid
    enumeration. Any subset of a simple set is simple, so the choice of
    member never matters.
    """
    remaining = list(range(len(rs)))
    removed = []
    while remaining:
        for k in remaining:
            others = set().union(*(rs[j].support for j in remaining if j != k))
            if len(rs[k].support & others) <= 1:
                remaining.remove(k)
                removed.append(k)
                break
        else:
            return None
    return removed[::-1]


def is_simple(rs: RelationSet) -> bool:
    return peel_order(rs) is not None


@dataclass(frozen=True)
class PrimeCertificate:
    """J(R) = I(R) is prime and a complete intersection of codimension |R|."""

    enumeration: tuple
    codim: int
    prime: bool = True
    equals_saturation: bool = True
    complete_intersection: bool = True


def prime_certificate(rs: RelationSet):
    try:
        g = intersection_graph(rs)
    except OverlapTooLarge:
        return None
    if not is_quasi_acyclic(g):
        return None
    order = peel_order(rs)
    if order is None:  # pragma: no cover - excluded by quasi-acyclicity
        raise AssertionError("quasi-acyclic intersection graph without a simple enumeration")
    return PrimeCertificate(tuple(order), len(rs))
