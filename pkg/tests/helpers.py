"""Fixtures and independent oracles shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from otideal import arrangement as arr
from otideal.exactla import RationalMatrix, rref
from otideal.polynomial import SparsePolynomial


@lru_cache(None)
def TRI():
    return arr.triangle()


@lru_cache(None)
def GEN4():
    return arr.generic4()


@lru_cache(None)
def WG():
    return arr.graphic_arrangement(arr.wheel_graph())


@lru_cache(None)
def YZ():
    return arr.yuzvinsky_variant()


@lru_cache(None)
def G2():
    return arr.graphic_arrangement(arr.glued_wheel(2))


FIXTURES = {"TRI": TRI, "GEN4": GEN4, "WG": WG, "YZ": YZ}


def triangles(a):
    return arr.circuit_set(a, 3)


def wg_r(k):
    """The triangle relations r1..r4 and the outer cycle r_C of the wheel."""
    n = 8
    table = {
        1: {1: 1, 5: 1, 8: -1},
        2: {2: 1, 5: -1, 6: 1},
        3: {3: 1, 6: -1, 7: 1},
        4: {4: 1, 7: -1, 8: 1},
        "C": {1: 1, 2: 1, 3: 1, 4: 1},
    }
    return arr.Relation.from_terms(n, table[k].items())


def bareiss_rank(rows) -> int:
    """Fraction-free elimination on integer-scaled rows."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    # clear denominators row by row so everything stays integral
    ints = []
    for row in m:
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        ints.append([int(x * den) for x in row])
    nrows, ncols = len(ints), len(ints[0])
    r, prev = 0, 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if ints[i][c] != 0), None)
        if piv is None:
            continue
        ints[r], ints[piv] = ints[piv], ints[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                ints[i][j] = (ints[i][j] * ints[r][c] - ints[i][c] * ints[r][j]) // prev
            ints[i][c] = 0
        prev = ints[r][c]
        r += 1
        if r == nrows:
            break
    return r


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def brute_force_circuits(a):
    """Supports of minimal dependent column sets, by checking every subset."""
    cols = a.columns()
    dependent = []
    for size in range(1, a.n + 1):
        for s in combinations(range(a.n), size):
            if any(set(d) <= set(s) for d in dependent):
                continue
            if bareiss_rank([cols[j] for j in s]) < size:
                dependent.append(s)
    return sorted(frozenset(j + 1 for j in s) for s in dependent)


def random_matrix(rng, nrows, ncols, lo=-3, hi=3):
    return RationalMatrix.from_rows([[rng.randint(lo, hi) for _ in range(ncols)] for _ in range(nrows)], ncols)


def random_relation(a, rng, spread=5):
    """A random nonzero rational combination of a basis of F(a)."""
    basis = arr.relation_space(a).vectors
    while True:
        coef = [Fraction(rng.randint(-spread, spread), rng.randint(1, 3)) for _ in basis]
        v = [sum((c * b[j] for c, b in zip(coef, basis)), Fraction(0)) for j in range(a.n)]
        if any(v):
            return arr.Relation.from_vector(v)


def random_polynomial(n, rng, terms=4, max_exp=2):
    out = {}
    for _ in range(rng.randint(1, terms)):
        m = tuple(rng.randint(0, max_exp) for _ in range(n))
        out[m] = out.get(m, 0) + Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return SparsePolynomial(n, out)


def random_point(n, rng):
    return [Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5)) for _ in range(n)]


def induced_relation(rs, rng):
    """A random relation built in the form sum a_i r_i where each r_i meets
    the union of the earlier supports in at most one index."""
    members = list(rs)
    rng.shuffle(members)
    chosen, union = [], set()
    for r in members:
        if not chosen or len(r.support & union) <= 1:
            chosen.append(r)
            union |= r.support
        if len(chosen) >= rng.randint(1, len(members)):
            break
    v = [Fraction(0)] * rs.n
    for r in chosen:
        c = Fraction(rng.choice([-1, 1]) * rng.randint(1, 5), rng.randint(1, 3))
        for i, x in enumerate(r.vector):
            v[i] += c * x
    return arr.Relation.from_vector(v), chosen


def rng_for(seed):
    return random.Random(seed)


def rank_after_rref(m):
    return rref(m)[2]
