"""Sparse polynomials over Q, the reciprocal transform and ideal membership.

A monomial is a tuple of n exponents; exponent k belongs to variable
``x{k+1}``. A :class:`SparsePolynomial` maps monomials to nonzero Fractions.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import exactla
from .arrangement import Arrangement, Relation, circuits


def monomial_degree(m) -> int:
    return sum(m)


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def squarefree_monomial(n: int, indices: Iterable[int]):
    """x_S for a set S of 1-based indices."""
    e = [0] * n
    for i in indices:
        e[i - 1] = 1
    return tuple(e)


class SparsePolynomial:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = n
        clean = {}
        if terms:
            for m, c in terms.items():
                c = exactla.as_fraction(c)
                if c:
                    m = tuple(m)
                    if len(m) != n:
                        raise ValueError("monomial has the wrong number of variables")
                    clean[m] = clean.get(m, Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def constant(cls, n: int, c) -> "SparsePolynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "SparsePolynomial":
        """The variable x_i (1-based)."""
        return cls(n, {squarefree_monomial(n, [i]): 1})

    @classmethod
    def monomial(cls, m, c=1) -> "SparsePolynomial":
        return cls(len(m), {tuple(m): c})

    @classmethod
    def linear(cls, coefficients: Sequence) -> "SparsePolynomial":
        n = len(coefficients)
        return cls(n, {squarefree_monomial(n, [i + 1]): c for i, c in enumerate(coefficients)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SparsePolynomial):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == SparsePolynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def _coerce(self, other):
        if isinstance(other, SparsePolynomial):
            if other.n != self.n:
                raise ValueError("polynomials live in different rings")
            return other
        return SparsePolynomial.constant(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SparsePolynomial(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SparsePolynomial(self.n, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        out = defaultdict(Fraction)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out[mono_mul(m1, m2)] += c1 * c2
        return SparsePolynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SparsePolynomial.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def mul_term(self, m, c) -> "SparsePolynomial":
        return SparsePolynomial(self.n, {mono_mul(m, t): c * d for t, d in self.terms.items()})

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def monomials(self):
        return list(self.terms)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t *= exactla.as_fraction(x) ** e
            total += t
        return total

    def set_zero(self, indices: Iterable[int]) -> "SparsePolynomial":
        """Substitute x_i = 0 for each 1-based index i."""
        idx = [i - 1 for i in indices]
        return SparsePolynomial(self.n, {m: c for m, c in self.terms.items()
                                         if not any(m[k] for k in idx)})

    def sorted_terms(self, order: "TermOrder | None" = None, descending: bool = False):
        order = order or TermOrder.grevlex(self.n)
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=descending)

    def to_text(self, order: "TermOrder | None" = None) -> str:
        """Terms in increasing order, e.g. ``x5*x8 + x1*x8 - x1*x5``."""
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms(order):
            factors = []
            for k, e in enumerate(m):
                if e == 1:
                    factors.append(f"x{k + 1}")
                elif e > 1:
                    factors.append(f"x{k + 1}^{e}")
            mag = abs(c)
            if not factors:
                body = exactla.format_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = exactla.format_rational(mag) + "*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"SparsePolynomial({self.n}, {self.to_text()!r})"


@dataclass(frozen=True)
class TermOrder:
    """Graded reverse lex or lex, after ranking variables by ``permutation``.

    ``permutation[0]`` is the 0-based index of the largest variable.
    """

    kind: str
    permutation: tuple

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if sorted(self.permutation) != list(range(len(self.permutation))):
            raise ValueError("permutation must list each variable exactly once")

    @classmethod
    def grevlex(cls, n: int, permutation: Sequence[int] | None = None) -> "TermOrder":
        return cls("grevlex", tuple(permutation) if permutation is not None else tuple(range(n)))

    @classmethod
    def lex(cls, n: int, permutation: Sequence[int] | None = None) -> "TermOrder":
        return cls("lex", tuple(permutation) if permutation is not None else tuple(range(n)))

    @classmethod
    def random(cls, n: int, kind: str = "grevlex", rng: random.Random | None = None) -> "TermOrder":
        rng = rng or random.Random()
        perm = list(range(n))
        rng.shuffle(perm)
        return cls(kind, tuple(perm))

    def key(self, m):
        p = self.permutation
        if self.kind == "lex":
            return tuple(m[i] for i in p)
        return (sum(m),) + tuple(-m[i] for i in reversed(p))

    def leading(self, f: SparsePolynomial):
        m = max(f.terms, key=self.key)
        return m, f.terms[m]


# -- reciprocal transform ---------------------------------------------------


def lambda_of(f: SparsePolynomial):
    """Least common multiple of the monomials of f (the constant 1 for f = 0)."""
    out = (0,) * f.n
    for m in f.terms:
        out = mono_lcm(out, m)
    return out


def iota(f: SparsePolynomial) -> SparsePolynomial:
    """Clear denominators of f(1/x1, ..., 1/xn) by the LCM of f's monomials."""
    lam = lambda_of(f)
    return SparsePolynomial(f.n, {mono_div(lam, m): c for m, c in f.terms.items()})


def relation_polynomial(r: Relation) -> SparsePolynomial:
    return SparsePolynomial.linear(r.vector)


def iota_relation(r: Relation) -> SparsePolynomial:
    """``sum_i a_i x_{supp(r) - i}``, homogeneous of degree length(r) - 1."""
    return iota(relation_polynomial(r))


def universal_gb(a: Arrangement) -> list:
    """Images of all circuit relations, in circuit order."""
    return [iota_relation(r) for r in circuits(a)]


def relation_generators(relations: Iterable[Relation]) -> list:
    """Generators of J(R): the reciprocal images of the given relations."""
    return [iota_relation(r) for r in relations]


# -- division ----------------------------------------------------------------


@dataclass
class MembershipCertificate:
    """``target = sum(cofactors[k] * generators[k])``."""

    target: SparsePolynomial
    generators: list
    cofactors: dict = field(default_factory=dict)

    def expand(self) -> SparsePolynomial:
        total = SparsePolynomial(self.target.n)
        for k, q in self.cofactors.items():
            total = total + q * self.generators[k]
        return total

    def verify(self) -> bool:
        return self.expand() == self.target

    def max_cofactor_degree(self) -> int:
        return max((q.degree for q in self.cofactors.values()), default=-1)


def divide(f: SparsePolynomial, gens: Sequence[SparsePolynomial], order: TermOrder | None = None):
    """Multivariate division. Returns ``(quotients, remainder)``.

    When several leading terms divide the current one, the generator with
    the lowest index is used.
    """
    order = order or TermOrder.grevlex(f.n)
    leads = []
    for g in gens:
        if g.n != f.n:
            raise ValueError("polynomials live in different rings")
        leads.append(order.leading(g) if g else None)
    quot = [defaultdict(Fraction) for _ in gens]
    rem = {}
    p = dict(f.terms)
    key = order.key
    while p:
        m = max(p, key=key)
        c = p[m]
        for k, lead in enumerate(leads):
            if lead is not None and divides(lead[0], m):
                q = mono_div(m, lead[0])
                qc = c / lead[1]
                quot[k][q] += qc
                for t, d in gens[k].terms.items():
                    tt = mono_mul(q, t)
                    v = p.get(tt, 0) - qc * d
                    if v:
                        p[tt] = v
                    else:
                        p.pop(tt, None)
                break
        else:
            rem[m] = c
            del p[m]
    return [SparsePolynomial(f.n, q) for q in quot], SparsePolynomial(f.n, rem)


def normal_form(f: SparsePolynomial, gens: Sequence[SparsePolynomial], order: TermOrder | None = None):
    return divide(f, gens, order)[1]


def division_certificate(f, gens, order=None):
    """Certificate for ``f - normal_form(f)`` from the division quotients."""
    quot, rem = divide(f, gens, order)
    return MembershipCertificate(f - rem, list(gens),
                                 {k: q for k, q in enumerate(quot) if q}), rem


# -- degree-bounded membership ----------------------------------------------


def bounded_membership(f: SparsePolynomial, gens: Sequence[SparsePolynomial], degree_bound: int | None = None,
                       window=None):
    """Search for ``f = sum q_k g_k`` with deg q_k <= degree_bound.

    f and all generators must be homogeneous, so only cofactors of the
    complementary degree matter: the search is a homogeneous Macaulay
    system in degree deg f. Only columns ``m * g_k`` reachable from the
    monomials of f are assembled, which loses nothing. When ``window`` (a
    monomial) is given, columns must also have every monomial dividing it;
    this restricts the search and keeps it small.

    Returns a verified :class:`MembershipCertificate` or None. None means
    "not found within the bounds", not "not a member".
    """
    gens = list(gens)
    n = f.n
    if f.is_zero():
        return MembershipCertificate(f, gens, {})
    if not f.is_homogeneous() or not all(g.is_homogeneous() for g in gens if g):
        raise ValueError("bounded_membership needs homogeneous input")
    if degree_bound is None:
        degree_bound = f.degree
    t = f.degree

    usable = [k for k, g in enumerate(gens) if g and 0 <= t - g.degree <= degree_bound]
    if window is not None and any(not divides(m, window) for m in f.terms):
        return None

    columns = {}  # (k, multiplier) -> polynomial terms
    seen_rows = set(f.terms)
    frontier = list(f.terms)
    while frontier:
        nxt = []
        for row in frontier:
            for k in usable:
                for gm in gens[k].terms:
                    if not divides(gm, row):
                        continue
                    mult = mono_div(row, gm)
                    if (k, mult) in columns:
                        continue
                    col = {mono_mul(mult, tm): c for tm, c in gens[k].terms.items()}
                    if window is not None and any(not divides(m, window) for m in col):
                        continue
                    columns[(k, mult)] = col
                    for m in col:
                        if m not in seen_rows:
                            seen_rows.add(m)
                            nxt.append(m)
        frontier = nxt

    combo = _solve_sparse(dict(f.terms), columns)
    if combo is None:
        return None
    cof = defaultdict(dict)
    for (k, mult), c in combo.items():
        cof[k][mult] = c
    cert = MembershipCertificate(f, gens, {k: SparsePolynomial(n, d) for k, d in sorted(cof.items())})
    cert.cofactors = {k: q for k, q in cert.cofactors.items() if q}
    if not cert.verify():  # pragma: no cover - guards the elimination
        raise AssertionError("membership certificate failed to re-expand")
    return cert


def _solve_sparse(target: dict, columns: dict):
    """Express ``target`` as a combination of sparse column vectors.

    Incremental sparse elimination: each basis vector keeps its pivot row
    and the column combination that produced it.
    """
    basis = {}  # pivot row -> (vector, combination)
    order = sorted(columns)

    def reduce(vec, combo):
        while True:
            piv = next((r for r in sorted(vec, reverse=True) if r in basis), None)
            if piv is None:
                return vec, combo
            bvec, bcombo = basis[piv]
            f = vec[piv]
            for r, c in bvec.items():
                v = vec.get(r, 0) - f * c
                if v:
                    vec[r] = v
                else:
                    vec.pop(r, None)
            for key, c in bcombo.items():
                v = combo.get(key, 0) - f * c
                if v:
                    combo[key] = v
                else:
                    combo.pop(key, None)

    for key in order:
        vec, combo = reduce(dict(columns[key]), {key: Fraction(1)})
        if not vec:
            continue
        piv = max(vec)
        inv = 1 / vec[piv]
        basis[piv] = ({r: c * inv for r, c in vec.items()}, {k: c * inv for k, c in combo.items()})

    vec, combo = reduce(dict(target), {})
    if vec:
        return None
    # reduce() subtracted the combination; flip the sign to get target's.
    return {k: -c for k, c in combo.items()}
