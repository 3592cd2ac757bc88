"""Spanning-set tests, truncated Orlik-Terao ideals and codimension reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import covers
from .arrangement import Arrangement, RelationSet, circuit_set, circuits, circuits_of_span
from .errors import CertificateNotFound, InvalidParameter
from .polynomial import (
    SparsePolynomial,
    TermOrder,
    bounded_membership,
    iota_relation,
    lambda_of,
    mono_lcm,
    normal_form,
    relation_generators,
    squarefree_monomial,
    universal_gb,
)


def is_R_generated(a: Arrangement, rs: RelationSet) -> bool:
    return rs.dim == a.n - a.rank


def is_k_generated(a: Arrangement, k: int) -> bool:
    """Whether circuit relations of length at most k+1 span F(a)."""
    if k < 2:
        raise InvalidParameter("k must be at least 2")
    return is_R_generated(a, circuit_set(a, k + 1))


def is_two_formal(a: Arrangement) -> bool:
    return is_k_generated(a, 2)


def truncated_ot_generators(a: Arrangement, k: int) -> list:
    """Generators of the ideal spanned by the elements of I(a) of degree <= k.

    Every element of that degree range is a combination of circuit images of
    degree <= k, so the images of circuits of length <= k+1 suffice.
    """
    if k < 2:
        raise InvalidParameter("k must be at least 2")
    return [iota_relation(r) for r in circuits(a, k + 1)]


def quadratic_relations(a: Arrangement) -> RelationSet:
    """The length-3 circuit relations; their images generate I<2>(a)."""
    return circuit_set(a, 3)


@dataclass
class FormalityReport:
    n: int
    rank: int
    codim_I: int
    codim_quadratic: int
    quadratic_witness: frozenset
    two_formal: bool
    k_generated: dict
    ratio_note: Fraction | None = None


def k_generation_profile(a: Arrangement) -> dict:
    """k -> k-generated, for 2 <= k <= rank + 1.

    Once some k works every larger k does, so circuits are only enumerated
    up to the first success.
    """
    profile = {}
    reached = False
    for k in range(2, a.rank + 2):
        if not reached:
            reached = is_k_generated(a, k)
        profile[k] = reached
    return profile


def formality_report(a: Arrangement, method: str = "auto", budget: int | None = None,
                     workers: int = 1) -> FormalityReport:
    rq = quadratic_relations(a)
    codim_q, witness = covers.codim_J(rq, method=method, budget=budget, workers=workers)
    profile = k_generation_profile(a)
    codim_i = a.n - a.rank
    ratio = None
    if codim_q and codim_i % codim_q == 0:
        ratio = Fraction(codim_i, codim_q)
    return FormalityReport(
        n=a.n,
        rank=a.rank,
        codim_I=codim_i,
        codim_quadratic=codim_q,
        quadratic_witness=witness,
        two_formal=profile.get(2, False),
        k_generated=profile,
        ratio_note=ratio,
    )


# -- saturation verification ------------------------------------------------


def saturation_window(f: SparsePolynomial):
    """Bounding monomial for certificate searches: lcm(Lambda(f), x_[n])."""
    return mono_lcm(lambda_of(f), squarefree_monomial(f.n, range(1, f.n + 1)))


def saturation_target(r) -> SparsePolynomial:
    """x_[n] * iota(r)."""
    n = r.n
    return SparsePolynomial.monomial(squarefree_monomial(n, range(1, n + 1))) * iota_relation(r)


@dataclass
class SaturationEntry:
    relation: object
    target: SparsePolynomial
    certificate: object  # MembershipCertificate or None

    @property
    def passed(self) -> bool:
        return self.certificate is not None


@dataclass
class SaturationRecord:
    """Both inclusions between I(a) and the saturation of J(rs).

    ``saturation`` holds, for each circuit r of span(rs), a certificate that
    x_[n] * iota(r) lies in J(rs). ``containment`` holds, for each member r,
    the remainder of iota(r) modulo the circuit basis of I(a).
    """

    degree_bound: int | None
    saturation: list = field(default_factory=list)
    containment: list = field(default_factory=list)  # (relation, remainder)
    spans: bool = False

    @property
    def saturation_passed(self) -> bool:
        return all(e.passed for e in self.saturation)

    @property
    def containment_passed(self) -> bool:
        return all(rem.is_zero() for _, rem in self.containment)

    @property
    def passed(self) -> bool:
        return self.saturation_passed and self.containment_passed


def verify_spanning_saturation(a: Arrangement, rs: RelationSet, degree_bound: int | None = None,
                               order: TermOrder | None = None, strict: bool = True) -> SaturationRecord:
    """Certify I(span rs) = J(rs) : x_[n] on generators, and J(rs) in I(a).

    ``degree_bound`` caps cofactor degrees; the default lets each search use
    the full complementary degree. With ``strict`` a missing certificate
    raises CertificateNotFound, otherwise it is recorded as a failure.
    """
    gens = relation_generators(rs)
    record = SaturationRecord(degree_bound, spans=is_R_generated(a, rs))
    for r in circuits_of_span(rs):
        target = saturation_target(r)
        cert = bounded_membership(target, gens, degree_bound, window=saturation_window(target))
        if cert is None and strict:
            raise CertificateNotFound(target.to_text(), degree_bound)
        record.saturation.append(SaturationEntry(r, target, cert))
    gb = universal_gb(a)
    for r in rs:
        record.containment.append((r, normal_form(iota_relation(r), gb, order)))
    return record
