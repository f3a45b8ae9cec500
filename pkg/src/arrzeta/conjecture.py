"""Certification sweep: one root certificate per dense edge.

For a dense edge L the quotient arrangement is central, essential and
indecomposable of rank codim(L), and the candidate pole -codim(L)/mult(L)
is certified as a Bernstein-Sato root through the first applicable case:

  (i)   "good-center": the center of the quotient is a good dense edge
        (a purely combinatorial jumping-coefficient certificate);
  (ii)  "reduced-small-rank": the quotient is reduced of rank <= 3; rank 3
        runs the Aomoto certificate search, ranks 1 and 2 are classical;
  (iii) "coprime-generic": the quotient is reduced, gcd(rank, d) = 1, and
        some hyperplane is relatively generic with respect to the others.

Absence of a certificate is reported as "unknown", never as a refutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .aomoto import RootCertificate, certify_root
from .arrangement import (
    Arrangement,
    Edge,
    build_lattice,
    dense_edges,
    is_good_dense_edge,
    is_indecomposable,
    is_moderate_type,
    is_relatively_generic_last,
    quotient,
    _frac_str,
)
from .errors import InvalidInputError

CASE_GOOD_CENTER = "good-center"
CASE_REDUCED_SMALL_RANK = "reduced-small-rank"
CASE_COPRIME_GENERIC = "coprime-generic"

CERTIFIED = "certified"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class CenterCertification:
    outcome: str
    case: str | None
    detail: dict
    certificate: RootCertificate | None = None

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "case": self.case,
            "detail": self.detail,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


@dataclass(frozen=True)
class EdgeCertification:
    edge: Edge
    quotient_rank: int
    quotient_d: int
    quotient_reduced: bool
    result: CenterCertification

    def to_dict(self) -> dict:
        out = {
            "edge": list(self.edge.key),
            "codim": self.edge.codim,
            "mult": self.edge.mult,
            "root": _frac_str(Fraction(-self.quotient_rank, self.quotient_d)),
            "quotient": {
                "rank": self.quotient_rank,
                "d": self.quotient_d,
                "reduced": self.quotient_reduced,
            },
        }
        out.update(self.result.to_dict())
        return out


@dataclass(frozen=True)
class ConjectureReport:
    arrangement: Arrangement
    moderate: bool
    edges: tuple[EdgeCertification, ...]
    verdict: str

    def to_dict(self) -> dict:
        return {
            "moderate_type": self.moderate,
            "edges": [e.to_dict() for e in self.edges],
            "verdict": self.verdict,
        }


def certify_center(arr: Arrangement) -> CenterCertification:
    """Certify -rank/d for a central essential indecomposable arrangement."""
    if not arr.is_central:
        raise InvalidInputError("central certification requires a central arrangement")
    if not arr.is_essential:
        raise InvalidInputError("central certification requires an essential arrangement")
    if not is_indecomposable(arr):
        raise InvalidInputError("central certification requires an indecomposable arrangement")
    rank = arr.n

    center = build_lattice(arr).center()
    if is_good_dense_edge(arr, center):
        ratios = sorted(
            {(_frac_str_ratio(e.codim, e.mult)) for e in dense_edges(arr)}
        )
        return CenterCertification(CERTIFIED, CASE_GOOD_CENTER, {"dense_ratios": ratios})

    if arr.is_reduced and rank <= 3:
        if rank <= 2:
            return CenterCertification(
                CERTIFIED, CASE_REDUCED_SMALL_RANK, {"note": f"classical for rank {rank}"}
            )
        cert = certify_root(arr)
        if cert is not None:
            return CenterCertification(CERTIFIED, CASE_REDUCED_SMALL_RANK, {}, cert)

    if arr.is_reduced and gcd(rank, arr.d) == 1:
        for last in range(arr.e):
            order = [i for i in range(arr.e) if i != last] + [last]
            reordered = Arrangement(arr.n, tuple(arr.hyperplanes[i] for i in order))
            if is_relatively_generic_last(reordered):
                return CenterCertification(
                    CERTIFIED, CASE_COPRIME_GENERIC, {"generic_hyperplane": last}
                )

    return CenterCertification(UNKNOWN, None, {})


def certify_dense_edges(arr: Arrangement) -> ConjectureReport:
    """Run the central certification on the quotient at every dense edge."""
    records = []
    for edge in dense_edges(arr):
        q = quotient(arr, edge)
        result = certify_center(q)
        records.append(
            EdgeCertification(edge, q.n, q.d, q.is_reduced, result)
        )
    verdict = CERTIFIED if all(r.result.outcome == CERTIFIED for r in records) else UNKNOWN
    moderate = is_moderate_type(arr)
    return ConjectureReport(arr, moderate, tuple(records), verdict)


def _frac_str_ratio(n: int, d: int) -> str:
    return _frac_str(Fraction(n, d))
