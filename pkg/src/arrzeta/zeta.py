"""Closed-form topological local zeta functions at the origin for central
arrangements of rank <= 3, candidate-pole enumeration for any rank, and the
pole/sign report.

Rank 2 needs one blow-up of the origin; the closed form is

    Z(s) = (2 - e + sum_i 1/(m_i s + 1)) / (d s + 2).

Rank 3 blows up every singular point of the projectivized arrangement
(including ordinary double points; the extra blow-ups cancel exactly, which
the test suite checks as a canonical-form identity):

    Z(s) = ( chi(open part)
             + sum_i chi(line_i minus singular points)/(m_i s + 1)
             + sum_p (2 - m'_p + sum_{i through p} 1/(m_i s + 1)) / (m_p s + 2)
           ) / (d s + 3),

where m'_p counts distinct lines through p and m_p their multiplicity sum.
On reduced input this collapses to the classical census form implemented
separately in `reduced_zeta_rank3_closed_form` as an independent route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import (
    Arrangement,
    Edge,
    build_lattice,
    dense_edges,
    essentialize,
    euler_chars_rank3,
    is_dense,
    is_good_dense_edge,
    is_indecomposable,
    point_census,
    _frac_str,
)
from .errors import InvalidInputError, InternalCheckError, UnsupportedError
from .ratfunc import RationalFunction

_inv = RationalFunction.factor_inverse


@dataclass(frozen=True)
class CandidatePole:
    value: Fraction
    edge: Edge
    modulus: int  # d(L); the p-adic pole ladder over this real part has spacing 2*pi/(d(L) log q)

    def to_dict(self) -> dict:
        return {
            "pole": _frac_str(self.value),
            "edge": list(self.edge.key),
            "codim": self.edge.codim,
            "mult": self.edge.mult,
            "padic_modulus": self.modulus,
        }


@dataclass(frozen=True)
class ActualPole:
    value: Fraction
    order: int
    factor: tuple[int, int]
    coefficient: Fraction | None  # residue-style coefficient for the stated factor, simple poles only

    def to_dict(self) -> dict:
        return {
            "pole": _frac_str(self.value),
            "order": self.order,
            "factor": list(self.factor),
            "coefficient": None if self.coefficient is None else _frac_str(self.coefficient),
        }


@dataclass(frozen=True)
class ZetaReport:
    arrangement: Arrangement
    rank: int
    zeta: RationalFunction
    candidates: tuple[CandidatePole, ...]
    actual: tuple[ActualPole, ...]
    flags: dict

    def to_dict(self) -> dict:
        flags = dict(self.flags)
        if flags.get("center_coefficient") is not None:
            flags["center_coefficient"] = _frac_str(flags["center_coefficient"])
        return {
            "rank": self.rank,
            "d": self.arrangement.d,
            "zeta": self.zeta.to_dict(),
            "candidate_poles": [c.to_dict() for c in self.candidates],
            "actual_poles": [a.to_dict() for a in self.actual],
            "flags": flags,
        }


def candidate_poles(arr: Arrangement) -> tuple[CandidatePole, ...]:
    """-codim(L)/mult(L) over the dense edges, one witness per value.

    Hyperplanes are codimension-1 dense edges, so the -1/m_i candidates are
    included automatically.  Works for affine arrangements as well.
    """
    best: dict[Fraction, Edge] = {}
    for edge in dense_edges(arr):
        val = Fraction(-edge.codim, edge.mult)
        cur = best.get(val)
        # prefer the deepest witness, then lexicographic indices
        if cur is None or edge.codim > cur.codim or (edge.codim == cur.codim and edge.key < cur.key):
            best[val] = edge
    return tuple(
        CandidatePole(val, edge, edge.mult) for val, edge in sorted(best.items())
    )


def zeta_rank1(m: int) -> RationalFunction:
    if not isinstance(m, int) or m < 1:
        raise InvalidInputError("multiplicity must be a positive integer")
    return _inv(m, 1)


def zeta_rank2(arr: Arrangement) -> ZetaReport:
    ess = _essential_of_rank(arr, 2)
    d = ess.d
    inner = RationalFunction.constant(2 - ess.e)
    for m in ess.mults:
        inner = inner + _inv(m, 1)
    return _build_report(ess, _inv(d, 2) * inner, 2)


def zeta_rank3(arr: Arrangement) -> ZetaReport:
    ess = _essential_of_rank(arr, 3)
    lat = build_lattice(ess)
    points = lat.edges_of_codim(2)
    chi_open, _ = euler_chars_rank3(ess)
    through = {i: [p for p in points if i in p.indices] for i in range(ess.e)}
    inner = RationalFunction.constant(chi_open)
    for i, m in enumerate(ess.mults):
        inner = inner + (2 - len(through[i])) * _inv(m, 1)
    for p in points:
        term = RationalFunction.constant(2 - len(p.indices))
        for i in sorted(p.indices):
            term = term + _inv(ess.mults[i], 1)
        inner = inner + term * _inv(p.mult, 2)
    return _build_report(ess, _inv(ess.d, 3) * inner, 3)


def reduced_zeta_rank3_closed_form(arr: Arrangement) -> RationalFunction:
    """The census-aggregated closed form, valid for reduced rank-3 input only.
    Kept as an independent route and compared with `zeta_rank3` in tests."""
    ess = _essential_of_rank(arr, 3)
    if not ess.is_reduced:
        raise InvalidInputError("closed census form requires a reduced arrangement")
    d = ess.d
    chi_open, chi_curve = euler_chars_rank3(ess)
    nu: dict[int, int] = {}
    for m_prime, _ in point_census(ess):
        nu[m_prime] = nu.get(m_prime, 0) + 1
    inner = RationalFunction.constant(chi_open) + chi_curve * _inv(1, 1)
    for m, count in sorted(nu.items()):
        inner = inner + (RationalFunction.constant(2 - m) + m * _inv(1, 1)) * count * _inv(m, 2)
    return _inv(d, 3) * inner


def rank2_center_coefficient(arr: Arrangement) -> Fraction:
    """Closed form 2 - e + sum_i d/(d - 2 m_i) for the coefficient at (d s + 2)."""
    ess = _essential_of_rank(arr, 2)
    d = ess.d
    if any(2 * m == d for m in ess.mults):
        raise InvalidInputError("coefficient undefined: the center pole has order 2")
    return Fraction(2 - ess.e) + sum(Fraction(d, d - 2 * m) for m in ess.mults)


def rank3_center_coefficient(census, d: int) -> Fraction:
    """Closed form (9/(d-3)) (d - 1 + sum_{m != 2d/3} m(m-1)/(2d-3m) nu_m) from a
    reduced census; the m = 2d/3 points would make the pole have order 2."""
    if d == 3:
        raise InvalidInputError("coefficient formula needs d > 3")
    total = Fraction(d - 1)
    for m_prime, m_weighted in census:
        if m_prime != m_weighted:
            raise InvalidInputError("census formula requires a reduced arrangement")
        if 3 * m_prime == 2 * d:
            continue
        total += Fraction(m_prime * (m_prime - 1), 2 * d - 3 * m_prime)
    return Fraction(9, d - 3) * total


def pole_report(arr: Arrangement) -> ZetaReport:
    """Dispatch by rank, then attach the sign analysis at the center pole.

    For indecomposable inputs (rank 2 with any multiplicities, rank 3 reduced)
    the center candidate -rank/d must be an actual pole, and for simple poles
    the sign of its coefficient must match goodness of the center; both facts
    are re-verified here and a violation raises, since it would mean a bug.
    """
    if not arr.is_central:
        raise InvalidInputError("the pole report is defined for central arrangements")
    ess = essentialize(arr)
    rank = ess.n
    if rank > 3:
        raise UnsupportedError(f"closed-form zeta is implemented for rank <= 3, got rank {rank}")
    if rank == 1:
        report = _build_report(ess, zeta_rank1(ess.mults[0]), 1)
    elif rank == 2:
        report = zeta_rank2(ess)
    else:
        report = zeta_rank3(ess)
    dichotomy_applies = rank <= 2 or ess.is_reduced
    if dichotomy_applies and is_indecomposable(ess):
        order = report.flags["center_pole_order"]
        if order < 1:
            raise InternalCheckError("-rank/d must be a pole for indecomposable input")
        if order == 1:
            positive = report.flags["center_coefficient"] > 0
            if positive != report.flags["center_good"]:
                raise InternalCheckError("center coefficient sign contradicts goodness")
    return report


# ---------------------------------------------------------------------------


def _essential_of_rank(arr: Arrangement, rank: int) -> Arrangement:
    if not arr.is_central:
        raise InvalidInputError("closed-form zeta requires a central arrangement")
    ess = essentialize(arr)
    if ess.n != rank:
        raise InvalidInputError(f"operation requires rank {rank}, got rank {ess.n}")
    return ess


def _order2_criterion(ess: Arrangement, rank: int) -> bool:
    if rank == 2:
        return any(2 * m == ess.d for m in ess.mults)
    if rank == 3:
        d = ess.d
        return d % 3 == 0 and any(3 * mw == 2 * d for _, mw in point_census(ess))
    return False


def _build_report(ess: Arrangement, zeta: RationalFunction, rank: int) -> ZetaReport:
    cands = candidate_poles(ess)
    witness = {c.value: c.edge for c in cands}
    actual = []
    for fac, order in zeta.den:
        val = fac.root
        edge = witness.get(val)
        display = (edge.mult, edge.codim) if edge is not None else (fac.a, fac.b)
        coeff = zeta.pole_coefficient(display) if order == 1 else None
        actual.append(ActualPole(val, order, display, coeff))
    actual.sort(key=lambda a: a.value)

    lat = build_lattice(ess)
    center_edge = lat.center()
    center_dense = is_dense(ess, center_edge)
    center_good = center_dense and is_good_dense_edge(ess, center_edge)
    center = Fraction(-rank, ess.d)
    order = zeta.pole_order(center)
    coeff = zeta.pole_coefficient((ess.d, rank)) if order <= 1 else None
    flags = {
        "center_dense": center_dense,
        "center_good": center_good,
        "center_pole_order": order,
        "order2": order == 2,
        "order2_criterion": _order2_criterion(ess, rank),
        "center_coefficient": coeff,
        "center_sign": None if coeff is None else (coeff > 0) - (coeff < 0),
    }
    return ZetaReport(ess, rank, zeta, cands, tuple(actual), flags)
