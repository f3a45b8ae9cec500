"""Exact rational hyperplane arrangements and their intersection-lattice combinatorics.

An arrangement is a finite list of affine hyperplanes a.x + c = 0 with positive
integer multiplicities.  Everything downstream (zeta functions, weight systems,
root certificates) consumes only data computed here: the poset of nonempty
intersections (edges), density and goodness of edges, quotient arrangements,
point censuses and Euler characteristics.  All arithmetic is exact.

Conventions:
  * hyperplane indices are 0-based everywhere, including serialized output;
  * an edge is identified with its saturated index set (the set of all
    hyperplanes containing the flat), which determines the flat uniquely;
  * edges of an affine arrangement are the nonempty affine flats, and density
    of an edge is decided on the central localization at the edge.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import linalg
from .errors import InvalidInputError


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


# ---------------------------------------------------------------------------
# core types


@dataclass(frozen=True)
class Hyperplane:
    """A rational affine hyperplane {a.x + c = 0} with a positive multiplicity.

    Canonical form: integer coefficient vector with gcd 1 and positive first
    nonzero entry; the constant is rescaled along with the coefficients.
    """

    coeffs: tuple[int, ...]
    constant: Fraction
    mult: int

    @classmethod
    def make(cls, coeffs, constant=0, mult: int = 1) -> "Hyperplane":
        try:
            fr = [Fraction(c) for c in coeffs]
            const = Fraction(constant)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"bad hyperplane data: {exc}") from exc
        if not fr or all(c == 0 for c in fr):
            raise InvalidInputError("hyperplane normal vector must be nonzero")
        if not isinstance(mult, int) or mult < 1:
            raise InvalidInputError(f"multiplicity must be a positive integer, got {mult!r}")
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        ints = [int(c * den) for c in fr]
        g = 0
        for c in ints:
            g = gcd(g, c)
        ints = [c // g for c in ints]
        const = const * Fraction(den, g)
        if next(c for c in ints if c != 0) < 0:
            ints = [-c for c in ints]
            const = -const
        return cls(tuple(ints), const, mult)

    def value_at(self, point) -> Fraction:
        return sum((a * x for a, x in zip(self.coeffs, point)), start=Fraction(0)) + self.constant

    def contains_flat(self, point, basis) -> bool:
        if self.value_at(point) != 0:
            return False
        return all(sum(a * v for a, v in zip(self.coeffs, vec)) == 0 for vec in basis)


@dataclass(frozen=True)
class Arrangement:
    """An ordered list of distinct hyperplanes in Q^n, each with a multiplicity."""

    n: int
    hyperplanes: tuple[Hyperplane, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidInputError("ambient dimension must be a positive integer")
        if not self.hyperplanes:
            raise InvalidInputError("arrangement must contain at least one hyperplane")
        seen = set()
        for h in self.hyperplanes:
            if len(h.coeffs) != self.n:
                raise InvalidInputError("hyperplane dimension does not match the ambient space")
            key = (h.coeffs, h.constant)
            if key in seen:
                # multiplicity must be given explicitly; silent merging hides mistakes
                raise InvalidInputError(f"duplicate hyperplane {h.coeffs}, {h.constant}")
            seen.add(key)

    @classmethod
    def make(cls, n: int, rows) -> "Arrangement":
        """Build from (coeffs, mult) or (coeffs, constant, mult) tuples."""
        hps = []
        for row in rows:
            if len(row) == 2:
                coeffs, mult = row
                hps.append(Hyperplane.make(coeffs, 0, mult))
            else:
                coeffs, constant, mult = row
                hps.append(Hyperplane.make(coeffs, constant, mult))
        return cls(n, tuple(hps))

    @property
    def e(self) -> int:
        return len(self.hyperplanes)

    @property
    def d(self) -> int:
        return sum(h.mult for h in self.hyperplanes)

    @property
    def mults(self) -> tuple[int, ...]:
        return tuple(h.mult for h in self.hyperplanes)

    @property
    def is_central(self) -> bool:
        return all(h.constant == 0 for h in self.hyperplanes)

    @property
    def is_reduced(self) -> bool:
        return all(h.mult == 1 for h in self.hyperplanes)

    def normals(self, indices=None) -> list[list[Fraction]]:
        idx = range(self.e) if indices is None else sorted(indices)
        return [[Fraction(c) for c in self.hyperplanes[i].coeffs] for i in idx]

    @property
    def rank(self) -> int:
        return linalg.rank(self.normals())

    @property
    def is_essential(self) -> bool:
        return self.rank == self.n


@dataclass(frozen=True)
class Edge:
    """A nonempty intersection of hyperplanes (a flat), with saturated index set."""

    indices: frozenset[int]
    codim: int
    mult: int
    point: tuple[Fraction, ...]
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.point) - self.codim

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.indices))

    def __repr__(self):  # keep reprs short in test output
        return f"Edge(indices={sorted(self.indices)}, codim={self.codim}, mult={self.mult})"


@dataclass(frozen=True, eq=False)
class IntersectionLattice:
    """All edges of an arrangement ordered by codimension, with Mobius values.

    The bottom element is the ambient space (empty index set).  Containment of
    flats is reverse inclusion of saturated index sets: F contains G as a
    subspace iff F.indices is a subset of G.indices.
    """

    arrangement: Arrangement
    edges: tuple[Edge, ...]

    def __post_init__(self):
        mob: dict[frozenset[int], int] = {}
        for edge in self.edges:  # edges are sorted by codim, so predecessors exist
            below = sum(mob[f.indices] for f in self.edges if f.indices < edge.indices)
            mob[edge.indices] = 1 if edge.codim == 0 else -below
        object.__setattr__(self, "_mobius", mob)
        object.__setattr__(self, "_by_key", {e.indices: e for e in self.edges})

    def mobius(self, edge: Edge) -> int:
        return self._mobius[edge.indices]

    def edge(self, indices) -> Edge:
        return self._by_key[frozenset(indices)]

    def proper_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.codim > 0)

    def edges_of_codim(self, c: int) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.codim == c)

    def center(self) -> Edge | None:
        """The common intersection of all hyperplanes, if nonempty."""
        return self._by_key.get(frozenset(range(self.arrangement.e)))

    def smallest_edge_containing(self, indices) -> Edge | None:
        """The flat cut out by the given hyperplanes (None if their intersection is empty)."""
        need = frozenset(indices)
        best = None
        for e in self.edges:
            if need <= e.indices and (best is None or e.codim < best.codim):
                best = e
        return best


# ---------------------------------------------------------------------------
# lattice construction


@lru_cache(maxsize=None)
def build_lattice(arr: Arrangement) -> IntersectionLattice:
    """Enumerate every nonempty intersection of hyperplanes, saturated and deduplicated."""
    n = arr.n
    hrows = [[Fraction(c) for c in h.coeffs] + [-h.constant] for h in arr.hyperplanes]

    def saturate(red, pivots) -> frozenset[int]:
        return frozenset(j for j in range(arr.e) if linalg.in_span(red, pivots, hrows[j]))

    def make_edge(sat, red, pivots) -> Edge:
        point = [Fraction(0)] * n
        for row, p in zip(red, pivots):
            point[p] = row[-1]
        free = [c for c in range(n) if c not in pivots]
        basis = []
        for f in free:
            vec = [Fraction(0)] * n
            vec[f] = Fraction(1)
            for row, p in zip(red, pivots):
                vec[p] = -row[f]
            basis.append(tuple(vec))
        mult = sum(arr.hyperplanes[i].mult for i in sat)
        return Edge(sat, len(pivots), mult, tuple(point), tuple(basis))

    systems: dict[frozenset[int], tuple] = {frozenset(): ([], [])}
    edges: dict[frozenset[int], Edge] = {frozenset(): make_edge(frozenset(), [], [])}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for key in frontier:
            red, pivots = systems[key]
            for i in range(arr.e):
                if i in key:
                    continue
                red2, piv2 = linalg.rref([list(r) for r in red] + [hrows[i]])
                if n in piv2:  # pivot in the constants column: empty intersection
                    continue
                sat = saturate(red2, piv2)
                if sat in edges:
                    continue
                systems[sat] = (red2, piv2)
                edges[sat] = make_edge(sat, red2, piv2)
                nxt.append(sat)
        frontier = nxt
    ordered = sorted(edges.values(), key=lambda e: (e.codim, e.key))
    return IntersectionLattice(arr, tuple(ordered))


# ---------------------------------------------------------------------------
# classification and decomposability


def classify(arr: Arrangement) -> dict:
    return {
        "central": arr.is_central,
        "essential": arr.is_essential,
        "reduced": arr.is_reduced,
    }


def _normals_indecomposable(normals) -> bool:
    """Whether the vector configuration cannot be split into two nonempty parts
    spanning complementary independent subspaces.  A single vector counts as
    indecomposable (rank-1 convention)."""
    return _normals_indecomposable_cached(tuple(tuple(v) for v in normals))


@lru_cache(maxsize=None)
def _normals_indecomposable_cached(normals) -> bool:
    e = len(normals)
    if e == 1:
        return True
    total = linalg.rank(normals)
    rank_of = {}

    def rk(subset):
        if subset not in rank_of:
            rank_of[subset] = linalg.rank([normals[i] for i in subset])
        return rank_of[subset]

    rest = list(range(1, e))
    for size in range(0, e - 1):
        for combo in itertools.combinations(rest, size):
            part = frozenset((0,) + combo)
            other = frozenset(range(e)) - part
            if rk(part) + rk(other) == total:
                return False
    return True


def indecomposable_by_partition(arr: Arrangement) -> bool:
    """Decomposability straight from the definition, by scanning bipartitions
    of the normals.  Multiplicities are ignored."""
    if not arr.is_central:
        raise InvalidInputError("decomposability is defined for central arrangements")
    return _normals_indecomposable(arr.normals())


def indecomposable_by_euler(arr: Arrangement) -> bool:
    """Dual test: nonvanishing Euler characteristic of the projective complement."""
    return euler_char_proj_complement(arr) != 0


def is_indecomposable(arr: Arrangement) -> bool:
    return indecomposable_by_partition(arr)


def euler_char_proj_complement(arr: Arrangement) -> int:
    """Euler characteristic of the complement of the projectivized arrangement,
    from Mobius values: the derivative at 1 of sum_X mu(X) t^dim(X)."""
    if not arr.is_central:
        raise InvalidInputError("projective complement requires a central arrangement")
    lat = build_lattice(arr)
    return sum(lat.mobius(e) * e.dim for e in lat.edges)


# ---------------------------------------------------------------------------
# quotients, localization, essentialization


def _complement_basis(n: int, basis) -> list[tuple[Fraction, ...]]:
    """Standard basis vectors completing `basis` to a basis of Q^n (greedy)."""
    rows = [list(v) for v in basis]
    out = []
    r = linalg.rank(rows)
    for i in range(n):
        cand = [Fraction(0)] * n
        cand[i] = Fraction(1)
        if linalg.rank(rows + [cand]) > r:
            rows.append(cand)
            out.append(tuple(cand))
            r += 1
    return out


def quotient(arr: Arrangement, edge: Edge) -> Arrangement:
    """The arrangement induced on the quotient of the ambient space by an edge:
    the hyperplanes through the edge, seen in a complement of its direction
    space, with multiplicities preserved.  Central and essential of rank codim(edge)."""
    if edge.codim == 0:
        raise InvalidInputError("cannot take the quotient by the ambient edge")
    comp = _complement_basis(arr.n, edge.basis)
    hps = []
    for i in sorted(edge.indices):
        h = arr.hyperplanes[i]
        coeffs = [sum(a * w for a, w in zip(h.coeffs, vec)) for vec in comp]
        hps.append(Hyperplane.make(coeffs, 0, h.mult))
    return Arrangement(edge.codim, tuple(hps))


def localize(arr: Arrangement, point) -> Arrangement:
    """The central arrangement at a point: hyperplanes through it, translated to 0."""
    pt = tuple(Fraction(x) for x in point)
    if len(pt) != arr.n:
        raise InvalidInputError("point dimension mismatch")
    hps = [Hyperplane.make(h.coeffs, 0, h.mult) for h in arr.hyperplanes if h.value_at(pt) == 0]
    if not hps:
        raise InvalidInputError("the point does not lie on the divisor")
    return Arrangement(arr.n, tuple(hps))


def essentialize(arr: Arrangement) -> Arrangement:
    """Quotient a central arrangement by the common center; identity when essential."""
    if not arr.is_central:
        raise InvalidInputError("essentialization requires a central arrangement")
    if arr.is_essential:
        return arr
    center = build_lattice(arr).center()
    return quotient(arr, center)


# ---------------------------------------------------------------------------
# dense and good edges


def is_dense(arr: Arrangement, edge: Edge) -> bool:
    """An edge is dense when the quotient arrangement at it is indecomposable.
    Codimension-1 edges are always dense (rank-1 quotient convention)."""
    if edge.codim == 0:
        return False
    if edge.codim == 1:
        return True
    return _normals_indecomposable(arr.normals(edge.indices))


@lru_cache(maxsize=None)
def dense_edges(arr: Arrangement) -> tuple[Edge, ...]:
    lat = build_lattice(arr)
    return tuple(e for e in lat.proper_edges() if is_dense(arr, e))


def is_good_dense_edge(arr: Arrangement, edge: Edge) -> bool:
    """Good means codim/mult is minimal among the dense edges containing this one."""
    if not is_dense(arr, edge):
        raise InvalidInputError("goodness is defined for dense edges")
    ratio = Fraction(edge.codim, edge.mult)
    for other in dense_edges(arr):
        if other.indices < edge.indices and Fraction(other.codim, other.mult) < ratio:
            return False
    return True


def is_moderate_type(arr: Arrangement) -> bool:
    return all(is_good_dense_edge(arr, e) for e in dense_edges(arr))


# ---------------------------------------------------------------------------
# rank-3 point geometry


def _essential_rank3(arr: Arrangement) -> Arrangement:
    if not arr.is_central:
        raise InvalidInputError("rank-3 operations require a central arrangement")
    ess = essentialize(arr)
    if ess.n != 3:
        raise InvalidInputError(f"operation requires rank 3, got rank {ess.n}")
    return ess


def point_census(arr: Arrangement) -> list[tuple[int, int]]:
    """Multiset of (number of distinct lines through p, total multiplicity at p)
    over the singular points of the projectivized arrangement."""
    ess = _essential_rank3(arr)
    lat = build_lattice(ess)
    return sorted((len(e.indices), e.mult) for e in lat.edges_of_codim(2))


def euler_chars_rank3(arr: Arrangement) -> tuple[int, int]:
    """(chi of the projective complement, chi of the curve minus its singular points),
    computed from the reduced incidence census."""
    ess = _essential_rank3(arr)
    census = point_census(ess)
    e = ess.e
    chi_open = 3 - 2 * e + sum(mp - 1 for mp, _ in census)
    chi_curve = 2 * e - sum(mp for mp, _ in census)
    return chi_open, chi_curve


def nnc_points(arr: Arrangement, excluding: int | None = None) -> tuple[Edge, ...]:
    """Singular points where the divisor fails to be normal crossing.

    Conservative superset: points with three or more distinct lines, or lying
    on a component of multiplicity >= 2.  Enlarging the set keeps every
    certificate that checks it sound.  Optionally drops points on one line.
    """
    ess = _essential_rank3(arr)
    lat = build_lattice(ess)
    out = []
    for e in lat.edges_of_codim(2):
        if excluding is not None and excluding in e.indices:
            continue
        if len(e.indices) >= 3 or any(ess.hyperplanes[i].mult >= 2 for i in e.indices):
            out.append(e)
    return tuple(out)


# ---------------------------------------------------------------------------
# relative genericity


def is_relatively_generic_last(arr: Arrangement) -> bool:
    """Whether no nonzero intersection of the other hyperplanes lies inside the last one."""
    if not arr.is_central:
        raise InvalidInputError("relative genericity is defined for central arrangements")
    if not arr.is_reduced:
        raise InvalidInputError("relative genericity is defined for reduced arrangements")
    if arr.e < 2:
        raise InvalidInputError("need at least two hyperplanes")
    last = arr.hyperplanes[-1]
    sub = Arrangement(arr.n, arr.hyperplanes[:-1])
    for edge in build_lattice(sub).proper_edges():
        if edge.dim >= 1 and last.contains_flat(edge.point, edge.basis):
            return False
    return True


# ---------------------------------------------------------------------------
# serialization (the arrangement file format)


def _frac_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def arrangement_to_dict(arr: Arrangement) -> dict:
    return {
        "n": arr.n,
        "hyperplanes": [
            {
                "coeffs": [str(c) for c in h.coeffs],
                "constant": _frac_str(h.constant),
                "mult": h.mult,
            }
            for h in arr.hyperplanes
        ],
    }


def arrangement_from_dict(data) -> Arrangement:
    if not isinstance(data, dict) or "n" not in data or "hyperplanes" not in data:
        raise InvalidInputError("arrangement object must have 'n' and 'hyperplanes'")
    if not isinstance(data["hyperplanes"], list) or not data["hyperplanes"]:
        raise InvalidInputError("'hyperplanes' must be a nonempty list")
    hps = []
    for item in data["hyperplanes"]:
        if not isinstance(item, dict) or "coeffs" not in item:
            raise InvalidInputError("each hyperplane needs a 'coeffs' list")
        mult = item.get("mult", 1)
        if not isinstance(mult, int):
            raise InvalidInputError("'mult' must be an integer")
        hps.append(Hyperplane.make(item["coeffs"], item.get("constant", 0), mult))
    n = data["n"]
    if not isinstance(n, int):
        raise InvalidInputError("'n' must be an integer")
    return Arrangement(n, tuple(hps))


def load_arrangement(path) -> Arrangement:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc}") from exc
    return arrangement_from_dict(data)


def lattice_to_dict(arr: Arrangement) -> dict:
    """Edge listing with density/goodness flags (the `lattice` report)."""
    lat = build_lattice(arr)
    rows = []
    for e in lat.edges:
        dense = is_dense(arr, e)
        rows.append(
            {
                "indices": list(e.key),
                "codim": e.codim,
                "dim": e.dim,
                "mult": e.mult,
                "mobius": lat.mobius(e),
                "dense": dense,
                "good": is_good_dense_edge(arr, e) if dense else None,
                "point": [_frac_str(x) for x in e.point],
                "basis": [[_frac_str(x) for x in v] for v in e.basis],
            }
        )
    return {"n": arr.n, "rank": arr.rank, "d": arr.d, "edges": rows}
