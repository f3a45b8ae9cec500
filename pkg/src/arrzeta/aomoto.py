"""Rank-3 Orlik-Solomon / Aomoto machinery and Bernstein-Sato root certificates.

Fix a rank-3 central essential arrangement with components of multiplicity
m_i, total degree d, and a target root -k/d.  Choosing a line at infinity
(index e) and a subset I of the others determines a weight system

    alpha_i = [i in I u {e}] - m_i k / d        (sum is 0 by construction),

a logarithmic one-form w = sum_{i != e} alpha_i dg_i/g_i on the affine chart,
and the three-term complex A0 -> A1 -> A2 of constant-coefficient logarithmic
forms with differential w ^ . .  A2 splits into one block per affine
intersection point p, of rank (lines through p) - 1, with basis e_i ^ e_anchor;
concurrent wedges reduce to the block basis via e_i^e_j = e_i^e_a - e_j^e_a.

A root certificate for -k/d is a witness (e, I, optionally a special point p0)
together with named, machine-replayable checks.  Three routes are searched:

  * "direct-image":  nonresonance on dense edges plus exact nonvanishing of
    the wedge e_I in the top cohomology (one fraction-exact linear solve);
  * "connectivity-conditions":  nonresonance on the non-normal-crossing
    points, a pencil point of the two I-lines off the infinity line, and
    connectivity of the punctured curve; these imply the direct route, and
    the linear-algebra oracle re-checks that implication at runtime;
  * "high-multiplicity-point":  when some projective point carries more than
    2d/3 of the total multiplicity, a purely combinatorial argument applies
    under hypotheses on the two chosen lines; the oracle re-checks it.

All linear algebra is exact over Fraction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .arrangement import (
    Arrangement,
    Edge,
    build_lattice,
    dense_edges,
    nnc_points,
    _frac_str,
)
from .errors import (
    InternalCheckError,
    InvalidInputError,
    RouteHypothesisError,
)

ROUTE_DIRECT = "direct-image"
ROUTE_CONDITIONS = "connectivity-conditions"
ROUTE_SPECIAL_POINT = "high-multiplicity-point"

CHECK_SUM_ZERO = "weights-sum-zero"
CHECK_STV = "dense-edge-nonresonance"
CHECK_IMAGE = "image-nonvanishing"
CHECK_NNC = "nnc-nonresonance"
CHECK_PENCIL = "pencil-point"
CHECK_CONNECT = "curve-connectivity"
CHECK_SPECIAL = "high-mult-point-hypotheses"

CONVENTION_DEFAULT = "k-1"  # the infinity line shares the +1 shift with I
CONVENTION_ALT = "k"  # the +1 shift sits entirely inside the chart


@dataclass(frozen=True)
class WeightSystem:
    arrangement: Arrangement
    e_index: int
    I: frozenset[int]
    k: int
    convention: str
    alphas: tuple[Fraction, ...]

    @property
    def chart(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.arrangement.e) if i != self.e_index)

    def alpha_of_edge(self, edge: Edge) -> Fraction:
        return sum((self.alphas[i] for i in edge.indices), start=Fraction(0))

    @property
    def root(self) -> Fraction:
        return Fraction(-self.k, self.arrangement.d)


def weight_system(
    arr: Arrangement,
    e_index: int,
    I,
    k: int = 3,
    convention: str = CONVENTION_DEFAULT,
) -> WeightSystem:
    """Residue weights for the chart at hyperplane `e_index` and subset `I`."""
    if not (arr.is_central and arr.is_essential and arr.n == 3):
        raise InvalidInputError("weight systems are built on rank-3 central essential arrangements")
    if not isinstance(k, int) or k < 1:
        raise InvalidInputError("k must be a positive integer")
    if e_index not in range(arr.e):
        raise InvalidInputError(f"e_index {e_index} out of range")
    I = frozenset(I)
    if e_index in I:
        raise InvalidInputError("the infinity line may not belong to I")
    if not I <= set(range(arr.e)):
        raise InvalidInputError("I contains an invalid hyperplane index")
    if convention == CONVENTION_DEFAULT:
        shifted = I | {e_index}
        if len(I) != k - 1:
            raise InvalidInputError(f"|I| must be {k - 1} under the '{convention}' convention")
    elif convention == CONVENTION_ALT:
        shifted = I
        if len(I) != k:
            raise InvalidInputError(f"|I| must be {k} under the '{convention}' convention")
    else:
        raise InvalidInputError(f"unknown convention {convention!r}")
    d = arr.d
    alphas = tuple(
        (1 if i in shifted else 0) - Fraction(m * k, d) for i, m in enumerate(arr.mults)
    )
    if sum(alphas) != 0:
        raise InternalCheckError("weight system does not sum to zero")
    return WeightSystem(arr, e_index, I, k, convention, alphas)


# ---------------------------------------------------------------------------
# the chart complex


@dataclass(frozen=True, eq=False)
class AomotoComplex:
    ws: WeightSystem
    chart: tuple[int, ...]
    points: tuple[Edge, ...]  # affine intersection points of the chart
    basis2: tuple[tuple[int, int], ...]  # (point position, line index) labels for A2
    d0: tuple[tuple[Fraction, ...], ...]  # column vector as rows x 1
    d1: tuple[tuple[Fraction, ...], ...]  # dim A2 x dim A1

    @property
    def dims(self) -> tuple[int, int, int]:
        return (1, len(self.chart), len(self.basis2))


@lru_cache(maxsize=None)
def build_complex(ws: WeightSystem) -> AomotoComplex:
    arr = ws.arrangement
    lat = build_lattice(arr)
    e = ws.e_index
    chart = ws.chart
    pos = {i: c for c, i in enumerate(chart)}
    points = tuple(p for p in lat.edges_of_codim(2) if e not in p.indices)
    pair_to_point: dict[frozenset[int], int] = {}
    anchors = []
    basis2: list[tuple[int, int]] = []
    row_of: dict[tuple[int, int], int] = {}
    for pi, p in enumerate(points):
        anchors.append(max(p.indices))
        for i in sorted(p.indices):
            if i != anchors[pi]:
                row_of[(pi, i)] = len(basis2)
                basis2.append((pi, i))
        for a, b in itertools.combinations(sorted(p.indices), 2):
            pair_to_point[frozenset((a, b))] = pi

    def wedge(i: int, j: int) -> dict[int, Fraction]:
        """Block coordinates of e_i ^ e_j for chart lines i != j."""
        if i > j:
            return {r: -c for r, c in wedge(j, i).items()}
        pi = pair_to_point.get(frozenset((i, j)))
        if pi is None:
            return {}  # the lines meet on the infinity line: parallel in the chart
        anchor = anchors[pi]
        if j == anchor:
            return {row_of[(pi, i)]: Fraction(1)}
        if i == anchor:
            return {row_of[(pi, j)]: Fraction(-1)}
        return {row_of[(pi, i)]: Fraction(1), row_of[(pi, j)]: Fraction(-1)}

    nrows = len(basis2)
    cols = []
    for j in chart:
        col = [Fraction(0)] * nrows
        for i in chart:
            if i == j or ws.alphas[i] == 0:
                continue
            for r, c in wedge(i, j).items():
                col[r] += ws.alphas[i] * c
        cols.append(col)
    d1 = tuple(tuple(cols[c][r] for c in range(len(chart))) for r in range(nrows))
    d0 = tuple((ws.alphas[i],) for i in chart)
    return AomotoComplex(ws, chart, points, tuple(basis2), d0, d1)


def wedge_vector(cx: AomotoComplex, i: int, j: int) -> list[Fraction]:
    """e_i ^ e_j expanded in the A2 block basis."""
    if i == j or cx.ws.e_index in (i, j):
        raise InvalidInputError("wedge requires two distinct chart lines")
    vec = [Fraction(0)] * len(cx.basis2)
    sign = 1
    if i > j:
        i, j = j, i
        sign = -1
    pair = frozenset((i, j))
    for pi, p in enumerate(cx.points):
        if pair <= p.indices:
            anchor = max(p.indices)
            row = {b: r for r, b in enumerate(cx.basis2)}
            if j == anchor:
                vec[row[(pi, i)]] = Fraction(sign)
            elif i == anchor:
                vec[row[(pi, j)]] = Fraction(-sign)
            else:
                vec[row[(pi, i)]] = Fraction(sign)
                vec[row[(pi, j)]] = Fraction(-sign)
            break
    return vec


@dataclass(frozen=True)
class AomotoCohomology:
    dims_chain: tuple[int, int, int]
    dims: tuple[int, int, int]
    complex: AomotoComplex


def aomoto_cohomology(ws: WeightSystem) -> AomotoCohomology:
    """Exact Betti numbers of the three-term complex (kernels modulo images)."""
    cx = build_complex(ws)
    omega_zero = all(ws.alphas[i] == 0 for i in cx.chart)
    r0 = 0 if omega_zero else 1
    rows1 = [list(r) for r in cx.d1]
    r1 = linalg.rank(rows1) if rows1 else 0
    h0 = 1 - r0
    h1 = (len(cx.chart) - r1) - r0
    h2 = len(cx.basis2) - r1
    return AomotoCohomology(cx.dims, (h0, h1, h2), cx)


def v_image_nonzero(ws: WeightSystem, J=None) -> bool:
    """Whether the span of the wedges e_J (J a pair inside I) maps to something
    nonzero in the top cohomology; decided by one exact rank comparison."""
    cx = build_complex(ws)
    if J is not None:
        pairs = [tuple(sorted(J))]
        if len(pairs[0]) != 2 or not set(pairs[0]) <= ws.I:
            raise InvalidInputError("J must be a 2-element subset of I")
    else:
        pairs = list(itertools.combinations(sorted(ws.I), 2))
    targets = [wedge_vector(cx, a, b) for a, b in pairs]
    targets = [t for t in targets if any(x != 0 for x in t)]
    if not targets:
        return False
    d1_cols = [list(col) for col in zip(*cx.d1)] if cx.d1 else []
    base = linalg.rank(d1_cols)
    return linalg.rank(d1_cols + targets) > base


# ---------------------------------------------------------------------------
# the certification conditions


def stv_condition(ws: WeightSystem) -> bool:
    """Nonresonance on the nonzero dense edges: no weight sum in {1, 2, 3, ...}.

    Codimension-1 dense edges hold automatically since every alpha_i < 1, so
    only dense points need testing; they are still all checked here.
    """
    for edge in dense_edges(ws.arrangement):
        val = ws.alpha_of_edge(edge)
        if edge.codim == ws.arrangement.n:
            continue  # only nonzero edges take part
        if val.denominator == 1 and val > 0:
            return False
    return True


def condition_a(ws: WeightSystem) -> bool:
    """Nonresonance on the (conservative) non-normal-crossing point set."""
    for p in nnc_points(ws.arrangement):
        val = ws.alpha_of_edge(p)
        if val.denominator == 1 and val > 0:
            return False
    return True


def sigma_set(ws: WeightSystem) -> tuple[Edge, ...]:
    """Non-normal-crossing points off the infinity line where the weights sum to zero."""
    return tuple(
        p for p in nnc_points(ws.arrangement, excluding=ws.e_index) if ws.alpha_of_edge(p) == 0
    )


def condition_b(ws: WeightSystem) -> Edge | None:
    """The intersection point of the two I-lines, provided it avoids the infinity line."""
    if len(ws.I) != 2:
        raise InvalidInputError("the pencil-point condition needs |I| = 2")
    lat = build_lattice(ws.arrangement)
    p0 = lat.smallest_edge_containing(ws.I)
    if p0 is None or p0.codim != 2:
        return None
    return None if ws.e_index in p0.indices else p0


def condition_c(ws: WeightSystem, p0: Edge) -> bool:
    """Connectivity of the curve minus the infinity line, the zero-weight points
    and p0, via the line incidence graph: two chart lines are adjacent when
    their common point survives the removal."""
    removed = {p.indices for p in sigma_set(ws)}
    removed.add(p0.indices)
    lat = build_lattice(ws.arrangement)
    chart = ws.chart
    adj = {i: set() for i in chart}
    for p in lat.edges_of_codim(2):
        if ws.e_index in p.indices or p.indices in removed:
            continue
        for a, b in itertools.combinations(sorted(p.indices), 2):
            adj[a].add(b)
            adj[b].add(a)
    seen = {chart[0]}
    stack = [chart[0]]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(chart)


def special_point(arr: Arrangement) -> Edge | None:
    """The unique projective point carrying more than 2/3 of the total multiplicity."""
    lat = build_lattice(arr)
    for p in lat.edges_of_codim(2):
        if 3 * p.mult > 2 * arr.d:
            return p
    return None


def special_point_hypotheses(ws: WeightSystem, p0: Edge) -> dict:
    """Verify the combinatorial hypotheses of the high-multiplicity-point route.

    Raises RouteHypothesisError describing the first failure; returns evidence
    (the auxiliary line and its double points) on success.
    """
    arr = ws.arrangement
    if len(ws.I) != 2 or ws.convention != CONVENTION_DEFAULT or ws.k != 3:
        raise RouteHypothesisError("route needs the default convention with k = 3")
    lat = build_lattice(arr)
    if p0.indices not in {p.indices for p in lat.edges_of_codim(2)}:
        raise RouteHypothesisError("p0 is not a projective point of the arrangement")
    if 3 * p0.mult <= 2 * arr.d:
        raise RouteHypothesisError("p0 does not carry more than 2/3 of the total multiplicity")
    if ws.e_index in p0.indices:
        raise RouteHypothesisError("the infinity line passes through p0")
    if not ws.I <= p0.indices:
        raise RouteHypothesisError("I must consist of two lines through p0")
    if len(p0.indices) < 3:
        raise RouteHypothesisError("p0 must lie on a third line besides I")
    i1, i2 = sorted(ws.I)
    if ws.alphas[i1] != ws.alphas[i2] or ws.alphas[i1] == 0:
        raise RouteHypothesisError("the two chosen lines need equal nonzero weights")
    if arr.d % 3 == 0:
        a = arr.d // 3
        for i in (i1, i2):
            q = lat.smallest_edge_containing({i, ws.e_index})
            if q is not None and q.codim == 2 and q.mult == a:
                raise RouteHypothesisError(
                    f"line {i} meets the infinity line in a point of multiplicity d/3"
                )
    aux = None
    doubles = None
    for ell in ws.chart:
        if ell in ws.I or ell in p0.indices:
            continue
        qs = []
        for i in (i1, i2):
            q = lat.smallest_edge_containing({i, ell})
            if q is None or q.codim != 2 or len(q.indices) != 2:
                break
            qs.append(q)
        if len(qs) == 2:
            aux = ell
            doubles = qs
            break
    if aux is None:
        raise RouteHypothesisError(
            "no auxiliary line meets both chosen lines in ordinary double points"
        )
    return {
        "auxiliary_line": aux,
        "double_points": [sorted(q.indices) for q in doubles],
    }


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class RootCertificate:
    root: Fraction
    route: str
    e_index: int
    I: tuple[int, ...]
    p0: tuple[int, ...] | None
    k: int
    convention: str
    checks: tuple[str, ...]
    h2_dim: int

    def to_dict(self) -> dict:
        return {
            "root": _frac_str(self.root),
            "route": self.route,
            "e_index": self.e_index,
            "I": list(self.I),
            "p0": None if self.p0 is None else list(self.p0),
            "k": self.k,
            "convention": self.convention,
            "checks": list(self.checks),
            "h2_dim": self.h2_dim,
        }


def certificate_from_dict(data) -> RootCertificate:
    try:
        root = Fraction(data["root"])
        return RootCertificate(
            root=root,
            route=data["route"],
            e_index=int(data["e_index"]),
            I=tuple(int(i) for i in data["I"]),
            p0=None if data.get("p0") is None else tuple(int(i) for i in data["p0"]),
            k=int(data["k"]),
            convention=data["convention"],
            checks=tuple(data["checks"]),
            h2_dim=int(data["h2_dim"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed certificate: {exc}") from exc


def _candidate_pairs(arr: Arrangement, k: int, convention: str, e_indices):
    size = k - 1 if convention == CONVENTION_DEFAULT else k
    es = range(arr.e) if e_indices is None else e_indices
    for e in es:
        chart = [i for i in range(arr.e) if i != e]
        for I in itertools.combinations(chart, size):
            yield e, I


def _probe(arr, e, I, k, convention, routes, special) -> RootCertificate | None:
    ws = weight_system(arr, e, I, k, convention)
    small = len(ws.I) == 2

    def finish(route, checks, p0=None):
        h2 = aomoto_cohomology(ws).dims[2]
        return RootCertificate(
            ws.root, route, e, tuple(sorted(I)), None if p0 is None else tuple(sorted(p0.indices)),
            k, convention, tuple(checks), h2,
        )

    if ROUTE_DIRECT in routes and stv_condition(ws) and v_image_nonzero(ws):
        return finish(ROUTE_DIRECT, (CHECK_SUM_ZERO, CHECK_STV, CHECK_IMAGE))
    if ROUTE_CONDITIONS in routes and small and condition_a(ws):
        p0 = condition_b(ws)
        if p0 is not None and condition_c(ws, p0):
            if not v_image_nonzero(ws):
                if arr.is_reduced:
                    # for reduced input the connectivity argument is complete,
                    # so the oracle contradicting it can only be a bug
                    raise InternalCheckError(
                        "connectivity conditions hold but the image oracle says zero"
                    )
                import warnings

                warnings.warn(
                    "connectivity conditions hold on non-reduced input but the "
                    "image oracle says zero; the certificate is withheld",
                    RuntimeWarning,
                    stacklevel=2,
                )
            else:
                return finish(
                    ROUTE_CONDITIONS,
                    (CHECK_SUM_ZERO, CHECK_NNC, CHECK_PENCIL, CHECK_CONNECT, CHECK_IMAGE),
                    p0,
                )
    if ROUTE_SPECIAL_POINT in routes and small and special is not None:
        try:
            special_point_hypotheses(ws, special)
        except RouteHypothesisError:
            pass
        else:
            if stv_condition(ws):
                if not v_image_nonzero(ws):
                    raise InternalCheckError(
                        "high-multiplicity-point hypotheses hold but the image oracle says zero"
                    )
                return finish(
                    ROUTE_SPECIAL_POINT,
                    (CHECK_SUM_ZERO, CHECK_SPECIAL, CHECK_STV, CHECK_IMAGE),
                    special,
                )
    return None


def certify_root(
    arr: Arrangement,
    k: int = 3,
    convention: str = CONVENTION_DEFAULT,
    e_indices=None,
    routes=(ROUTE_DIRECT, ROUTE_CONDITIONS, ROUTE_SPECIAL_POINT),
    workers: int = 1,
) -> RootCertificate | None:
    """Search (infinity line, I) pairs in lexicographic order and return the
    first replayable certificate that -k/d is a Bernstein-Sato root, or None.

    `e_indices` and `routes` restrict the search (useful for negative fixtures);
    `workers` > 1 evaluates candidates in deterministic chunks in parallel,
    still returning the lexicographically first success.
    """
    if not (arr.is_central and arr.is_essential and arr.n == 3):
        raise InvalidInputError("certification runs on rank-3 central essential arrangements")
    special = special_point(arr)
    candidates = list(_candidate_pairs(arr, k, convention, e_indices))
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        chunk = max(1, workers * 4)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for start in range(0, len(candidates), chunk):
                batch = candidates[start : start + chunk]
                results = list(
                    pool.map(lambda ei: _probe(arr, ei[0], ei[1], k, convention, routes, special), batch)
                )
                for cert in results:
                    if cert is not None:
                        return cert
        return None
    for e, I in candidates:
        cert = _probe(arr, e, I, k, convention, routes, special)
        if cert is not None:
            return cert
    return None


def verify_certificate(arr: Arrangement, cert: RootCertificate) -> tuple[bool, list[tuple[str, bool]]]:
    """Replay every named check of a certificate from its witness alone."""
    results: list[tuple[str, bool]] = []
    try:
        ws = weight_system(arr, cert.e_index, cert.I, cert.k, cert.convention)
    except InvalidInputError:
        return False, [("witness-well-formed", False)]
    results.append(("witness-well-formed", True))
    if cert.route not in (ROUTE_DIRECT, ROUTE_CONDITIONS, ROUTE_SPECIAL_POINT):
        results.append(("route-known", False))
        return False, results
    results.append(("root-matches", cert.root == ws.root))
    p0 = None
    if cert.p0 is not None:
        lat = build_lattice(arr)
        key = frozenset(cert.p0)
        p0 = next((p for p in lat.edges_of_codim(2) if p.indices == key), None)
        results.append(("p0-is-a-point", p0 is not None))

    for name in cert.checks:
        if name == CHECK_SUM_ZERO:
            ok = sum(ws.alphas) == 0
        elif name == CHECK_STV:
            ok = stv_condition(ws)
        elif name == CHECK_IMAGE:
            ok = v_image_nonzero(ws)
        elif name == CHECK_NNC:
            ok = condition_a(ws)
        elif name == CHECK_PENCIL:
            found = condition_b(ws)
            ok = found is not None and p0 is not None and found.indices == p0.indices
        elif name == CHECK_CONNECT:
            ok = p0 is not None and condition_c(ws, p0)
        elif name == CHECK_SPECIAL:
            if p0 is None:
                ok = False
            else:
                try:
                    special_point_hypotheses(ws, p0)
                    ok = True
                except RouteHypothesisError:
                    ok = False
        else:
            ok = False
        results.append((name, ok))
    results.append(("h2-dimension", aomoto_cohomology(ws).dims[2] == cert.h2_dim))
    return all(ok for _, ok in results), results
