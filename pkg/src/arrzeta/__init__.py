"""Exact-arithmetic zeta functions, dense-edge combinatorics, and
Bernstein-Sato root certificates for rational hyperplane arrangements."""

from .arrangement import (
    Arrangement,
    Edge,
    Hyperplane,
    IntersectionLattice,
    arrangement_from_dict,
    arrangement_to_dict,
    build_lattice,
    classify,
    dense_edges,
    essentialize,
    euler_char_proj_complement,
    euler_chars_rank3,
    indecomposable_by_euler,
    indecomposable_by_partition,
    is_dense,
    is_good_dense_edge,
    is_indecomposable,
    is_moderate_type,
    is_relatively_generic_last,
    load_arrangement,
    localize,
    nnc_points,
    point_census,
    quotient,
)
from .ratfunc import LinearFactor, RationalFunction, parse_expression
from .zeta import (
    CandidatePole,
    ZetaReport,
    candidate_poles,
    pole_report,
    rank2_center_coefficient,
    rank3_center_coefficient,
    reduced_zeta_rank3_closed_form,
    zeta_rank1,
    zeta_rank2,
    zeta_rank3,
)
from .aomoto import (
    CONVENTION_ALT,
    CONVENTION_DEFAULT,
    ROUTE_CONDITIONS,
    ROUTE_DIRECT,
    ROUTE_SPECIAL_POINT,
    RootCertificate,
    WeightSystem,
    aomoto_cohomology,
    certify_root,
    condition_a,
    condition_b,
    condition_c,
    sigma_set,
    special_point,
    special_point_hypotheses,
    stv_condition,
    v_image_nonzero,
    verify_certificate,
    weight_system,
)
from .conjecture import (
    CASE_COPRIME_GENERIC,
    CASE_GOOD_CENTER,
    CASE_REDUCED_SMALL_RANK,
    ConjectureReport,
    certify_center,
    certify_dense_edges,
)
from .errors import (
    ArrZetaError,
    InternalCheckError,
    InvalidInputError,
    PoleError,
    RouteHypothesisError,
    UnsupportedError,
)

__version__ = "0.1.0"
