"""Exact ultrametric geometry on the projective line.

Points are closed discs over a valued field with exact rational data;
the package computes Gauss norms, geodesics, convex hulls, deformation
retractions, tropical piecewise-linear functions, and skeleton
preimages of rational maps, all without floating point.
"""

from .errors import (
    BerklineError,
    DomainError,
    FieldMismatch,
    FormulaTooLarge,
    IndeterminateError,
    MalformedTree,
    NotCollapsible,
    PoleError,
    UnbalancedDivisor,
    Unsupported,
)
from .fields import (
    PAdicField,
    Polynomial,
    RatFunc,
    TAdicField,
    TableViolation,
    UltrametricTable,
    ValuedField,
    taylor_shift,
    validate_table,
)
from .points import (
    Path,
    PathLeg,
    Point,
    PointType,
    disc,
    gauss_eval,
    gauss_eval_nd,
    gauss_point,
    geodesic,
    infinity,
    invert,
    join,
    norm,
    norm_multi,
    norm_rational,
    rational_eval,
    point_leq,
    simple_point,
    tree_distance,
)
from .trees import (
    Edge,
    FiniteSubtree,
    contract,
    convex_hull,
    entry_time,
    retract,
)
from .tropical import (
    And,
    Atom,
    Divisor,
    MaxExpr,
    MinExpr,
    Monomial,
    Or,
    PLFunction1D,
    SkeletonPreimage,
    TropicalPolyhedron,
    ball_count,
    decompose_monomial,
    divisor,
    immersion_check,
    is_def_compact,
    local_constancy,
    newton_breakpoints,
    poly_dimension,
    poly_dimension_report,
    poly_member,
    skeleton_preimage,
    trop_eval,
)
from .valmonoid import (
    ONE,
    ZERO,
    CollapseMap,
    GeneralizedSegment,
    Interval,
    MonomialMap,
    Piece,
    Val,
    collapse,
    concatenate,
    val_max,
    val_min,
)

__all__ = [name for name in dir() if not name.startswith("_")]
