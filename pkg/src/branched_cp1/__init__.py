"""Branched CP^1 structures with Fuchsian holonomy: decomposition graphs,
surgeries on them, and numeric developing-map certificates."""

from .moebius import (
    INFINITY,
    MapKind,
    MoebiusMap,
    ProjectivePoint,
    analyze,
    apply,
    chordal_distance,
    compose,
    fixed_points,
    half_plane_distance,
    hyperbolic_distance,
    translation_length,
)
from .fuchsian import (
    BOLZA_SYSTOLE,
    FuchsianRepresentation,
    SurfaceGroupWord,
    octagon_side_pairings,
    standard_genus2,
    systole_estimate,
    systole_search,
    word_ball,
)
from .decomposition import (
    CaseLabel,
    DecompositionGraph,
    canonical_form,
    classify_k2,
    enumerate_k2,
    make_graph,
    validate,
)
from .surgery import bubble, debubble, graft, move_branch_point, plan_walk
from .devmap import (
    Bubbled,
    DevelopedArc,
    Grafted,
    Uniformizing,
    develop_geodesic_arc,
    index_of_real_curve,
    is_injectively_developed,
    scenario_nonisobub,
)
from .bmconfig import (
    BMConfiguration,
    SafetyConstants,
    check_standard,
    check_visible,
    safe_move_bound,
    safety_constants,
)

__version__ = "0.1.0"
