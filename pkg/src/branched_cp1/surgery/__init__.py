"""Graph rewrites: grafting, bubbling, debubbling and branch-point moves."""

from .rewrite import (
    ArcSpec,
    CurveSpec,
    NotABubble,
    SurgeryError,
    SurgeryRejected,
    SurgeryResult,
    UnsupportedSurgery,
    bubble,
    debubble,
    debubble_options,
    graft,
    supported_arcs,
    ungraft,
)
from .moves import move_branch_point
from .walk import PlanFailure, PlanStep, plan_walk
from .script import ScriptSyntaxError, parse_script, run_script
