"""Decomposition graphs, their validation and the two-branch-point classification."""

from .graph import (
    BranchDivisor,
    ComponentRecord,
    DecompositionGraph,
    Holonomy,
    RealCurveRecord,
    Sign,
    StructuralError,
    canonical_form,
    canonical_key,
    make_graph,
    same_graph,
)
from .rules import RULES, ValidationReport, validate
from .classify import CaseLabel, ClassificationMismatch, classify_k2, classify_k2_detail
from .enumerate import enumerate_k2
from . import canonical
