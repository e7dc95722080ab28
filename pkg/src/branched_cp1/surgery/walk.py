"""Planning walks between structures using only bubblings and debubblings.

The schematic is: one debubbling down to an unbranched structure (if the
source is branched), m + n graftings each realised by a bubbling followed
by a debubbling, and one final bubbling (if the target is branched).  At the
graph level the bubbling of a grafting pair is an interior bubble in the
host and the debubbling lands on the grafted graph; both intermediates are
validated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..decomposition.graph import DecompositionGraph, Sign, canonical_key
from ..decomposition.rules import validate
from .rewrite import (
    ArcSpec,
    CurveSpec,
    SurgeryError,
    bubble,
    debubble_options,
    graft,
    supported_arcs,
)


class PlanFailure(SurgeryError):
    def __init__(self, msg: str, step: Optional[int] = None):
        super().__init__(msg if step is None else f"step {step}: {msg}")
        self.step = step


@dataclass(frozen=True)
class PlanStep:
    kind: str  # "bubble" or "debubble"
    detail: str
    graph: DecompositionGraph  # graph after the step
    realizes: Optional[str] = None  # the grafting this step completes, if any


def graft_specs(g: DecompositionGraph) -> List[CurveSpec]:
    specs = []
    for c in g.components:
        if c.sign is not Sign.POS:
            continue
        specs.append(CurveSpec.nonsep(c.id))
        for chi_l in range(c.euler + 1, 1):
            chi_r = c.euler - chi_l
            if chi_l <= chi_r and chi_r < 1:
                specs.append(CurveSpec.sep(c.id, chi_l, chi_r))
    return specs


def _grafting_pair(g: DecompositionGraph, spec: CurveSpec) -> Optional[Tuple[PlanStep, PlanStep]]:
    try:
        target = graft(g, spec).graph
        mid = bubble(g, ArcSpec("interior", spec.host)).graph
    except SurgeryError:
        return None
    return (
        PlanStep("bubble", f"bubble interior {spec.host}", mid),
        PlanStep("debubble", f"debubble realizing {spec}", target, realizes=str(spec)),
    )


def _search(g, remaining, goal_key, final_bubble) -> Optional[List[PlanStep]]:
    if remaining == 0:
        if not final_bubble:
            return [] if canonical_key(g) == goal_key else None
        for arc in supported_arcs(g):
            try:
                h = bubble(g, arc).graph
            except SurgeryError:
                continue
            if canonical_key(h) == goal_key:
                return [PlanStep("bubble", str(arc), h)]
        return None
    seen = set()
    for spec in graft_specs(g):
        pair = _grafting_pair(g, spec)
        if pair is None:
            continue
        k = canonical_key(pair[1].graph)
        if k in seen:
            continue
        seen.add(k)
        rest = _search(pair[1].graph, remaining - 1, goal_key, final_bubble)
        if rest is not None:
            return list(pair) + rest
    return None


def plan_walk(source: DecompositionGraph, target: DecompositionGraph, m: int, n: int) -> List[PlanStep]:
    """Return the steps of a bubbling/debubbling walk from source to target.

    The length is (1 if ord(source) = 2) + 2m + 2n + (1 if ord(target) = 2).
    Raises PlanFailure when no graph-level realization exists.
    """
    for name, g in (("source", source), ("target", target)):
        rep = validate(g)
        if not rep.valid:
            raise PlanFailure(f"{name} is invalid ({', '.join(rep.rule_ids)})")
        if g.ord not in (0, 2):
            raise PlanFailure(f"{name} has ord {g.ord}, expected 0 or 2")
    if m < 0 or n < 0:
        raise PlanFailure("m and n must be non-negative")
    goal = canonical_key(target)
    starts: List[Tuple[List[PlanStep], DecompositionGraph]] = []
    if source.ord == 2:
        for res in debubble_options(source):
            if res.graph.ord == 0:
                starts.append(([PlanStep("debubble", res.provenance, res.graph)], res.graph))
        if not starts:
            raise PlanFailure("source admits no debubbling to an unbranched structure", 0)
    else:
        starts.append(([], source))
    for head, g0 in starts:
        rest = _search(g0, m + n, goal, target.ord == 2)
        if rest is not None:
            steps = head + rest
            for i, st in enumerate(steps):
                rep = validate(st.graph)
                if not rep.valid:
                    raise PlanFailure(f"intermediate after {st.detail} is invalid", i)
            return steps
    raise PlanFailure(f"no walk with m={m}, n={n} reaches the target at the graph level")
