"""Line-oriented surgery scripts.

One step per line; blank lines and ``#`` comments are ignored::

    graft <host> separating <chi_l> <chi_r>
    graft <host> nonsep
    bubble interior <comp>
    bubble crossing <curve>
    bubble a2a <annulus> <comp>
    debubble <curve>
    move <comp> <curve>
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Tuple

from ..decomposition.graph import DecompositionGraph
from .moves import move_branch_point
from .rewrite import (
    ArcSpec,
    CurveSpec,
    SurgeryError,
    SurgeryResult,
    bubble,
    debubble,
    graft,
)


class ScriptSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class ScriptStep:
    lineno: int
    text: str
    op: str
    args: Tuple


def parse_script(text: str) -> List[ScriptStep]:
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "graft" and len(tok) == 5 and tok[2] == "separating":
                args = (CurveSpec.sep(tok[1], int(tok[3]), int(tok[4])),)
            elif tok[0] == "graft" and len(tok) == 3 and tok[2] == "nonsep":
                args = (CurveSpec.nonsep(tok[1]),)
            elif tok[0] == "bubble" and len(tok) == 3 and tok[1] == "interior":
                args = (ArcSpec("interior", tok[2]),)
            elif tok[0] == "bubble" and len(tok) == 3 and tok[1] == "crossing":
                args = (ArcSpec("crossing_once", tok[2]),)
            elif tok[0] == "bubble" and len(tok) == 4 and tok[1] == "a2a":
                args = (ArcSpec("annulus_to_annulus", tok[2], tok[3]),)
            elif tok[0] == "debubble" and len(tok) == 2:
                args = (tok[1],)
            elif tok[0] == "move" and len(tok) == 3:
                args = (tok[1], tok[2])
            else:
                raise ScriptSyntaxError(f"line {lineno}: cannot parse {line!r}")
        except ValueError as e:
            if isinstance(e, ScriptSyntaxError):
                raise
            raise ScriptSyntaxError(f"line {lineno}: {e}") from e
        steps.append(ScriptStep(lineno, line, tok[0], args))
    return steps


def run_step(g: DecompositionGraph, step: ScriptStep) -> SurgeryResult:
    if step.op == "graft":
        return graft(g, step.args[0])
    if step.op == "bubble":
        return bubble(g, step.args[0])
    if step.op == "debubble":
        return debubble(g, step.args[0])
    if step.op == "move":
        results = move_branch_point(g, *step.args)
        if not results:
            raise SurgeryError(f"{step.text}: no valid neighbour")
        certified = [r for r in results if r.status == "certified"]
        return (certified or results)[0]
    raise ScriptSyntaxError(step.text)


def run_script(g: DecompositionGraph, steps: List[ScriptStep]) -> Iterator[Tuple[ScriptStep, SurgeryResult]]:
    """Apply steps in order, yielding each intermediate result."""
    for st in steps:
        res = run_step(g, st)
        yield st, res
        g = res.graph
