"""Grafting, bubbling and debubbling as rewrites of decomposition graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Iterator, List, Optional, Sequence, Tuple

from ..decomposition.graph import (
    BranchDivisor,
    ComponentRecord,
    DecompositionGraph,
    Holonomy,
    RealCurveRecord,
    Sign,
    derived_essential,
)
from ..decomposition.rules import ValidationReport, validate


class SurgeryError(ValueError):
    pass


class UnsupportedSurgery(SurgeryError):
    """The requested arc or move is outside the supported patterns."""


class SurgeryRejected(SurgeryError):
    """The rewrite produced a graph that fails validation."""

    def __init__(self, msg: str, report: Optional[ValidationReport] = None):
        super().__init__(msg if report is None else f"{msg}: {', '.join(report.rule_ids)}")
        self.report = report


class NotABubble(SurgeryError):
    pass


@dataclass(frozen=True)
class CurveSpec:
    """Where to graft: a host component, separating (with the Euler split) or not."""

    host: str
    separating: bool = False
    chi_left: Optional[int] = None
    chi_right: Optional[int] = None

    @classmethod
    def nonsep(cls, host: str) -> "CurveSpec":
        return cls(host)

    @classmethod
    def sep(cls, host: str, chi_left: int, chi_right: int) -> "CurveSpec":
        return cls(host, True, chi_left, chi_right)

    def __str__(self):
        if self.separating:
            return f"graft {self.host} separating {self.chi_left} {self.chi_right}"
        return f"graft {self.host} nonsep"


ARC_PATTERNS = ("interior", "crossing_once", "annulus_to_annulus")


@dataclass(frozen=True)
class ArcSpec:
    """A bubbling arc, described by the pieces it meets."""

    pattern: str
    target: str  # component (interior), curve (crossing_once) or annulus (a2a)
    via: Optional[str] = None  # the positive component crossed by an a2a arc

    def __post_init__(self):
        if self.pattern not in ARC_PATTERNS:
            raise UnsupportedSurgery(f"unsupported arc pattern {self.pattern!r} (arcs crossing >= 2 curves are not modelled)")
        if (self.pattern == "annulus_to_annulus") != (self.via is not None):
            raise UnsupportedSurgery("annulus_to_annulus needs exactly an annulus and a component")

    def __str__(self):
        short = {"interior": "interior", "crossing_once": "crossing", "annulus_to_annulus": "a2a"}[self.pattern]
        return f"bubble {short} {self.target}" + (f" {self.via}" if self.via else "")


@dataclass(frozen=True)
class SurgeryResult:
    graph: DecompositionGraph
    divisor_delta: Tuple[Tuple[int, ...], Tuple[int, ...]]  # (orders added, orders removed)
    provenance: str
    status: str = "certified"

    @property
    def delta_ord(self) -> int:
        return sum(self.divisor_delta[0]) - sum(self.divisor_delta[1])

    def describe_delta(self) -> str:
        add, rem = self.divisor_delta
        parts = []
        if add:
            parts.append("+(" + ",".join(map(str, add)) + ")")
        if rem:
            parts.append("-(" + ",".join(map(str, rem)) + ")")
        return " ".join(parts) or "unchanged"


# ---------------------------------------------------------------------------
# small graph-building helpers


def _rebuild(g: DecompositionGraph, comps: Sequence[ComponentRecord], curves: Sequence[RealCurveRecord]) -> DecompositionGraph:
    """Recompute boundary lists from curves (keeping each component's fields)."""
    out = []
    for c in comps:
        bd = tuple(l.id for l in curves if c.id in (l.left, l.right))
        out.append(replace(c, boundary=bd))
    return DecompositionGraph(g.genus, tuple(out), tuple(curves))


def _oriented(lid, a: ComponentRecord, b: ComponentRecord, index=0, essential=True) -> RealCurveRecord:
    left, right = (a, b) if a.sign is Sign.POS else (b, a)
    hol = Holonomy.LOXODROMIC if essential else Holonomy.TRIVIAL
    return RealCurveRecord(lid, index, essential, hol, left.id, right.id)


def rederive_essentiality(g: DecompositionGraph, curve_ids: Optional[Sequence[str]] = None) -> DecompositionGraph:
    """Set essential/holonomy on the given curves from the topology."""
    ids = [l.id for l in g.curves] if curve_ids is None else list(curve_ids)
    for lid in ids:
        ess = derived_essential(g, lid)
        g = g.replace_curve(lid, essential=ess, holonomy=Holonomy.LOXODROMIC if ess else Holonomy.TRIVIAL)
    return g


def _checked(g: DecompositionGraph, what: str) -> DecompositionGraph:
    rep = validate(g)
    if not rep.valid:
        raise SurgeryRejected(f"{what} produced an invalid graph", rep)
    return g


def _fits(chi: int, nbound: int) -> bool:
    twice = 2 - chi - nbound
    return chi <= 1 and twice >= 0 and twice % 2 == 0 and nbound >= 1


# ---------------------------------------------------------------------------
# grafting


def _graft_candidates(g: DecompositionGraph, spec: CurveSpec) -> Iterator[DecompositionGraph]:
    if not g.has_component(spec.host):
        raise SurgeryError(f"unknown host {spec.host}")
    host = g.component(spec.host)
    others = [c for c in g.components if c.id != host.id]
    A = ComponentRecord(g.fresh_component_id("A"), host.sign.opposite(), 0)
    l1 = g.fresh_curve_id("g")
    l2 = _fresh_after(g, "g", l1)
    keep = [l for l in g.curves]
    if not spec.separating:
        if not _fits(host.euler, len(host.boundary) + 2):
            return
        new = [_oriented(l1, host, A), _oriented(l2, host, A)]
        yield _rebuild(g, others + [host, A], keep + new)
        return
    if spec.chi_left + spec.chi_right != host.euler:
        raise SurgeryError("separating split must preserve the host Euler characteristic")
    if spec.chi_left >= 1 or spec.chi_right >= 1:
        raise SurgeryError("a separating graft curve must be essential (both sides chi < 1)")
    L = replace(host, id=g.fresh_component_id(host.id + "a"), euler=spec.chi_left)
    R = replace(host, id=_fresh_comp_after(g, host.id + "b", L.id), euler=spec.chi_right)
    bd = list(host.boundary)
    units = list(host.branch_orders.orders)
    for nl in range(len(bd) + 1):
        for left_bd in itertools.combinations(range(len(bd)), nl):
            if not (_fits(L.euler, nl + 1) and _fits(R.euler, len(bd) - nl + 1)):
                continue
            for mask in itertools.product((0, 1), repeat=len(units)):
                Lc = replace(L, branch_orders=BranchDivisor(tuple(u for u, m in zip(units, mask) if m == 0)))
                Rc = replace(R, branch_orders=BranchDivisor(tuple(u for u, m in zip(units, mask) if m == 1)))
                curves = []
                for l in keep:
                    if host.id in (l.left, l.right):
                        pos = bd.index(l.id)
                        tgt = Lc.id if pos in left_bd else Rc.id
                        l = replace(l, left=tgt) if l.left == host.id else replace(l, right=tgt)
                    curves.append(l)
                curves += [_oriented(l1, Lc, A), _oriented(l2, Rc, A)]
                yield _rebuild(g, others + [Lc, Rc, A], curves)


def _fresh_after(g, stem, taken):
    i = 0
    while True:
        cand = f"{stem}{i}"
        if cand != taken and not g.has_curve(cand):
            return cand
        i += 1


def _fresh_comp_after(g, stem, taken):
    i = 0
    while True:
        cand = f"{stem}{i}"
        if cand != taken and not g.has_component(cand):
            return cand
        i += 1


def graft(g: DecompositionGraph, spec: CurveSpec) -> SurgeryResult:
    """Insert an annulus of the opposite sign along an essential curve in the host.

    For a separating curve the host boundary curves and branch points are
    distributed over the two sides; the first distribution that validates
    is used.  The divisor is unchanged.
    """
    first_report = None
    for cand in _graft_candidates(g, spec):
        rep = validate(cand)
        if rep.valid:
            return SurgeryResult(cand, ((), ()), str(spec))
        first_report = first_report or rep
    raise SurgeryRejected(f"{spec} has no valid realization", first_report)


def ungraft(g: DecompositionGraph, annulus: str) -> DecompositionGraph:
    """Inverse of graft at the graph level: remove an unbranched annulus."""
    A = g.component(annulus)
    if A.euler != 0 or len(A.boundary) != 2 or A.k:
        raise SurgeryError(f"{annulus} is not an unbranched annulus")
    l1, l2 = (g.curve(x) for x in A.boundary)
    s1, s2 = g.other_side(l1.id, A.id), g.other_side(l2.id, A.id)
    drop = {l1.id, l2.id}
    curves = [l for l in g.curves if l.id not in drop]
    if s1 == s2:
        comps = [c for c in g.components if c.id != A.id]
        return _rebuild(g, comps, curves)
    C1, C2 = g.component(s1), g.component(s2)
    merged = replace(C1, euler=C1.euler + C2.euler, branch_orders=C1.branch_orders + C2.branch_orders)
    comps = [merged if c.id == C1.id else c for c in g.components if c.id not in (A.id, C2.id)]
    curves = [
        replace(l, left=C1.id if l.left == C2.id else l.left, right=C1.id if l.right == C2.id else l.right)
        for l in curves
    ]
    return _rebuild(g, comps, curves)


# ---------------------------------------------------------------------------
# bubbling


def bubble(g: DecompositionGraph, arc: ArcSpec) -> SurgeryResult:
    """Bubble along an arc of one of the supported patterns; divisor gains (1,1)."""
    if arc.pattern == "interior":
        if not g.has_component(arc.target):
            raise SurgeryError(f"unknown component {arc.target}")
        C = g.component(arc.target)
        D = ComponentRecord(g.fresh_component_id("D"), C.sign.opposite(), 1)
        Cn = replace(C, euler=C.euler - 1, branch_orders=C.branch_orders + BranchDivisor((1, 1)))
        l = _oriented(g.fresh_curve_id("b"), Cn, D, index=1, essential=False)
        comps = [Cn if c.id == C.id else c for c in g.components] + [D]
        out = _rebuild(g, comps, list(g.curves) + [l])
    elif arc.pattern == "crossing_once":
        if not g.has_curve(arc.target):
            raise SurgeryError(f"unknown curve {arc.target}")
        l = g.curve(arc.target)
        out = g.replace_curve(l.id, index=l.index + 1)
        for cid in (l.left, l.right):
            c = out.component(cid)
            out = out.replace_component(cid, branch_orders=c.branch_orders + BranchDivisor((1,)))
    else:
        out = _bubble_a2a(g, arc.target, arc.via)
    return SurgeryResult(_checked(out, str(arc)), ((1, 1), ()), str(arc))


def _bubble_a2a(g: DecompositionGraph, annulus: str, via: str) -> DecompositionGraph:
    if not (g.has_component(annulus) and g.has_component(via)):
        raise SurgeryError("unknown component in annulus_to_annulus")
    A, C = g.component(annulus), g.component(via)
    if A.sign is not Sign.NEG or A.euler != 0 or len(A.boundary) != 2:
        raise UnsupportedSurgery(f"{annulus} is not a negative annulus")
    if C.sign is not Sign.POS:
        raise UnsupportedSurgery(f"{via} is not a positive component")
    touching = [lid for lid in A.boundary if g.other_side(lid, A.id) == C.id]
    if not touching:
        raise UnsupportedSurgery(f"{via} is not adjacent to {annulus}")
    An = replace(A, euler=-1, branch_orders=A.branch_orders + BranchDivisor((1, 1)))
    Cn = replace(C, euler=C.euler + 1)
    comps = [An if c.id == A.id else Cn if c.id == C.id else c for c in g.components]
    if len(touching) == 2:
        # band joins the two boundary curves: they merge into one
        curves = [l for l in g.curves if l.id not in touching]
        curves.append(_oriented(g.fresh_curve_id("m"), Cn, An))
        new = [curves[-1].id]
    else:
        # band leaves and re-enters through the same curve, which splits
        lid = touching[0]
        curves = [l for l in g.curves if l.id != lid]
        a = g.fresh_curve_id("s")
        b = _fresh_after(g, "s", a)
        curves += [_oriented(a, Cn, An), _oriented(b, Cn, An)]
        new = [a, b]
    out = _rebuild(g, comps, curves)
    out = rederive_essentiality(out, new)
    for lid in new:
        if not out.curve(lid).essential:
            out = out.replace_curve(lid, index=1)
    return out


def supported_arcs(g: DecompositionGraph) -> List[ArcSpec]:
    """All arc specs of the supported patterns that make sense on ``g``
    (the result of bubbling may still be rejected by validation)."""
    arcs = [ArcSpec("interior", c.id) for c in g.components]
    arcs += [ArcSpec("crossing_once", l.id) for l in g.curves]
    for A in g.components:
        if A.sign is Sign.NEG and A.euler == 0 and len(A.boundary) == 2:
            for C in sorted({g.other_side(l, A.id) for l in A.boundary}):
                arcs.append(ArcSpec("annulus_to_annulus", A.id, C))
    return arcs


# ---------------------------------------------------------------------------
# debubbling


def _debubble_candidates(g: DecompositionGraph, lid: str) -> Iterator[Tuple[str, DecompositionGraph]]:
    l = g.curve(lid)
    L, R = g.component(l.left), g.component(l.right)
    if not l.essential and l.index == 1:
        # interior pattern: an unbranched disk on one side
        for D, C in ((R, L), (L, R)):
            if D.euler == 1 and D.k == 0 and C.branch_orders.orders.count(1) >= 2:
                Cn = replace(C, euler=C.euler + 1, branch_orders=C.branch_orders.remove(1).remove(1))
                comps = [Cn if c.id == C.id else c for c in g.components if c.id != D.id]
                curves = [x for x in g.curves if x.id != lid]
                yield f"debubble interior {C.id}", _rebuild(g, comps, curves)
    if l.index >= 1:
        # crossing pattern; on a disk boundary the result must still validate
        if 1 in L.branch_orders.orders and 1 in R.branch_orders.orders:
            out = g.replace_curve(lid, index=l.index - 1)
            for c in (L, R):
                out = out.replace_component(c.id, branch_orders=c.branch_orders.remove(1))
            yield f"debubble crossing {lid}", out
    if l.index in (0, 1):
        # annulus_to_annulus pattern: the negative side holds the two new points
        N, C = R, L
        if N.euler == -1 and N.branch_orders.orders.count(1) >= 2:
            An = replace(N, euler=0, branch_orders=N.branch_orders.remove(1).remove(1))
            Cn = replace(C, euler=C.euler - 1)
            comps = [An if c.id == N.id else Cn if c.id == C.id else c for c in g.components]
            if len(N.boundary) == 1:
                a = g.fresh_curve_id("u")
                b = _fresh_after(g, "u", a)
                curves = [x for x in g.curves if x.id != lid] + [_oriented(a, Cn, An), _oriented(b, Cn, An)]
                out = rederive_essentiality(_rebuild(g, comps, curves), [a, b])
                yield f"debubble a2a {N.id} {C.id}", out
            elif len(N.boundary) == 3:
                for partner in N.boundary:
                    if partner == lid or g.other_side(partner, N.id) != C.id:
                        continue
                    m = g.fresh_curve_id("u")
                    curves = [x for x in g.curves if x.id not in (lid, partner)] + [_oriented(m, Cn, An)]
                    out = rederive_essentiality(_rebuild(g, comps, curves), [m])
                    yield f"debubble a2a {N.id} {C.id}", out


def debubble(g: DecompositionGraph, curve: str) -> SurgeryResult:
    """Undo a bubbling at the curve it created; divisor loses (1,1)."""
    if not g.has_curve(curve):
        raise NotABubble(f"no curve {curve!r}" if g.curves else "graph has no real curves")
    for prov, cand in _debubble_candidates(g, curve):
        if validate(cand).valid:
            return SurgeryResult(cand, ((), (1, 1)), prov)
    raise NotABubble(f"no bubble pattern at {curve}")


def debubble_options(g: DecompositionGraph) -> List[SurgeryResult]:
    out = []
    for l in g.curves:
        try:
            out.append(debubble(g, l.id))
        except NotABubble:
            pass
    return out
