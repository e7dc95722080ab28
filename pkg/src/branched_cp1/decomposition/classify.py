"""Classification of validated graphs with two branch points."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from .graph import DecompositionGraph, Holonomy, Sign, disk_subsurfaces
from .rules import validate


class CaseLabel(str, Enum):
    POSPOS = "PosPos"
    NEGNEG = "NegNeg"
    MIXED = "Mixed"


class ClassificationMismatch(AssertionError):
    """A valid graph violated its case clause; this means a bug in the rules."""


@dataclass(frozen=True)
class Classification:
    label: CaseLabel
    branched: tuple  # ids of branched components
    witness_curve: Optional[str]  # index-1 curve singled out by the case
    disk: Optional[str] = None  # the negative disk (PosPos) or positive disk (NegNeg)


def classify_k2(g: DecompositionGraph) -> CaseLabel:
    return classify_k2_detail(g).label


def classify_k2_detail(g: DecompositionGraph) -> Classification:
    if g.ord != 2:
        raise ValueError(f"classification needs ord = 2, got {g.ord}")
    rep = validate(g)
    if not rep.valid:
        raise ValueError(f"precondition: graph is invalid ({', '.join(rep.rule_ids)})")

    kp, km = g.k_sign(Sign.POS), g.k_sign(Sign.NEG)
    disks = disk_subsurfaces(g)
    comp = {c.id: c for c in g.components}
    branched = tuple(c.id for c in g.components if c.k > 0)

    def fail(msg):
        raise ClassificationMismatch(f"{msg} (k+={kp}, k-={km})")

    def incompressible(cid):
        return not any(l in disks for l in comp[cid].boundary)

    special_curves = set()
    if (kp, km) == (2, 0):
        label = CaseLabel.POSPOS
        if len(branched) != 1:
            fail("branch points are split over several positive components")
        C = comp[branched[0]]
        nd = [c for c in g.components if c.sign is Sign.NEG and c.euler == 1]
        if len(nd) != 1:
            fail(f"expected a unique negative disk, found {len(nd)}")
        D = nd[0]
        if D.k:
            fail("negative disk is branched")
        (ld,) = D.boundary
        if g.other_side(ld, D.id) != C.id:
            fail("branched component is not adjacent to the disk")
        bad = [l for l in C.boundary if l != ld and (l in disks or g.curve(l).index != 0)]
        if bad:
            fail(f"branched positive component has further special boundary {bad}")
        cl = g.curve(ld)
        if cl.index != 1 or cl.holonomy is not Holonomy.TRIVIAL:
            fail("disk boundary is not index 1 with trivial holonomy")
        special_curves.add(ld)
        result = Classification(label, branched, ld, D.id)
        allowed = {C.id, D.id}
    elif (kp, km) == (0, 2):
        label = CaseLabel.NEGNEG
        if len(branched) != 1:
            fail("branch points are split over several negative components")
        N = comp[branched[0]]
        if N.euler != -1:
            fail(f"branched negative component has euler {N.euler} != -1")
        inn = [l for l in N.boundary if l in disks]
        if len(inn) > 1:
            fail("more than one inessential boundary on the branched negative component")
        for lid in N.boundary:
            l = g.curve(lid)
            if lid in disks:
                if l.index != 1 or l.holonomy is not Holonomy.TRIVIAL:
                    fail(f"{lid}: inessential boundary is not index 1 / trivial")
                special_curves.add(lid)
            elif l.index != 0 or l.holonomy is not Holonomy.LOXODROMIC:
                fail(f"{lid}: essential boundary is not index 0 / loxodromic")
        disk = None
        allowed = {N.id}
        if inn:
            disk = g.other_side(inn[0], N.id)
            if comp[disk].euler != 1 or comp[disk].k:
                fail("inessential boundary does not cap an unbranched disk")
            allowed.add(disk)
        result = Classification(label, branched, inn[0] if inn else None, disk)
    elif (kp, km) == (1, 1):
        label = CaseLabel.MIXED
        (P,) = [comp[c] for c in branched if comp[c].sign is Sign.POS]
        (A,) = [comp[c] for c in branched if comp[c].sign is Sign.NEG]
        shared = [l for l in P.boundary if l in A.boundary and g.curve(l).index == 1]
        if len(shared) != 1:
            fail("branched components are not adjacent along a unique index-1 curve")
        l = g.curve(shared[0])
        if not l.essential or l.holonomy is not Holonomy.LOXODROMIC:
            fail("separating curve of the branch points is not essential loxodromic")
        if A.euler != 0 or not incompressible(A.id):
            fail("negative branched component is not an incompressible annulus")
        if not incompressible(P.id):
            fail("positive branched component is compressible")
        special_curves.add(l.id)
        result = Classification(label, branched, l.id)
        allowed = {P.id, A.id}
    else:
        fail("branch points not in the interior of geometric components")

    # clause shared by all three cases
    for c in g.components:
        if c.id in allowed:
            continue
        if c.k:
            fail(f"extra branched component {c.id}")
        if not incompressible(c.id) or c.euler == 1:
            fail(f"other component {c.id} is not incompressible")
        if c.sign is Sign.NEG and c.euler != 0:
            fail(f"other negative component {c.id} is not an annulus")
    for l in g.curves:
        if l.id not in special_curves and l.index != 0:
            fail(f"other curve {l.id} has index {l.index}")
    return result
