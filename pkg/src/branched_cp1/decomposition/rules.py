"""Validation of decomposition graphs against the index calculus.

Rule ids
--------
V0   topology: each component is a compact surface (chi <= 1, genus >= 0),
     the incidence graph is connected
V1   orientation: + on the left of every curve, - on the right
V2   sum of component Euler characteristics equals 2 - 2 genus
V3   total branch order even, and 2 chi(neg) = k(pos) - k(neg)
V4   holonomy: trivial => index >= 1; essential <=> loxodromic
V5   a disk D has boundary index k_D + 1
V6   unbranched non-disk: boundary indices all 0; if negative then chi = 0
V7   declared essentiality equals the derived one
V8   Euler class of incompressible pieces: for every component C outside all
     disk subsurfaces, eu summed over C and the disks capping it equals the
     capped Euler characteristic; components inside a disk have eu = 0
V9   a positive-index curve has a branched side and at most one disk side
V10  (ord 2) every index <= 1
V11  (ord 2) every disk is unbranched
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .graph import (
    DecompositionGraph,
    Holonomy,
    Sign,
    capped_component,
    derived_essential,
    disk_subsurfaces,
    euler_of,
    is_connected,
)

RULES = ("V0", "V1", "V2", "V3", "V4", "V5", "V6", "V7", "V8", "V9", "V10", "V11")


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: Tuple[Tuple[str, str], ...]
    euler_classes: Dict[str, int]
    essential: Dict[str, bool]
    nesting_ambiguous: bool = False

    @property
    def rule_ids(self) -> Tuple[str, ...]:
        return tuple(dict.fromkeys(r for r, _ in self.violations))

    def __str__(self):
        if self.valid:
            return "valid"
        return "\n".join(f"{r}: {m}" for r, m in self.violations)


def validate(g: DecompositionGraph) -> ValidationReport:
    v: List[Tuple[str, str]] = []
    comps = {c.id: c for c in g.components}

    # V0 topology
    for c in g.components:
        if c.euler > 1:
            v.append(("V0", f"{c.id}: euler {c.euler} > 1"))
        elif c.genus is None:
            v.append(("V0", f"{c.id}: euler {c.euler} with {len(c.boundary)} boundary curves is not a surface"))
        if not c.boundary and len(g.components) > 1:
            v.append(("V0", f"{c.id}: closed component in a disconnected surface"))
    if not is_connected(g):
        v.append(("V0", "incidence graph is disconnected"))

    # V1 orientation
    for l in g.curves:
        if comps[l.left].sign is not Sign.POS:
            v.append(("V1", f"{l.id}: left side {l.left} is not positive"))
        if comps[l.right].sign is not Sign.NEG:
            v.append(("V1", f"{l.id}: right side {l.right} is not negative"))

    # V2 Euler sum
    tot = sum(c.euler for c in g.components)
    if tot != 2 - 2 * g.genus:
        v.append(("V2", f"Euler sum {tot} != {2 - 2 * g.genus}"))

    # V3 parity
    kp, km = g.k_sign(Sign.POS), g.k_sign(Sign.NEG)
    if g.ord % 2:
        v.append(("V3", f"total branch order {g.ord} is odd"))
    if 2 * g.euler_sign(Sign.NEG) != kp - km:
        v.append(("V3", f"2 chi(neg) = {2 * g.euler_sign(Sign.NEG)} != k+ - k- = {kp - km}"))

    ess = {l.id: derived_essential(g, l.id) for l in g.curves}
    disks = disk_subsurfaces(g)
    eu = {c.id: g.euler_class(c.id) for c in g.components}

    # V4 holonomy
    for l in g.curves:
        if l.holonomy is Holonomy.TRIVIAL and l.index < 1:
            v.append(("V4", f"{l.id}: trivial holonomy with index 0"))
        if l.essential and l.holonomy is not Holonomy.LOXODROMIC:
            v.append(("V4", f"{l.id}: essential curve without loxodromic holonomy"))
        if not l.essential and l.holonomy is not Holonomy.TRIVIAL:
            v.append(("V4", f"{l.id}: inessential curve with loxodromic holonomy"))

    # V5 disks
    for c in g.components:
        if c.euler == 1 and len(c.boundary) == 1:
            I = g.curve(c.boundary[0]).index
            if I != c.k + 1:
                v.append(("V5", f"disk {c.id}: boundary index {I} != k_D + 1 = {c.k + 1}"))

    # V6 unbranched non-disk
    for c in g.components:
        if c.k == 0 and c.euler < 1:
            bad = [lid for lid in c.boundary if g.curve(lid).index != 0]
            if bad:
                v.append(("V6", f"unbranched {c.id}: boundary {bad} with positive index"))
            if c.sign is Sign.NEG and c.euler != 0:
                v.append(("V6", f"unbranched negative {c.id} is not an annulus (euler {c.euler})"))

    # V7 essentiality
    for l in g.curves:
        if l.essential != ess[l.id]:
            v.append(("V7", f"{l.id}: declared essential={l.essential}, derived {ess[l.id]}"))

    # V8 Euler class of incompressible pieces
    inside = set().union(*disks.values()) if disks else set()
    for c in g.components:
        if c.id in inside:
            if eu[c.id] != 0:
                v.append(("V8", f"{c.id} lies in a disk but eu = {eu[c.id]}"))
            continue
        E = capped_component(g, c.id, disks)
        s = sum(eu[x] for x in E)
        if s != euler_of(g, E):
            what = "incompressible" if len(E) == 1 else "capped"
            v.append(("V8", f"{what} {c.id}: eu sum {s} != chi {euler_of(g, E)}"))

    # V9 positive-index curves
    for l in g.curves:
        if l.index >= 1:
            L, R = comps[l.left], comps[l.right]
            if L.k == 0 and R.k == 0:
                v.append(("V9", f"{l.id}: positive index but neither side branched"))
            if L.euler == 1 and R.euler == 1:
                v.append(("V9", f"{l.id}: both sides are disks"))

    if g.ord == 2:
        for l in g.curves:
            if l.index > 1:
                v.append(("V10", f"{l.id}: index {l.index} > 1 with two branch points"))
        for c in g.components:
            if c.euler == 1 and c.k > 0:
                v.append(("V11", f"disk {c.id} is branched with two branch points"))

    nesting = any(len(d) >= 2 for d in disks.values())
    return ValidationReport(not v, tuple(v), eu, ess, nesting)
