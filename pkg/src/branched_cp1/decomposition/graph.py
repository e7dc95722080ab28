"""Decomposition graphs: signed components joined by oriented real curves.

A curve always has its positive component on the left and its negative
component on the right.  Graphs are immutable; rewriting code builds new
graphs through :func:`make_graph` or ``dataclasses.replace``.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple


class StructuralError(ValueError):
    """Malformed graph: dangling references, duplicate ids, bad boundary lists."""


class Sign(str, Enum):
    POS = "+"
    NEG = "-"

    @property
    def factor(self) -> int:
        return 1 if self is Sign.POS else -1

    def opposite(self) -> "Sign":
        return Sign.NEG if self is Sign.POS else Sign.POS


class Holonomy(str, Enum):
    TRIVIAL = "trivial"
    LOXODROMIC = "loxodromic"


@dataclass(frozen=True)
class BranchDivisor:
    """A multiset of branch orders (a partition); ``ord`` is its sum."""

    orders: Tuple[int, ...] = ()

    def __post_init__(self):
        o = tuple(sorted((int(x) for x in self.orders), reverse=True))
        if any(x < 1 for x in o):
            raise StructuralError(f"branch orders must be >= 1: {o}")
        object.__setattr__(self, "orders", o)

    @property
    def ord(self) -> int:
        return sum(self.orders)

    def __add__(self, other: "BranchDivisor") -> "BranchDivisor":
        return BranchDivisor(self.orders + other.orders)

    def __bool__(self):
        return bool(self.orders)

    def remove(self, order: int) -> "BranchDivisor":
        o = list(self.orders)
        o.remove(order)
        return BranchDivisor(tuple(o))


@dataclass(frozen=True)
class ComponentRecord:
    id: str
    sign: Sign
    euler: int
    branch_orders: BranchDivisor = field(default_factory=BranchDivisor)
    boundary: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sign", Sign(self.sign))
        if not isinstance(self.branch_orders, BranchDivisor):
            object.__setattr__(self, "branch_orders", BranchDivisor(tuple(self.branch_orders)))
        object.__setattr__(self, "boundary", tuple(self.boundary))
        object.__setattr__(self, "euler", int(self.euler))

    @property
    def k(self) -> int:
        return self.branch_orders.ord

    @property
    def is_disk(self) -> bool:
        return self.euler == 1

    @property
    def genus(self) -> Optional[int]:
        """Genus of the component, or None when (euler, boundary) is inconsistent."""
        twice = 2 - self.euler - len(self.boundary)
        if twice < 0 or twice % 2:
            return None
        return twice // 2


@dataclass(frozen=True)
class RealCurveRecord:
    id: str
    index: int
    essential: bool
    holonomy: Holonomy
    left: str
    right: str

    def __post_init__(self):
        object.__setattr__(self, "holonomy", Holonomy(self.holonomy))
        object.__setattr__(self, "index", int(self.index))
        object.__setattr__(self, "essential", bool(self.essential))


@dataclass(frozen=True)
class DecompositionGraph:
    genus: int
    components: Tuple[ComponentRecord, ...]
    curves: Tuple[RealCurveRecord, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "curves", tuple(self.curves))
        check_structure(self)

    # -- lookups -----------------------------------------------------------
    def component(self, cid: str) -> ComponentRecord:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def curve(self, lid: str) -> RealCurveRecord:
        for l in self.curves:
            if l.id == lid:
                return l
        raise KeyError(lid)

    def has_component(self, cid: str) -> bool:
        return any(c.id == cid for c in self.components)

    def has_curve(self, lid: str) -> bool:
        return any(l.id == lid for l in self.curves)

    def other_side(self, lid: str, cid: str) -> str:
        l = self.curve(lid)
        return l.right if l.left == cid else l.left

    # -- derived numbers ---------------------------------------------------
    @property
    def divisor(self) -> BranchDivisor:
        out = BranchDivisor()
        for c in self.components:
            out = out + c.branch_orders
        return out

    @property
    def ord(self) -> int:
        return sum(c.k for c in self.components)

    def k_sign(self, sign: Sign) -> int:
        return sum(c.k for c in self.components if c.sign is Sign(sign))

    def euler_sign(self, sign: Sign) -> int:
        return sum(c.euler for c in self.components if c.sign is Sign(sign))

    def index_sum(self, cid: str) -> int:
        return sum(self.curve(l).index for l in self.component(cid).boundary)

    def euler_class(self, cid: str) -> int:
        """eu(C) = sign * (chi + k_C - sum of boundary indices)."""
        c = self.component(cid)
        return c.sign.factor * (c.euler + c.k - self.index_sum(cid))

    # -- editing helpers ---------------------------------------------------
    def replace_component(self, cid: str, **kw) -> "DecompositionGraph":
        comps = tuple(replace(c, **kw) if c.id == cid else c for c in self.components)
        return replace(self, components=comps)

    def replace_curve(self, lid: str, **kw) -> "DecompositionGraph":
        curves = tuple(replace(l, **kw) if l.id == lid else l for l in self.curves)
        return replace(self, curves=curves)

    def fresh_component_id(self, stem: str = "C") -> str:
        return _fresh(stem, {c.id for c in self.components})

    def fresh_curve_id(self, stem: str = "l") -> str:
        return _fresh(stem, {l.id for l in self.curves})


def _fresh(stem: str, used) -> str:
    for i in itertools.count():
        cand = f"{stem}{i}"
        if cand not in used:
            return cand


def make_graph(genus: int, components: Iterable[dict], curves: Iterable[dict] = ()) -> DecompositionGraph:
    """Build a graph from plain dicts.  Boundary lists are filled in from the
    curves when a component dict omits ``boundary``."""
    curves = [RealCurveRecord(**l) for l in curves]
    comps = []
    for c in components:
        c = dict(c)
        if "boundary" not in c:
            c["boundary"] = tuple(l.id for l in curves if c["id"] in (l.left, l.right))
        c["branch_orders"] = BranchDivisor(tuple(c.get("branch_orders", ())))
        comps.append(ComponentRecord(**c))
    return DecompositionGraph(genus, tuple(comps), tuple(curves))


def check_structure(g: DecompositionGraph) -> None:
    if not isinstance(g.genus, int) or g.genus < 2:
        raise StructuralError("genus must be an integer >= 2")
    if not g.components:
        raise StructuralError("graph has no components")
    cids = [c.id for c in g.components]
    lids = [l.id for l in g.curves]
    if len(set(cids)) != len(cids):
        raise StructuralError("duplicate component ids")
    if len(set(lids)) != len(lids):
        raise StructuralError("duplicate curve ids")
    if set(cids) & set(lids):
        raise StructuralError("component and curve ids overlap")
    cset = set(cids)
    for l in g.curves:
        for end in (l.left, l.right):
            if end not in cset:
                raise StructuralError(f"curve {l.id} references unknown component {end}")
        if l.left == l.right:
            raise StructuralError(f"curve {l.id} has the same component on both sides")
        if l.index < 0:
            raise StructuralError(f"curve {l.id} has negative index")
    expected: Dict[str, Counter] = {c: Counter() for c in cids}
    for l in g.curves:
        expected[l.left][l.id] += 1
        expected[l.right][l.id] += 1
    for c in g.components:
        if Counter(c.boundary) != expected[c.id]:
            raise StructuralError(f"boundary list of {c.id} does not match the curves touching it")


# ---------------------------------------------------------------------------
# graph-theoretic helpers


def adjacency(g: DecompositionGraph) -> Dict[str, List[Tuple[str, str]]]:
    """component id -> list of (curve id, neighbour id)."""
    adj: Dict[str, List[Tuple[str, str]]] = {c.id: [] for c in g.components}
    for l in g.curves:
        adj[l.left].append((l.id, l.right))
        adj[l.right].append((l.id, l.left))
    return adj


def reachable(g: DecompositionGraph, start: str, skip_curve: Optional[str] = None) -> FrozenSet[str]:
    adj = adjacency(g)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for lid, v in adj[u]:
            if lid != skip_curve and v not in seen:
                seen.add(v)
                stack.append(v)
    return frozenset(seen)


def is_connected(g: DecompositionGraph) -> bool:
    return len(reachable(g, g.components[0].id)) == len(g.components)


def sides(g: DecompositionGraph, lid: str) -> Optional[Tuple[FrozenSet[str], FrozenSet[str]]]:
    """If cutting ``lid`` disconnects the graph, return the (left, right) sides."""
    l = g.curve(lid)
    left = reachable(g, l.left, skip_curve=lid)
    if l.right in left:
        return None
    return left, reachable(g, l.right, skip_curve=lid)


def euler_of(g: DecompositionGraph, cids: Iterable[str]) -> int:
    return sum(g.component(c).euler for c in cids)


def disk_side(g: DecompositionGraph, lid: str) -> Optional[FrozenSet[str]]:
    """The component set of a disk subsurface bounded by ``lid``, if any."""
    s = sides(g, lid)
    if s is None:
        return None
    for side in s:
        if euler_of(g, side) == 1:
            return side
    return None


def derived_essential(g: DecompositionGraph, lid: str) -> bool:
    """A curve is inessential iff it bounds a disk subsurface."""
    return disk_side(g, lid) is None


def disk_subsurfaces(g: DecompositionGraph) -> Dict[str, FrozenSet[str]]:
    """Map each inessential curve to the components of the disk it bounds."""
    out = {}
    for l in g.curves:
        d = disk_side(g, l.id)
        if d is not None:
            out[l.id] = d
    return out


def capped_component(g: DecompositionGraph, cid: str, disks=None) -> FrozenSet[str]:
    """``cid`` together with every disk subsurface hanging off its boundary."""
    disks = disk_subsurfaces(g) if disks is None else disks
    out = {cid}
    for lid in g.component(cid).boundary:
        d = disks.get(lid)
        if d is not None and cid not in d:
            out |= d
    return frozenset(out)


def is_incompressible(g: DecompositionGraph, cid: str) -> bool:
    """All boundary curves essential (our graph-level notion)."""
    disks = disk_subsurfaces(g)
    return not any(l in disks for l in g.component(cid).boundary)


# ---------------------------------------------------------------------------
# canonical form

MAX_CANONICAL_COMPONENTS = 8


def _encode(g: DecompositionGraph, order: Sequence[str]):
    pos = {cid: i for i, cid in enumerate(order)}
    comps = tuple(
        (c.sign.value, c.euler, c.branch_orders.orders) for c in (g.component(x) for x in order)
    )
    curves = tuple(
        sorted((pos[l.left], pos[l.right], l.index, l.essential, l.holonomy.value) for l in g.curves)
    )
    return comps, curves


def canonical_key(g: DecompositionGraph):
    """Lexicographically minimal encoding over all component relabellings.

    Curves carry no identity beyond their attributes and endpoints, so once
    components are ordered the sorted curve tuple is canonical.
    """
    if len(g.components) > MAX_CANONICAL_COMPONENTS:
        raise ValueError("canonical form refused above 8 components")
    ids = [c.id for c in g.components]
    # only permute within blocks of equal component attributes
    attrs = {c.id: (c.sign.value, c.euler, c.branch_orders.orders, len(c.boundary)) for c in g.components}
    blocks = defaultdict(list)
    for cid in ids:
        blocks[attrs[cid]].append(cid)
    keys = sorted(blocks)
    best = None
    for perms in itertools.product(*(itertools.permutations(blocks[k]) for k in keys)):
        order = [cid for p in perms for cid in p]
        enc = _encode(g, order)
        if best is None or enc < best[0]:
            best = (enc, order)
    return (g.genus,) + best[0]


def canonical_form(g: DecompositionGraph) -> DecompositionGraph:
    """Relabel components ``C0, C1, ...`` and curves ``l0, l1, ...`` canonically."""
    key = canonical_key(g)
    _, comps, curves = key
    curve_recs = []
    for j, (li, ri, idx, ess, hol) in enumerate(curves):
        curve_recs.append(RealCurveRecord(f"l{j}", idx, ess, Holonomy(hol), f"C{li}", f"C{ri}"))
    comp_recs = []
    for i, (sign, euler, orders) in enumerate(comps):
        bd = tuple(l.id for l in curve_recs if f"C{i}" in (l.left, l.right))
        comp_recs.append(ComponentRecord(f"C{i}", Sign(sign), euler, BranchDivisor(orders), bd))
    return DecompositionGraph(g.genus, tuple(comp_recs), tuple(curve_recs))


def same_graph(g: DecompositionGraph, h: DecompositionGraph) -> bool:
    return canonical_key(g) == canonical_key(h)
