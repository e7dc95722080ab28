"""Moving a simple branch point across a real curve.

There is no local rewrite rule for how indices change when a branch point
crosses the real locus, so this is a constrained search.  Topologically the
crossing is a band move: the source component is cut along an arc running
from the crossed curve to a boundary arc ``b`` of the source (possibly the
same curve), and the pieces on the far side of the two arcs are joined by
the band.  Every cut, Euler split and boundary distribution is tried, the
indices of affected curves range over {0, 1}, and the survivors of
validation and classification are returned.
"""

from __future__ import annotations

import itertools
from dataclasses import replace
from typing import Dict, List, Optional

from ..decomposition.classify import ClassificationMismatch, classify_k2
from ..decomposition.graph import (
    BranchDivisor,
    ComponentRecord,
    DecompositionGraph,
    Sign,
    canonical_key,
)
from ..decomposition.rules import validate
from .rewrite import (
    SurgeryError,
    SurgeryResult,
    UnsupportedSurgery,
    _fits,
    _oriented,
    _rebuild,
    rederive_essentiality,
)


def _fresh_ids(used, stem, n):
    out = []
    i = 0
    while len(out) < n:
        cand = f"{stem}{i}"
        if cand not in used:
            out.append(cand)
            used.add(cand)
        i += 1
    return out


def _band_candidates(g: DecompositionGraph, F: ComponentRecord, across: str, b: str, unit: int):
    """Yield raw graphs (indices not yet assigned) for one choice of ``b``."""
    used = {c.id for c in g.components} | {l.id for l in g.curves}
    T = g.component(g.other_side(across, F.id))
    Tb = g.component(g.other_side(b, F.id))
    rest_units = F.branch_orders.remove(unit)
    others = [c for c in g.components if c.id not in {F.id, T.id, Tb.id}]
    # the far side: merged along the band, receives the unit
    if T.id == Tb.id:
        M = replace(T, euler=T.euler - 1, branch_orders=T.branch_orders + BranchDivisor((unit,)))
    else:
        M = replace(
            T,
            euler=T.euler + Tb.euler - 1,
            branch_orders=T.branch_orders + Tb.branch_orders + BranchDivisor((unit,)),
        )
    def relink(l, mapping):
        return replace(l, left=mapping.get(l.left, l.left), right=mapping.get(l.right, l.right))

    far = {Tb.id: M.id}
    untouched = [relink(l, far) for l in g.curves if l.id not in (across, b)]
    if across != b:
        # arc between two distinct boundary curves: source stays connected,
        # the two curves merge into one
        Fn = replace(F, euler=F.euler + 1, branch_orders=rest_units)
        (m,) = _fresh_ids(used, "m", 1)
        curves = untouched + [_oriented(m, Fn, M)]
        yield _rebuild(g, others + [Fn, M], curves), [m]
        return
    # arc from the crossed curve back to itself: the curve splits in two
    s1, s2 = _fresh_ids(used, "s", 2)
    # (a) non-separating cut
    Fn = replace(F, euler=F.euler + 1, branch_orders=rest_units)
    curves = untouched + [_oriented(s1, Fn, M), _oriented(s2, Fn, M)]
    yield _rebuild(g, others + [Fn, M], curves), [s1, s2]
    # (b) separating cut into two pieces with all Euler splits and distributions
    other_bd = [l for l in F.boundary if l != across]
    units = list(rest_units.orders)
    ida, idb = _fresh_ids(used, F.id + "_", 2)
    total = F.euler + 1
    for chi_a in range(total - 1, 2):
        chi_b = total - chi_a
        for na in range(len(other_bd) + 1):
            for sel in itertools.combinations(range(len(other_bd)), na):
                if not (_fits(chi_a, na + 1) and _fits(chi_b, len(other_bd) - na + 1)):
                    continue
                for mask in itertools.product((0, 1), repeat=len(units)):
                    Fa = replace(F, id=ida, euler=chi_a, branch_orders=BranchDivisor(tuple(u for u, k in zip(units, mask) if not k)))
                    Fb = replace(F, id=idb, euler=chi_b, branch_orders=BranchDivisor(tuple(u for u, k in zip(units, mask) if k)))
                    moved = []
                    for l in untouched:
                        if F.id in (l.left, l.right):
                            tgt = ida if other_bd.index(l.id) in sel else idb
                            l = relink(l, {F.id: tgt})
                        moved.append(l)
                    curves = moved + [_oriented(s1, Fa, M), _oriented(s2, Fb, M)]
                    yield _rebuild(g, others + [Fa, Fb, M], curves), [s1, s2]


def move_branch_point(g: DecompositionGraph, from_: str, across: Optional[str]) -> List[SurgeryResult]:
    """All valid graphs reachable by moving one simple branch point of
    ``from_`` across the curve ``across`` (``None``: a move inside the
    component, which leaves the graph unchanged).

    Results are sorted by canonical key.  A result is ``certified`` when it
    realizes the transition from a piece with k+ in {0, 2} to an adjacent
    piece with k+ = 1; every other result is a ``candidate``.
    """
    if g.ord != 2:
        raise UnsupportedSurgery(f"branch point moves need ord = 2 (got {g.ord})")
    if not g.has_component(from_):
        raise SurgeryError(f"unknown component {from_}")
    F = g.component(from_)
    if F.k == 0:
        raise SurgeryError(f"{from_} carries no branch point")
    if across is None:
        return [SurgeryResult(g, ((), ()), f"move {from_} within component")]
    if across not in F.boundary:
        raise SurgeryError(f"{across} is not on the boundary of {from_}")
    if 1 not in F.branch_orders.orders:
        return []  # only simple branch points move across a curve
    kp_src = g.k_sign(Sign.POS)
    found: Dict[tuple, DecompositionGraph] = {}
    for b in dict.fromkeys(F.boundary):
        for raw, new_ids in _band_candidates(g, F, across, b, 1):
            affected_comps = {c.id for c in raw.components if c.id not in {x.id for x in g.components} or c.id in (F.id, g.other_side(across, F.id), g.other_side(b, F.id))}
            affected = [l.id for l in raw.curves if l.left in affected_comps or l.right in affected_comps]
            try:
                raw = rederive_essentiality(raw)
            except Exception:  # structurally impossible gluing
                continue
            for idx in itertools.product((0, 1), repeat=len(affected)):
                cand = raw
                for lid, I in zip(affected, idx):
                    cand = cand.replace_curve(lid, index=I)
                if not validate(cand).valid:
                    continue
                try:
                    classify_k2(cand)
                except (ClassificationMismatch, ValueError):
                    continue
                found.setdefault(canonical_key(cand), cand)
    out = []
    for key in sorted(found):
        h = found[key]
        kp = h.k_sign(Sign.POS)
        status = "certified" if kp_src in (0, 2) and kp == 1 else "candidate"
        out.append(SurgeryResult(h, ((), ()), f"move {from_} across {across}", status))
    return out
