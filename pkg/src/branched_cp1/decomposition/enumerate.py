"""Bounded exhaustive enumeration of valid graphs with two branch points."""

from __future__ import annotations

import itertools
from dataclasses import replace
from typing import Dict, Iterator, List, Sequence, Tuple

from .classify import classify_k2
from .graph import (
    MAX_CANONICAL_COMPONENTS,
    BranchDivisor,
    ComponentRecord,
    DecompositionGraph,
    Holonomy,
    RealCurveRecord,
    canonical_form,
    canonical_key,
    derived_essential,
)
from .rules import validate

#: ways to place a divisor of order 2: (component slot, orders) lists
DIVISORS_K2 = ((2,), (1, 1))


def _connected(n: int, edges: Sequence[Tuple[int, int]]) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for a, b in edges:
            for x, y in ((a, b), (b, a)):
                if x == u and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return len(seen) == n


def _euler_choices(degrees: Sequence[int], total: int) -> Iterator[Tuple[int, ...]]:
    """Integer chi per component: chi <= 1, chi + deg even and <= 2, sum = total."""
    n = len(degrees)
    maxes = [min(1, 2 - d) for d in degrees]

    def rec(i, remaining):
        if i == n:
            if remaining == 0:
                yield ()
            return
        hi = maxes[i]
        lo = remaining - sum(maxes[i + 1 :])
        for chi in range(lo, hi + 1):
            if (chi + degrees[i]) % 2:
                continue
            for rest in rec(i + 1, remaining - chi):
                yield (chi,) + rest

    yield from rec(0, total)


def _branch_placements(n: int) -> Iterator[Dict[int, Tuple[int, ...]]]:
    for i in range(n):
        yield {i: (2,)}
        yield {i: (1, 1)}
    for i, j in itertools.combinations(range(n), 2):
        yield {i: (1,), j: (1,)}


def shape_graphs(genus: int, max_components: int, max_curves: int) -> Iterator[DecompositionGraph]:
    """Every labelled candidate: topology, Euler numbers, ord-2 divisor,
    indices in {0, 1}; essentiality and holonomy derived from topology."""
    for n in range(1, max_components + 1):
        for n_pos in range(0, n + 1):
            signs = ["+"] * n_pos + ["-"] * (n - n_pos)
            pairs = [(p, q) for p in range(n_pos) for q in range(n_pos, n)]
            for r in range(0, max_curves + 1):
                if n > 1 and r == 0:
                    continue
                for edges in itertools.combinations_with_replacement(pairs, r):
                    if not _connected(n, edges):
                        continue
                    deg = [sum((a == i) + (b == i) for a, b in edges) for i in range(n)]
                    for chis in _euler_choices(deg, 2 - 2 * genus):
                        chi_neg = sum(c for c, sg in zip(chis, signs) if sg == "-")
                        for place in _branch_placements(n):
                            # necessary condition (rule V3), cheap to test
                            # before the 2^r index choices are expanded
                            kp = sum(sum(o) for i, o in place.items() if signs[i] == "+")
                            if 2 * chi_neg != kp - (2 - kp):
                                continue
                            base = _build(genus, signs, edges, chis, place, (0,) * r)
                            for idx in itertools.product((0, 1), repeat=r):
                                yield _with_indices(base, idx)


def _with_indices(g: DecompositionGraph, idx) -> DecompositionGraph:
    if not any(idx):
        return g
    curves = tuple(replace(l, index=i) for l, i in zip(g.curves, idx))
    return DecompositionGraph(g.genus, g.components, curves)


def _build(genus, signs, edges, chis, place, idx) -> DecompositionGraph:
    names = [f"C{i}" for i in range(len(signs))]
    curves = [
        RealCurveRecord(f"l{j}", idx[j], True, Holonomy.LOXODROMIC, names[a], names[b])
        for j, (a, b) in enumerate(edges)
    ]
    comps = [
        ComponentRecord(
            names[i],
            signs[i],
            chis[i],
            BranchDivisor(place.get(i, ())),
            tuple(l.id for l in curves if names[i] in (l.left, l.right)),
        )
        for i in range(len(signs))
    ]
    g = DecompositionGraph(genus, tuple(comps), tuple(curves))
    # essentiality and holonomy are functions of the topology
    for l in curves:
        if not derived_essential(g, l.id):
            g = g.replace_curve(l.id, essential=False, holonomy=Holonomy.TRIVIAL)
    return g


def enumerate_k2(genus: int, max_components: int, max_curves: int) -> List[DecompositionGraph]:
    """All valid ord-2 graphs within the bounds, one per isomorphism class,
    in canonical form and sorted by canonical key."""
    if genus < 2:
        raise ValueError("genus must be >= 2")
    if max_components < 0 or max_curves < 0:
        raise ValueError("bounds must be non-negative")
    if max_components > MAX_CANONICAL_COMPONENTS:
        raise ValueError("refusing to enumerate above 8 components (combinatorial explosion)")
    found = {}
    for g in shape_graphs(genus, max_components, max_curves):
        if not validate(g).valid:
            continue
        key = canonical_key(g)
        if key not in found:
            classify_k2(g)  # raises ClassificationMismatch on a rule bug
            found[key] = canonical_form(g)
    return [found[k] for k in sorted(found)]
