"""The named genus-2 graphs used throughout tests, demos and surgery examples."""

from __future__ import annotations

from .graph import DecompositionGraph, make_graph

LOX, TRIV = "loxodromic", "trivial"


def _curve(lid, left, right, index=0, essential=True):
    return dict(id=lid, index=index, essential=essential, holonomy=LOX if essential else TRIV, left=left, right=right)


def uniformizing(genus: int = 2) -> DecompositionGraph:
    """Unbranched structure with Fuchsian holonomy: one positive piece."""
    return make_graph(genus, [dict(id="S", sign="+", euler=2 - 2 * genus)])


def grafted_separating(genus: int = 2, chi_left: int = -1) -> DecompositionGraph:
    chi_right = 2 - 2 * genus - chi_left
    return make_graph(
        genus,
        [
            dict(id="P1", sign="+", euler=chi_left),
            dict(id="P2", sign="+", euler=chi_right),
            dict(id="A", sign="-", euler=0),
        ],
        [_curve("l1", "P1", "A"), _curve("l2", "P2", "A")],
    )


def grafted_nonseparating(genus: int = 2) -> DecompositionGraph:
    return make_graph(
        genus,
        [dict(id="P", sign="+", euler=2 - 2 * genus), dict(id="A", sign="-", euler=0)],
        [_curve("l1", "P", "A"), _curve("l2", "P", "A")],
    )


def pospos(genus: int = 2) -> DecompositionGraph:
    """Bubbling of the uniformizing structure along a short arc."""
    return make_graph(
        genus,
        [
            dict(id="S", sign="+", euler=1 - 2 * genus, branch_orders=[1, 1]),
            dict(id="D", sign="-", euler=1),
        ],
        [_curve("l", "S", "D", index=1, essential=False)],
    )


def mixed(genus: int = 2) -> DecompositionGraph:
    """Non-separating grafting followed by a bubbling across one annulus boundary."""
    return make_graph(
        genus,
        [
            dict(id="P", sign="+", euler=2 - 2 * genus, branch_orders=[1]),
            dict(id="A", sign="-", euler=0, branch_orders=[1]),
        ],
        [_curve("l1", "P", "A", index=1), _curve("l2", "P", "A")],
    )


def mixed_separating(genus: int = 2) -> DecompositionGraph:
    return make_graph(
        genus,
        [
            dict(id="P1", sign="+", euler=-1, branch_orders=[1]),
            dict(id="P2", sign="+", euler=3 - 2 * genus),
            dict(id="A", sign="-", euler=0, branch_orders=[1]),
        ],
        [_curve("l1", "P1", "A", index=1), _curve("l2", "P2", "A")],
    )


def negneg(genus: int = 2) -> DecompositionGraph:
    """Non-separating grafting followed by a bubbling from the annulus through
    the positive part back into the annulus."""
    return make_graph(
        genus,
        [
            dict(id="P", sign="+", euler=3 - 2 * genus),
            dict(id="N", sign="-", euler=-1, branch_orders=[1, 1]),
        ],
        [_curve("l", "P", "N")],
    )


CANONICAL = {
    "uniformizing": uniformizing,
    "grafted_separating": grafted_separating,
    "grafted_nonseparating": grafted_nonseparating,
    "pospos": pospos,
    "mixed": mixed,
    "mixed_separating": mixed_separating,
    "negneg": negneg,
}
