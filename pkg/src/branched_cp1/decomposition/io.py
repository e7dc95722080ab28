"""JSON reading and writing of decomposition graphs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Union

from .graph import DecompositionGraph, StructuralError, make_graph

TOP_KEYS = {"genus", "components", "curves"}
COMPONENT_KEYS = {"id", "sign", "euler", "branch_orders", "boundary"}
CURVE_KEYS = {"id", "index", "essential", "holonomy", "left", "right"}


class GraphFormatError(ValueError):
    """The document does not follow the graph schema."""


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise GraphFormatError(f"{where}: expected an object")
    extra = set(obj) - allowed
    if extra:
        raise GraphFormatError(f"{where}: unknown keys {sorted(extra)}")
    missing = allowed - set(obj)
    if missing:
        raise GraphFormatError(f"{where}: missing keys {sorted(missing)}")


def _typed(value, types, where):
    # bool is an int subclass; keep the two apart
    if isinstance(value, bool) and bool not in types:
        raise GraphFormatError(f"{where}: wrong type")
    if not isinstance(value, types):
        raise GraphFormatError(f"{where}: wrong type")
    return value


def graph_from_dict(doc: Dict[str, Any]) -> DecompositionGraph:
    _check_keys(doc, TOP_KEYS, "graph")
    genus = _typed(doc["genus"], (int,), "genus")
    comps = []
    for i, c in enumerate(_typed(doc["components"], (list,), "components")):
        _check_keys(c, COMPONENT_KEYS, f"components[{i}]")
        if c["sign"] not in ("+", "-"):
            raise GraphFormatError(f"components[{i}].sign must be '+' or '-'")
        comps.append(
            dict(
                id=_typed(c["id"], (str,), f"components[{i}].id"),
                sign=c["sign"],
                euler=_typed(c["euler"], (int,), f"components[{i}].euler"),
                branch_orders=[_typed(x, (int,), "branch order") for x in _typed(c["branch_orders"], (list,), "branch_orders")],
                boundary=tuple(_typed(x, (str,), "boundary id") for x in _typed(c["boundary"], (list,), "boundary")),
            )
        )
    curves = []
    for j, l in enumerate(_typed(doc["curves"], (list,), "curves")):
        _check_keys(l, CURVE_KEYS, f"curves[{j}]")
        if l["holonomy"] not in ("trivial", "loxodromic"):
            raise GraphFormatError(f"curves[{j}].holonomy must be 'trivial' or 'loxodromic'")
        curves.append(
            dict(
                id=_typed(l["id"], (str,), f"curves[{j}].id"),
                index=_typed(l["index"], (int,), f"curves[{j}].index"),
                essential=_typed(l["essential"], (bool,), f"curves[{j}].essential"),
                holonomy=l["holonomy"],
                left=_typed(l["left"], (str,), f"curves[{j}].left"),
                right=_typed(l["right"], (str,), f"curves[{j}].right"),
            )
        )
    try:
        return make_graph(genus, comps, curves)
    except StructuralError as e:
        raise GraphFormatError(str(e)) from e


def graph_to_dict(g: DecompositionGraph) -> Dict[str, Any]:
    return {
        "genus": g.genus,
        "components": [
            {
                "id": c.id,
                "sign": c.sign.value,
                "euler": c.euler,
                "branch_orders": list(c.branch_orders.orders),
                "boundary": list(c.boundary),
            }
            for c in g.components
        ],
        "curves": [
            {
                "id": l.id,
                "index": l.index,
                "essential": l.essential,
                "holonomy": l.holonomy.value,
                "left": l.left,
                "right": l.right,
            }
            for l in g.curves
        ],
    }


def loads(text: str) -> DecompositionGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"malformed JSON: {e}") from e
    return graph_from_dict(doc)


def dumps(g: DecompositionGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2) + "\n"


def load(path: Union[str, Path]) -> DecompositionGraph:
    return loads(Path(path).read_text(encoding="utf-8"))


def dump(g: DecompositionGraph, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(g), encoding="utf-8")
