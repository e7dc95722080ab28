"""Enumerate ord-2 decomposition graphs in genus 2 and tabulate the census.

    python3 scripts/census.py --max-components 4 --max-curves 4
"""

import argparse
import collections
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from branched_cp1.decomposition import classify_k2, enumerate_k2
from branched_cp1.decomposition.graph import Sign
from branched_cp1.decomposition.io import graph_to_dict


@dataclass
class CensusConfig:
    genus: int = 2
    max_components: int = 4
    max_curves: int = 4
    out: Optional[str] = None  # directory for graph JSON files


def run(cfg: CensusConfig) -> dict:
    t0 = time.perf_counter()
    graphs = enumerate_k2(cfg.genus, cfg.max_components, cfg.max_curves)
    dt = time.perf_counter() - t0
    by_label = collections.Counter(classify_k2(g).value for g in graphs)
    by_shape = collections.Counter((len(g.components), len(g.curves)) for g in graphs)
    if cfg.out:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(graphs):
            (out / f"graph_{i:03d}.json").write_text(json.dumps(graph_to_dict(g), indent=1))
    rows = [
        (classify_k2(g).value, len(g.components), len(g.curves), g.k_sign(Sign.POS), g.k_sign(Sign.NEG))
        for g in graphs
    ]
    return {"config": asdict(cfg), "N": len(graphs), "seconds": dt, "labels": dict(by_label), "shapes": by_shape, "rows": rows}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--max-components", type=int, default=4)
    p.add_argument("--max-curves", type=int, default=4)
    p.add_argument("--out", default=None)
    a = p.parse_args()
    res = run(CensusConfig(a.genus, a.max_components, a.max_curves, a.out))
    print(f"N = {res['N']}  ({res['seconds']:.2f}s)")
    for lab, n in sorted(res["labels"].items()):
        print(f"  {lab:8s} {n}")
    print("components x curves:")
    for (nc, nl), n in sorted(res["shapes"].items()):
        print(f"  {nc} x {nl}: {n}")


if __name__ == "__main__":
    main()
