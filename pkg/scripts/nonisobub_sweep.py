"""Sweep the tilt angle of the grafted-annulus arcs and record which
bubblings come out injectively developed.

For each theta the script builds the three arcs (tilted up, tilted down,
untilted) and prints their certificate status, orientation and the
non-injectivity witness of the untilted arc.
"""

import argparse
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from branched_cp1.devmap import scenario_nonisobub


@dataclass
class SweepConfig:
    thetas: List[float] = field(default_factory=lambda: list(np.linspace(0.05, 0.35, 7)))
    n_samples: int = 800
    word_ball: int = 2


def run(cfg: SweepConfig):
    rows = []
    for th in cfg.thetas:
        r = scenario_nonisobub(theta=float(th), n_samples=cfg.n_samples, word_ball=cfg.word_ball)
        rows.append(
            (
                float(th),
                r.plus.certificate.status,
                r.minus.certificate.status,
                r.plus.orientation,
                r.minus.orientation,
                r.zero.certificate.injective,
                r.zero.certificate.witness,
            )
        )
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--thetas", type=float, nargs="*", default=None)
    p.add_argument("--n-samples", type=int, default=800)
    p.add_argument("--word-ball", type=int, default=2)
    a = p.parse_args()
    cfg = SweepConfig(n_samples=a.n_samples, word_ball=a.word_ball)
    if a.thetas:
        cfg.thetas = a.thetas
    bad = [t for t in cfg.thetas if not 0 < abs(t) < math.pi / 8]
    if bad:
        p.error(f"theta must satisfy 0 < |theta| < pi/8, got {bad}")
    print(f"{'theta':>7} {'plus':>10} {'minus':>10} {'or+':>4} {'or-':>4} {'zero inj':>9}  witness")
    for th, sp, sm, op, om, zi, wit in run(cfg):
        print(f"{th:>7.3f} {sp:>10} {sm:>10} {op:>+4d} {om:>+4d} {str(zi):>9}  {wit}")


if __name__ == "__main__":
    main()
