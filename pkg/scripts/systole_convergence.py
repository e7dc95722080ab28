"""Systole of the Bolza group as a function of the word-length cutoff.

Prints the shortest translation length found among cyclic classes of length
at most L, next to the closed form 2 arccosh(1 + sqrt 2).
"""

import argparse
import math
import time
from dataclasses import dataclass

from branched_cp1.fuchsian import systole_estimate, standard_genus2


@dataclass
class SystoleConfig:
    max_length: int = 8
    min_length: int = 1


def run(cfg: SystoleConfig):
    rep = standard_genus2()
    ref = 2 * math.acosh(1 + math.sqrt(2))
    rows = []
    for L in range(cfg.min_length, cfg.max_length + 1):
        t0 = time.perf_counter()
        s = systole_estimate(rep, L)
        rows.append((L, s, s - ref, time.perf_counter() - t0))
    return ref, rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-length", type=int, default=8)
    p.add_argument("--min-length", type=int, default=1)
    a = p.parse_args()
    ref, rows = run(SystoleConfig(a.max_length, a.min_length))
    print(f"reference {ref:.15f}")
    print(f"{'L':>3} {'estimate':>20} {'error':>10} {'sec':>7}")
    for L, s, err, dt in rows:
        print(f"{L:>3} {s:>20.15f} {err:>10.2e} {dt:>7.2f}")


if __name__ == "__main__":
    main()
