#!/usr/bin/env python3
"""Tabulate how the certified switching-family exponent grows with arity.

For each order the log2 family size s means 2^s distinct n-quasigroups,
so s itself growing like c^n is the double-exponential lower bound.  The
last column compares s against the theoretical exponent for that order.
"""

import argparse
import sys
from dataclasses import dataclass

import nquasigroups.census as census


@dataclass
class GrowthConfig:
    orders: tuple = (4, 5, 6, 7)
    max_arity: int = 6
    seed: int = 0


def parse_args(argv):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", type=int, nargs="+", default=[4, 5, 6, 7])
    ap.add_argument("--max-arity", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)
    return GrowthConfig(tuple(a.orders), a.max_arity, a.seed)


def main(argv=None):
    cfg = parse_args(argv)
    print("%3s %3s %14s %14s %8s" % ("k", "n", "family_log2", "bound",
                                     "ratio"))
    for k in cfg.orders:
        for n in range(2, cfg.max_arity + 1):
            try:
                rep = census.verify_family(n, k, seed=cfg.seed)
            except (ValueError, census.CertificationError) as e:
                print("%3d %3d  skipped: %s" % (k, n, e))
                continue
            bound = max(rep.bound_exponents.values())
            ratio = rep.family_log2 / bound if bound else float("inf")
            print("%3d %3d %14g %14g %8.3f"
                  % (k, n, rep.family_log2, bound, ratio))
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
