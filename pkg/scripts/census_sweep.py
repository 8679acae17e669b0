#!/usr/bin/env python3
"""Sweep the census over a small (arity, order) grid and tabulate results.

Exact counts run only where the auto policy allows; everything else
reports bound exponents and certified family sizes.
"""

import argparse
import sys
from dataclasses import dataclass

import nquasigroups.census as census


@dataclass
class SweepConfig:
    max_arity: int = 4
    max_order: int = 7
    budget: int = census.DEFAULT_CELL_BUDGET
    exact: str = "auto"
    time_limit: float = census.DEFAULT_TIME_LIMIT
    seed: int = 0


def parse_args(argv):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-arity", type=int, default=4)
    ap.add_argument("--max-order", type=int, default=7)
    ap.add_argument("--exact", choices=["auto", "on", "off"], default="auto")
    ap.add_argument("--budget", type=int, default=census.DEFAULT_CELL_BUDGET)
    ap.add_argument("--time-limit", type=float,
                    default=census.DEFAULT_TIME_LIMIT)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)
    return SweepConfig(a.max_arity, a.max_order, a.budget, a.exact,
                       a.time_limit, a.seed)


def main(argv=None):
    cfg = parse_args(argv)
    header = ("n", "k", "exact", "family_log2", "max_bound", "seconds")
    print("%3s %3s %12s %12s %10s %8s" % header)
    for n in range(2, cfg.max_arity + 1):
        for k in range(2, cfg.max_order + 1):
            try:
                rep = census.run_census(n, k, budget=cfg.budget,
                                        exact=cfg.exact,
                                        time_limit=cfg.time_limit,
                                        seed=cfg.seed)
            except (census.BudgetError, census.CertificationError) as e:
                print("%3d %3d  skipped: %s" % (n, k, e))
                continue
            exact = rep.exact_count if rep.exact_count is not None else "-"
            flog = "-" if rep.family_log2 is None else "%g" % rep.family_log2
            bound = "-"
            if rep.bound_exponents:
                bound = "%g" % max(rep.bound_exponents.values())
            print("%3d %3d %12s %12s %10s %8.2f"
                  % (n, k, exact, flog, bound, rep.elapsed))
    return 0


if __name__ == "__main__":
    sys.exit(main())
