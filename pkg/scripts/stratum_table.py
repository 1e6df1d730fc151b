"""Dump stratum sizes and Demazure fiber data as CSV.

    python3 scripts/stratum_table.py --n 3 --c 2 --q 2 > table.csv
    python3 scripts/stratum_table.py --n 3 --q 3 --demazure 2,1
"""

import argparse
import csv
import sys

from wittgrass.demazure import chain_count, fiber_report
from wittgrass.grassmannian import EnumConfig, count_leq, stratum_counts
from wittgrass.partitions import PartitionType


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--c", type=int, default=2)
    ap.add_argument("--q", type=int, required=True)
    ap.add_argument("--demazure", metavar="TYPE", help="fiber report for this type instead")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    config = EnumConfig(workers=args.workers)
    out = csv.writer(sys.stdout, lineterminator="\n")

    if args.demazure:
        lam = PartitionType.parse(args.demazure)
        rep = fiber_report(args.n, lam, args.q, config)
        out.writerow(["cotype", "points", "fiber_size", "contribution"])
        for mu, info in rep.strata.items():
            size = info["fiber_sizes"][0]
            out.writerow([str(mu), info["points"], size, info["points"] * size])
        out.writerow(["total", "", "", rep.chains])
        print(f"# product formula {chain_count(args.n, lam, args.q)}", file=sys.stderr)
        return

    table = stratum_counts(args.n, args.c, args.q, config)
    out.writerow(["cotype", "count", "count_leq"])
    for mu, count in table.rows():
        out.writerow([str(mu), count, count_leq(table, mu)])


if __name__ == "__main__":
    main()
