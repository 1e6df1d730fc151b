"""Compare enumerated stratum sizes with the classical subgroup-count formula.

For the homocyclic group (O/p^c)^n a sublattice of cotype mu corresponds to a
subgroup of type nu = complement(mu) in the n x c box, and the number of such
subgroups is

    prod_i q^(nu'_{i+1} (c_i - nu'_i)) [c_i - nu'_{i+1}, nu'_i - nu'_{i+1}]_q

with c_i = n for i < c (conjugate partitions written with primes).  This is a
report, not a test: it prints one row per stratum and a final match count.

    python3 scripts/hall_comparison.py --n 3 --c 2 --q 2 3
"""

import argparse

from wittgrass.demazure import gauss_binomial
from wittgrass.grassmannian import stratum_counts
from wittgrass.partitions import complement


def conjugate(parts, length):
    return [sum(1 for x in parts if x > i) for i in range(length)]


def subgroup_count(n, c, nu, q):
    box = conjugate([c] * n, c + 1)
    col = conjugate(nu, c + 1)
    out = 1
    for i in range(c):
        out *= q ** (col[i + 1] * (box[i] - col[i])) * gauss_binomial(box[i] - col[i + 1], col[i] - col[i + 1], q)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--c", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3])
    args = ap.parse_args()

    rows = matches = 0
    print(f"{'n':>2} {'c':>2} {'q':>2}  {'cotype':<10} {'enumerated':>10} {'formula':>10}")
    for n in args.n:
        for c in args.c:
            for q in args.q:
                for mu, count in stratum_counts(n, c, q).rows():
                    want = subgroup_count(n, c, list(complement(mu, n, c).parts), q)
                    flag = "" if want == count else "  MISMATCH"
                    print(f"{n:>2} {c:>2} {q:>2}  {str(mu):<10} {count:>10} {want:>10}{flag}")
                    rows += 1
                    matches += want == count
    print(f"{matches}/{rows} strata agree")


if __name__ == "__main__":
    main()
