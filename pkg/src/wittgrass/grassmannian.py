"""
F_q-points of the window Grassmannian: all O-submodules of (O/p^c)^n,
generated directly in canonical echelon form, and their stratification by
cokernel type.
"""

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .lattice import LatticeCanon, PrecisionError, det, hermite, reduce_vector
from .partitions import PartitionType, as_partition, dominates, partitions_in_box
from .ring import field_for_q, galois_ring

DEFAULT_WORK_BOUND = 10 ** 8


class WorkBoundExceeded(RuntimeError):
    pass


def default_work_bound():
    raw = os.environ.get("WITTGRASS_WORKBOUND")
    return int(raw) if raw else DEFAULT_WORK_BOUND


@dataclass
class EnumConfig:
    work_bound: int = field(default_factory=default_work_bound)
    workers: int = 1


# --- shape-first enumeration ------------------------------------------------------

def profiles(n, c):
    """Pivot exponent per column; c means the column carries no pivot."""
    return list(product(range(c + 1), repeat=n))


def _reps(ctx, e):
    """Canonical representatives of O/p^e inside O/p^c (coefficients < p^e)."""
    pe = ctx.p ** e
    if ctx.d == 1:
        return list(range(pe))
    return [tuple(t) for t in product(range(pe), repeat=ctx.d)]


def profile_cost(n, c, q, prof):
    """Upper bound on candidate rows examined for one profile."""
    total, above = 0, 1
    # rows are built from the last column backwards
    for j in range(n - 1, -1, -1):
        if prof[j] == c:
            continue
        per_row = q ** sum(prof[k] for k in range(j + 1, n))
        above *= per_row
        total += above
    return total


def work_estimate(n, c, q):
    return sum(profile_cost(n, c, q, pr) for pr in profiles(n, c))


def check_work(n, c, q, config=None):
    config = config or EnumConfig()
    need = work_estimate(n, c, q)
    if need > config.work_bound:
        raise WorkBoundExceeded(
            f"n={n}, c={c}, q={q} needs up to {need} candidate rows; bound is "
            f"{config.work_bound} (set WITTGRASS_WORKBOUND to raise it)")
    return need


def _enumerate_profile(ctx, n, prof):
    """Yield canonical (gens, profile) for every module with this profile."""
    c = ctx.N
    cols = [j for j in range(n) if prof[j] < c]
    reps = {e: _reps(ctx, e) for e in set(prof)}
    all_reps = _reps(ctx, c)

    def rec(idx, lower_gens, lower_prof):
        # idx walks cols from the end; lower_* hold rows with larger pivot column
        if idx < 0:
            yield lower_gens, lower_prof
            return
        j = cols[idx]
        e = prof[j]
        slots = []
        for k in range(j + 1, n):
            slots.append(reps[prof[k]] if prof[k] < c else all_reps)
        head = [ctx.zero] * j + [ctx.ppow(e)]
        annihilator = ctx.ppow(c - e)
        for tail in product(*slots):
            row = head + list(tail)
            if e > 0:
                sat = [ctx.mul(annihilator, x) for x in row]
                rem, _ = reduce_vector(ctx, lower_gens, lower_prof, sat)
                if any(x != ctx.zero for x in rem):
                    continue
            yield from rec(idx - 1, (tuple(row),) + lower_gens, ((j, e),) + lower_prof)

    yield from rec(len(cols) - 1, (), ())


def enumerate_lattices(n, c, q, window=None, config=None):
    """Every submodule of (O/p^c)^n exactly once, as LatticeCanon.

    Order: profiles lexicographically, then entries in product order.
    """
    check_work(n, c, q, config)
    params = field_for_q(q)
    ctx = galois_ring(params, c)
    window = window or (0, c)
    for prof in profiles(n, c):
        for gens, pr in _enumerate_profile(ctx, n, prof):
            yield LatticeCanon(n, window, ctx, gens, pr)


# --- stratum tables ---------------------------------------------------------------

@dataclass
class StratumTable:
    n: int
    q: int
    c: int
    counts: dict

    def total(self):
        return sum(self.counts.values())

    def __getitem__(self, lam):
        return self.counts.get(as_partition(lam), 0)

    def rows(self):
        """[(type, count)] sorted by (total, lex), zero strata included."""
        return [(lam, self.counts.get(lam, 0)) for lam in partitions_in_box(self.n, self.c)]


def _profile_counter(args):
    n, c, q, prof = args
    ctx = galois_ring(field_for_q(q), c)
    out = Counter()
    for gens, pr in _enumerate_profile(ctx, n, prof):
        M = LatticeCanon(n, (0, c), ctx, gens, pr)
        out[M.cotype().parts] += 1
    return prof, out


def stratum_counts(n, c, q, config=None):
    config = config or EnumConfig()
    check_work(n, c, q, config)
    jobs = [(n, c, q, pr) for pr in profiles(n, c)]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_profile_counter, jobs))
    else:
        results = [_profile_counter(j) for j in jobs]
    total = Counter()
    for _, cnt in sorted(results):
        total.update(cnt)
    return StratumTable(n, q, c, {PartitionType(k): v for k, v in sorted(total.items())})


def count_leq(table, lam):
    lam = as_partition(lam)
    return sum(v for mu, v in table.counts.items() if dominates(lam, mu))


def count_submodules_closure(n, c, q):
    """Total submodule count by a different route: breadth-first closure
    under adding one vector at a time, starting from zero."""
    ctx = galois_ring(field_for_q(q), c)
    vectors = [list(v) for v in product(ctx.elements(), repeat=n)]
    start = hermite(ctx, [], n)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for gens, prof in frontier:
            for v in vectors:
                rem, _ = reduce_vector(ctx, gens, prof, v)
                if all(x == ctx.zero for x in rem):
                    continue
                new = hermite(ctx, [list(r) for r in gens] + [v], n)
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    return len(seen)


# --- Kottwitz invariant ---------------------------------------------------------------

def kottwitz(g=None, *, ctx=None, matrix=None, shift=0):
    """v_p(det g) for g = p^shift * matrix, matrix over O/p^N.

    Accepts a loop-group element (anything with .ctx, .matrix, .shift).
    """
    if g is not None:
        ctx, matrix, shift = g.ctx, g.matrix, g.shift
    n = len(matrix)
    dt = det(ctx, [list(r) for r in matrix])
    v = ctx.val(dt)
    if v >= ctx.N:
        raise PrecisionError("determinant vanishes at the stored precision")
    return n * shift + v
