"""
Points of the Demazure resolution: chains O^n = E_0 > E_1 > ... > E_{lambda_1}
with p E_i <= E_{i+1} and dim E_i/E_{i+1} = n_lambda(i), their endpoint
fibers over the Schubert strata, and the a_m-predicate on Quot points.
"""

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product

from .grassmannian import EnumConfig, WorkBoundExceeded, _enumerate_profile, profiles
from .lattice import (LatticeCanon, PrecisionError, canonicalize, full_lattice, inverse, quotient_type, smith,
                      smith_normal_form, vec_mat)
from .partitions import PartitionType, as_partition, dominates, row_counts, rows
from .ring import field_for_q, galois_ring


def gauss_binomial(n, k, q):
    """Number of k-dimensional subspaces of F_q^n."""
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range for n={n}")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def rref_subspaces(k_field, n, k):
    """All k-dim subspaces of F_q^n as reduced row echelon matrices (raw field
    elements), pivot sets in lexicographic order."""
    elems = k_field.elements()
    zero, one = k_field.zero, k_field.one
    for pivots in combinations(range(n), k):
        free = [(r, j) for r, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivots]
        for values in product(elems, repeat=len(free)):
            M = [[zero] * n for _ in range(k)]
            for r, pc in enumerate(pivots):
                M[r][pc] = one
            for (r, j), v in zip(free, values):
                M[r][j] = v
            yield M


@dataclass(frozen=True)
class FiltrationChain:
    lam: PartitionType
    chain: tuple  # LatticeCanon E_0 > E_1 > ... > E_{lambda_1}

    @property
    def endpoint(self):
        return self.chain[-1]


def chain_count(n, lam, q):
    lam = as_partition(lam)
    out = 1
    for r in rows(lam):
        out *= gauss_binomial(n, r, q)
    return out


def _window(lam):
    return max(as_partition(lam).largest(), 1)


def lattice_basis(E):
    """A basis of the full-rank lattice E, as rows mod p^c.

    All pivot exponents are < c for the lattices met here, so the canonical
    rows are exactly n upper-triangular basis vectors."""
    if len(E.gens) != E.n:
        raise ValueError("lattice is not of full rank inside the window")
    return [list(r) for r in E.gens]


def _children(E, dim_quotient, k_field):
    """All E' with p E <= E' <= E and dim E/E' = dim_quotient."""
    ctx, n = E.ctx, E.n
    basis = lattice_basis(E)
    p_rows = [[ctx.mul(ctx.ppow(1), x) for x in b] for b in basis]
    for W in rref_subspaces(k_field, n, n - dim_quotient):
        lifts = []
        for w in W:
            coeffs = [ctx.teichmuller(x) for x in w]
            lifts.append(vec_mat(ctx, coeffs, basis))
        yield canonicalize(lifts + p_rows, n, E.window, ctx)


def enumerate_chains(n, lam, q, config=None, first_step=None):
    """Every chain exactly once, built top-down one Grassmannian step at a time.

    ``first_step`` restricts to the chains through a given E_1 (for splitting
    the work across processes)."""
    lam = as_partition(lam)
    if len(lam) > n:
        raise ValueError(f"type {lam} has more than n={n} parts")
    config = config or EnumConfig()
    total = chain_count(n, lam, q)
    if total * max(1, lam.largest()) > config.work_bound:
        raise WorkBoundExceeded(f"{total} chains exceed the work bound {config.work_bound}")
    params = field_for_q(q)
    c = _window(lam)
    ctx = galois_ring(params, c)
    k_field = galois_ring(params, 1)
    top = full_lattice(ctx, n, (0, c))
    steps = rows(lam)

    def rec(chain, i):
        if i == len(steps):
            yield FiltrationChain(lam, tuple(chain))
            return
        if i == 0 and first_step is not None:
            kids = [first_step]
        else:
            kids = _children(chain[-1], steps[i], k_field)
        for E in kids:
            yield from rec(chain + [E], i + 1)

    yield from rec([top], 0)


def first_steps(n, lam, q):
    lam = as_partition(lam)
    params = field_for_q(q)
    c = _window(lam)
    ctx = galois_ring(params, c)
    if not lam.parts:
        return []
    top = full_lattice(ctx, n, (0, c))
    return list(_children(top, rows(lam)[0], galois_ring(params, 1)))


def _endpoint_counter(args):
    n, lam, q, step = args
    cfg = EnumConfig(work_bound=10 ** 18)
    return Counter(ch.endpoint for ch in enumerate_chains(n, lam, q, cfg, first_step=step))


def endpoint_counts(n, lam, q, config=None):
    """Counter {endpoint lattice: number of chains ending there}."""
    lam = as_partition(lam)
    config = config or EnumConfig()
    # validates the work bound once, up front
    total = chain_count(n, lam, q)
    if total * max(1, lam.largest()) > config.work_bound:
        raise WorkBoundExceeded(f"{total} chains exceed the work bound {config.work_bound}")
    if not lam.parts:
        return Counter(ch.endpoint for ch in enumerate_chains(n, lam, q, config))
    jobs = [(n, lam, q, s) for s in first_steps(n, lam, q)]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(_endpoint_counter, jobs))
    else:
        parts = [_endpoint_counter(j) for j in jobs]
    out = Counter()
    for cnt in parts:
        out.update(cnt)
    return out


def demazure_fiber(M, lam, q, config=None):
    """All chains of type lam ending at M (filtering the full enumeration)."""
    lam = as_partition(lam)
    if M.window != (0, _window(lam)):
        raise ValueError(f"M must live in the window (0, {_window(lam)})")
    return [ch for ch in enumerate_chains(M.n, lam, q, config) if ch.endpoint == M]


def padic_chain(M, lam):
    """E_i = p^i E_0 + M, i = 0..lambda_1."""
    ctx, n = M.ctx, M.n
    out = []
    for i in range(as_partition(lam).largest() + 1):
        rows_ = [[ctx.ppow(i) if k == j else ctx.zero for k in range(n)] for j in range(n)]
        out.append(canonicalize(rows_ + [list(r) for r in M.gens], n, M.window, ctx))
    return tuple(out)


def lattices_of_colength(n, c, q, length):
    params = field_for_q(q)
    ctx = galois_ring(params, c)
    for prof in profiles(n, c):
        if sum(prof) != length:
            continue
        for gens, pr in _enumerate_profile(ctx, n, prof):
            yield LatticeCanon(n, (0, c), ctx, gens, pr)


@dataclass
class FiberReport:
    n: int
    q: int
    lam: PartitionType
    chains: int
    strata: dict  # mu -> {"points": int, "fiber_sizes": sorted list of distinct sizes}

    def identity_holds(self):
        lhs = chain_count(self.n, self.lam, self.q)
        rhs = 0
        for mu, info in self.strata.items():
            if len(info["fiber_sizes"]) != 1:
                return False
            rhs += info["points"] * info["fiber_sizes"][0]
        return lhs == rhs == self.chains


def fiber_report(n, lam, q, config=None):
    """Group chain endpoints by stratum and record per-point fiber sizes,
    including points of each stratum mu <= lam that no chain reaches."""
    lam = as_partition(lam)
    c = _window(lam)
    ends = endpoint_counts(n, lam, q, config)
    strata = {}
    for M in lattices_of_colength(n, c, q, lam.total):
        mu = M.cotype()
        size = ends.get(M, 0)
        if size == 0 and not dominates(lam, mu):
            continue
        info = strata.setdefault(mu, {"points": 0, "sizes": Counter()})
        info["points"] += 1
        info["sizes"][size] += 1
    out = {}
    for mu in sorted(strata):
        info = strata[mu]
        out[mu] = {"points": info["points"], "fiber_sizes": sorted(info["sizes"])}
    return FiberReport(n, q, lam, sum(ends.values()), out)


# --- the a_m predicate on Quot points -----------------------------------------------

def _snf_coords(Q):
    """(V, exps, type) with Q = O^n / rows(A) = sum_j O/p^{exps_j} via x -> x V."""
    ctx = Q.ctx
    _, _, V, exps = smith(ctx, [list(r) for r in Q.rows])
    if sum(exps) >= ctx.N:
        raise PrecisionError("presentation does not determine Q at this precision")
    return V, exps, PartitionType(exps)


def _rank_mod_p(k_field, vectors):
    """Rank over F_q of residue vectors."""
    rowsr = [list(v) for v in vectors if any(x != k_field.zero for x in v)]
    rank = 0
    n = len(rowsr[0]) if rowsr else 0
    for j in range(n):
        piv = next((i for i in range(rank, len(rowsr)) if rowsr[i][j] != k_field.zero), None)
        if piv is None:
            continue
        rowsr[rank], rowsr[piv] = rowsr[piv], rowsr[rank]
        inv = k_field.inv(rowsr[rank][j])
        rowsr[rank] = [k_field.mul(inv, x) for x in rowsr[rank]]
        for i in range(len(rowsr)):
            if i != rank and rowsr[i][j] != k_field.zero:
                f = rowsr[i][j]
                rowsr[i] = [k_field.sub(x, k_field.mul(f, y)) for x, y in zip(rowsr[i], rowsr[rank])]
        rank += 1
    return rank


def quot_thresholds(lamQ, lam):
    """a_m for m = 0 .. max part."""
    lamQ, lam = as_partition(lamQ), as_partition(lam)
    top = max(lamQ.largest(), lam.largest()) + 1
    base = row_counts(lamQ, 0) - row_counts(lam, 0)
    return [base + sum(row_counts(lamQ, i) - row_counts(lam, i) for i in range(m + 1, top))
            for m in range(top)]


def quot_stratum_predicate(Q, lam, F):
    """dim(F cap F^m(Q/p)) >= a_m for all m, where F^m(Q/p) is the kernel of
    multiplication by p^m into p^m Q / p^{m+1} Q.

    Q is an IsogenyMatrix (Q = O^n / row span), F a list of vectors of F_q^n
    spanning a subspace of Q/p.  Types of different total size never
    satisfy the predicate (the bound at m = 0 only gives one inequality).
    """
    lam = as_partition(lam)
    ctx = Q.ctx
    k_field = ctx.residue_field()
    V, exps, lamQ = _snf_coords(Q)
    n = Q.n
    live = [j for j in range(n) if exps[j] >= 1]  # coordinates of Q/p
    Fc = []
    for v in F:
        v = [ctx.lift_from(k_field, x) for x in v]
        y = vec_mat(ctx, v, V)
        Fc.append([k_field.reduce_from(ctx, y[j]) for j in live])
    dimF = _rank_mod_p(k_field, Fc)
    need = row_counts(lamQ, 0) - row_counts(lam, 0)
    if need < 0 or dimF != need:
        raise ValueError(f"dim F = {dimF}, expected n_Q(0) - n_lambda(0) = {need}")
    if lamQ.total != lam.total:
        return False
    for m, a in enumerate(quot_thresholds(lamQ, lam)):
        Fm = []
        for pos, j in enumerate(live):
            if exps[j] <= m:
                e = [k_field.zero] * len(live)
                e[pos] = k_field.one
                Fm.append(e)
        inter = dimF + len(Fm) - _rank_mod_p(k_field, Fc + Fm)
        if inter < a:
            return False
    return True


def filtration_kernel_type(Q, F):
    """Type of Fil^1 Q = ker(Q -> (Q/p)/F), computed with lattices: the
    preimage of F is rows(A) + p O^n + lifts(F)."""
    ctx = Q.ctx
    k_field = ctx.residue_field()
    lamQ = smith_normal_form(Q)[3]
    c = max(lamQ.largest(), 1)
    small_ctx = galois_ring(ctx.params, c)
    n = Q.n
    A = [[small_ctx.reduce_from(ctx, x) for x in r] for r in Q.rows]
    small = canonicalize(A, n, (0, c), small_ctx)
    p_rows = [[small_ctx.ppow(1) if k == j else small_ctx.zero for k in range(n)] for j in range(n)]
    lifts = [[small_ctx.lift_from(k_field, x) for x in v] for v in F]
    big = canonicalize(A + p_rows + lifts, n, (0, c), small_ctx)
    return quotient_type(big, small)


def subspaces_of_quotient(Q, dim):
    """All dim-dimensional subspaces of Q/p, each given by spanning vectors
    in O^n (via SNF coordinates)."""
    ctx = Q.ctx
    k_field = ctx.residue_field()
    V, exps, _ = _snf_coords(Q)
    Vinv = inverse(ctx, V)  # SNF coordinates back to O^n
    live = [j for j in range(Q.n) if exps[j] >= 1]
    for W in rref_subspaces(k_field, len(live), dim):
        out = []
        for w in W:
            y = [ctx.zero] * Q.n
            for pos, j in enumerate(live):
                y[j] = ctx.lift_from(k_field, w[pos])
            out.append([k_field.reduce_from(ctx, x) for x in vec_mat(ctx, y, Vinv)])
        yield out
