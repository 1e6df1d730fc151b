"""
Linear algebra over the chain ring O/p^c and lattices in a window.

A lattice p^b O^n <= M <= p^a O^n is stored as its image in
(p^a O / p^b O)^n = (O/p^c)^n, c = b - a, given by generator *rows*.  The
canonical form is a Howell-type echelon form: pivot entries are exactly
p^e, entries above a pivot are reduced (coefficient-wise) mod p^e, and the
row set is saturated so that any element of M whose first nonzero column is
j lies in the span of the rows with pivot column >= j.  Two generator sets
span the same module iff their canonical forms are equal.
"""

from dataclasses import dataclass

from .partitions import PartitionType
from .ring import galois_ring


class PrecisionError(ArithmeticError):
    """The requested quantity is not determined at the stored precision."""


class WindowMismatch(ValueError):
    pass


# --- small matrix helpers (raw elements of one GaloisRing) ----------------------

def identity(ctx, n):
    return [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]


def zeros(ctx, r, n):
    return [[ctx.zero] * n for _ in range(r)]


def mat_mul(ctx, A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    mul, add = ctx.mul, ctx.add
    for row in A:
        new = [ctx.zero] * cols
        for k in range(inner):
            a = row[k]
            if a == ctx.zero:
                continue
            bk = B[k]
            for j in range(cols):
                new[j] = add(new[j], mul(a, bk[j]))
        out.append(new)
    return out


def vec_mat(ctx, v, B):
    return mat_mul(ctx, [list(v)], B)[0]


def transpose(A):
    return [list(r) for r in zip(*A)]


def reduce_matrix(target, source, A):
    return [[target.reduce_from(source, x) for x in row] for row in A]


def _row_axpy(ctx, dst, a, src):
    """dst - a*src (new list)."""
    if a == ctx.zero:
        return list(dst)
    mul, sub = ctx.mul, ctx.sub
    return [sub(x, mul(a, y)) for x, y in zip(dst, src)]


def _row_scale(ctx, a, row):
    return [ctx.mul(a, x) for x in row]


def det(ctx, A):
    """Determinant over O/p^N by elimination with minimal-valuation pivots."""
    n = len(A)
    M = [list(r) for r in A]
    result = ctx.one
    for t in range(n):
        best, best_v = None, ctx.N
        for i in range(t, n):
            v = ctx.val(M[i][t])
            if v < best_v:
                best, best_v = i, v
        if best is None:
            return ctx.zero
        if best != t:
            M[t], M[best] = M[best], M[t]
            result = ctx.neg(result)
        piv = M[t][t]
        u = ctx.inv(ctx.div_p(piv, best_v))
        for i in range(t + 1, n):
            x = M[i][t]
            if x != ctx.zero:
                f = ctx.mul(ctx.div_p(x, best_v), u)
                M[i] = _row_axpy(ctx, M[i], f, M[t])
        result = ctx.mul(result, piv)
    return result


def random_invertible(ctx, n, rng, steps=None):
    """A product of random elementary, diagonal-unit and swap matrices."""
    A = identity(ctx, n)
    for _ in range(steps if steps is not None else 3 * n + 2):
        kind = rng.randrange(3)
        if kind == 0 and n > 1:
            i, j = rng.sample(range(n), 2)
            A[i] = _row_axpy(ctx, A[i], ctx.neg(ctx.random(rng)), A[j])
        elif kind == 1:
            i = rng.randrange(n)
            A[i] = _row_scale(ctx, ctx.random_unit(rng), A[i])
        elif n > 1:
            i, j = rng.sample(range(n), 2)
            A[i], A[j] = A[j], A[i]
    return A


def inverse(ctx, A):
    """Inverse of an invertible matrix over O/p^N by Gauss-Jordan."""
    n = len(A)
    M = [list(r) + [ctx.one if i == j else ctx.zero for j in range(n)] for i, r in enumerate(A)]
    for t in range(n):
        piv = next(i for i in range(t, n) if ctx.is_unit(M[i][t]))
        M[t], M[piv] = M[piv], M[t]
        inv = ctx.inv(M[t][t])
        M[t] = [ctx.mul(inv, x) for x in M[t]]
        for i in range(n):
            if i != t and M[i][t] != ctx.zero:
                f = M[i][t]
                M[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(M[i], M[t])]
    return [r[n:] for r in M]


# --- Howell echelon form --------------------------------------------------------

def hermite(ctx, rows, n):
    """Canonical echelon generators of the row span of ``rows`` in (O/p^c)^n.

    Returns (gens, profile): gens is a tuple of row tuples and profile the
    tuple of (pivot column, pivot exponent) pairs, ascending in column.
    """
    c = ctx.N
    pool = [list(r) for r in rows if any(x != ctx.zero for x in r)]
    for r in pool:
        if len(r) != n:
            raise ValueError(f"row of length {len(r)}, expected {n}")
    pivots = []
    for j in range(n):
        best, best_v = None, c
        for idx, r in enumerate(pool):
            v = ctx.val(r[j])
            if v < best_v:
                best, best_v = idx, v
                if v == 0:
                    break
        if best is None:
            continue
        row = pool.pop(best)
        u = ctx.inv(ctx.div_p(row[j], best_v))
        row = _row_scale(ctx, u, row)
        row[j] = ctx.ppow(best_v)
        rest = []
        for r in pool:
            x = r[j]
            if x != ctx.zero:
                r = _row_axpy(ctx, r, ctx.div_p(x, best_v), row)
            if any(y != ctx.zero for y in r):
                rest.append(r)
        if best_v > 0:
            sat = _row_scale(ctx, ctx.ppow(c - best_v), row)
            if any(y != ctx.zero for y in sat):
                rest.append(sat)
        pool = rest
        pivots.append((j, best_v, row))
    # reduce entries above each pivot, left to right
    for k, (j, e, row) in enumerate(pivots):
        if e == 0:
            for i in range(k):
                x = pivots[i][2][j]
                if x != ctx.zero:
                    pivots[i] = (pivots[i][0], pivots[i][1], _row_axpy(ctx, pivots[i][2], x, row))
        else:
            for i in range(k):
                x = pivots[i][2][j]
                t = ctx.quo_p(x, e)
                if t != ctx.zero:
                    pivots[i] = (pivots[i][0], pivots[i][1], _row_axpy(ctx, pivots[i][2], t, row))
    gens = tuple(tuple(r) for _, _, r in pivots)
    profile = tuple((j, e) for j, e, _ in pivots)
    return gens, profile


def reduce_vector(ctx, gens, profile, v):
    """Remainder of v after reduction by canonical generators; zero iff v is
    in the span.  Returns (remainder, coefficients) when possible."""
    v = list(v)
    coeffs = []
    for (j, e), row in zip(profile, gens):
        x = v[j]
        if ctx.val(x) < e:
            coeffs.append(ctx.zero)
            continue
        t = ctx.div_p(x, e)
        coeffs.append(t)
        if t != ctx.zero:
            v = _row_axpy(ctx, v, t, row)
    return v, coeffs


def span_length(ctx, profile):
    """Length of the module spanned by canonical generators."""
    return sum(ctx.N - e for _, e in profile)


# --- Smith normal form ------------------------------------------------------------

def smith(ctx, A, track=True):
    """U A V = D over O/p^N, D diagonal with p-power entries sorted by
    *decreasing* exponent.  Returns (U, D, V, exps) where exps lists the
    diagonal exponents (N for a zero diagonal entry), length min(r, m)."""
    r = len(A)
    m = len(A[0]) if r else 0
    M = [list(row) for row in A]
    U = identity(ctx, r) if track else None
    Vt = identity(ctx, m) if track else None  # rows of Vt are columns of V
    exps = []
    for t in range(min(r, m)):
        best, best_v = None, ctx.N
        for i in range(t, r):
            for j in range(t, m):
                v = ctx.val(M[i][j])
                if v < best_v:
                    best, best_v = (i, j), v
            if best_v == 0:
                break
        if best is None:
            exps.extend([ctx.N] * (min(r, m) - t))
            break
        i, j = best
        if i != t:
            M[t], M[i] = M[i], M[t]
            if track:
                U[t], U[i] = U[i], U[t]
        if j != t:
            for row in M:
                row[t], row[j] = row[j], row[t]
            if track:
                Vt[t], Vt[j] = Vt[j], Vt[t]
        u = ctx.inv(ctx.div_p(M[t][t], best_v))
        M[t] = _row_scale(ctx, u, M[t])
        if track:
            U[t] = _row_scale(ctx, u, U[t])
        for i in range(t + 1, r):
            x = M[i][t]
            if x != ctx.zero:
                f = ctx.div_p(x, best_v)
                M[i] = _row_axpy(ctx, M[i], f, M[t])
                if track:
                    U[i] = _row_axpy(ctx, U[i], f, U[t])
        for j in range(t + 1, m):
            x = M[t][j]
            if x != ctx.zero:
                f = ctx.div_p(x, best_v)
                for row in M:
                    row[j] = ctx.sub(row[j], ctx.mul(f, row[t]))
                if track:
                    Vt[j] = _row_axpy(ctx, Vt[j], f, Vt[t])
        exps.append(best_v)
    # exponents come out increasing; sort decreasing, ties keep pivot order
    k = len(exps)
    order = sorted(range(k), key=lambda i: -exps[i])
    exps = [exps[i] for i in order]
    D = zeros(ctx, r, m)
    for t, e in enumerate(exps):
        D[t][t] = ctx.ppow(e)
    if not track:
        return None, D, None, exps
    U = [U[i] for i in order] + U[k:]
    Vt = [Vt[i] for i in order] + Vt[k:]
    return U, D, transpose(Vt) if m else [], exps


def kernel_rows(ctx, A):
    """Generators of {x : x A = 0} (row vectors of length len(A))."""
    r = len(A)
    if r == 0:
        return []
    U, D, V, exps = smith(ctx, A)
    c = ctx.N
    out = []
    for t in range(r):
        e = exps[t] if t < len(exps) else c
        if e == 0:
            continue
        # y_t p^e = 0  <=>  y_t in p^(c-e) O
        out.append(_row_scale(ctx, ctx.ppow(c - e), U[t]))
    return out


# --- isogeny matrices -------------------------------------------------------------

@dataclass(frozen=True)
class IsogenyMatrix:
    """A square matrix over O/p^N whose determinant valuation is below N."""

    ctx: object
    rows: tuple

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("isogeny matrix must be square")
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))

    @property
    def n(self):
        return len(self.rows)

    @classmethod
    def from_ints(cls, ctx, rows):
        return cls(ctx, tuple(tuple(ctx.from_int(x) if isinstance(x, int) else x for x in r)
                              for r in rows))


def smith_normal_form(A):
    """(U, D, V, lambda) with U A V = D = diag(p^lambda_1, ..., p^lambda_n)."""
    ctx = A.ctx
    U, D, V, exps = smith(ctx, [list(r) for r in A.rows])
    if sum(exps) >= ctx.N:
        raise PrecisionError(
            f"determinant valuation >= precision {ctx.N}; type not determined")
    return U, D, V, PartitionType(exps)


def cokernel_type(obj):
    if isinstance(obj, IsogenyMatrix):
        return smith_normal_form(obj)[3]
    if isinstance(obj, LatticeCanon):
        return obj.cotype()
    raise TypeError(f"cannot take cokernel type of {type(obj).__name__}")


def module_length(A):
    return smith_normal_form(A)[3].total


# --- lattices in a window -----------------------------------------------------------

class LatticeCanon:
    """p^b O^n <= M <= p^a O^n, stored canonically inside (O/p^c)^n."""

    __slots__ = ("n", "window", "ctx", "gens", "profile", "_hash")

    def __init__(self, n, window, ctx, gens, profile):
        a, b = window
        if b - a != ctx.N:
            raise WindowMismatch(f"window {window} needs precision {b - a}, ctx has {ctx.N}")
        self.n = n
        self.window = (a, b)
        self.ctx = ctx
        self.gens = gens
        self.profile = profile
        self._hash = hash((n, self.window, ctx, gens))

    @property
    def c(self):
        return self.ctx.N

    def __eq__(self, other):
        return (isinstance(other, LatticeCanon) and self.window == other.window
                and self.n == other.n and self.ctx == other.ctx and self.gens == other.gens)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"LatticeCanon(n={self.n}, window={self.window}, gens={list(self.gens)})"

    def sort_key(self):
        return (self.profile, tuple(tuple(self.ctx.coeffs(x)) for r in self.gens for x in r))

    def length(self):
        """Length of M / p^b O^n."""
        return span_length(self.ctx, self.profile)

    def colength(self):
        """Length of p^a O^n / M."""
        return self.n * self.c - self.length()

    def contains_vector(self, v):
        rem, _ = reduce_vector(self.ctx, self.gens, self.profile, v)
        return all(x == self.ctx.zero for x in rem)

    def cotype(self):
        """Type of p^a O^n / M, read off from lengths of p^i(top) + M."""
        ctx, n, c = self.ctx, self.n, self.c
        base = self.length()
        lens = []
        for i in range(c + 1):
            rows = [[ctx.ppow(i) if k == j else ctx.zero for k in range(n)] for j in range(n)]
            rows += [list(r) for r in self.gens]
            _, prof = hermite(ctx, rows, n)
            lens.append(span_length(ctx, prof) - base)  # lg(p^i Q)
        nq = [lens[i] - lens[i + 1] for i in range(c)]
        parts = [sum(1 for i in range(c) if nq[i] > j) for j in range(n)]
        return PartitionType(parts)

    def cotype_snf(self):
        """Same as cotype(), via Smith form of the generator matrix."""
        if not self.gens:
            return PartitionType([self.c] * self.n)
        _, _, _, exps = smith(self.ctx, [list(r) for r in self.gens], track=False)
        exps = list(exps) + [self.c] * (self.n - len(exps))
        return PartitionType(exps)

    def scaled(self, k=1):
        """p^k M in the window shifted by k."""
        a, b = self.window
        return LatticeCanon(self.n, (a + k, b + k), self.ctx, self.gens, self.profile)


def canonicalize(rows, n, window, ctx=None, params=None):
    """Canonical LatticeCanon for the span of ``rows`` (raw elements at
    precision c = b - a) plus p^b O^n."""
    a, b = window
    if ctx is None:
        ctx = galois_ring(params, b - a)
    gens, profile = hermite(ctx, rows, n)
    return LatticeCanon(n, (a, b), ctx, gens, profile)


def full_lattice(ctx, n, window):
    return canonicalize(identity(ctx, n), n, window, ctx)


def bottom_lattice(ctx, n, window):
    return canonicalize([], n, window, ctx)


def _same_frame(M1, M2):
    if M1.n != M2.n or M1.window != M2.window or M1.ctx != M2.ctx:
        raise WindowMismatch("lattices live in different windows")


def lattice_sum(M1, M2):
    _same_frame(M1, M2)
    return canonicalize(list(M1.gens) + list(M2.gens), M1.n, M1.window, M1.ctx)


def contains(M1, M2):
    """M2 <= M1."""
    _same_frame(M1, M2)
    return lattice_sum(M1, M2) == M1


def intersection(M1, M2):
    _same_frame(M1, M2)
    ctx = M1.ctx
    g1, g2 = [list(r) for r in M1.gens], [list(r) for r in M2.gens]
    if not g1 or not g2:
        return bottom_lattice(ctx, M1.n, M1.window)
    stacked = g1 + g2
    rows = []
    for x in kernel_rows(ctx, stacked):
        rows.append(vec_mat(ctx, x[:len(g1)], g1))
    return canonicalize(rows, M1.n, M1.window, ctx)



def quotient_type(big, small):
    """Type of big/small for nested lattices in one window (small <= big)."""
    _same_frame(big, small)
    if not contains(big, small):
        raise ValueError("second lattice is not contained in the first")
    ctx = big.ctx
    base = small.length()
    lens = []
    i = 0
    while True:
        pi = ctx.ppow(i)
        rows = [[ctx.mul(pi, x) for x in r] for r in big.gens] + [list(r) for r in small.gens]
        _, prof = hermite(ctx, rows, big.n)
        lens.append(span_length(ctx, prof) - base)
        if lens[-1] == 0:
            break
        i += 1
    nq = [lens[k] - lens[k + 1] for k in range(len(lens) - 1)]
    return PartitionType(sum(1 for x in nq if x > j) for j in range(big.n))


def lattice_basis_matrix(M, ctx):
    """An n x n upper-triangular basis of the lattice M (window (a, b)),
    scaled by p^-a, with entries in the higher-precision ring ``ctx``."""
    c = M.c
    if ctx.N <= c:
        raise PrecisionError(f"need precision above the window size {c}")
    rows = {j: [ctx.lift_from(M.ctx, x) for x in r] for (j, _), r in zip(M.profile, M.gens)}
    out = []
    for j in range(M.n):
        if j in rows:
            out.append(rows[j])
        else:
            out.append([ctx.ppow(c) if k == j else ctx.zero for k in range(M.n)])
    return out


def solve_upper(ctx, B, x):
    """z with z B = x for upper-triangular B with p-power diagonal.

    Division by p^e_j is exact when x lies in the row lattice of B; the
    answer is correct modulo p^(N - sum of diagonal exponents)."""
    n = len(B)
    z = []
    for j in range(n):
        acc = x[j]
        for i in range(j):
            acc = ctx.sub(acc, ctx.mul(z[i], B[i][j]))
        e = ctx.val(B[j][j])
        if ctx.val(acc) < e:
            raise ValueError("vector is not in the lattice")
        u = ctx.inv(ctx.div_p(B[j][j], e))
        z.append(ctx.mul(ctx.div_p(acc, e), u))
    return z
