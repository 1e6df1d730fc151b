"""
Tame symbol and the determinant central extension of SL_n(K), K = O[1/p].

Loop-group elements are g = p^shift * G with G an n x n matrix over O/p^N.
Lattices are column spans, g O^n.  For a lattice M and a <= a_max(M) (the
largest a with M <= p^a O^n) the canonical section s_a(M) is a bottom-up
chain of p^a O^n / M:

* at a = a_max, with p^-a M = (row HNF, diagonal p^d_k), the chain lists
  p^(a+i) e_k for k = n..1 and i = d_k - 1 .. 0;
* below that, s_{a-1}(M) = s_a(M) followed by p^(a-1) e_1, ..., p^(a-1) e_n.

Chains are compared inside one torsion module with detline's scalars, and
the 2-cocycle is read off from the product of the sections of g and h.
"""

from dataclasses import dataclass

from .detline import GradedLine, TorsionModule, chain_scalar
from .lattice import PrecisionError, det, hermite, identity, mat_mul
from .ring import galois_ring


# Measured normalization: on diagonal tori the commutator pairing is
# prod_i tame(t_i, s_i)^TORUS_EXPONENT.  For the SL_2 coroot,
# diag(a, 1/a) against diag(b, 1/b), that is tame(a, b)^SL2_COROOT_EXPONENT.
TORUS_EXPONENT = 1
SL2_COROOT_EXPONENT = 2


class NotCommuting(ValueError):
    pass


# --- elements of K = Frac(O) at finite precision ---------------------------------

@dataclass(frozen=True)
class LocalElt:
    """p^v * u with u a unit of O known modulo p^N (raw element of ctx)."""

    ctx: object
    v: int
    u: object

    def __post_init__(self):
        if not self.ctx.is_unit(self.u):
            raise ValueError("unit part must be a unit")

    @classmethod
    def make(cls, ctx, v, x):
        """p^v * x for any nonzero raw x (its own valuation is absorbed)."""
        w = ctx.val(x)
        if w >= ctx.N:
            raise PrecisionError("zero at this precision")
        return cls(ctx, v + w, ctx.div_p(x, w))

    def residue(self):
        return self.ctx.residue(self.u)

    def __mul__(self, other):
        return LocalElt(self.ctx, self.v + other.v, self.ctx.mul(self.u, other.u))

    def inverse(self):
        return LocalElt(self.ctx, -self.v, self.ctx.inv(self.u))

    def one_minus(self):
        """1 - self."""
        ctx = self.ctx
        if self.v > 0:
            return LocalElt(ctx, 0, ctx.sub(ctx.one, ctx.mul(ctx.ppow(self.v), self.u)))
        if self.v < 0:
            # 1 - p^v u = p^v (p^-v - u)
            return LocalElt.make(ctx, self.v, ctx.sub(ctx.ppow(-self.v), self.u))
        return LocalElt.make(ctx, 0, ctx.sub(ctx.one, self.u))


def tame_symbol(a, b):
    """(-1)^(v(a) v(b)) * abar^v(b) * bbar^(-v(a)) in F_q^x."""
    k = a.ctx.residue_field()
    sign = k.one if (a.v * b.v) % 2 == 0 else k.neg(k.one)
    return k.mul(sign, k.mul(k.pow(a.residue(), b.v), k.pow(b.residue(), -a.v)))


# --- loop group elements -------------------------------------------------------------

def _adjugate(ctx, G):
    n = len(G)
    if n == 1:
        return [[ctx.one]]
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(G) if k != i]
            c = det(ctx, minor)
            out[j][i] = c if (i + j) % 2 == 0 else ctx.neg(c)
    return out


@dataclass(frozen=True)
class LoopGroupElt:
    """g = p^shift * matrix; ``prec`` is the number of p-adic digits of the
    matrix that are correct (digits at and beyond it may be garbage)."""

    ctx: object
    shift: int
    matrix: tuple
    prec: int
    sl: bool = True

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in self.matrix))
        if self.prec > self.ctx.N:
            raise ValueError("precision above the ring precision")
        if self.sl:
            v, u, known = self.det_parts()
            ctx = self.ctx
            if v != 0 or ctx.mod_p(ctx.sub(u, ctx.one), known) != ctx.zero:
                raise ValueError("element is not in SL_n at the stored precision")

    @property
    def n(self):
        return len(self.matrix)

    @classmethod
    def from_matrix(cls, ctx, rows, shift=0, sl=True):
        return cls(ctx, shift, rows, ctx.N, sl)

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, 0, identity(ctx, n), ctx.N, True)

    def det_parts(self):
        """(v, u, k): det g = p^v u with the unit u known modulo p^k."""
        ctx = self.ctx
        d = det(ctx, [list(r) for r in self.matrix])
        w = ctx.val(d)
        if w >= self.prec:
            raise PrecisionError("determinant vanishes at the stored precision")
        return self.n * self.shift + w, ctx.div_p(d, w), self.prec - w

    def __mul__(self, other):
        if self.ctx != other.ctx or self.n != other.n:
            raise ValueError("shape mismatch")
        prod = mat_mul(self.ctx, [list(r) for r in self.matrix], [list(r) for r in other.matrix])
        return _primitive(self.ctx, self.shift + other.shift, prod,
                          min(self.prec, other.prec), self.sl and other.sl)

    def inverse(self):
        ctx = self.ctx
        d = det(ctx, [list(r) for r in self.matrix])
        w = ctx.val(d)
        if w >= self.prec:
            raise PrecisionError("not invertible at the stored precision")
        u_inv = ctx.inv(ctx.div_p(d, w))
        adj = _adjugate(ctx, [list(r) for r in self.matrix])
        mat = [[ctx.mul(u_inv, x) for x in row] for row in adj]
        return _primitive(ctx, -self.shift - w, mat, self.prec - w, self.sl)

    def min_val(self):
        ctx = self.ctx
        v = min(ctx.val(x) for row in self.matrix for x in row)
        if v >= self.prec:
            raise PrecisionError("matrix vanishes at the stored precision")
        return v

    def a_max(self):
        """Largest a with g O^n <= p^a O^n."""
        return self.shift + self.min_val()

    def scaled(self, k):
        return LoopGroupElt(self.ctx, self.shift + k, self.matrix, self.prec, False)

    def apply(self, vec):
        """g * (p^e w) as (e + shift, G w)."""
        e, w = vec
        ctx = self.ctx
        out = []
        for row in self.matrix:
            acc = ctx.zero
            for x, y in zip(row, w):
                acc = ctx.add(acc, ctx.mul(x, y))
            out.append(acc)
        return e + self.shift, out

    def normalized(self):
        """(shift, matrix mod p^prec) with the common p-power pulled out."""
        ctx = self.ctx
        m = self.min_val()
        mat = tuple(tuple(ctx.mod_p(ctx.div_p(ctx.mod_p(x, self.prec), m), self.prec - m)
                          for x in row) for row in self.matrix)
        return self.shift + m, mat, self.prec - m

    def equals(self, other):
        s1, m1, p1 = self.normalized()
        s2, m2, p2 = other.normalized()
        if s1 != s2:
            return False
        prec = min(p1, p2)
        ctx = self.ctx
        return all(ctx.mod_p(x, prec) == ctx.mod_p(y, prec)
                   for r1, r2 in zip(m1, m2) for x, y in zip(r1, r2))


def _primitive(ctx, shift, rows, prec, sl):
    """Pull the common p-power out of the matrix (costs that many digits)."""
    m = min(ctx.val(x) for row in rows for x in row)
    if m >= prec:
        raise PrecisionError("matrix vanishes at the stored precision")
    if m:
        rows = [[ctx.div_p(x, m) for x in row] for row in rows]
    return LoopGroupElt(ctx, shift + m, rows, prec - m, sl)


def elementary(ctx, n, i, j, t):
    """1 + t E_ij for t = p^v u (a LocalElt)."""
    base = min(t.v, 0)
    rows = [[ctx.ppow(-base) if r == c else ctx.zero for c in range(n)] for r in range(n)]
    rows[i][j] = ctx.mul(ctx.ppow(t.v - base), t.u)
    return LoopGroupElt(ctx, base, rows, ctx.N, sl=True)


# --- sections, chains, cocycle ----------------------------------------------------------

def _column_rows(g, alpha):
    """Columns of p^-alpha g as rows over O, and the shift k = shift - alpha
    applied to the matrix (the rows are known modulo p^(prec + k))."""
    ctx = g.ctx
    k = g.shift - alpha
    if k + g.min_val() < 0:
        raise ValueError(f"g O^n is not inside p^{alpha} O^n")
    if k >= 0:
        rows = [[ctx.mul(ctx.ppow(k), x) for x in col] for col in zip(*g.matrix)]
    else:
        rows = [[ctx.div_p(x, -k) for x in col] for col in zip(*g.matrix)]
    return rows, k


def _module(g, alpha):
    """Torsion module p^alpha O^n / g O^n, presented by the columns of
    p^-alpha g as rows."""
    rows, k = _column_rows(g, alpha)
    Q = TorsionModule(g.ctx, rows)
    # rows are known modulo p^(prec + k)
    if max(Q.exps, default=0) >= g.prec + k:
        raise PrecisionError("lattice not determined at the stored precision")
    return Q


def _coords(ctx, vec, alpha):
    e, w = vec
    if e >= alpha:
        f = ctx.ppow(e - alpha)
        return [ctx.mul(f, x) for x in w]
    return [ctx.div_p(x, alpha - e) for x in w]


def _hnf_diagonal(g, a):
    """Diagonal exponents of the row HNF of p^-a g O^n."""
    rows, _ = _column_rows(g, a)
    _, profile = hermite(g.ctx, rows, g.n)
    diag = dict(profile)
    if len(diag) != g.n:
        raise PrecisionError("lattice not determined at the stored precision")
    return [diag[j] for j in range(g.n)]


def section(g, a):
    """Bottom-up canonical chain of p^a O^n / g O^n as (exponent, vector) pairs."""
    ctx, n = g.ctx, g.n
    top = g.a_max()
    if a > top:
        raise ValueError(f"a = {a} exceeds a_max = {top}")
    d = _hnf_diagonal(g, top)

    def unit(k):
        return [ctx.one if i == k else ctx.zero for i in range(n)]

    chain = []
    for k in range(n - 1, -1, -1):
        for i in range(d[k] - 1, -1, -1):
            chain.append((top + i, unit(k)))
    for b in range(top - 1, a - 1, -1):
        for k in range(n):
            chain.append((b, unit(k)))
    return chain


def _phi(Q, chain, alpha):
    return chain_scalar(Q, [_coords(Q.ctx, v, alpha) for v in chain])


def cocycle(g, h, a=None):
    """c(g, h) in F_q^x with s(g) s(h) = c(g, h) s(gh)."""
    ctx, n = g.ctx, g.n
    if not (g.sl and h.sl):
        raise ValueError("cocycle is defined on SL_n")
    one = LoopGroupElt.identity(ctx, n)
    if a is None:
        a = min(0, h.a_max())
    if a > 0 or a > h.a_max():
        raise ValueError("need a <= min(0, a_max(h))")
    a2 = a + g.a_max()
    gh = g * h
    k = ctx.residue_field()
    tau0 = section(g.scaled(a), a2)
    Q2 = _module(gh, a2)
    Q1 = _module(g, a2)
    num2 = _phi(Q2, [g.apply(v) for v in section(h, a)] + tau0, a2)
    den2 = _phi(Q2, section(gh, a2), a2)
    num1 = _phi(Q1, section(g, a2), a2)
    den1 = _phi(Q1, [g.apply(v) for v in section(one, a)] + tau0, a2)
    return k.mul(k.mul(num2, k.inv(den2)), k.mul(num1, k.inv(den1)))


def coset_det(g, a):
    """det~(p^a O^n / g O^n): degree and the scalar of the canonical section
    against the Smith reference."""
    Q = _module(g, a)
    v, _, _ = g.det_parts()
    scalar = _phi(Q, section(g, a), a)
    return GradedLine(Q.field, scalar, v - g.n * a)


def commutator_pairing(g, h, a=None):
    if not (g * h).equals(h * g):
        raise NotCommuting("elements do not commute at the stored precision")
    k = g.ctx.residue_field()
    return k.mul(cocycle(g, h, a), k.inv(cocycle(h, g, a)))


# --- random SL_n elements --------------------------------------------------------------

def random_local(ctx, rng, vmax=2, unit_only=False):
    v = 0 if unit_only else rng.randint(-vmax, vmax)
    return LocalElt(ctx, v, ctx.random_unit(rng))


def random_sl(ctx, n, rng, vmax=2, length=3):
    """A word in elementary matrices x_ij(p^v u) and torus elements
    diag(p^v_1 u_1, ...) with sum v_i = 0 and prod u_i = 1."""
    g = LoopGroupElt.identity(ctx, n)
    for _ in range(length):
        if rng.random() < 0.6:
            i, j = rng.sample(range(n), 2)
            g = g * elementary(ctx, n, i, j, random_local(ctx, rng, vmax))
        else:
            while True:
                vs = [rng.randint(-vmax, vmax) for _ in range(n - 1)]
                vs.append(-sum(vs))
                if abs(vs[-1]) <= vmax:
                    break
            us = [ctx.random_unit(rng) for _ in range(n - 1)]
            prod = ctx.one
            for u in us:
                prod = ctx.mul(prod, u)
            us.append(ctx.inv(prod))
            t = torus(ctx, [LocalElt(ctx, v, u) for v, u in zip(vs, us)])
            g = g * t
    return g


def torus(ctx, entries):
    """diag(entries); flagged SL only when the determinant is exactly 1."""
    n = len(entries)
    base = min(e.v for e in entries)
    rows = [[ctx.zero] * n for _ in range(n)]
    for i, e in enumerate(entries):
        rows[i][i] = ctx.mul(ctx.ppow(e.v - base), e.u)
    total = sum(e.v for e in entries)
    return LoopGroupElt(ctx, base, rows, ctx.N, sl=(total == 0 and _unit_prod_is_one(ctx, entries)))


def _unit_prod_is_one(ctx, entries):
    prod = ctx.one
    for e in entries:
        prod = ctx.mul(prod, e.u)
    return prod == ctx.one


def working_ring(params, N=60):
    return galois_ring(params, N)


__all__ = ["LocalElt", "LoopGroupElt", "tame_symbol", "cocycle", "coset_det",
           "commutator_pairing", "section", "elementary", "torus", "random_sl",
           "NotCommuting", "random_local", "working_ring", "TORUS_EXPONENT",
           "SL2_COROOT_EXPONENT"]
