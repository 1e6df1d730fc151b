"""
Witt vector laws from ghost components, coordinate-wise arithmetic in
W_m(F_q), and the isomorphism W_m(F_q) -> GR(p^m, d).

Polynomials are sparse dicts ``{exponent tuple: int}`` over the variables
X_0..X_{m-1}, Y_0..Y_{m-1} (exponent tuples have length 2m, X first).
"""

from dataclasses import dataclass
from functools import lru_cache

from .ring import GaloisRing, galois_ring


class DivisibilityError(ArithmeticError):
    """A ghost-component quotient was not integral: an implementation bug."""


# --- sparse integer polynomials ------------------------------------------------
#
# Internally a monomial is one packed int: the exponent of variable i sits in
# bits [i*width, (i+1)*width), so multiplying monomials is adding keys.  Laws
# are weighted-homogeneous, so no exponent exceeds p^(m-1) and fields never carry.

class _Packing:
    def __init__(self, nvars, max_exp):
        self.nvars = nvars
        self.width = max(max_exp.bit_length() + 1, 4)
        self.mask = (1 << self.width) - 1

    def var(self, i, k=1):
        return k << (self.width * i)

    def unpack(self, key):
        w, mask = self.width, self.mask
        return tuple((key >> (w * i)) & mask for i in range(self.nvars))

    def pack(self, exps):
        return sum(e << (self.width * i) for i, e in enumerate(exps))


def poly_add(a, b, scale=1):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def poly_mul(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = ea + eb
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def poly_pow(a, k):
    result = {0: 1}
    base = a
    while k:
        if k & 1:
            result = poly_mul(result, base)
        k >>= 1
        if k:
            base = poly_mul(base, base)
    return result


def ghost(pk, p, n, offset):
    """w_n(Z) = sum_{i<=n} p^i Z_i^{p^(n-i)} with Z_i the variable offset+i."""
    return {pk.var(offset + i, p ** (n - i)): p ** i for i in range(n + 1)}


def ghost_of(p, polys, n):
    """w_n evaluated at a list of polynomials (Z_i := polys[i])."""
    out = {}
    for i in range(n + 1):
        out = poly_add(out, poly_pow(polys[i], p ** (n - i)), scale=p ** i)
    return out


def _solve_next(p, target, previous, n):
    rest = target
    for i, poly in enumerate(previous):
        rest = poly_add(rest, poly_pow(poly, p ** (n - i)), scale=-(p ** i))
    pn = p ** n
    out = {}
    for e, c in rest.items():
        if c % pn:
            raise DivisibilityError(f"coefficient {c} not divisible by {p}^{n}")
        out[e] = c // pn
    return out


@dataclass(frozen=True, eq=False)
class WittPolySet:
    """Universal Witt sum laws S and product laws P for W_m.

    S[n], P[n] map exponent tuples (X_0..X_{m-1}, Y_0..Y_{m-1}) to integers.
    """

    p: int
    m: int
    S: tuple
    P: tuple

    @property
    def nvars(self):
        return 2 * self.m

    def ghost_defect(self, n):
        """w_n(S) - w_n(X) - w_n(Y) and w_n(P) - w_n(X) w_n(Y); both must be {}.

        Recomputed from the stored tuple form, independently of the solve."""
        p, m = self.p, self.m
        pk = _Packing(2 * m, p ** (m - 1))
        S = [{pk.pack(e): c for e, c in s.items()} for s in self.S]
        P = [{pk.pack(e): c for e, c in s.items()} for s in self.P]
        wx, wy = ghost(pk, p, n, 0), ghost(pk, p, n, m)
        ds = poly_add(poly_add(ghost_of(p, S, n), wx, -1), wy, -1)
        dp = poly_add(ghost_of(p, P, n), poly_mul(wx, wy), -1)
        return ds, dp

    def compiled(self, q):
        """Laws reduced for evaluation over F_q: coefficients mod p, and
        exponents folded with x^q = x."""
        cache = self.__dict__.setdefault("_compiled", {})
        if q not in cache:
            cache[q] = (tuple(_fold(s, self.p, q) for s in self.S),
                        tuple(_fold(s, self.p, q) for s in self.P))
        return cache[q]


def _fold(poly, p, q):
    out = {}
    for e, c in poly.items():
        c %= p
        if not c:
            continue
        e2 = tuple(0 if k == 0 else 1 + (k - 1) % (q - 1) for k in e)
        out[e2] = (out.get(e2, 0) + c) % p
    return tuple((e, c) for e, c in sorted(out.items()) if c)


@lru_cache(maxsize=None)
def derive_witt_laws(p, m):
    """Solve w_n(S) = w_n(X) + w_n(Y) and w_n(P) = w_n(X) w_n(Y) for n < m.

    Each step divides by p^n and checks exact divisibility; a remainder
    raises DivisibilityError instead of rounding.
    """
    if m < 1:
        raise ValueError("length m must be >= 1")
    pk = _Packing(2 * m, p ** (m - 1))
    S, P = [], []
    for n in range(m):
        wx, wy = ghost(pk, p, n, 0), ghost(pk, p, n, m)
        S.append(_solve_next(p, poly_add(wx, wy), S, n))
        P.append(_solve_next(p, poly_mul(wx, wy), P, n))
    unpack = pk.unpack
    return WittPolySet(p, m,
                       tuple({unpack(e): c for e, c in s.items()} for s in S),
                       tuple({unpack(e): c for e, c in s.items()} for s in P))


def format_poly(poly, m):
    """Canonical text: monomials by descending total degree, then descending
    exponent tuple; variables X0..X{m-1}, Y0..Y{m-1}."""
    names = [f"X{i}" for i in range(m)] + [f"Y{i}" for i in range(m)]
    terms = sorted(poly.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))
    out = []
    for e, c in terms:
        mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out) if out else "0"


# --- Witt vectors over F_q ------------------------------------------------------

class WittVec:
    """(x_0, ..., x_{m-1}) in W_m(F_q); components are raw F_q elements."""

    __slots__ = ("field", "components")

    def __init__(self, field, components):
        if not isinstance(field, GaloisRing) or field.N != 1:
            raise ValueError("field must be a GaloisRing at precision 1")
        self.field = field
        self.components = tuple(components)

    @property
    def m(self):
        return len(self.components)

    def __eq__(self, other):
        return (isinstance(other, WittVec) and self.field == other.field
                and self.components == other.components)

    def __hash__(self):
        return hash((self.field, self.components))

    def __repr__(self):
        return f"WittVec({list(self.components)})"


def _check(a, b, laws):
    if a.field != b.field or a.m != b.m:
        raise ValueError("Witt vectors of different shape")
    if laws.m != a.m or laws.p != a.field.p:
        raise ValueError("laws do not match the Witt vectors")


def _power_table(values, k):
    # exponents are folded below q, so x^0 .. x^(q-1) covers every monomial
    table = []
    for x in values:
        row = [k.one]
        for _ in range(k.q - 1):
            row.append(k.mul(row[-1], x))
        table.append(row)
    return table


def _eval(compiled_poly, table, k):
    total = k.zero
    for e, c in compiled_poly:
        term = k.from_int(c)
        for row, ex in zip(table, e):
            if ex:
                term = k.mul(term, row[ex])
                if term == k.zero:
                    break
        total = k.add(total, term)
    return total


def witt_add(a, b, laws):
    _check(a, b, laws)
    k = a.field
    S, _ = laws.compiled(k.q)
    table = _power_table(a.components + b.components, k)
    return WittVec(k, [_eval(s, table, k) for s in S])


def witt_mul(a, b, laws):
    _check(a, b, laws)
    k = a.field
    _, P = laws.compiled(k.q)
    table = _power_table(a.components + b.components, k)
    return WittVec(k, [_eval(s, table, k) for s in P])


def witt_zero(field, m):
    return WittVec(field, [field.zero] * m)


def witt_neg(a, laws):
    """Additive inverse. For odd p, -1 is the Teichmueller lift of -1, which
    acts componentwise; for p = 2 it is (1, 1, 1, ...)."""
    k = a.field
    if k.p != 2:
        return WittVec(k, [k.neg(x) for x in a.components])
    minus_one = WittVec(k, [k.one] * a.m)
    return witt_mul(minus_one, a, laws)


def verschiebung(a):
    k = a.field
    return WittVec(k, (k.zero,) + a.components[:-1])


def frobenius(a):
    k = a.field
    return WittVec(k, [k.pow(x, k.p) for x in a.components])


def teichmuller_vec(field, x, m):
    return WittVec(field, [x] + [field.zero] * (m - 1))


def witt_to_galois(a, ctx):
    """(x_0, x_1, ...) -> sum_i [x_i^(p^-i)] p^i in GR(p^m, d)."""
    k = a.field
    if ctx.N != a.m or ctx.p != k.p or ctx.d != k.d or ctx.params != k.params:
        raise ValueError("ring context does not match the Witt vector shape")
    total = ctx.zero
    for i, x in enumerate(a.components):
        # x^(p^-i) = x^(p^((-i) mod d)) in F_{p^d}
        root = k.pow(x, k.p ** ((-i) % k.d))
        total = ctx.add(total, ctx.mul(ctx.teichmuller(root), ctx.ppow(i)))
    return total


def galois_to_witt(x, ctx):
    """Inverse of witt_to_galois via Teichmueller digits."""
    k = ctx.residue_field()
    digits = ctx.teich_expand(x)
    comps = [k.pow(a, k.p ** (i % k.d)) for i, a in enumerate(digits)]
    return WittVec(k, comps)


# --- ghost-route evaluation -----------------------------------------------------

def ghost_eval_sum_product(a, b):
    """Witt sum and product of a, b computed numerically from ghost
    components over lifts in GR(p^m, d), without the law polynomials.

    Component n only needs earlier components mod p: if y = y' mod p then
    y^(p^j) = y'^(p^j) mod p^(j+1), so p^i S_i^(p^(n-i)) is known mod p^(n+1).
    """
    k, m = a.field, a.m
    R = galois_ring(k.params, m)
    p = k.p
    xs = [R.lift_from(k, x) for x in a.components]
    ys = [R.lift_from(k, y) for y in b.components]

    def w(zs, n):
        tot = R.zero
        for i in range(n + 1):
            tot = R.add(tot, R.mul(R.ppow(i), R.pow(zs[i], p ** (n - i))))
        return tot

    S, P = [], []
    for n in range(m):
        wx, wy = w(xs, n), w(ys, n)
        s_num, p_num = R.add(wx, wy), R.mul(wx, wy)
        for i in range(n):
            s_num = R.sub(s_num, R.mul(R.ppow(i), R.pow(S[i], p ** (n - i))))
            p_num = R.sub(p_num, R.mul(R.ppow(i), R.pow(P[i], p ** (n - i))))
        # the numerators vanish mod p^n; reading digit n gives the component mod p
        S.append(R.lift_from(k, k.reduce_from(R, R.div_p(s_num, n))))
        P.append(R.lift_from(k, k.reduce_from(R, R.div_p(p_num, n))))
    return (WittVec(k, [k.reduce_from(R, s) for s in S]),
            WittVec(k, [k.reduce_from(R, t) for t in P]))
