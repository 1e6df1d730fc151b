"""
Exact arithmetic in F_q = F_{p^d} and in the Galois ring O/p^N = W(F_q)/p^N.

Elements are stored in a "raw" form owned by the context: a plain ``int`` when
d == 1 and a length-d tuple of ints (coefficients of 1, x, ..., x^{d-1}) when
d > 1.  The hot loops in the lattice code work on raw values through the
context methods; :class:`RingElem` is the user-facing wrapper with operators.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product


class ContextMismatch(ValueError):
    pass


class NotAUnit(ZeroDivisionError):
    pass


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --- polynomials over F_p, coefficient lists low -> high ---------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = _trim([x % p for x in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(list(a), f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible_mod_p(f, p):
    """Rabin-style test: monic f of degree d has no factor of degree <= d/2."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(d // 2):
        xp = _ppowmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(list(f), _trim(diff), p)
        if len(g) > 1:
            return False
    return True


@dataclass(frozen=True)
class FieldParams:
    """The finite field F_{p^d} = F_p[x]/(modulus).

    ``modulus`` is monic, stored low -> high (constant term first).
    """

    p: int
    d: int
    modulus: tuple

    @property
    def q(self):
        return self.p ** self.d

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.d < 1:
            raise ValueError("degree d must be >= 1")
        if len(self.modulus) != self.d + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree d")
        if not is_irreducible_mod_p(list(self.modulus), self.p):
            raise ValueError("modulus is not irreducible over F_p")


@lru_cache(maxsize=None)
def make_field(p, d):
    """Deterministic F_{p^d}: the first monic irreducible of degree d.

    Candidates are ordered lexicographically by their non-leading
    coefficients read from x^{d-1} down to the constant term, so (2, 3)
    picks x^3 + x + 1 and (2, 2) picks x^2 + x + 1.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if not isinstance(d, int) or d < 1:
        raise ValueError("degree d must be >= 1")
    for high_to_low in product(range(p), repeat=d):
        f = tuple(reversed(high_to_low)) + (1,)
        if is_irreducible_mod_p(list(f), p):
            return FieldParams(p, d, f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def field_for_q(q):
    """make_field(p, d) for a prime power q = p^d."""
    if isinstance(q, int) and q >= 2:
        for p in range(2, q + 1):
            if q % p == 0:
                d, r = 0, q
                while r % p == 0:
                    r //= p
                    d += 1
                if r == 1:
                    return make_field(p, d)
                break
    raise ValueError(f"q={q} is not a prime power")


class GaloisRing:
    """The Galois ring GR(p^N, d) = (Z/p^N)[x]/(lifted modulus).

    The modulus is lifted coefficient-wise from F_p.  ``N == 1`` gives the
    residue field itself.  Contexts are immutable and may be shared freely.
    """

    def __init__(self, params, N):
        if N < 1:
            raise ValueError("precision N must be >= 1")
        self.params = params
        self.p = params.p
        self.d = params.d
        self.q = params.q
        self.N = N
        self.pN = self.p ** N
        self.lifted_modulus = tuple(params.modulus)
        self._ppow = [self.p ** e for e in range(N + 1)]
        self._teich = {}  # memo only; does not change observable state
        if self.d == 1:
            self.zero = 0
            self.one = 1 % self.pN
        else:
            self.zero = (0,) * self.d
            self.one = (1,) + (0,) * (self.d - 1)

    # identity is by value so that equal contexts built twice interoperate
    def __eq__(self, other):
        return isinstance(other, GaloisRing) and (self.params, self.N) == (other.params, other.N)

    def __hash__(self):
        return hash((self.params, self.N))

    def __repr__(self):
        return f"GaloisRing(p={self.p}, d={self.d}, N={self.N})"

    # --- raw constructors -------------------------------------------------
    def from_int(self, k):
        if self.d == 1:
            return k % self.pN
        return (k % self.pN,) + (0,) * (self.d - 1)

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.d:
            raise ValueError(f"expected at most {self.d} coefficients")
        coeffs += [0] * (self.d - len(coeffs))
        if self.d == 1:
            return coeffs[0] % self.pN
        return tuple(c % self.pN for c in coeffs)

    def coeffs(self, x):
        return (x,) if self.d == 1 else x

    def ppow(self, e):
        """The raw element p^e (zero once e >= N)."""
        return self.from_int(self._ppow[e]) if e < self.N else self.zero

    # --- raw arithmetic -----------------------------------------------------
    def add(self, x, y):
        if self.d == 1:
            return (x + y) % self.pN
        m = self.pN
        return tuple((a + b) % m for a, b in zip(x, y))

    def sub(self, x, y):
        if self.d == 1:
            return (x - y) % self.pN
        m = self.pN
        return tuple((a - b) % m for a, b in zip(x, y))

    def neg(self, x):
        if self.d == 1:
            return -x % self.pN
        m = self.pN
        return tuple(-a % m for a in x)

    def mul(self, x, y):
        if self.d == 1:
            return x * y % self.pN
        d = self.d
        prod_ = [0] * (2 * d - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod_[i + j] += a * b
        f = self.lifted_modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod_[k]
            if c:
                base = k - d
                for i in range(d):
                    prod_[base + i] -= c * f[i]
        m = self.pN
        return tuple(c % m for c in prod_[:d])

    def scale_int(self, k, x):
        if self.d == 1:
            return k * x % self.pN
        m = self.pN
        return tuple(k * a % m for a in x)

    def pow(self, x, e):
        if e < 0:
            return self.pow(self.inv(x), -e)
        result = self.one
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_zero(self, x):
        return x == self.zero

    def val(self, x):
        """p-adic valuation; N for zero."""
        best = self.N
        p = self.p
        for c in self.coeffs(x):
            if c:
                v = 0
                while c % p == 0:
                    c //= p
                    v += 1
                if v < best:
                    best = v
        return best

    def is_unit(self, x):
        if self.d == 1:
            return x % self.p != 0
        return any(c % self.p for c in x)

    def inv(self, x):
        if not self.is_unit(x):
            raise NotAUnit("element is not a unit")
        if self.d == 1:
            return pow(x, -1, self.pN)
        # invert mod p in F_q, then Newton-lift y <- y(2 - xy)
        y = self.pow(x, self.q - 2)
        prec = 1
        two = self.from_int(2)
        while prec < self.N:
            y = self.mul(y, self.sub(two, self.mul(x, y)))
            prec *= 2
        return y

    def div_p(self, x, e):
        """Exact division by p^e; x must have valuation >= e.

        The result is the representative with coefficients x_i // p^e, so it
        is determined modulo p^(N-e).
        """
        if e == 0:
            return x
        pe = self._ppow[e]
        if self.d == 1:
            if x % pe:
                raise ValueError("not divisible")
            return x // pe
        if any(c % pe for c in x):
            raise ValueError("not divisible")
        return tuple(c // pe for c in x)

    def mod_p(self, x, e):
        """Canonical representative of x modulo p^e (coefficients in [0, p^e))."""
        if e >= self.N:
            return x
        pe = self._ppow[e]
        if self.d == 1:
            return x % pe
        return tuple(c % pe for c in x)

    def quo_p(self, x, e):
        """The t with x = mod_p(x, e) + p^e t (coefficient-wise floor division)."""
        pe = self._ppow[e] if e <= self.N else self.pN
        if self.d == 1:
            return x // pe
        return tuple(c // pe for c in x)

    def unit_part(self, x):
        """(v, u) with x = p^v u and u a unit representative; None for zero."""
        v = self.val(x)
        if v >= self.N:
            return None
        return v, self.div_p(x, v)

    # --- change of precision ------------------------------------------------
    def reduce_from(self, other, x):
        """Image of a raw element of ``other`` (same field, N' >= N)."""
        if self.d == 1:
            return x % self.pN
        return tuple(c % self.pN for c in x)

    def lift_from(self, other, x):
        """Coefficient-wise lift of a raw element of ``other`` (N' <= N)."""
        return x if self.d == 1 else tuple(x)

    def residue_field(self):
        return galois_ring(self.params, 1)

    def residue(self, x):
        return self.residue_field().reduce_from(self, x)

    def at_precision(self, N):
        return galois_ring(self.params, N)

    # --- enumeration / sampling --------------------------------------------
    def elements(self):
        if self.d == 1:
            return list(range(self.pN))
        return [tuple(c) for c in product(range(self.pN), repeat=self.d)]

    def units(self):
        return [x for x in self.elements() if self.is_unit(x)]

    def random(self, rng):
        if self.d == 1:
            return rng.randrange(self.pN)
        return tuple(rng.randrange(self.pN) for _ in range(self.d))

    def random_unit(self, rng):
        while True:
            x = self.random(rng)
            if self.is_unit(x):
                return x

    # --- Teichmueller ---------------------------------------------------------
    def teichmuller(self, a):
        """The multiplicative lift [a] of a residue-field element.

        ``a`` may be a raw element of any GaloisRing over the same field, a
        RingElem, an int or a coefficient sequence; only a mod p matters.
        Computed by iterating y -> y^q from the trivial lift; each step gains
        one p-adic digit, so N steps reach the fixed point.
        """
        if isinstance(a, RingElem):
            a = a.raw
        if isinstance(a, int):
            y = self.from_int(a % self.p) if self.d == 1 else self.from_coeffs([a % self.p])
        else:
            y = self.from_coeffs([c % self.p for c in a])
        hit = self._teich.get(y)
        if hit is not None:
            return hit
        key = y
        for _ in range(self.N):
            z = self.pow(y, self.q)
            if z == y:
                break
            y = z
        self._teich[key] = y
        return y

    def teich_expand(self, x):
        """Digits a_0..a_{N-1} in F_q (raw, N=1) with x = sum [a_i] p^i."""
        k = self.residue_field()
        digits = []
        for i in range(self.N):
            a = k.reduce_from(self, x)
            digits.append(a)
            x = self.sub(x, self.teichmuller(a))
            if i + 1 < self.N:
                x = self.div_p(x, 1)
        return digits

    def from_teich_digits(self, digits, shift=0):
        """sum_i [digits_i] p^(i + shift)."""
        total = self.zero
        for i, a in enumerate(digits):
            e = i + shift
            if e >= self.N:
                break
            total = self.add(total, self.mul(self.teichmuller(a), self.ppow(e)))
        return total

    def frobenius(self, x):
        return self.pow(x, self.p)

    def elem(self, x):
        return RingElem(self, x)


@lru_cache(maxsize=None)
def galois_ring(params, N):
    return GaloisRing(params, N)


class RingElem:
    """An element of O/p^N with arithmetic operators."""

    __slots__ = ("ctx", "raw")

    def __init__(self, ctx, raw):
        self.ctx = ctx
        self.raw = raw

    @classmethod
    def of(cls, ctx, value):
        if isinstance(value, RingElem):
            if value.ctx != ctx:
                raise ContextMismatch("element belongs to another context")
            return value
        if isinstance(value, int):
            return cls(ctx, ctx.from_int(value))
        return cls(ctx, ctx.from_coeffs(value))

    def _other(self, other):
        if isinstance(other, RingElem):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")
            return other.raw
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else RingElem(self.ctx, self.ctx.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else RingElem(self.ctx, self.ctx.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else RingElem(self.ctx, self.ctx.sub(o, self.raw))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else RingElem(self.ctx, self.ctx.mul(self.raw, o))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.ctx, self.ctx.neg(self.raw))

    def __pow__(self, e):
        return RingElem(self.ctx, self.ctx.pow(self.raw, e))

    def inv(self):
        return RingElem(self.ctx, self.ctx.inv(self.raw))

    def is_unit(self):
        return self.ctx.is_unit(self.raw)

    def val(self):
        return self.ctx.val(self.raw)

    def frobenius(self):
        return RingElem(self.ctx, self.ctx.frobenius(self.raw))

    def teich_expand(self):
        return self.ctx.teich_expand(self.raw)

    def coeffs(self):
        return self.ctx.coeffs(self.raw)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.raw == self.ctx.from_int(other)
        if isinstance(other, RingElem):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")
            return self.raw == other.raw
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.raw))

    def __repr__(self):
        return f"RingElem({self.raw!r} mod p^{self.ctx.N})"


def teichmuller(ctx, a):
    return RingElem(ctx, ctx.teichmuller(a))


def teich_expand(x):
    return x.ctx.teich_expand(x.raw)
