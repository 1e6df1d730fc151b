"""
Graded lines over F_q and the extended determinant of finite torsion modules.

A torsion module Q = O^n / (row span of A) is put in Smith coordinates
Q = sum_j O/p^{d_j}.  Its reference trivialization is the p-adic filtration,
listed bottom-up (deepest level first), with basis p^s eps_j at level s and j
ascending; that chain has scalar 1 by definition.  Any other maximal chain
f_1, ..., f_L (bottom-up: F_k = span(f_1..f_k), p f_k in F_{k-1}) is compared
to it through leading terms: each f_k lands in one graded piece p^sQ/p^{s+1}Q,
the pieces are sorted back into reference order (one Koszul sign per swap of
two degree-1 lines) and each level contributes the determinant of its
leading-term matrix.
"""

from dataclasses import dataclass

from .lattice import PrecisionError, det, smith, vec_mat


class InvalidChain(ValueError):
    pass


@dataclass(frozen=True)
class GradedLine:
    """A trivialized graded line: a nonzero scalar in F_q and a degree."""

    field: object  # GaloisRing at N = 1
    scalar: object
    degree: int

    def __post_init__(self):
        if self.scalar == self.field.zero:
            raise ValueError("a graded line needs a nonzero scalar")

    def tensor(self, other):
        return GradedLine(self.field, self.field.mul(self.scalar, other.scalar),
                          self.degree + other.degree)

    def inverse(self):
        return GradedLine(self.field, self.field.inv(self.scalar), -self.degree)


def tensor_braid(L1, L2):
    """(L1 (x) L2, sign of the swap L1 (x) L2 -> L2 (x) L1)."""
    return L1.tensor(L2), -1 if (L1.degree * L2.degree) % 2 else 1


def det_vect(field, change):
    """Determinant line of F_q^m with the basis given by the rows of
    ``change`` (against the standard basis)."""
    m = len(change)
    d = det(field, [list(r) for r in change])
    if d == field.zero:
        raise ValueError("change of basis is singular")
    return GradedLine(field, d, m)


def sign_to_field(field, sign):
    return field.one if sign == 1 else field.neg(field.one)


class TorsionModule:
    """Q = O^n / (row span of A) for an n x n matrix A over O/p^N."""

    def __init__(self, ctx, A):
        self.ctx = ctx
        self.n = len(A)
        self.A = [list(r) for r in A]
        _, _, V, exps = smith(ctx, self.A)
        if any(e >= ctx.N for e in exps):
            raise PrecisionError("presentation does not determine Q at this precision")
        self.V = V
        self.exps = exps
        self.field = ctx.residue_field()

    @classmethod
    def from_isogeny(cls, A):
        return cls(A.ctx, [list(r) for r in A.rows])

    @property
    def length(self):
        return sum(self.exps)

    def type(self):
        from .partitions import PartitionType
        return PartitionType(self.exps)

    # coordinates --------------------------------------------------------------
    def coords(self, v):
        """Smith coordinates of the class of v in O^n, reduced mod p^{d_j}."""
        ctx = self.ctx
        y = vec_mat(ctx, v, self.V)
        return [ctx.mod_p(x, e) for x, e in zip(y, self.exps)]

    def level(self, y):
        """p-adic level of a coordinate vector: N-valued for zero."""
        ctx = self.ctx
        best = None
        for x, e in zip(y, self.exps):
            if e == 0 or x == ctx.zero:
                continue
            v = ctx.val(x)
            if best is None or v < best:
                best = v
        return best

    def leading(self, y, s):
        ctx, k = self.ctx, self.field
        return [k.reduce_from(ctx, ctx.div_p(x, s)) for x, e in zip(y, self.exps) if e > s]

    def reference_chain(self):
        """Bottom-up p-adic chain in Smith coordinates (vectors p^s eps_j)."""
        ctx = self.ctx
        top = max(self.exps, default=0)
        out = []
        for s in range(top - 1, -1, -1):
            for j, e in enumerate(self.exps):
                if e > s:
                    y = [ctx.zero] * self.n
                    y[j] = ctx.ppow(s)
                    out.append(y)
        return out

    def from_coords(self, y):
        """A vector of O^n whose class has Smith coordinates y."""
        from .lattice import inverse
        if not hasattr(self, "_Vinv"):
            self._Vinv = inverse(self.ctx, self.V)
        return vec_mat(self.ctx, y, self._Vinv)

    def elements(self):
        """All coordinate vectors of Q (q^length of them)."""
        from itertools import product
        ctx = self.ctx
        ranges = []
        for e in self.exps:
            ranges.append(_residues(ctx, e))
        return [list(t) for t in product(*ranges)]


def _residues(ctx, e):
    from itertools import product
    pe = ctx.p ** e
    if ctx.d == 1:
        return list(range(pe))
    return [tuple(t) for t in product(range(pe), repeat=ctx.d)]


class _LevelEchelon:
    """Leading terms of a growing submodule, one F_q-echelon per level.

    Rows are kept in insertion order; each new row is reduced against the
    earlier ones first, so one sequential pass clears every pivot."""

    def __init__(self, Q):
        self.Q = Q
        self.levels = {}  # s -> [(pivot index, normalized leading term, representative)]

    def reduce(self, y):
        """Strip leading terms already present, subtracting Teichmueller
        multiples of stored representatives.  Returns (level, leading, y) with
        a new leading term, or None if y reduces to zero."""
        Q, ctx, k = self.Q, self.Q.ctx, self.Q.field
        while True:
            s = Q.level(y)
            if s is None:
                return None
            lead = Q.leading(y, s)
            for piv, vec, rep in self.levels.get(s, ()):
                c = lead[piv]
                if c != k.zero:
                    lead = [k.sub(a, k.mul(c, b)) for a, b in zip(lead, vec)]
                    t = ctx.teichmuller(c)
                    y = [ctx.mod_p(ctx.sub(a, ctx.mul(t, b)), e) for a, b, e in zip(y, rep, Q.exps)]
            if any(x != k.zero for x in lead):
                return s, lead, y

    def add(self, s, lead, y):
        Q, ctx, k = self.Q, self.Q.ctx, self.Q.field
        piv = next(i for i, x in enumerate(lead) if x != k.zero)
        inv = k.inv(lead[piv])
        t = ctx.teichmuller(inv)
        norm = [k.mul(inv, x) for x in lead]
        rep = [ctx.mod_p(ctx.mul(t, b), e) for b, e in zip(y, Q.exps)]
        self.levels.setdefault(s, []).append((piv, norm, rep))


def chain_profile(Q, chain, coords=False):
    """Per-vector (level, leading term) of a bottom-up chain, validating it.

    ``chain`` holds vectors of O^n (or Smith coordinates if ``coords``)."""
    ctx = Q.ctx
    ech = _LevelEchelon(Q)
    out = []
    if len(chain) != Q.length:
        raise InvalidChain(f"chain has {len(chain)} steps, module length is {Q.length}")
    for idx, f in enumerate(chain):
        y = [ctx.mod_p(x, e) for x, e in zip(f, Q.exps)] if coords else Q.coords(f)
        py = [ctx.mod_p(ctx.mul(ctx.ppow(1), x), e) for x, e in zip(y, Q.exps)]
        if ech.reduce(py) is not None:
            raise InvalidChain(f"step {idx + 1}: p * f is not in the previous term")
        found = ech.reduce(y)
        if found is None:
            raise InvalidChain(f"step {idx + 1}: vector lies in the previous term")
        s, lead, y2 = found
        out.append((s, lead))
        ech.add(s, lead, y2)
    return out


def chain_scalar(Q, chain, coords=False):
    """The scalar of det~(Q) for this chain, against the p-adic reference."""
    k = Q.field
    prof = chain_profile(Q, chain, coords)
    levels = [s for s, _ in prof]
    inversions = sum(1 for a in range(len(levels)) for b in range(a + 1, len(levels))
                     if levels[a] < levels[b])
    scalar = sign_to_field(k, -1 if inversions % 2 else 1)
    for s in sorted(set(levels)):
        R = [lead for lv, lead in prof if lv == s]
        scalar = k.mul(scalar, det(k, R))
    if scalar == k.zero:
        raise InvalidChain("chain does not span")  # pragma: no cover
    return scalar


def det_torsion(Q, chain, coords=False):
    return GradedLine(Q.field, chain_scalar(Q, chain, coords), Q.length)


def compare_chains(Q, chain_a, chain_b, coords=False):
    k = Q.field
    return k.mul(chain_scalar(Q, chain_a, coords), k.inv(chain_scalar(Q, chain_b, coords)))


def maximal_chains(Q, scalars=True):
    """All maximal chains of Q in Smith coordinates, one vector per
    (filtration step, class of the basis vector).  With ``scalars=False``
    only one basis vector per graded piece is kept (up to F_q^x)."""
    ctx, k = Q.ctx, Q.field
    elems = Q.elements()
    zero = [ctx.zero] * Q.n
    units = [u for u in k.elements() if u != k.zero] if scalars else [k.one]

    def key_of(members):
        return frozenset(tuple(m) for m in members)

    def span_add(members, y):
        # members: list of all elements of F_{k-1}; F_k = members + F_q * y (p y in F_{k-1})
        out = []
        for a in k.elements():
            t = ctx.teichmuller(a)
            shift = [ctx.mod_p(ctx.mul(t, x), e) for x, e in zip(y, Q.exps)]
            for m in members:
                out.append([ctx.mod_p(ctx.add(u, v), e) for u, v, e in zip(m, shift, Q.exps)])
        return out

    results = []

    def rec(members, chain):
        if len(chain) == Q.length:
            results.append([list(v) for v in chain])
            return
        mset = key_of(members)
        seen_steps = {}
        for y in elems:
            if tuple(y) in mset:
                continue
            py = tuple(ctx.mod_p(ctx.mul(ctx.ppow(1), x), e) for x, e in zip(y, Q.exps))
            if py not in mset:
                continue
            nxt = span_add(members, y)
            step_key = key_of(nxt)
            # one representative line generator per step, classes up to F_q^x
            if step_key in seen_steps:
                continue
            seen_steps[step_key] = y
            for u in units:
                t = ctx.teichmuller(u)
                yy = [ctx.mod_p(ctx.mul(t, x), e) for x, e in zip(y, Q.exps)]
                rec(nxt, chain + [yy])

    rec([zero], [])
    return results
