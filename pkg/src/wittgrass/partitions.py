"""Partition types of finite torsion modules and the dominance order."""

from functools import total_ordering


METHODS = ("epsilon", "partial_sums", "row_tails", "p_power_lengths")


@total_ordering
class PartitionType:
    """A decreasing tuple of positive integers.

    Any iterable of nonnegative ints is accepted and normalized (sorted
    decreasing, zeros dropped), so equal types always compare and hash equal.
    Python ordering (``<``) is the total (size, lex) order used for output;
    dominance is :func:`dominates`.
    """

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = [int(x) for x in parts]
        if any(x < 0 for x in parts):
            raise ValueError(f"negative part in {parts}")
        self.parts = tuple(sorted((x for x in parts if x), reverse=True))

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text in ("", "()", "0"):
            return cls()
        try:
            parts = [int(t) for t in text.strip("()").split(",") if t.strip()]
        except ValueError:
            raise ValueError(f"bad partition text {text!r}") from None
        if parts != sorted(parts, reverse=True):
            raise ValueError(f"partition {text!r} is not decreasing")
        return cls(parts)

    @property
    def total(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, j):
        return self.parts[j]

    def part(self, j):
        """lambda_j, 1-based, zero past the end."""
        return self.parts[j - 1] if 0 < j <= len(self.parts) else 0

    def largest(self):
        return self.parts[0] if self.parts else 0

    def padded(self, n):
        if len(self.parts) > n:
            raise ValueError(f"{self} has more than {n} parts")
        return self.parts + (0,) * (n - len(self.parts))

    def __eq__(self, other):
        if isinstance(other, PartitionType):
            return self.parts == other.parts
        return NotImplemented

    def __lt__(self, other):
        return (self.total, self.parts) < (other.total, other.parts)

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"PartitionType({self.parts})"

    def __str__(self):
        return ",".join(map(str, self.parts)) if self.parts else "()"


def as_partition(x):
    if isinstance(x, PartitionType):
        return x
    if isinstance(x, str):
        return PartitionType.parse(x)
    return PartitionType(x)


def row_counts(lam, i):
    """n_lambda(i) = #{j : lambda_j > i}: the i-th row of the diagram."""
    lam = as_partition(lam)
    if i < 0:
        raise ValueError("row index must be >= 0")
    return sum(1 for x in lam.parts if x > i)


def rows(lam):
    """(n_lambda(0), n_lambda(1), ..., n_lambda(lambda_1 - 1))."""
    lam = as_partition(lam)
    return tuple(row_counts(lam, i) for i in range(lam.largest()))


def minus_one(lam):
    lam = as_partition(lam)
    return PartitionType(x - 1 for x in lam.parts)


def complement(lam, n, c):
    """(c - lambda_n, ..., c - lambda_1): the type of the dual lattice."""
    padded = as_partition(lam).padded(n)
    return PartitionType(c - x for x in padded)


# --- the four characterizations -------------------------------------------------

def _epsilon(lam, mu):
    # lam - mu = sum_j c_j eps_j with eps_j = e_j - e_{j+1}; peel off one
    # coordinate at a time, carrying the remainder into the next slot
    size = max(len(lam), len(mu)) + 1
    diff = [lam.part(j) - mu.part(j) for j in range(1, size + 1)]
    coeffs = []
    carry = 0
    for j in range(size - 1):
        c = diff[j] + carry
        coeffs.append(c)
        carry = c
    ok = all(c >= 0 for c in coeffs) and diff[-1] + carry == 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return ok, tuple(coeffs) if ok else None


def _partial_sums(lam, mu):
    a = b = 0
    for j in range(1, max(len(lam), len(mu)) + 1):
        a += lam.part(j)
        b += mu.part(j)
        if a < b:
            return False
    return True


def _row_tails(lam, mu):
    top = max(lam.largest(), mu.largest())
    nl = [row_counts(lam, i) for i in range(top)]
    nm = [row_counts(mu, i) for i in range(top)]
    for m in range(top):
        if sum(nl[m:]) < sum(nm[m:]):
            return False
    return True


def _lengths(lam, mu):
    # lg(p^m Q) for Q = sum_j O/p^(lambda_j) is sum_j max(lambda_j - m, 0)
    def lg(parts, m):
        return sum(max(x - m, 0) for x in parts)

    top = max(lam.largest(), mu.largest())
    return all(lg(lam.parts, m) >= lg(mu.parts, m) for m in range(top + 1))


def dominates(lam, mu, method="partial_sums"):
    """Is lam >= mu in the dominance order?

    Different totals give False.  With ``method="epsilon"`` the result is a
    pair (verdict, coefficients) where lam - mu = sum_j c_j eps_j.
    """
    lam, mu = as_partition(lam), as_partition(mu)
    same = lam.total == mu.total
    if method == "epsilon":
        if not same:
            return False, None
        return _epsilon(lam, mu)
    if not same:
        return False
    if method == "partial_sums":
        return _partial_sums(lam, mu)
    if method == "row_tails":
        return _row_tails(lam, mu)
    if method == "p_power_lengths":
        return _lengths(lam, mu)
    raise ValueError(f"unknown method {method!r}")


def all_verdicts(lam, mu):
    """{method: bool} for all four methods, plus the epsilon witness."""
    ok, witness = dominates(lam, mu, "epsilon")
    out = {"epsilon": ok}
    for m in METHODS[1:]:
        out[m] = dominates(lam, mu, m)
    return out, witness


def partitions_of(total, max_parts=None, max_part=None):
    """All partitions of ``total`` in (lex decreasing) order, optionally boxed."""
    max_parts = total if max_parts is None else max_parts
    max_part = total if max_part is None else max_part

    def rec(rest, cap, slots):
        if rest == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first, slots - 1):
                yield (first,) + tail

    return [PartitionType(p) for p in rec(total, max_part, max_parts)]


def partitions_in_box(n, c):
    """All types with at most n parts, each at most c, sorted by (total, lex)."""
    out = []
    for t in range(n * c + 1):
        out.extend(partitions_of(t, n, c))
    return sorted(out)
