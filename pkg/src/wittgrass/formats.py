"""
Text formats shared by the CLI.

Digits are residue-field elements: "3" when d = 1, "c0:c1:..." (coefficients
in the polynomial basis) when d > 1.  An entry "d0.d1.d2*p^v" means
sum_i [d_i] p^(i+v) with [.] the Teichmueller lift; "p^v*(d0.d1)" is the same
value, and the "*p^v" part may be omitted.

A matrix file is JSON: {"p": 3, "d": 1, "N": 10, "n": 2, "entries": [[...]]}.
A chain file is JSON: {"vectors": [[entry, ...], ...]}, bottom-up.
"""

import json
import re
from dataclasses import dataclass

from .ring import galois_ring, is_prime, make_field

_TAIL = re.compile(r"^(?P<body>[^*]+?)\s*\*\s*p\^(?P<v>-?\d+)$")
_HEAD = re.compile(r"^p\^(?P<v>-?\d+)\s*\*\s*\((?P<body>[^()]*)\)$")


class InputError(ValueError):
    """Malformed input; line/col are 1-based when known."""

    def __init__(self, msg, line=None, col=None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + msg)


def parse_digit(k, text):
    text = text.strip()
    parts = text.split(":")
    if len(parts) > max(k.d, 1) or (k.d == 1 and len(parts) != 1):
        raise InputError(f"digit {text!r} has too many coefficients")
    try:
        cs = [int(t) for t in parts]
    except ValueError:
        raise InputError(f"digit {text!r} is not numeric") from None
    if any(c < 0 or c >= k.p for c in cs):
        raise InputError(f"digit {text!r} has a coefficient outside 0..{k.p - 1}")
    return k.from_coeffs(cs + [0] * (k.d - len(cs)))


def format_digit(k, a):
    cs = list(k.coeffs(a))
    if k.d == 1:
        return str(cs[0])
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return ":".join(str(c) for c in cs)


def split_entry(text):
    """(digit strings, shift v) of an entry or EXPR."""
    text = text.strip()
    m = _HEAD.match(text) or _TAIL.match(text)
    if m:
        body, v = m.group("body").strip(), int(m.group("v"))
    elif "*" in text or "^" in text or "(" in text:
        raise InputError(f"cannot parse {text!r}; expected 'd0.d1*p^v' or 'p^v*(d0.d1)'")
    else:
        body, v = text, 0
    if not body:
        raise InputError(f"empty digit string in {text!r}")
    return body.split("."), v


def parse_local(ctx, text):
    """(v, raw) with value p^v * raw, raw in ctx (its digits as given)."""
    digits, v = split_entry(text)
    k = ctx.residue_field()
    return v, ctx.from_teich_digits([parse_digit(k, d) for d in digits])


def parse_entry(ctx, text):
    """An element of O/p^N; negative shifts are rejected."""
    v, raw = parse_local(ctx, text)
    if v < 0:
        if raw == ctx.zero:
            return ctx.zero
        w = ctx.val(raw)
        if w + v < 0:
            raise InputError(f"entry {text!r} is not integral")
        return ctx.div_p(raw, -v)
    return ctx.mul(ctx.ppow(v), raw) if v < ctx.N else ctx.zero


def format_entry(ctx, x):
    if x == ctx.zero:
        return "0"
    v = ctx.val(x)
    digits = ctx.teich_expand(ctx.div_p(x, v))[: ctx.N - v]
    k = ctx.residue_field()
    while len(digits) > 1 and digits[-1] == k.zero:
        digits.pop()
    body = ".".join(format_digit(k, a) for a in digits)
    return body if v == 0 else f"{body}*p^{v}"


# --- files -------------------------------------------------------------------------

def _position(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _string_positions(text):
    """Offsets of every JSON string literal after the "entries"/"vectors" key."""
    start = max(text.find('"entries"'), text.find('"vectors"'), 0)
    return [(start + m.start(), json.loads(m.group(0)))
            for m in re.finditer(r'"(?:[^"\\]|\\.)*"', text[start:])]


def _load_json(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return text, json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, exc.lineno, exc.colno) from None


def _locate(text, bad):
    for off, s in _string_positions(text):
        if s == bad:
            return _position(text, off + 1)
    return None, None


@dataclass
class MatrixFile:
    p: int
    d: int
    N: int
    n: int
    entries: list  # n x n entry strings
    text: str = ""

    @property
    def ctx(self):
        return galois_ring(make_field(self.p, self.d), self.N)

    def _each(self, parse):
        out = []
        for row in self.entries:
            vals = []
            for s in row:
                try:
                    vals.append(parse(s))
                except InputError as exc:
                    line, col = _locate(self.text, s)
                    raise InputError(str(exc), line, col) from None
            out.append(vals)
        return out

    def matrix(self):
        """Entries as raw elements of O/p^N (all shifts must be integral)."""
        ctx = self.ctx
        return self._each(lambda s: parse_entry(ctx, s))

    def locals(self, ctx=None):
        """Entries as (v, raw) pairs, shifts unrestricted; ``ctx`` may carry
        more precision than the file's N."""
        ctx = ctx or self.ctx
        return self._each(lambda s: parse_local(ctx, s))


def load_matrix(path):
    text, data = _load_json(path)
    if not isinstance(data, dict):
        raise InputError("matrix file must be a JSON object", 1, 1)
    for key in ("p", "d", "N", "n", "entries"):
        if key not in data:
            raise InputError(f"missing field {key!r}", 1, 1)
    p, d, N, n = (data[k] for k in ("p", "d", "N", "n"))
    if not all(isinstance(x, int) and x > 0 for x in (p, d, N, n)) or not is_prime(p):
        raise InputError("p must be prime and d, N, n positive integers", 1, 1)
    entries = data["entries"]
    if (not isinstance(entries, list) or len(entries) != n
            or any(not isinstance(r, list) or len(r) != n for r in entries)
            or any(not isinstance(s, str) for r in entries for s in r)):
        line, col = _position(text, max(text.find('"entries"'), 0))
        raise InputError(f"entries must be an {n} x {n} array of strings", line, col)
    return MatrixFile(p, d, N, n, entries, text)


def load_chain(path, ctx, n):
    text, data = _load_json(path)
    vecs = data.get("vectors") if isinstance(data, dict) else None
    if not isinstance(vecs, list) or any(not isinstance(v, list) or len(v) != n for v in vecs):
        raise InputError(f"chain file needs 'vectors': a list of length-{n} lists", 1, 1)
    out = []
    for v in vecs:
        row = []
        for s in v:
            try:
                row.append(parse_entry(ctx, s))
            except InputError as exc:
                line, col = _locate(text, s)
                raise InputError(str(exc), line, col) from None
        out.append(row)
    return out
