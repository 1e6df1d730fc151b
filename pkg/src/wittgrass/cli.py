"""
Command-line front end.

Exit codes: 0 ok, 2 bad input, 3 enumeration work bound exceeded.
Structured output goes to stdout; timing and diagnostics go to stderr so
repeated runs print byte-identical results.
"""

import argparse
import csv
import io
import json
import random
import sys
import time

from . import centralext, demazure, detline, grassmannian, lattice, partitions, wittlaws
from .formats import InputError, format_digit, load_chain, load_matrix, parse_local
from .ring import make_field

SCHEMA_VERSION = 1
DEFAULT_SEED = 20240601
MAX_WITT_DEGREE = 128


class Usage(ValueError):
    pass


def _partition(text):
    try:
        return partitions.PartitionType.parse(text)
    except ValueError as exc:
        raise Usage(f"bad partition {text!r}: {exc}") from None


def _field(p, d):
    try:
        return make_field(p, d)
    except ValueError as exc:
        raise Usage(str(exc)) from None


# --- subcommands: each returns (payload, csv rows or None) ---------------------------

def cmd_witt_laws(args):
    _field(args.p, 1)
    # symbolic derivation cost grows like p^(m-1) squared; p = 7, m = 4 does not finish
    if args.m < 1 or args.p ** (args.m - 1) > MAX_WITT_DEGREE:
        raise Usage(f"need m >= 1 and p^(m-1) <= {MAX_WITT_DEGREE}")
    laws = wittlaws.derive_witt_laws(args.p, args.m)
    S = [wittlaws.format_poly(s, args.m) for s in laws.S]
    P = [wittlaws.format_poly(s, args.m) for s in laws.P]
    rows = [("S", i, s) for i, s in enumerate(S)] + [("P", i, s) for i, s in enumerate(P)]
    return {"p": args.p, "m": args.m, "S": S, "P": P}, [("law", "index", "polynomial")] + rows


def cmd_dominance(args):
    lam, mu = _partition(args.lhs), _partition(args.rhs)
    verdicts, witness = partitions.all_verdicts(lam, mu)
    payload = {"lhs": str(lam), "rhs": str(mu), "verdict": verdicts["epsilon"],
               "methods": verdicts, "witness": list(witness) if witness is not None else None}
    rows = [("method", "verdict")] + [(m, verdicts[m]) for m in partitions.METHODS]
    return payload, rows


def cmd_snf(args):
    mf = load_matrix(args.matrix)
    A = lattice.IsogenyMatrix(mf.ctx, mf.matrix())
    _, _, _, lam = lattice.smith_normal_form(A)
    return {"p": mf.p, "d": mf.d, "N": mf.N, "n": mf.n, "exponents": list(lam.padded(mf.n)),
            "type": str(lam)}, None


def cmd_det(args):
    mf = load_matrix(args.matrix)
    Q = detline.TorsionModule(mf.ctx, mf.matrix())
    if args.chain:
        chain = load_chain(args.chain, mf.ctx, mf.n)
        try:
            line = detline.det_torsion(Q, chain)
        except detline.InvalidChain as exc:
            raise Usage(f"invalid chain: {exc}") from None
    else:
        line = detline.GradedLine(Q.field, Q.field.one, Q.length)
    return {"type": str(Q.type()), "scalar": format_digit(Q.field, line.scalar),
            "degree": line.degree}, None


def _config(args):
    return grassmannian.EnumConfig(workers=args.workers)


def cmd_count(args):
    table = grassmannian.stratum_counts(args.n, args.c, args.q, _config(args))
    payload = {"n": args.n, "c": args.c, "q": args.q,
               "strata": [{"type": str(lam), "count": cnt} for lam, cnt in table.rows()],
               "total": table.total()}
    if args.type:
        lam = _partition(args.type)
        payload["query"] = {"type": str(lam), "leq": args.leq,
                            "count": grassmannian.count_leq(table, lam) if args.leq else table[lam]}
    rows = [("type", "count")] + [(str(lam), cnt) for lam, cnt in table.rows()]
    return payload, rows


def cmd_demazure(args):
    lam = _partition(args.type)
    rep = demazure.fiber_report(args.n, lam, args.q, _config(args))
    payload = {"n": args.n, "q": args.q, "type": str(lam), "chains": rep.chains,
               "product_formula": demazure.chain_count(args.n, lam, args.q),
               "identity_holds": rep.identity_holds()}
    if args.fibers:
        payload["strata"] = [{"type": str(mu), "points": info["points"],
                              "fiber_sizes": info["fiber_sizes"]}
                             for mu, info in rep.strata.items()]
    rows = [("type", "points", "fiber_sizes")] + [
        (str(mu), info["points"], " ".join(map(str, info["fiber_sizes"])))
        for mu, info in rep.strata.items()]
    return payload, rows


def _local(ctx, text):
    try:
        v, raw = parse_local(ctx, text)
        return centralext.LocalElt.make(ctx, v, raw)
    except lattice.PrecisionError:
        raise Usage(f"{text!r} is zero; the tame symbol needs nonzero inputs") from None


def cmd_tame(args):
    ctx = centralext.working_ring(_field(args.p, args.d))
    a, b = _local(ctx, args.a), _local(ctx, args.b)
    k = ctx.residue_field()
    return {"p": args.p, "d": args.d, "a": args.a, "b": args.b,
            "value": format_digit(k, centralext.tame_symbol(a, b))}, None


def _loop_elt(path, params, n):
    mf = load_matrix(path)
    if (mf.p, mf.d, mf.n) != (params.p, params.d, n):
        raise Usage(f"{path}: p, d, n do not match the command line")
    ctx = centralext.working_ring(params)
    locs = mf.locals(ctx)
    base = min((v + ctx.val(x) for row in locs for v, x in row if x != ctx.zero), default=0)
    rows = [[ctx.zero if x == ctx.zero else ctx.mul(ctx.ppow(v - base), x) for v, x in row]
            for row in locs]
    try:
        return centralext.LoopGroupElt(ctx, base, rows, mf.N, sl=True)
    except ValueError as exc:
        raise Usage(f"{path}: {exc}") from None


def cmd_cocycle(args):
    params = _field(args.p, args.d)
    ctx = centralext.working_ring(params)
    rng = random.Random(args.seed)
    g = _loop_elt(args.g, params, args.n) if args.g else centralext.random_sl(ctx, args.n, rng)
    h = _loop_elt(args.h, params, args.n) if args.h else centralext.random_sl(ctx, args.n, rng)
    value = centralext.cocycle(g, h, args.a)
    payload = {"p": args.p, "d": args.d, "n": args.n, "a": args.a,
               "value": format_digit(ctx.residue_field(), value)}
    if not (args.g and args.h):
        payload["seed"] = args.seed
    return payload, None


# --- parser ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="wittgrass", description=__doc__.strip().splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, tabular=False):
        sp = sub.add_parser(name)
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", help="JSON output")
        if tabular:
            fmt.add_argument("--csv", action="store_true", help="CSV output")
        sp.set_defaults(fn=fn, csv=False)
        return sp

    sp = add("witt-laws", cmd_witt_laws, tabular=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)

    sp = add("dominance", cmd_dominance, tabular=True)
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)

    sp = add("snf", cmd_snf)
    sp.add_argument("--matrix", required=True)

    sp = add("det", cmd_det)
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--chain")

    sp = add("count", cmd_count, tabular=True)
    for flag in ("--n", "--c", "--q"):
        sp.add_argument(flag, type=int, required=True)
    sp.add_argument("--type")
    sp.add_argument("--leq", action="store_true", help="count all strata dominated by --type")
    sp.add_argument("--workers", type=int, default=1)

    sp = add("demazure", cmd_demazure, tabular=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--type", required=True)
    sp.add_argument("--fibers", action="store_true")
    sp.add_argument("--workers", type=int, default=1)

    sp = add("tame", cmd_tame)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("-a", required=True)
    sp.add_argument("-b", required=True)

    sp = add("cocycle", cmd_cocycle)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--g", help="matrix file; random SL_n element if omitted")
    sp.add_argument("--h", help="matrix file; random SL_n element if omitted")
    sp.add_argument("--a", type=int)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return ap


def _render(args, payload, rows):
    if args.json:
        doc = {"schema_version": SCHEMA_VERSION, "command": args.command, "result": payload}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.csv:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    lines = []
    for key, val in payload.items():
        if isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{key}:")
            lines.extend("  " + " ".join(f"{k}={v}" for k, v in item.items()) for item in val)
        elif isinstance(val, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {k}: {v}" for k, v in val.items())
        elif isinstance(val, list) and key in ("S", "P"):
            lines.extend(f"{key}_{i} = {s}" for i, s in enumerate(val))
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    t0 = time.perf_counter()
    try:
        payload, rows = args.fn(args)
    except grassmannian.WorkBoundExceeded as exc:
        print(f"wittgrass: {exc}", file=sys.stderr)
        return 3
    except (InputError, Usage, lattice.PrecisionError, ValueError) as exc:
        print(f"wittgrass {args.command}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(_render(args, payload, rows))
    print(f"[{args.command}] {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
