"""autoeval command line: verify, bench, rs, eval.

Randomness: every sampled polynomial and point comes from
``random.Random(f"{seed}:{n}:{trial}")`` (Python's Mersenne Twister seeded
with that string), so ``--seed`` fully determines a run.  Exit status is 0 on
success, 1 when a verification or cost check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import cost, evaluators as ev, rs
from .field import FieldContext, FieldError, parse_spec
from .poly import DensePoly, read_poly

CSV_COLUMNS = ["p", "s", "m", "n", "method", "L", "predicted_mul", "measured_mul",
               "measured_add", "horner_mul", "wall_ns"]


class UsageError(Exception):
    pass


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _csv_methods(text: str) -> list[str]:
    out = [t.strip() for t in text.split(",") if t.strip()]
    bad = [m for m in out if m not in cost.METHODS and m != "best"]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown methods {bad}; choose from {', '.join(cost.METHODS)}, best")
    return out


def _context(spec: str) -> tuple[FieldContext, int]:
    try:
        p, m, modulus, s = parse_spec(spec)
        ctx = FieldContext.get(p, m, modulus)
    except FieldError as exc:
        raise UsageError(str(exc)) from None
    if s < 1 or m % s:
        raise UsageError(f"s={s} must divide m={m}")
    return ctx, s


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("AUTOEVAL_THREADS", "1")))
    except ValueError:
        return 1


def _applicable(method: str, s: int) -> bool:
    if method in ("m1", "m2"):
        return s == 1
    if method in ("ext_basis", "ext_m2"):
        return s > 1
    return True


def _plan(method: str, p: int, s: int, n: int) -> cost.EvalPlan:
    if method == "best":
        # placeholder, replaced by the plan eval_best picks
        return cost.method_plan("horner", p, s, n)
    return cost.method_plan(method, p, s, n)


def _run(method: str, P: DensePoly, alpha, plan: cost.EvalPlan):
    if method == "best":
        value, plan, counter = ev.eval_best(P, alpha)
        return value, plan, counter
    value, counter = ev.run_plan(plan, P, alpha)
    return value, plan, counter


# -- verify ---------------------------------------------------------------------


def cmd_verify(args) -> int:
    ctx, s = _context(args.field)
    methods = args.methods or (["direct", "m1", "m2", "best"] if s == 1 else
                               ["direct", "ext_basis", "ext_m2", "best"])
    methods = [m for m in methods if _applicable(m, s)]
    if args.trials == 0:
        print("warning: --trials 0, nothing to verify", file=sys.stderr)
    passed = {m: 0 for m in methods}
    failures = []
    for n in args.degrees:
        for t in range(args.trials):
            rng = random.Random(f"{args.seed}:{n}:{t}")
            P = ev.random_poly(ctx, n, s, rng)
            alpha = ctx.element(rng.randrange(ctx.q))
            ref, _ = ev.eval_horner(P, alpha)
            for m in methods:
                plan = _plan(m, ctx.p, s, n)
                value, plan, counter = _run(m, P, alpha, plan)
                if value == ref and counter.charged_mul <= plan.predicted_mul:
                    passed[m] += 1
                else:
                    failures.append((m, plan, P, alpha, value, ref, counter))
    total = args.trials * len(args.degrees)
    for m in methods:
        print(f"{m:10s} {passed[m]}/{total}")
    for m, plan, P, alpha, value, ref, counter in failures[:10]:
        print(f"FAIL method={m} L={plan.L} alpha={ctx.encode(alpha)} got={ctx.encode(value)} "
              f"want={ctx.encode(ref)} charged_mul={counter.charged_mul} "
              f"predicted={plan.predicted_mul} P={[ctx.encode(v) for v in P.values]}")
    return 1 if failures else 0


# -- bench ----------------------------------------------------------------------


def _bench_cell(ctx: FieldContext, s: int, n: int, method: str, seed: int, timing: bool):
    rng = random.Random(f"{seed}:{n}")
    alpha = ctx.alpha
    P = ev.worst_case_poly(ctx, n, s, alpha, rng)
    _, horner = ev.eval_horner(P, alpha)
    plan = _plan(method, ctx.p, s, n)
    start = time.perf_counter_ns()
    _, plan, counter = _run(method, P, alpha, plan)
    wall = time.perf_counter_ns() - start if timing else 0
    return {
        "p": ctx.p, "s": s, "m": ctx.m, "n": n, "method": method, "L": plan.L,
        "predicted_mul": plan.predicted_mul, "measured_mul": counter.charged_mul,
        "measured_add": counter.add, "horner_mul": horner.mul, "wall_ns": wall,
    }


def cmd_bench(args) -> int:
    ctx, s = _context(args.field)
    methods = args.methods or ["horner", "direct"] + (["m1", "m2"] if s == 1 else ["ext_basis", "ext_m2"])
    skipped = [m for m in methods if not _applicable(m, s)]
    for m in skipped:
        print(f"warning: {m} does not apply to s={s}, skipped", file=sys.stderr)
    cells = [(n, m) for n in args.degrees for m in methods if m not in skipped]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        rows = list(pool.map(lambda c: _bench_cell(ctx, s, c[0], c[1], args.seed, args.timing), cells))
    order = {m: i for i, m in enumerate(cost.METHODS + ("best",))}
    rows.sort(key=lambda r: (r["n"], order[r["method"]]))

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.out in (None, "-"):
        sys.stdout.write(buf.getvalue())
    else:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(buf.getvalue())
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return 1
    bad = [r for r in rows if r["measured_mul"] > r["predicted_mul"]]
    for r in bad:
        print(f"FAIL n={r['n']} method={r['method']} measured {r['measured_mul']} > "
              f"predicted {r['predicted_mul']}", file=sys.stderr)
    return 1 if bad else 0


# -- rs -------------------------------------------------------------------------


def cmd_rs(args) -> int:
    if args.words < 1:
        raise UsageError("--words must be at least 1")
    ctx = rs.build_rs_context()
    if args.input:
        with open(args.input) as fh:
            words = [rs.read_word(fh)]
    else:
        rng = random.Random(f"{args.seed}:rs")
        if args.demo == "worstcase":
            words = [rs.worst_case_word(ctx, args.seed + k) for k in range(args.words)]
        elif args.demo == "codeword":
            words = [rs.random_codeword(ctx, rng) for _ in range(args.words)]
        else:
            words = [rs.random_word(rng) for _ in range(args.words)]

    report = rs.run_batch(ctx, words)
    for name in ("automorphic", "horner"):
        print(f"[{name}]")
        for stage, c in report.stages[name].items():
            print(f"  {stage:16s} muls={c.charged_mul:7d} adds={c.add:7d}")
    auto, horner = report.total("automorphic"), report.total("horner")
    print(f"multiplications: {auto} vs {horner}")
    pred = rs.amortized_cost(len(words))
    print(f"worst-case formulas for K={len(words)}: {pred.automorphic} vs {pred.horner}")
    if len(words) == 1:
        buf = io.StringIO()
        rs.write_syndromes(report.automorphic[0], buf)
        sys.stdout.write(buf.getvalue())
    agree = report.agree()
    zero = all(S.is_zero() for S in report.automorphic)
    print(f"pipelines agree on {len(words) * rs.NSYN} syndromes: {agree}")
    if args.demo == "codeword" and not args.input:
        print(f"all syndromes zero: {zero}")
    if args.out:
        stages = {f"automorphic_{k}": c for k, c in report.stages["automorphic"].items()}
        stages.update({f"horner_{k}": c for k, c in report.stages["horner"].items()})
        try:
            with open(args.out, "w", newline="") as fh:
                rs.write_cost_csv(stages, fh)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return 1
    ok = agree and (zero or args.demo != "codeword" or args.input)
    return 0 if ok else 1


# -- eval -----------------------------------------------------------------------


def cmd_eval(args) -> int:
    try:
        with open(args.poly) as fh:
            P = read_poly(fh)
    except FieldError as exc:
        raise UsageError(str(exc)) from None
    ctx = P.ctx
    alpha = ctx.decode(args.point) if args.point else ctx.alpha
    method = args.method
    if method == "best":
        value, plan, counter = ev.eval_best(P, alpha)
    else:
        if not _applicable(method, P.s):
            raise UsageError(f"{method} does not apply to s={P.s}")
        value, plan, counter = _run(method, P, alpha, _plan(method, ctx.p, P.s, P.degree))
    print(f"value={ctx.encode(value)} method={plan.method} L={plan.L} "
          f"predicted_mul={plan.predicted_mul} measured_mul={counter.charged_mul} measured_add={counter.add}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="autoeval", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, degrees=True):
        sp.add_argument("--field", default="p=2,m=8", help='context spec, e.g. "p=3,m=5" or "p=2,m=8,s=4"')
        if degrees:
            sp.add_argument("--degrees", type=_csv_ints, default=[10, 100], help="comma-separated degrees")
        sp.add_argument("--methods", type=_csv_methods, default=None, help="comma-separated methods")
        sp.add_argument("--seed", type=int, default=0)

    v = sub.add_parser("verify", help="check every evaluator against Horner on seeded random inputs")
    common(v)
    v.add_argument("--trials", type=int, default=20)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="predicted and measured counts on worst-case inputs, as CSV")
    common(b)
    b.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    b.add_argument("--timing", action="store_true", help="fill wall_ns (otherwise 0, keeping output reproducible)")
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("rs", help="Reed-Solomon syndrome demo over GF(256)")
    r.add_argument("--demo", choices=["random", "worstcase", "codeword"], default="worstcase")
    r.add_argument("--words", type=int, default=1, help="number of received words K")
    r.add_argument("--input", default=None, help="received word file, 255 lines of two hex digits")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out", default=None, help="cost report CSV path (stage,muls,adds)")
    r.set_defaults(func=cmd_rs)

    e = sub.add_parser("eval", help="evaluate a polynomial file at a point")
    e.add_argument("--poly", required=True)
    e.add_argument("--point", default=None, help="canonical element encoding (defaults to alpha)")
    e.add_argument("--method", default="best", choices=list(cost.METHODS) + ["best"])
    e.set_defaults(func=cmd_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "trials", 0) < 0:
        parser.error("--trials must be non-negative")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc.filename}: no such file", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
