"""pathpack command line: gen, solve, oracle, verify, bench.

Exit codes: 0 ok, 1 bad input, 2 verification failure, 3 the instance
violates the no-bottleneck assumption, 4 oracle budget exceeded.
"""

import argparse
import json
import os
import sys

from . import dispatch
from . import io as docs
from .errors import BudgetExceeded, NBAViolation, PathpackError

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_NBA, EXIT_BUDGET = 0, 1, 2, 3, 4


def _load(path):
    doc = docs.read(path)
    kind, inst = docs.decode_instance(doc)
    return doc, kind, inst


def cmd_gen(args):
    params = {"n": args.n, "k": args.k, "eps": args.eps, "kind": args.kind}
    _, _, doc = dispatch.generate(args.family, args.seed, params)
    docs.write(args.output, doc)
    return EXIT_OK


def cmd_solve(args):
    doc, kind, inst = _load(args.input)
    sol = dispatch.solve(args.problem, args.algo, kind, inst, doc)
    docs.write(args.output, sol)
    return EXIT_OK


def cmd_oracle(args):
    doc, kind, inst = _load(args.input)
    out = dispatch.run_oracle(args.problem, kind, inst, dispatch.budget_from(args.budget_sec))
    out = {"schema": docs.SCHEMA, "kind": "oracle", "problem": args.problem,
           "instance_hash": docs.instance_hash(doc), **out}
    docs.write(args.output, out)
    return EXIT_OK


def cmd_verify(args):
    doc, kind, inst = _load(args.input)
    sol = docs.read(args.solution)
    msg = dispatch.check_solution(kind, inst, doc, sol)
    report = {"ok": msg is None, "problem": sol.get("problem"), "violation": msg}
    sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    return EXIT_OK if msg is None else EXIT_VERIFY


def cmd_bench(args):
    from .bench import run_suite, to_tsv
    from .report import plot_rows

    rows, summary = run_suite(args.suite, args.workers, args.budget_sec)
    text = to_tsv(rows + summary)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        png = os.path.splitext(args.output)[0] + ".png"
        plot_rows(rows, png)
        sys.stderr.write(f"wrote {args.output} and {png}\n")
    failed = [r for r in summary if r["status"] != "pass"]
    for r in failed:
        sys.stderr.write(f"FAIL {r['problem']}/{r['algorithm']}: {r['note']}\n")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="pathpack", description="Packing and covering on paths and trees.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance document")
    g.add_argument("--family", required=True, choices=sorted(dispatch.FAMILIES))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--eps")
    g.add_argument("--kind")
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="run an algorithm on an instance")
    s.add_argument("problem", choices=sorted(dispatch.ALGORITHMS))
    s.add_argument("--algo", default="auto")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="exact optimum by exhaustive search")
    o.add_argument("problem", choices=dispatch.ORACLES)
    o.add_argument("-i", "--input", required=True)
    o.add_argument("--budget-sec", type=float)
    o.add_argument("-o", "--output", default="-")
    o.set_defaults(func=cmd_oracle)

    v = sub.add_parser("verify", help="check a solution against its instance")
    v.add_argument("-i", "--input", required=True)
    v.add_argument("-s", "--solution", required=True)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="ratio table (TSV) plus a PNG figure next to it")
    b.add_argument("--suite", default="acceptance", choices=("acceptance", "smoke", "empty"))
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--budget-sec", type=float)
    b.add_argument("-o", "--output", default="-")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NBAViolation as exc:
        sys.stderr.write(f"refused: {exc}\n")
        return EXIT_NBA
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (PathpackError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
