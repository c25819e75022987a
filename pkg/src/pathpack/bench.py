"""Ratio tables: run algorithms and oracles side by side over a suite of
generated instances and compare each ratio with its proven bound."""

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
import io as _io

from . import dispatch
from .errors import BudgetExceeded, PathpackError
from .io import rat
from .lp import solve_ufp_lp
from .oracle import exact_bag_ufp, exact_cover, exact_disjoint_bag, exact_max_ufp, exact_round_ufp
from .resall import compress, mountain_decompose

COLUMNS = ("suite", "family", "seed", "params", "problem", "algorithm", "alg", "oracle", "lp", "r",
           "ratio", "ratio_float", "bound", "check", "status", "note")


@dataclass(frozen=True)
class RowSpec:
    suite: str
    family: str
    seed: int
    params: tuple  # sorted (key, value) pairs
    problem: str
    algo: str


# problem, algorithm -> (how the ratio is formed, bound, check)
#   "alg/opt", "opt/alg", "alg/r", "lp/opt"; check "le" (ratio <= bound),
#   "eq" (ratio == bound) or "in" (bound is a closed interval)
BOUNDS = {
    ("round-ufp", "path"): ("alg/opt", 24, "le"),
    ("round-ufp", "uniform"): ("alg/opt", 3, "le"),
    ("round-ufp", "tree"): ("alg/opt", 64, "le"),
    ("round-ufp", "unit"): ("alg/r", 1, "eq"),
    ("round-ufp", "oracle"): ("alg/r", None, "note"),
    ("max-ufp", "path"): ("opt/alg", 17, "le"),
    ("max-ufp", "tree"): ("opt/alg", 64, "le"),
    ("bag-ufp", "path"): ("opt/alg", 65, "le"),
    ("bag-ufp", "disjoint"): ("opt/alg", 2, "le"),
    ("online", "bands"): ("alg/r", 58, "le"),
    ("resall", "local-ratio"): ("alg/opt", 4, "le"),
    ("pcresall", "smfc"): ("alg/opt", 4, "le"),
    ("presall", "single-mountain"): ("alg/opt", 8, "le"),
    ("presall", "mountains"): ("alg/opt", "384L", "le"),
    ("lspc", "dp"): ("alg/opt", 1, "eq"),
    ("lspc-unrestricted", "dp"): ("alg/opt", 16, "le"),
    ("lp-gap", "lp"): ("lp/opt", "n/2", "eq"),
    ("lp-gap-nba", "lp"): ("lp/opt", (Fraction(249, 100), Fraction(5, 2)), "in"),
}


def _spec(suite, family, seeds, problem, algo, **params):
    pp = tuple(sorted(params.items()))
    return [RowSpec(suite, family, s, pp, problem, algo) for s in seeds]


def suite_specs(name):
    if name == "empty":
        return []
    if name == "smoke":
        seeds = range(1)
    elif name == "acceptance":
        seeds = range(5)
    else:
        raise ValueError(f"unknown suite {name!r}")
    out = []
    for n in (2, 4, 6, 8, 10):
        out += _spec(name, "lp-gap", [0], "lp-gap", "lp", n=n)
    out += _spec(name, "nba-gap-2.5", [0], "lp-gap-nba", "lp")
    for k in (1, 2, 3, 4):
        out += _spec(name, "single-edge-large", [0], "round-ufp", "oracle", k=k)
    for n in (3, 4, 5, 6):
        out += _spec(name, "geometric-no-nba", [0], "round-ufp", "oracle", n=n)
    out += _spec(name, "random-nba-path", seeds, "round-ufp", "path", n=8)
    out += _spec(name, "random-nba-path", seeds, "round-ufp", "uniform", n=8, kind="uniform")
    out += _spec(name, "unit-path", seeds, "round-ufp", "unit", n=10)
    out += _spec(name, "random-tree", seeds, "round-ufp", "tree", n=7)
    out += _spec(name, "random-nba-path", seeds, "max-ufp", "path", n=10)
    out += _spec(name, "random-tree", seeds, "max-ufp", "tree", n=8)
    out += _spec(name, "bag-random", seeds, "bag-ufp", "path", n=10)
    out += _spec(name, "bag-random", seeds, "bag-ufp", "disjoint", n=8)
    out += _spec(name, "stream-random", seeds, "online", "bands", n=30)
    out += _spec(name, "stream-adversarial", seeds, "online", "bands", n=30)
    out += _spec(name, "resall-random", seeds, "resall", "local-ratio", n=6)
    out += _spec(name, "pcresall-random", seeds, "pcresall", "smfc", n=6)
    out += _spec(name, "mountain-jobs", seeds, "presall", "single-mountain", n=7)
    out += _spec(name, "presall-random", seeds, "presall", "mountains", n=6)
    out += _spec(name, "lspc-random", seeds, "lspc", "dp")
    out += _spec(name, "lspc-random", seeds, "lspc-unrestricted", "dp")
    return out


def _ratio(num, den):
    if den == 0:
        return Fraction(1) if num == 0 else None
    return Fraction(num) / Fraction(den)


def _compute(spec, budget):
    params = dict(spec.params)
    kind, inst, doc = dispatch.generate(spec.family, spec.seed, params)
    row = {"alg": "", "oracle": "", "lp": "", "r": "", "note": ""}
    p, a = spec.problem, spec.algo
    if p in ("lp-gap", "lp-gap-nba"):
        lp = solve_ufp_lp(inst).value
        opt = exact_max_ufp(inst, budget)[0]
        row.update(alg=lp, oracle=opt, lp=lp, r=inst.congestion)
        return row, _ratio(lp, opt), (Fraction(params["n"], 2) if p == "lp-gap" else None)
    if p == "round-ufp" and a == "oracle":
        k = exact_round_ufp(inst, budget)[0]
        row.update(alg=k, oracle=k, r=inst.congestion, note=f"nba={inst.nba}")
        return row, _ratio(k, inst.congestion), None
    solver_problem = "lspc" if p == "lspc-unrestricted" else p
    sol = dispatch.solve(solver_problem, a, kind, inst, doc)
    res, bounds = sol["result"], sol["bounds"]
    row["r"] = bounds.get("r", "")
    row["lp"] = bounds.get("lp", "")
    if p == "round-ufp":
        alg = res["num_colors"]
        row["alg"] = alg
        if a == "unit":
            return row, _ratio(alg, inst.congestion), None
        opt = exact_round_ufp(inst, budget)[0]
        row["oracle"] = opt
        return row, _ratio(alg, opt), None
    if p == "online":
        alg = res["num_colors"]
        row["alg"] = alg
        return row, _ratio(alg, inst.congestion), None
    if p == "max-ufp":
        alg = Fraction(res["profit"])
        opt = exact_max_ufp(inst, budget)[0]
        row.update(alg=alg, oracle=opt)
        return row, _ratio(opt, alg), None
    if p == "bag-ufp":
        alg = Fraction(res["profit"])
        fn = exact_disjoint_bag if a == "disjoint" else exact_bag_ufp
        opt = fn(inst, budget)[0]
        row.update(alg=alg, oracle=opt)
        return row, _ratio(opt, alg), None
    alg = Fraction(res["cost"])
    row["alg"] = alg
    opt = exact_cover("full" if p == "resall" else p, inst, budget)[0]
    row["oracle"] = opt
    bound = None
    if p == "presall" and a == "mountains":
        cj, _, _ = compress(inst.jobs, inst.resources)
        L = len(mountain_decompose(cj)) if inst.jobs else 0
        bound = 384 * max(1, L)
        row["note"] = f"L={L}"
    return row, _ratio(alg, opt), bound


def run_row(spec, budget_sec=None):
    """One finished TSV row (dict of strings)."""
    budget = dispatch.budget_from(budget_sec)
    how, bound, check = BOUNDS[(spec.problem, spec.algo)]
    base = {
        "suite": spec.suite, "family": spec.family, "seed": str(spec.seed),
        "params": ";".join(f"{k}={v}" for k, v in spec.params) or "-",
        "problem": spec.problem, "algorithm": spec.algo, "check": check,
    }
    try:
        row, ratio, dyn = _compute(spec, budget)
    except BudgetExceeded as exc:
        base.update({c: "" for c in COLUMNS if c not in base})
        base.update(status="budget", note=str(exc))
        return base
    except PathpackError as exc:
        base.update({c: "" for c in COLUMNS if c not in base})
        base.update(status="error", note=f"{type(exc).__name__}: {exc}")
        return base
    if dyn is not None:
        bound = dyn
    if check == "note":
        status = "info"
    elif ratio is None:
        status = "fail"
    elif check == "le":
        status = "pass" if ratio <= bound else "fail"
    elif check == "eq":
        status = "pass" if ratio == bound else "fail"
    else:
        lo, hi = bound
        status = "pass" if lo <= ratio <= hi else "fail"
    if isinstance(bound, tuple):
        btxt = f"[{rat(bound[0])},{rat(bound[1])}]"
    else:
        btxt = "" if bound is None else (rat(bound) if isinstance(bound, (int, Fraction)) else str(bound))
    out = dict(base)
    for key in ("alg", "oracle", "lp", "r"):
        v = row[key]
        out[key] = rat(v) if isinstance(v, (int, Fraction)) and not isinstance(v, bool) else str(v)
    out.update(
        ratio="inf" if ratio is None else rat(ratio),
        ratio_float="inf" if ratio is None else f"{float(ratio):.6g}",
        bound=btxt, status=status, note=row["note"],
    )
    return out


def summarize(rows):
    """One summary row per (problem, algorithm)."""
    groups = {}
    for r in rows:
        groups.setdefault((r["problem"], r["algorithm"]), []).append(r)
    out = []
    for (p, a), rs in sorted(groups.items()):
        ratios = [float(r["ratio_float"]) for r in rs if r["ratio_float"] not in ("", "inf")]
        passed = sum(1 for r in rs if r["status"] in ("pass", "info"))
        out.append({
            "suite": rs[0]["suite"], "family": "summary", "seed": "", "params": f"rows={len(rs)}",
            "problem": p, "algorithm": a, "alg": "", "oracle": "", "lp": "", "r": "",
            "ratio": "", "ratio_float": f"{max(ratios):.6g}" if ratios else "",
            "bound": rs[0]["bound"], "check": rs[0]["check"],
            "status": "pass" if passed == len(rs) else "fail",
            "note": f"passed={passed}/{len(rs)}",
        })
    return out


def run_suite(name, workers=1, budget_sec=None):
    specs = suite_specs(name)
    if workers > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(run_row, specs, [budget_sec] * len(specs)))
    else:
        rows = [run_row(s, budget_sec) for s in specs]
    return rows, summarize(rows)


def to_tsv(rows):
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, delimiter="\t", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()
