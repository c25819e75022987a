"""Glue between documents and solvers: instance families, the solver
table, oracle calls and solution verification."""

from fractions import Fraction

from . import generators as gen
from .errors import InvalidInstance
from .io import SCHEMA, encode_instance, instance_hash, rat
from .lp import solve_bag_lp, solve_ufp_lp
from .max_bag import (
    bag_disjoint_select,
    bag_ufp_large,
    bag_ufp_path,
    bag_ufp_small,
    max_ufp_large,
    max_ufp_path,
    max_ufp_small,
    max_ufp_tree,
)
from .model import (
    Coloring,
    LspcSolution,
    MultisetSelection,
    check_nba,
    verify_bag_choice,
    verify_coloring,
    verify_cover,
    verify_lspc,
)
from .online import OnlineColorer
from .oracle import (
    OracleBudget,
    default_budget,
    exact_bag_ufp,
    exact_cover,
    exact_disjoint_bag,
    exact_max_ufp,
    exact_round_ufp,
)
from .resall import (
    full_cover_resall,
    lspc_solve,
    pcresall_cost,
    pcresall_solve,
    presall_solve,
    single_mountain_partial,
)
from .round_path import (
    color_large_arbitrary,
    color_small_arbitrary,
    color_unit_path,
    round_ufp_path,
    round_ufp_uniform,
)
from .round_tree import color_unit_tree, round_ufp_tree

# --- families ------------------------------------------------------------------


def _p(params, key, default):
    v = params.get(key)
    return default if v is None else v


FAMILIES = {
    "single-edge-large": ("path-ufp", lambda s, p: gen.single_edge_large(_p(p, "k", 2))),
    "geometric-no-nba": ("path-ufp", lambda s, p: gen.geometric_no_nba(_p(p, "n", 4))),
    "lp-gap": ("path-ufp", lambda s, p: gen.lp_gap(_p(p, "n", 4))),
    "nba-gap-2.5": ("path-ufp", lambda s, p: gen.nba_gap(Fraction(_p(p, "eps", "1/1000")))),
    "random-nba-path": ("path-ufp", lambda s, p: gen.random_path(
        s, requests=(1, _p(p, "n", 10)), kind=_p(p, "kind", "mixed"))),
    "unit-path": ("path-ufp", lambda s, p: gen.random_path(s, requests=(1, _p(p, "n", 10)), kind="unit")),
    "random-tree": ("tree-ufp", lambda s, p: gen.random_tree(
        s, requests=(1, _p(p, "n", 8)), kind=_p(p, "kind", "mixed"))),
    "bag-random": ("bag-ufp", lambda s, p: gen.random_bags(
        s, kind=_p(p, "kind", "mixed"), max_requests=_p(p, "n", 12))),
    "mountain-jobs": ("presall", lambda s, p: gen.mountain_jobs(s, jobs=(1, _p(p, "n", 8)))),
    "stream-adversarial": ("online-stream", lambda s, p: gen.adversarial_stream(s, requests=(8, _p(p, "n", 30)))),
    "stream-random": ("online-stream", lambda s, p: gen.random_stream(s, requests=(1, _p(p, "n", 30)))),
    "resall-random": ("resall", lambda s, p: gen.random_resall(s, jobs=(1, _p(p, "n", 6)))),
    "presall-random": ("presall", lambda s, p: gen.random_resall(s, jobs=(1, _p(p, "n", 6)), k="random")),
    "pcresall-random": ("pcresall", lambda s, p: gen.random_resall(s, jobs=(1, _p(p, "n", 6)), penalties=True)),
    "lspc-random": ("lspc", lambda s, p: gen.random_lspc(s)),
}


def generate(family, seed=0, params=None):
    """(kind, instance, document) for a family."""
    if family not in FAMILIES:
        raise InvalidInstance(f"unknown family {family!r}")
    params = {k: v for k, v in (params or {}).items() if v is not None}
    kind, build = FAMILIES[family]
    inst = build(seed, params)
    prov = {"family": family, "seed": seed, "params": {k: str(v) for k, v in sorted(params.items())}}
    return kind, inst, encode_instance(kind, inst, prov)


# --- solvers ----------------------------------------------------------------------


def _round(fn):
    def run(inst):
        col = fn(inst)
        return {"colors": list(col.colors), "num_colors": col.num_colors}, {"r": inst.congestion}
    return run


def _max(fn):
    def run(inst):
        chosen = sorted(fn(inst))
        lp = solve_ufp_lp(inst).value if len(inst) else Fraction(0)
        return {"chosen": chosen, "profit": rat(inst.total_profit(chosen))}, {"lp": rat(lp)}
    return run


def _bag(fn):
    def run(bags):
        choice = [list(p) for p in sorted(fn(bags))]
        lp = solve_bag_lp(bags).value
        return {"choice": choice, "profit": rat(bags.profit([tuple(p) for p in choice]))}, {"lp": rat(lp)}
    return run


def _online(inst):
    st = OnlineColorer(inst.network)
    for r in inst.requests:
        st.push(r)
    small, large = st.pool_sizes()
    res = {
        "colors": list(st.colors),
        "num_colors": st.num_colors,
        "transcript": [[step, color] for step, _, color in st.transcript],
    }
    return res, {"r": inst.congestion, "small_colors": small, "large_colors": large}


def _sel(sel):
    return [[i, f] for i, f in sel.counts.items()]


def _resall(inst):
    sel = full_cover_resall(inst.jobs, inst.resources)
    return {"selection": _sel(sel), "cost": rat(sel.cost(inst.resources))}, {}


def _presall(fn):
    def run(inst):
        k = len(inst.jobs) if inst.k is None else inst.k
        info = {}
        if fn == "single":
            sel, cov = single_mountain_partial(inst.jobs, inst.resources, k)
        else:
            sel, cov = presall_solve(inst.jobs, inst.resources, k, info)
        res = {"selection": _sel(sel), "covered": list(cov), "cost": rat(sel.cost(inst.resources))}
        return res, {"ranges": info.get("ranges", 0)}
    return run


def _pcresall(inst):
    sel, cov = pcresall_solve(inst.jobs, inst.resources)
    res = {
        "selection": _sel(sel),
        "covered": list(cov),
        "cost": rat(pcresall_cost(inst.jobs, inst.resources, sel, cov)),
        "resource_cost": rat(sel.cost(inst.resources)),
    }
    return res, {}


def _lspc(inst):
    sol = lspc_solve(inst)
    res = {
        "shorts": [[e, j] for e, j in sorted(sol.shorts.items())],
        "longs": [[i, f] for i, f in sorted(sol.longs.items())],
        "coverage": [[e, k] for e, k in sorted(sol.coverage.items())],
        "cost": rat(sol.cost),
    }
    return res, {}


def _by_network(path_fn, tree_fn):
    def run(inst):
        return (tree_fn if inst.is_tree else path_fn)(inst)
    return run


ALGORITHMS = {
    "round-ufp": {
        "auto": _round(_by_network(round_ufp_path, round_ufp_tree)),
        "path": _round(round_ufp_path),
        "uniform": _round(round_ufp_uniform),
        "large": _round(color_large_arbitrary),
        "small": _round(color_small_arbitrary),
        "unit": _round(color_unit_path),
        "tree": _round(round_ufp_tree),
        "unit-tree": _round(color_unit_tree),
    },
    "max-ufp": {
        "auto": _max(_by_network(max_ufp_path, max_ufp_tree)),
        "path": _max(max_ufp_path),
        "large": _max(max_ufp_large),
        "small": _max(max_ufp_small),
        "tree": _max(max_ufp_tree),
    },
    "bag-ufp": {
        "auto": _bag(bag_ufp_path),
        "path": _bag(bag_ufp_path),
        "disjoint": _bag(bag_disjoint_select),
        "large": _bag(bag_ufp_large),
        "small": _bag(bag_ufp_small),
    },
    "online": {"auto": _online, "bands": _online},
    "resall": {"auto": _resall, "local-ratio": _resall},
    "presall": {"auto": _presall("mountains"), "mountains": _presall("mountains"),
                "single-mountain": _presall("single")},
    "pcresall": {"auto": _pcresall, "smfc": _pcresall},
    "lspc": {"auto": _lspc, "dp": _lspc},
}

PROBLEM_KINDS = {
    "round-ufp": ("path-ufp", "tree-ufp"),
    "max-ufp": ("path-ufp", "tree-ufp"),
    "bag-ufp": ("bag-ufp",),
    "online": ("online-stream", "path-ufp"),
    "resall": ("resall", "presall", "pcresall"),
    "presall": ("presall", "resall"),
    "pcresall": ("pcresall",),
    "lspc": ("lspc",),
}


def solve(problem, algo, kind, inst, doc):
    """Run a solver; returns the solution document."""
    if problem not in ALGORITHMS:
        raise InvalidInstance(f"unknown problem {problem!r}")
    if algo not in ALGORITHMS[problem]:
        raise InvalidInstance(f"unknown algorithm {algo!r} for {problem}")
    if kind not in PROBLEM_KINDS[problem]:
        raise InvalidInstance(f"{problem} cannot read a {kind} instance")
    result, bounds = ALGORITHMS[problem][algo](inst)
    if hasattr(inst, "network"):
        flat = inst.flat if hasattr(inst, "flat") else inst
        bounds["nba"] = check_nba(flat)
    return {
        "schema": SCHEMA,
        "kind": "solution",
        "problem": problem,
        "algorithm": algo,
        "instance_hash": instance_hash(doc),
        "result": result,
        "bounds": {k: (rat(v) if isinstance(v, Fraction) else v) for k, v in bounds.items()},
    }


# --- verification --------------------------------------------------------------


def _selection(res):
    return MultisetSelection({int(i): int(f) for i, f in res["selection"]})


def check_solution(kind, inst, doc, sol):
    """None when the solution is valid for the instance, else a message."""
    if not isinstance(sol, dict) or sol.get("schema") != SCHEMA or sol.get("kind") != "solution":
        return "not a schema-1 solution document"
    if sol.get("instance_hash") != instance_hash(doc):
        return "solution belongs to a different instance"
    problem, res = sol.get("problem"), sol.get("result", {})
    try:
        if problem in ("round-ufp", "online"):
            col = Coloring(res["colors"])
            if len(col) != len(inst):
                return "one color per request expected"
            if col.num_colors != res["num_colors"]:
                return "num_colors does not match the colors"
            bad = verify_coloring(inst, col)
            if bad is not None:
                return f"color {bad.color} overloads edge {bad.edge} by {rat(bad.excess)}"
            if problem == "online":
                steps = [s for s, _ in res["transcript"]]
                if steps != list(range(1, len(inst) + 1)):
                    return "transcript is not one entry per arrival"
                if [c for _, c in res["transcript"]] != list(col.colors):
                    return "transcript disagrees with the final colors"
            return None
        if problem == "max-ufp":
            chosen = [int(i) for i in res["chosen"]]
            if len(set(chosen)) != len(chosen) or any(not 0 <= i < len(inst) for i in chosen):
                return "chosen indices are invalid"
            if not inst.is_feasible_set(chosen):
                return "chosen requests exceed a capacity"
            if Fraction(res["profit"]) != inst.total_profit(chosen):
                return "declared profit is wrong"
            return None
        if problem == "bag-ufp":
            choice = [tuple(int(v) for v in p) for p in res["choice"]]
            msg = verify_bag_choice(inst, choice)
            if msg:
                return msg
            if Fraction(res["profit"]) != inst.profit(choice):
                return "declared profit is wrong"
            return None
        if problem in ("resall", "presall", "pcresall"):
            sel = _selection(res)
            if any(not 0 <= i < len(inst.resources) for i in sel.counts):
                return "unknown resource index"
            if problem == "resall":
                covered = list(range(len(inst.jobs)))
            else:
                covered = [int(j) for j in res["covered"]]
                if len(set(covered)) != len(covered) or any(not 0 <= j < len(inst.jobs) for j in covered):
                    return "covered job indices are invalid"
            bad = verify_cover([inst.jobs[j] for j in covered], inst.resources, sel)
            if bad is not None:
                return f"edge {bad.edge} is short by {bad.deficit}"
            if problem == "presall":
                k = len(inst.jobs) if inst.k is None else inst.k
                if len(covered) < k:
                    return f"only {len(covered)} of {k} jobs covered"
                cost = sel.cost(inst.resources)
            elif problem == "pcresall":
                cost = pcresall_cost(inst.jobs, inst.resources, sel, covered)
            else:
                cost = sel.cost(inst.resources)
            if Fraction(res["cost"]) != cost:
                return "declared cost is wrong"
            return None
        if problem == "lspc":
            shorts = {int(e): int(j) for e, j in res["shorts"]}
            longs = {int(i): int(f) for i, f in res["longs"]}
            if any(not 0 <= j < len(inst.shorts) for j in shorts.values()):
                return "unknown short resource"
            if any(not 0 <= i < len(inst.longs) or f < 0 for i, f in longs.items()):
                return "unknown long resource"
            cov = {int(e): int(k) for e, k in res["coverage"]}
            return verify_lspc(inst, LspcSolution(Fraction(res["cost"]), shorts, longs, cov), "unrestricted")
    except (KeyError, TypeError, ValueError) as exc:
        return f"malformed solution: {exc}"
    return f"unknown problem {problem!r}"


# --- oracles ----------------------------------------------------------------------

ORACLES = ("round-ufp", "max-ufp", "bag-ufp", "disjoint-bag", "resall", "presall", "pcresall",
           "lspc", "lspc-unrestricted")


def run_oracle(problem, kind, inst, budget=None):
    """Exact value and witness as a JSON-ready dict."""
    budget = budget or default_budget()
    if problem == "round-ufp":
        k, col = exact_round_ufp(inst, budget)
        return {"value": k, "witness": list(col.colors)}
    if problem == "max-ufp":
        v, idx = exact_max_ufp(inst, budget)
        return {"value": rat(v), "witness": list(idx)}
    if problem in ("bag-ufp", "disjoint-bag"):
        fn = exact_bag_ufp if problem == "bag-ufp" else exact_disjoint_bag
        v, ch = fn(inst, budget)
        return {"value": rat(v), "witness": [list(p) for p in ch]}
    if problem == "resall":
        v, sel = exact_cover("full", inst, budget)
        return {"value": rat(v), "witness": _sel(sel)}
    if problem in ("presall", "pcresall"):
        if problem == "presall" and inst.k is None:
            raise InvalidInstance("presall needs k")
        v, sel, sub = exact_cover(problem, inst, budget)
        return {"value": rat(v), "witness": {"selection": _sel(sel), "covered": list(sub)}}
    if problem in ("lspc", "lspc-unrestricted"):
        v, sol = exact_cover(problem, inst, budget)
        return {"value": rat(v), "witness": {
            "shorts": [[e, j] for e, j in sorted(sol.shorts.items())],
            "longs": [[i, f] for i, f in sorted(sol.longs.items())],
        }}
    raise InvalidInstance(f"unknown oracle problem {problem!r}")


def budget_from(sec):
    return default_budget() if sec is None else OracleBudget(time_sec=float(sec))
