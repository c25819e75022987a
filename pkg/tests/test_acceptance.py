"""Acceptance criteria, one test per criterion.

Every test prints a single ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line (run with ``-s`` to see them) and fails when the criterion does not hold.
Seeds are fixed ranges so the instance counts are exact.
"""
from fractions import Fraction as F
import math
import random
import subprocess
import sys

import pytest

from pathpack import dispatch, generators as gen
from pathpack import io as docs
from pathpack.errors import UncoverableError
from pathpack.lp import convex_decompose, snap_to_grid, solve_ufp_lp
from pathpack.max_bag import (
    bag_disjoint_select, bag_small_branch, bag_ufp_path, max_ufp_large, max_ufp_path, max_ufp_tree,
    small_branch,
)
from pathpack.model import Job, Resource, check_nba, verify_bag_choice, verify_coloring, verify_cover, verify_lspc
from pathpack.online import LevelAssigner, OnlineColorer, assign_small_uniform
from pathpack.oracle import (
    exact_bag_ufp, exact_disjoint_bag, exact_lspc, exact_max_ufp, exact_pcresall, exact_presall,
    exact_round_ufp,
)
from pathpack.resall import (
    INF, LspcTables, compress, lspc_solve, mountain_decompose, pcresall_cost, pcresall_solve,
    presall_solve, reduce_range_to_lspc, single_mountain_partial,
)
from pathpack.round_path import (
    color_large_arbitrary, color_large_uniform, color_small_arbitrary, color_unit_path, is_large,
    round_ufp_path, round_ufp_uniform,
)
from pathpack.round_tree import color_unit_tree, round_ufp_tree

pytestmark = pytest.mark.acceptance

BAND_BUDGET = {
    (0, "quarter-half"): 3, (0, "half-one"): 3,
    (1, "eighth-quarter"): 4, (1, "quarter-half"): 3,
    (2, "quarter-half"): 3,
}


class Tally:
    """Collects failed sub-checks for one criterion."""

    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.failures = []
        self.counts = {}

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)

    def count(self, key, n=1):
        self.counts[key] = self.counts.get(key, 0) + n

    def finish(self):
        counts = ", ".join(f"{k}={v}" for k, v in self.counts.items())
        head = f"criterion {self.number}: {self.title}"
        if counts:
            head += f" [{counts}]"
        if self.failures:
            shown = "; ".join(self.failures[:5])
            more = f" (+{len(self.failures) - 5} more)" if len(self.failures) > 5 else ""
            print(f"FAIL {head}: {shown}{more}")
        else:
            print(f"PASS {head}")
        assert not self.failures, f"criterion {self.number}: " + "; ".join(self.failures[:5])


def test_criterion_01_lp_gap():
    t = Tally(1, "lp-gap LP = n/2 and exact_max_ufp = 1")
    for n in (2, 4, 6, 8, 10):
        inst = gen.lp_gap(n)
        lp = solve_ufp_lp(inst).value
        t.check(lp == F(n, 2), f"n={n}: LP={lp} expected {F(n, 2)}")
        opt = exact_max_ufp(inst)[0]
        t.check(opt == 1, f"n={n}: OPT={opt}")
        t.count("n")
    t.finish()


def test_criterion_02_nba_gap():
    t = Tally(2, "nba-gap LP/IP in [2.49, 2.50] and IP = 1")
    inst = gen.nba_gap(F(1, 1000))
    lp = solve_ufp_lp(inst).value
    ip = exact_max_ufp(inst)[0]
    t.check(ip == 1, f"IP={ip}")
    ratio = lp / ip if ip else None
    t.check(ratio is not None and F(249, 100) <= ratio <= F(5, 2), f"LP/IP={ratio}")
    t.finish()


def test_criterion_03_congestion_gaps():
    t = Tally(3, "single-edge-large and geometric-no-nba congestion gaps")
    for k in range(1, 5):
        inst = gen.single_edge_large(k)
        opt = exact_round_ufp(inst)[0]
        t.check(opt == 2 * k, f"single-edge k={k}: oracle={opt}")
        t.check(inst.congestion == k + 1, f"single-edge k={k}: r={inst.congestion}")
    for n in range(3, 7):
        inst = gen.geometric_no_nba(n)
        opt = exact_round_ufp(inst)[0]
        t.check(inst.congestion == 2, f"geometric n={n}: r={inst.congestion}")
        t.check(opt == n - 1, f"geometric n={n}: oracle={opt}")
        t.check(check_nba(inst) is False, f"geometric n={n}: check_nba true")
    t.finish()


def test_criterion_04_round_path():
    t = Tally(4, "Round-UFP on paths")
    for seed in range(200):
        inst = gen.random_path(seed, requests=(1, 9))
        t.count("mixed")
        col = round_ufp_path(inst)
        t.check(verify_coloring(inst, col) is None, f"seed {seed}: invalid coloring")
        opt = exact_round_ufp(inst)[0]
        t.check(col.num_colors <= 24 * opt, f"seed {seed}: {col.num_colors} > 24*{opt}")
        large = [i for i in range(len(inst)) if is_large(inst, i)]
        small = [i for i in range(len(inst)) if not is_large(inst, i)]
        if large:
            sub = inst.subset(large)
            c = color_large_arbitrary(sub)
            t.check(verify_coloring(sub, c) is None, f"seed {seed}: invalid large coloring")
            t.check(c.num_colors <= 8 * sub.congestion, f"seed {seed}: large {c.num_colors} > 8r")
        if small:
            sub = inst.subset(small)
            c = color_small_arbitrary(sub)
            t.check(verify_coloring(sub, c) is None, f"seed {seed}: invalid small coloring")
            t.check(c.num_colors <= 16 * sub.congestion, f"seed {seed}: small {c.num_colors} > 16r")

        uni = gen.random_path(seed, kind="uniform", requests=(1, 9))
        t.count("uniform")
        col = round_ufp_uniform(uni)
        t.check(verify_coloring(uni, col) is None, f"uniform seed {seed}: invalid coloring")
        opt = exact_round_ufp(uni)[0]
        t.check(col.num_colors <= min(3 * opt, 4 * uni.congestion - 1),
                f"uniform seed {seed}: {col.num_colors} vs oracle {opt}, r {uni.congestion}")

        big = gen.random_path(seed, kind="uniform-large", requests=(1, 10))
        t.count("large-uniform")
        col = color_large_uniform(big)
        t.check(verify_coloring(big, col) is None, f"large-uniform seed {seed}: invalid coloring")
        t.check(col.num_colors == exact_round_ufp(big)[0], f"large-uniform seed {seed}: not optimal")

        unit = gen.random_path(seed, kind="unit", edges=(1, 10), requests=(1, 12))
        t.count("unit")
        col = color_unit_path(unit)
        t.check(verify_coloring(unit, col) is None, f"unit seed {seed}: invalid coloring")
        t.check(col.num_colors == unit.congestion, f"unit seed {seed}: {col.num_colors} != r")
    t.finish()


def test_criterion_05_round_tree():
    t = Tally(5, "Round-UFP on trees")
    for seed in range(100):
        inst = gen.random_tree(seed, requests=(1, 8))
        t.count("trees")
        col = round_ufp_tree(inst)
        t.check(verify_coloring(inst, col) is None, f"seed {seed}: invalid coloring")
        opt = exact_round_ufp(inst)[0]
        t.check(col.num_colors <= 64 * opt, f"seed {seed}: {col.num_colors} > 64*{opt}")
        unit = gen.random_tree(seed, kind="unit", requests=(1, 8))
        t.count("unit")
        col = color_unit_tree(unit)
        t.check(verify_coloring(unit, col) is None, f"unit seed {seed}: invalid coloring")
        t.check(col.num_colors <= 4 * unit.congestion, f"unit seed {seed}: {col.num_colors} > 4r")
    t.finish()


def test_criterion_06_max_ufp():
    t = Tally(6, "Max-UFP")
    for seed in range(100):
        inst = gen.random_path(seed, requests=(1, 10))
        t.count("paths")
        got = max_ufp_path(inst)
        t.check(inst.is_feasible_set(got), f"seed {seed}: infeasible set")
        opt = exact_max_ufp(inst)[0]
        t.check(17 * inst.total_profit(got) >= opt, f"seed {seed}: profit {inst.total_profit(got)} < {opt}/17")
        large = [i for i in range(len(inst)) if is_large(inst, i)]
        if large:
            sub = inst.subset(large)
            t.check(sub.total_profit(max_ufp_large(sub)) == exact_max_ufp(sub)[0],
                    f"seed {seed}: large branch not optimal")
        small = [i for i in range(len(inst)) if not is_large(inst, i)]
        if small:
            sub = inst.subset(small)
            pick, lp, snapped, dec = small_branch(sub)
            t.check(sub.is_feasible_set(pick), f"seed {seed}: small branch infeasible")
            t.check(16 * sub.total_profit(pick) >= lp.value,
                    f"seed {seed}: small {sub.total_profit(pick)} < LP {lp.value}/16")
            sol = snap_to_grid(solve_ufp_lp(sub), len(sub))
            mult = convex_decompose(sub, sol).multiplicity()
            t.check(all(mult.get(i, 0) == a for i, a in enumerate(sol.alpha)),
                    f"seed {seed}: multiplicity not conserved")
        tree = gen.random_tree(seed, requests=(1, 8))
        t.count("trees")
        got = max_ufp_tree(tree)
        t.check(tree.is_feasible_set(got), f"tree seed {seed}: infeasible set")
        t.check(64 * tree.total_profit(got) >= exact_max_ufp(tree)[0], f"tree seed {seed}: below oracle/64")
    t.finish()


def test_criterion_07_bag_ufp():
    t = Tally(7, "Bag-UFP")
    for seed in range(100):
        inst = gen.random_bags(seed)
        t.count("bags")
        choice = bag_ufp_path(inst)
        t.check(verify_bag_choice(inst, choice) is None, f"seed {seed}: invalid choice")
        bags = [j for j, _ in choice]
        t.check(len(bags) == len(set(bags)), f"seed {seed}: bag used twice")
        opt = exact_bag_ufp(inst)[0]
        t.check(65 * inst.profit(choice) >= opt, f"seed {seed}: {inst.profit(choice)} < {opt}/65")
        _, _, _, solutions = bag_small_branch(gen.random_bags(seed, kind="small"))
        for sol in solutions:
            bags = [j for j, _ in sol]
            t.check(len(bags) == len(set(bags)), f"seed {seed}: decomposed solution repeats a bag")

        six = gen.random_bags(seed, bags=(1, 6))
        t.count("disjoint")
        choice = bag_disjoint_select(six)
        reqs = [six.bags[j][r] for j, r in choice]
        t.check(all(max(a.s, b.s) >= min(a.t, b.t) for i, a in enumerate(reqs) for b in reqs[i + 1:]),
                f"disjoint seed {seed}: spans overlap")
        t.check(2 * six.profit(choice) >= exact_disjoint_bag(six)[0], f"disjoint seed {seed}: below half")
    t.finish()


def _stream(t, inst, tag):
    state = OnlineColorer(inst.network)
    for r in inst.requests:
        before = list(state.colors)
        state.push(r)
        t.check(state.colors[:-1] == before, f"{tag}: recolored")
        t.check(state.verify() is None, f"{tag}: prefix does not verify")
        cong = state.instance().congestion
        t.check(state.num_colors <= 58 * cong, f"{tag}: {state.num_colors} > 58*{cong}")
    t.check([c for _, _, c in state.transcript] == state.colors, f"{tag}: transcript differs")
    for (cl, band), k in state.band_colors().items():
        t.check(k <= BAND_BUDGET[cl, band] * state.class_congestion(cl), f"{tag}: band {cl},{band} over")


def test_criterion_08_online():
    t = Tally(8, "online coloring")
    for seed in range(100):
        _stream(t, gen.random_stream(seed), f"random {seed}")
        _stream(t, gen.adversarial_stream(seed), f"adversarial {seed}")
        t.count("streams", 2)

    alg = LevelAssigner()
    trace = gen.small_level_trace()
    levels = [assign_small_uniform(alg, [1], r.d) for r in trace.requests]
    t.check(levels == [1, 2, 3, 4], f"4-demand trace gave levels {levels}")

    # the level assigner alone on small uniform-capacity demands stays within 4r
    for seed in range(100):
        rng = random.Random(seed)
        m = rng.randint(1, 8)
        load = [F(0)] * (m + 1)
        alg = LevelAssigner()
        for _ in range(rng.randint(1, 30)):
            s = rng.randint(1, m)
            e = rng.randint(s, m)
            d = F(1, 2 ** rng.randint(2, 5))
            assign_small_uniform(alg, list(range(s, e + 1)), d)
            for x in range(s, e + 1):
                load[x] += d
        r = max(math.ceil(v) for v in load[1:])
        t.check(alg.num_levels <= 4 * r, f"level seed {seed}: {alg.num_levels} > 4*{r}")
        t.count("level-runs")
    t.finish()


def test_criterion_09_lspc():
    t = Tally(9, "LSPC dynamic program")
    for seed in range(100):
        inst = gen.random_lspc(seed)
        t.count("instances")
        tables = LspcTables(inst)
        bad = tables.check_invariants()
        t.check(bad == [], f"seed {seed}: {bad[:1]}")
        try:
            slra = exact_lspc(inst, "slra")[0]
        except UncoverableError:
            t.check(tables.cost() is INF, f"seed {seed}: DP covers an uncoverable instance")
            continue
        sol = lspc_solve(inst)
        t.check(verify_lspc(inst, sol) is None, f"seed {seed}: invalid solution")
        t.check(sol.cost == slra, f"seed {seed}: DP {sol.cost} != SLRA {slra}")
        t.check(sol.cost <= 16 * exact_lspc(inst, "unrestricted")[0], f"seed {seed}: over 16x unrestricted")
    t.finish()


def _tiling(seed):
    rng = random.Random(seed)
    m = rng.randint(6, 14)
    jobs = []
    for _ in range(rng.randint(2, 8)):
        s = rng.randint(1, m - 1)
        jobs.append(Job(s, min(m + 1, s + rng.randint(1, 2))))
    res = [Resource(1, m + 1, 1, rng.randint(4, 12))]
    for _ in range(rng.randint(1, 6)):
        s = rng.randint(1, m)
        res.append(Resource(s, rng.randint(s + 1, m + 1), rng.randint(1, 2), rng.randint(1, 9)))
    return jobs, res


def test_criterion_10_partial_covers():
    t = Tally(10, "PResAll and PCResAll")
    worst = F(0)
    for seed in range(100):
        inst = gen.mountain_jobs(seed)
        t.count("single-mountain")
        sel, cov = single_mountain_partial(inst.jobs, inst.resources, inst.k)
        t.check(len(cov) == inst.k, f"mountain seed {seed}: covered {len(cov)} < {inst.k}")
        t.check(verify_cover([inst.jobs[j] for j in cov], inst.resources, sel) is None,
                f"mountain seed {seed}: invalid cover")
        opt = exact_presall(inst.jobs, inst.resources, inst.k)[0]
        t.check(sel.cost(inst.resources) <= 8 * opt, f"mountain seed {seed}: over 8x")

        inst = gen.random_resall(seed, k="random")
        t.count("presall")
        info = {}
        sel, cov = presall_solve(inst.jobs, inst.resources, inst.k, info)
        t.check(len(cov) >= inst.k, f"presall seed {seed}: too few covered")
        t.check(verify_cover([inst.jobs[j] for j in cov], inst.resources, sel) is None,
                f"presall seed {seed}: invalid cover")
        opt = exact_presall(inst.jobs, inst.resources, inst.k)[0]
        cost = sel.cost(inst.resources)
        t.check(cost >= opt, f"presall seed {seed}: cost below oracle")
        if opt:
            worst = max(worst, F(cost) / opt)
        lengths = [j.length for j in inst.jobs]
        cap = 4 * max(1, math.ceil(math.log2(max(lengths) / min(lengths))))
        t.check(len(mountain_decompose(inst.jobs)) <= cap, f"presall seed {seed}: L over {cap}")

        inst = gen.random_resall(seed, penalties=True)
        t.count("pcresall")
        sel, covered = pcresall_solve(inst.jobs, inst.resources)
        t.check(verify_cover([inst.jobs[j] for j in covered], inst.resources, sel) is None,
                f"pcresall seed {seed}: invalid cover")
        cost = pcresall_cost(inst.jobs, inst.resources, sel, covered)
        opt = exact_pcresall(inst.jobs, inst.resources)[0]
        t.check(opt <= cost <= 4 * opt, f"pcresall seed {seed}: {cost} vs oracle {opt}")

        jobs, res = _tiling(seed)
        cj, cr, _ = compress(jobs, res)
        for mr in mountain_decompose(cj):
            t.count("round-trips")
            red, back = reduce_range_to_lspc(cj, mr, cr)
            tables = LspcTables(red)
            for q in range(red.k + 1):
                if tables.cost(q) is INF:
                    continue
                sel, cov = back.rehydrate(tables.solution(q))
                t.check(sel.cost(cr) <= tables.cost(q) and len(cov) >= q,
                        f"tiling seed {seed}: round trip raised the cost")
    print(f"presall worst observed ratio {worst} ({float(worst):.3g})")
    t.finish()


def _run(*args):
    subprocess.run([sys.executable, "-m", "pathpack.cli", *map(str, args)], capture_output=True, check=True)


def test_criterion_11_determinism(tmp_path):
    t = Tally(11, "identical seeds give byte-identical documents")
    for (problem, algo), (family, params) in sorted(MATRIX.items()):
        for seed in (0, 7):
            a = dispatch.generate(family, seed, params)
            b = dispatch.generate(family, seed, params)
            t.check(docs.dumps(a[2]) == docs.dumps(b[2]), f"{family} seed {seed}: instance differs")
            sa = dispatch.solve(problem, algo, *a)
            sb = dispatch.solve(problem, algo, *b)
            t.check(docs.dumps(sa) == docs.dumps(sb), f"{problem}/{algo} seed {seed}: solution differs")
            t.count("pairs")
    # across two separate processes
    for family, problem in (("random-tree", "round-ufp"), ("stream-random", "online"), ("presall-random", "presall")):
        runs = []
        for run in range(2):
            inst, sol = tmp_path / f"{family}-{run}.json", tmp_path / f"{family}-{run}.sol.json"
            _run("gen", "--family", family, "--seed", 3, "-o", inst)
            _run("solve", problem, "-i", inst, "-o", sol)
            runs.append((inst.read_bytes(), sol.read_bytes()))
        t.check(runs[0] == runs[1], f"{family}: process runs differ")
        t.count("process-pairs")
    t.finish()


MATRIX = {
    ("round-ufp", "path"): ("random-nba-path", {}),
    ("round-ufp", "tree"): ("random-tree", {}),
    ("max-ufp", "path"): ("random-nba-path", {}),
    ("bag-ufp", "path"): ("bag-random", {}),
    ("online", "bands"): ("stream-adversarial", {}),
    ("resall", "local-ratio"): ("resall-random", {}),
    ("presall", "mountains"): ("presall-random", {}),
    ("pcresall", "smfc"): ("pcresall-random", {}),
    ("lspc", "dp"): ("lspc-random", {}),
}
