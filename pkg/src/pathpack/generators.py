"""Instance families: the analytic gap constructions and seeded random
families used by the tests, the CLI and the bench suite.

Every random generator takes a seed (or a random.Random) and is fully
deterministic given it.
"""

import random
from fractions import Fraction

from .model import (
    BagInstance,
    Job,
    LspcInstance,
    PathNetwork,
    Request,
    ResallInstance,
    Resource,
    TreeNetwork,
    UfpInstance,
)

F = Fraction
CAP_CHOICES = (F(1), F(3, 2), F(2), F(3), F(4), F(6), F(8))


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


# --- analytic families -----------------------------------------------------


def single_edge_large(k):
    """2k demands of 51/100 on one unit edge: congestion k+1, optimum 2k."""
    return UfpInstance(PathNetwork([1]), [Request(1, 2, F(51, 100))] * (2 * k))


def geometric_no_nba(n):
    """Capacities 2^(n-2), ..., 2, 1 on n-1 edges; the request from v_1 to
    v_j carries 2^(n-j) for j = 2..n.  Congestion 2, every pair conflicts."""
    caps = [2 ** (n - i - 1) for i in range(1, n)]
    reqs = [Request(1, j, 2 ** (n - j)) for j in range(2, n + 1)]
    return UfpInstance(PathNetwork(caps), reqs)


def lp_gap(n):
    """c(e_i) = 2^i, demand 2^i from v_i to v_{n+1}, unit profits."""
    caps = [2 ** i for i in range(1, n + 1)]
    reqs = [Request(i, n + 1, 2 ** i, 1) for i in range(1, n + 1)]
    return UfpInstance(PathNetwork(caps), reqs)


def nba_gap(eps=F(1, 1000), c=F(1)):
    """Two edges of capacity 2c and 3c; one request of 2c on the second
    edge and two requests of c + eps over both.  Unit profits."""
    eps, c = F(eps), F(c)
    reqs = [Request(2, 3, 2 * c), Request(1, 3, c + eps), Request(1, 3, c + eps)]
    return UfpInstance(PathNetwork([2 * c, 3 * c]), reqs)


# --- random packing families -----------------------------------------------


def _demand(rng, lo, hi, steps=20):
    """Random rational in (lo, hi] on a grid of ``steps`` points."""
    k = rng.randint(1, steps)
    return lo + (hi - lo) * F(k, steps)


def _path_request(rng, caps, kind, profits=True):
    m = len(caps)
    cmin = min(caps)
    s = rng.randint(1, m)
    t = rng.randint(s + 1, m + 1)
    b = min(caps[s - 1:t - 1])
    w = F(rng.randint(1, 9)) if profits else F(1)
    if kind == "unit":
        return Request(s, t, 1, w)
    if kind == "uniform":
        return Request(s, t, _demand(rng, F(0), cmin), w)
    if kind == "uniform-large":
        return Request(s, t, _demand(rng, cmin / 2, cmin), w)
    if kind == "uniform-small":
        return Request(s, t, _demand(rng, F(0), cmin / 2), w)
    want_large = kind == "large" or (kind == "mixed" and rng.random() < 0.5)
    if want_large and b / 4 < cmin:
        return Request(s, t, _demand(rng, b / 4, cmin), w)
    if kind == "large":
        # no large demand fits this span under NBA; use a minimum-capacity edge
        e = min(range(m), key=lambda j: (caps[j], j))
        return Request(e + 1, e + 2, _demand(rng, caps[e] / 4, cmin), w)
    return Request(s, t, _demand(rng, F(0), min(b / 4, cmin)), w)


def _path_caps(rng, m, kind):
    if kind.startswith("uniform"):
        return [rng.choice((F(1), F(2), F(3)))] * m
    if kind == "unit":
        return [F(rng.randint(1, 3)) for _ in range(m)]
    return [rng.choice(CAP_CHOICES) for _ in range(m)]


def random_path(seed, edges=(1, 8), requests=(1, 10), kind="mixed", profits=True):
    """Random NBA instance on a path.

    kind: 'mixed', 'small' (d <= b/4), 'large' (d > b/4), 'uniform' (one
    capacity for every edge, any demand up to it), 'uniform-large',
    'uniform-small' or 'unit' (integer capacities, unit demands).
    """
    rng = _rng(seed)
    m = rng.randint(*edges)
    n = rng.randint(*requests)
    caps = _path_caps(rng, m, kind)
    reqs = [_path_request(rng, caps, kind, profits) for _ in range(n)]
    return UfpInstance(PathNetwork(caps), reqs)


def random_tree(seed, vertices=(2, 8), requests=(1, 8), kind="mixed", profits=True):
    """Random NBA instance on a random rooted tree (parent of v drawn from 1..v-1)."""
    rng = _rng(seed)
    n = rng.randint(*vertices)
    parent = {v: rng.randint(1, v - 1) for v in range(2, n + 1)}
    if kind == "unit":
        caps = {v: F(rng.randint(1, 3)) for v in range(2, n + 1)}
    else:
        caps = {v: rng.choice(CAP_CHOICES) for v in range(2, n + 1)}
    net = TreeNetwork(n, parent, caps)
    cmin = net.c_min
    reqs = []
    for _ in range(rng.randint(*requests)):
        s, t = rng.sample(range(1, n + 1), 2)
        route = net.route(s, t)
        b = min(caps[e] for e in route)
        w = F(rng.randint(1, 9)) if profits else F(1)
        if kind == "unit":
            d = F(1)
        else:
            can_large = b / 4 < cmin
            want_large = kind == "large" or (kind == "mixed" and rng.random() < 0.5)
            if want_large and can_large:
                d = _demand(rng, b / 4, cmin)
            else:
                d = _demand(rng, F(0), min(b / 4, cmin))
        reqs.append(Request(s, t, d, w))
    return UfpInstance(net, reqs)


def random_bags(seed, edges=(1, 6), bags=(1, 5), per_bag=(1, 3), kind="mixed", max_requests=12):
    """Random NBA bag instance on a path."""
    rng = _rng(seed)
    m = rng.randint(*edges)
    caps = _path_caps(rng, m, kind)
    out, profits = [], []
    total = 0
    for _ in range(rng.randint(*bags)):
        size = min(rng.randint(*per_bag), max_requests - total)
        if size <= 0:
            break
        out.append([_path_request(rng, caps, kind) for _ in range(size)])
        profits.append(F(rng.randint(1, 9)))
        total += size
    return BagInstance(PathNetwork(caps), out, profits)


# --- online streams --------------------------------------------------------


def random_stream(seed, edges=(1, 8), requests=(1, 30), demand_kind="mixed"):
    """A random NBA request stream on a path with arbitrary capacities."""
    rng = _rng(seed)
    m = rng.randint(*edges)
    caps = [rng.choice(CAP_CHOICES + (F(5, 4), F(16), F(12))) for _ in range(m)]
    net = PathNetwork(caps)
    cmin = min(caps)
    reqs = []
    for _ in range(rng.randint(*requests)):
        s = rng.randint(1, m)
        t = rng.randint(s + 1, m + 1)
        if demand_kind == "small":
            d = _demand(rng, F(0), cmin / 4)
        elif demand_kind == "tiny":
            d = _demand(rng, F(0), cmin / 16)
        else:
            d = _demand(rng, F(0), cmin)
        reqs.append(Request(s, t, d))
    return UfpInstance(net, reqs)


def adversarial_stream(seed, edges=(3, 8), requests=(8, 30)):
    """Streams that feed nested and staircase intervals in orders known to
    hurt first-fit: short intervals first, then long ones bridging them."""
    rng = _rng(seed)
    m = rng.randint(*edges)
    cmin = F(1)
    caps = [rng.choice((F(1), F(2), F(4), F(8))) for _ in range(m)]
    caps[rng.randrange(m)] = cmin
    net = PathNetwork(caps)
    n = rng.randint(*requests)
    reqs = []
    pattern = rng.choice(("staircase", "nested", "bridge"))
    for k in range(n):
        if pattern == "staircase":
            s = 1 + k % m
            t = min(m + 1, s + 1 + (k // m) % 2)
        elif pattern == "nested":
            width = max(1, m - k % m)
            s = 1 + (m - width) // 2
            t = s + width
        else:
            if k < n // 2:
                s = 1 + 2 * (k % ((m + 1) // 2))
                s = min(s, m)
                t = s + 1
            else:
                s = 1
                t = m + 1
        d = rng.choice((F(1, 5), F(1, 4), F(26, 100), F(1, 2), F(51, 100), F(3, 4), F(1)))
        reqs.append(Request(s, t, min(d, cmin)))
    return UfpInstance(net, reqs)


def small_level_trace():
    """Four requests of 1/4 on one unit edge: levels 1, 2, 3, 4."""
    return UfpInstance(PathNetwork([1]), [Request(1, 2, F(1, 4))] * 4)


# --- covering families -----------------------------------------------------


def random_resall(seed, edges=(2, 8), jobs=(1, 6), resources=(1, 6), penalties=False, k=None):
    """Random jobs plus resources; a resource spanning the whole range is
    always added so every job profile is coverable."""
    rng = _rng(seed)
    m = rng.randint(*edges)
    js = []
    for _ in range(rng.randint(*jobs)):
        s = rng.randint(1, m)
        t = rng.randint(s + 1, m + 1)
        js.append(Job(s, t, F(rng.randint(0, 8)) if penalties else None))
    rs = [Resource(1, m + 1, rng.randint(1, 2), F(rng.randint(4, 12)))]
    for _ in range(rng.randint(*resources) - 1):
        s = rng.randint(1, m)
        t = rng.randint(s + 1, m + 1)
        rs.append(Resource(s, t, rng.randint(1, 3), F(rng.randint(1, 9))))
    kk = None
    if k == "random":
        kk = rng.randint(0, len(js))
    elif k is not None:
        kk = min(k, len(js))
    return ResallInstance(js, rs, kk)


def mountain_jobs(seed, edges=(3, 10), jobs=(1, 8), resources=(1, 6), k="random"):
    """Jobs sharing a common peak edge (a single mountain) plus resources."""
    rng = _rng(seed)
    m = rng.randint(*edges)
    peak = rng.randint(1, m)
    js = []
    for _ in range(rng.randint(*jobs)):
        s = rng.randint(1, peak)
        t = rng.randint(peak + 1, m + 1)
        js.append(Job(s, t))
    rs = [Resource(1, m + 1, rng.randint(1, 2), F(rng.randint(4, 12)))]
    for _ in range(rng.randint(*resources) - 1):
        s = rng.randint(1, m)
        t = rng.randint(s + 1, m + 1)
        rs.append(Resource(s, t, rng.randint(1, 3), F(rng.randint(1, 9))))
    kk = rng.randint(0, len(js)) if k == "random" else k
    return ResallInstance(js, rs, kk)


def random_lspc(seed, edges=(1, 6), max_demand=3, shorts=(0, 6), longs=(0, 3)):
    rng = _rng(seed)
    E = rng.randint(*edges)
    demands = [rng.randint(0, max_demand) for _ in range(E)]
    if not any(demands):
        demands[rng.randrange(E)] = 1
    sh = []
    for _ in range(rng.randint(*shorts)):
        e = rng.randint(1, E)
        sh.append(Resource(e, e + 1, rng.randint(1, max_demand), F(rng.randint(1, 6))))
    lg = []
    for _ in range(rng.randint(*longs)):
        s = rng.randint(1, E)
        t = rng.randint(s + 1, E + 1)
        lg.append(Resource(s, t, rng.randint(1, max_demand), F(rng.randint(1, 9))))
    # a whole-path long resource keeps every k reachable
    lg.append(Resource(1, E + 1, 1, F(rng.randint(3, 12))))
    k = rng.randint(0, sum(demands))
    return LspcInstance(demands, sh, lg, k)
