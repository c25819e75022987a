"""Online interval coloring with capacities (Round-UFP, requests arrive one
at a time and are never recolored).

Capacities are scaled so c_min = 1 and rounded down to powers of two (c^).
A request's class is log2 of the smallest c^ on its span.  Small requests
of every class run the level algorithm on their own unit-capacity copy of
the path and share one color pool.  Large requests exist only in classes
0, 1 and 2; each class lives on the path restricted to its own edges
(c^ = 2^l) and is split into demand bands with their own colorers.
Classes 0 and 2 share a pool, class 1 has its own.
"""

from fractions import Fraction
import math

from .errors import NBAViolation
from .model import Coloring, Request, UfpInstance, edge_class, verify_coloring

F = Fraction


class LevelAssigner:
    """Levels for demands of at most 1/4 on unit capacity: a request goes to
    the smallest level k such that the total load of levels 1..k plus the
    request stays within k/4 on each of its edges."""

    def __init__(self):
        self.levels = []  # per level: edge -> load

    def _cum(self, k, e):
        return sum((lv.get(e, 0) for lv in self.levels[:k]), F(0))

    def assign(self, edges, d):
        """Returns (level, witnesses); witnesses lists (level, edge) for
        every lower level the request was turned away from."""
        witnesses = []
        k = 1
        while True:
            if k > len(self.levels):
                self.levels.append({})
            bad = next((e for e in edges if self._cum(k, e) + d > F(k, 4)), None)
            if bad is None:
                break
            witnesses.append((k, bad))
            k += 1
        for e in edges:
            self.levels[k - 1][e] = self.levels[k - 1].get(e, 0) + d
        return k, witnesses

    @property
    def num_levels(self):
        return len(self.levels)


def assign_small_uniform(assigner, edges, d):
    """One step of the level algorithm; returns the level."""
    if d > F(1, 4):
        raise ValueError("level algorithm needs demands of at most 1/4")
    return assigner.assign(edges, d)[0]


class KiersteadTrotter:
    """Online coloring of intervals that may not overlap within a color.

    A new interval goes to the smallest level p such that the intervals of
    levels 0..p plus itself overlap at most p+1 deep.  Level 0 needs one
    color; each higher level induces paths and is first-fit colored from
    its own three colors, so at most 3w - 2 colors for overlap depth w.
    """

    def __init__(self):
        self.items = []  # (edges, level, color within level)

    def assign(self, edges):
        edges = frozenset(edges)
        p = 0
        while True:
            depth = max(
                (sum(1 for es, lv, _ in self.items if lv <= p and e in es) for e in edges),
                default=0,
            )
            if depth + 1 <= p + 1:
                break
            p += 1
        if p == 0:
            self.items.append((edges, 0, 1))
            return 1
        taken = {c for es, lv, c in self.items if lv == p and es & edges}
        c = next((c for c in (1, 2, 3) if c not in taken), None)
        if c is None:
            raise AssertionError("a level needed a fourth color")
        self.items.append((edges, p, c))
        return 1 + 3 * (p - 1) + c


class OnlineColorer:
    """State machine: feed requests with :meth:`push`, read colors back."""

    def __init__(self, network):
        if network.is_tree:
            raise ValueError("online coloring works on paths")
        self.network = network
        self.cmin = network.c_min
        self.chat = {e: F(2) ** edge_class(network.capacity(e) / self.cmin) for e in network.edges}
        self.small = {}
        self.large = {}
        self.registry = {}
        self.requests = []
        self.colors = []
        self.tags = []
        self.info = []
        self.transcript = []

    # classification -------------------------------------------------

    def classify(self, req):
        """(class, 'small' | 'large') of a request."""
        req = req.normalized()
        d = req.d / self.cmin
        if d > 1:
            raise NBAViolation(req.d, self.cmin)
        route = self.network.route(req.s, req.t)
        l = edge_class(min(self.chat[e] for e in route))
        if l == 0:
            small = d <= F(1, 4)
        else:
            small = d <= min(F(1), F(2) ** (l - 3))
        return l, "small" if small else "large"

    # assignment -----------------------------------------------------

    def _global(self, tag):
        if tag not in self.registry:
            self.registry[tag] = len(self.registry) + 1
        return self.registry[tag]

    def _assign_small(self, l, route, d):
        # class l runs on capacity 1 (l = 0) or 2^(l-1); scale to unit capacity
        cap = F(1) if l == 0 else F(2) ** (l - 1)
        alg = self.small.setdefault(l, LevelAssigner())
        level, wit = alg.assign(route, d / cap)
        return ("S", level), {"class": l, "kind": "small", "level": level, "witnesses": wit}

    def _band(self, key, factory):
        if key not in self.large:
            self.large[key] = factory()
        return self.large[key]

    def _assign_large(self, l, route, d):
        edges = [e for e in route if self.chat[e] == F(2) ** l]
        if l == 0:
            if d <= F(1, 2):
                c = self._band((0, "quarter-half"), KiersteadTrotter).assign(edges)
                band, local = "quarter-half", (c + 1) // 2
                tag = ("A", 2 * local - 1)
            else:
                c = self._band((0, "half-one"), KiersteadTrotter).assign(edges)
                band, local = "half-one", c
                tag = ("A", 2 * local)
        elif l == 1:
            x = d / 2
            if x <= F(1, 4):
                local, _ = self._band((1, "eighth-quarter"), LevelAssigner).assign(edges, x)
                band = "eighth-quarter"
                tag = ("B", 2 * local - 1)
            else:
                c = self._band((1, "quarter-half"), KiersteadTrotter).assign(edges)
                band, local = "quarter-half", (c + 1) // 2
                tag = ("B", 2 * local)
        elif l == 2:
            # capacity 4 halved to 2, then scaled to 1: demands land in (1/4, 1/2]
            c = self._band((2, "quarter-half"), KiersteadTrotter).assign(edges)
            band, local = "quarter-half", (c + 1) // 2
            tag = ("A", local)
        else:
            raise AssertionError("large demand above class 2")
        return tag, {"class": l, "kind": "large", "band": band, "band_color": local}

    def push(self, req):
        """Color the next request; the color is final."""
        if not isinstance(req, Request):
            req = Request(*req)
        req = req.normalized()
        l, kind = self.classify(req)
        route = self.network.route(req.s, req.t)
        d = req.d / self.cmin
        if kind == "small":
            tag, info = self._assign_small(l, route, d)
        else:
            tag, info = self._assign_large(l, route, d)
        color = self._global(tag)
        self.requests.append(req)
        self.colors.append(color)
        self.tags.append(tag)
        self.info.append(info)
        self.transcript.append((len(self.requests), req, color))
        return color

    # read-out -------------------------------------------------------

    @property
    def num_colors(self):
        return len(self.registry)

    def instance(self):
        return UfpInstance(self.network, self.requests)

    def coloring(self):
        return Coloring(self.colors) if self.colors else Coloring([])

    def verify(self):
        return verify_coloring(self.instance(), self.coloring())

    def pool_sizes(self):
        """Colors used by the small pool and by the large pools."""
        small = sum(1 for t in self.registry if t[0] == "S")
        return small, len(self.registry) - small

    def band_colors(self):
        """(class, band) -> number of distinct band colors used."""
        out = {}
        for info in self.info:
            if info["kind"] == "large":
                key = (info["class"], info["band"])
                out.setdefault(key, set()).add(info["band_color"])
        return {k: len(v) for k, v in out.items()}

    def class_congestion(self, l):
        """Congestion of the large class-l requests on the class-l edges
        with capacities 1, 2, 2 for l = 0, 1, 2 (after scaling c_min to 1)."""
        cap = {0: F(1), 1: F(2), 2: F(2)}[l]
        load = {}
        for req, info in zip(self.requests, self.info):
            if info["kind"] == "large" and info["class"] == l:
                for e in self.network.route(req.s, req.t):
                    if self.chat[e] == F(2) ** l:
                        load[e] = load.get(e, 0) + req.d / self.cmin
        return max((math.ceil(v / cap) for v in load.values()), default=0)


def classify_online(state, req):
    return state.classify(req)


def online_color(state, req):
    return state.push(req)


def run_stream(network, requests):
    """Feed a whole stream; returns the final state."""
    st = OnlineColorer(network)
    for r in requests:
        st.push(r)
    return st
