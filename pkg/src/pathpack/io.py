"""JSON documents for instances and solutions.

Every document carries ``"schema": 1``.  Rationals are written as "p/q"
(or "p" when integral) and read back exactly; decimal strings and plain
integers are accepted on input.
"""

import hashlib
import json
from fractions import Fraction

from .errors import InvalidInstance
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
    as_fraction,
)

SCHEMA = 1
KINDS = ("path-ufp", "tree-ufp", "bag-ufp", "resall", "presall", "pcresall", "lspc", "online-stream")


def rat(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def num(x):
    return as_fraction(x)


# --- encoding ----------------------------------------------------------------


def _req(r):
    return {"s": r.s, "t": r.t, "d": rat(r.d), "w": rat(r.w)}


def _res(r):
    return {"s": r.s, "t": r.t, "w": r.w, "c": rat(r.c)}


def _job(j):
    out = {"s": j.s, "t": j.t}
    if j.penalty is not None:
        out["penalty"] = rat(j.penalty)
    return out


def _network(net):
    if net.is_tree:
        return {
            "vertices": net.n,
            "edges": [[v, net.parent[v], rat(net.capacity(v))] for v in net.edges],
        }
    return {"capacities": [rat(c) for c in net.capacities]}


def encode_instance(kind, inst, provenance=None):
    """Instance object -> document dict."""
    if kind not in KINDS:
        raise InvalidInstance(f"unknown kind {kind!r}")
    if kind in ("path-ufp", "tree-ufp", "online-stream"):
        payload = dict(_network(inst.network))
        payload["requests"] = [_req(r) for r in inst.requests]
    elif kind == "bag-ufp":
        payload = dict(_network(inst.network))
        payload["bags"] = [
            {"profit": rat(p), "requests": [{"s": r.s, "t": r.t, "d": rat(r.d)} for r in b]}
            for b, p in zip(inst.bags, inst.profits)
        ]
    elif kind == "lspc":
        payload = {
            "demands": list(inst.demands),
            "shorts": [_res(r) for r in inst.shorts],
            "longs": [_res(r) for r in inst.longs],
            "k": inst.k,
        }
    else:
        payload = {"jobs": [_job(j) for j in inst.jobs], "resources": [_res(r) for r in inst.resources]}
        if inst.k is not None:
            payload["k"] = inst.k
    doc = {"schema": SCHEMA, "kind": kind, "payload": payload}
    if provenance:
        doc["provenance"] = provenance
    return doc


# --- decoding ----------------------------------------------------------------


def _check_schema(doc):
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise InvalidInstance("document lacks schema 1")


def _read_network(p):
    if "capacities" in p:
        return PathNetwork([num(c) for c in p["capacities"]])
    if "edges" in p:
        parent = {int(v): int(u) for v, u, _ in p["edges"]}
        caps = {int(v): num(c) for v, _, c in p["edges"]}
        return TreeNetwork(int(p["vertices"]), parent, caps)
    raise InvalidInstance("payload has no network")


def decode_instance(doc):
    """Document dict -> (kind, instance object)."""
    _check_schema(doc)
    kind = doc.get("kind")
    if kind not in KINDS:
        raise InvalidInstance(f"unknown kind {kind!r}")
    p = doc.get("payload")
    if not isinstance(p, dict):
        raise InvalidInstance("missing payload")
    try:
        if kind in ("path-ufp", "tree-ufp", "online-stream"):
            net = _read_network(p)
            if (kind == "tree-ufp") != net.is_tree:
                raise InvalidInstance(f"{kind} document has the wrong network type")
            reqs = [Request(int(r["s"]), int(r["t"]), num(r["d"]), num(r.get("w", 1))) for r in p["requests"]]
            return kind, UfpInstance(net, reqs)
        if kind == "bag-ufp":
            net = _read_network(p)
            bags = [[Request(int(r["s"]), int(r["t"]), num(r["d"])) for r in b["requests"]] for b in p["bags"]]
            return kind, BagInstance(net, bags, [num(b["profit"]) for b in p["bags"]])
        if kind == "lspc":
            sh = [Resource(int(r["s"]), int(r["t"]), int(r["w"]), num(r["c"])) for r in p["shorts"]]
            lg = [Resource(int(r["s"]), int(r["t"]), int(r["w"]), num(r["c"])) for r in p["longs"]]
            return kind, LspcInstance([int(d) for d in p["demands"]], sh, lg, int(p["k"]))
        jobs = [Job(int(j["s"]), int(j["t"]), num(j["penalty"]) if "penalty" in j else None) for j in p["jobs"]]
        res = [Resource(int(r["s"]), int(r["t"]), int(r["w"]), num(r["c"])) for r in p["resources"]]
        k = p.get("k")
        return kind, ResallInstance(jobs, res, None if k is None else int(k))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInstance):
            raise
        raise InvalidInstance(f"malformed {kind} payload: {exc}") from exc


# --- text --------------------------------------------------------------------


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"not JSON: {exc}") from exc


def read(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write(path, doc):
    text = dumps(doc)
    if path in (None, "-"):
        import sys

        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def instance_hash(doc):
    """sha256 of the canonical form of the instance part of a document."""
    core = {"schema": doc["schema"], "kind": doc["kind"], "payload": doc["payload"]}
    text = json.dumps(core, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()
