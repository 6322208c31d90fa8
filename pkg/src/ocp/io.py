"""JSON documents for instances, coverings, 3-Partition instances and reduction maps.

Every document is a JSON object with a ``format_version`` key.  The canonical
serialization sorts object keys, keeps list order as declared, indents by two
spaces and ends with a newline, so equal objects give byte-identical files.

Instance (``.ocp``)::

    {
      "budget": "292",                      # optional; or [8, 5, 2, 2] = sum of 2**e
      "edges": [{"elements": ["s1", "s2"], "id": "E1"}, ...],
      "extra_elements": [{"id": "omega_1_1", "val": 11}, ...],
      "format_version": 1,
      "labels": [{"id": "s1", "val": 4}, ...],
      "uncoverable": true                   # optional; only for reductions with no triplet
    }

Covering (``.cov``): ``{"format_version": 1, "instance": "testB.ocp", "sequence": ["E4", ...]}``

3-Partition (``.3p``): ``{"B": 9, "a": [3, 3, 3], "format_version": 1, "m": 1}``
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import Covering, Edge, Element, OcpInstance
from .cost import BigCost
from .errors import InstanceError, ParseError
from .reduction import Partition3, ReductionMap, ThreePartitionInstance

__all__ = [
    "FORMAT_VERSION",
    "parse_instance",
    "serialize_instance",
    "parse_covering",
    "serialize_covering",
    "parse_3p",
    "serialize_3p",
    "parse_map",
    "serialize_map",
    "parse_partition",
    "serialize_partition",
    "parse_budget",
    "load_fixture",
    "fixture_text",
    "FIXTURES",
    "read_instance",
]

FORMAT_VERSION = 1

# Budgets above this many bits are written as exponent lists.
_DECIMAL_BUDGET_BITS = 64


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _load(text: str, kind: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"syntax error: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{kind} document must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}", "format_version")
    return doc


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _get(doc, key, loc, kind=None):
    if key not in doc:
        raise ParseError(f"missing field {key!r}", loc)
    value = doc[key]
    if kind is list and not isinstance(value, list):
        raise ParseError("expected a list", f"{loc}{key}" if not loc else f"{loc}.{key}")
    return value


def parse_budget(value, location: str = "budget") -> BigCost:
    """Decimal string (or integer) or list of exponents meaning ``sum(2**e)``."""
    if isinstance(value, str):
        if not value.isdigit():
            raise ParseError(f"malformed budget {value!r}", location)
        return BigCost.from_int(int(value))
    if _is_int(value):
        if value < 0:
            raise ParseError("negative budget", location)
        return BigCost.from_int(value)
    if isinstance(value, list):
        for k, e in enumerate(value):
            if not _is_int(e) or e < 0:
                raise ParseError(f"exponent {e!r} is not a nonnegative integer", f"{location}[{k}]")
        return BigCost(value)
    raise ParseError("budget must be a decimal string or a list of exponents", location)


def _budget_doc(budget: BigCost):
    if budget.bit_length() > _DECIMAL_BUDGET_BITS:
        return list(budget.terms)
    return str(budget.to_int())


def _elements(doc, key):
    out = []
    for k, item in enumerate(_get(doc, key, "", list)):
        loc = f"{key}[{k}]"
        if not isinstance(item, dict):
            raise ParseError("expected an object", loc)
        eid = item.get("id")
        val = item.get("val")
        if not isinstance(eid, str) or not eid:
            raise ParseError("id must be a nonempty string", loc)
        if not _is_int(val):
            raise ParseError(f"val of {eid!r} must be an integer", loc)
        if val < 1:
            raise ParseError(f"non-positive weight {val} for {eid!r}", loc)
        out.append((loc, eid, val))
    return out


def parse_instance(text: str) -> OcpInstance:
    doc = _load(text, "instance")
    labels = _elements(doc, "labels")
    extras = _elements(doc, "extra_elements") if "extra_elements" in doc else []
    seen = {}
    for loc, eid, _ in labels + extras:
        if eid in seen:
            raise ParseError(f"duplicate element id {eid!r} (first at {seen[eid]})", loc)
        seen[eid] = loc
    edges = []
    edge_seen = {}
    for k, item in enumerate(_get(doc, "edges", "", list)):
        loc = f"edges[{k}]"
        if not isinstance(item, dict):
            raise ParseError("expected an object", loc)
        eid = item.get("id")
        elements = item.get("elements")
        if not isinstance(eid, str) or not eid:
            raise ParseError("id must be a nonempty string", loc)
        if eid in edge_seen:
            raise ParseError(f"duplicate edge id {eid!r} (first at {edge_seen[eid]})", loc)
        edge_seen[eid] = loc
        if not isinstance(elements, list) or not elements:
            raise ParseError("elements must be a nonempty list", loc)
        for p, x in enumerate(elements):
            if x not in seen:
                raise ParseError(f"unknown element {x!r}", f"{loc}.elements[{p}]")
        if len(set(elements)) != len(elements):
            raise ParseError("element listed twice", f"{loc}.elements")
        edges.append(Edge(eid, tuple(elements)))
    budget = parse_budget(doc["budget"]) if doc.get("budget") is not None else None
    uncoverable = doc.get("uncoverable", False)
    if not isinstance(uncoverable, bool):
        raise ParseError("uncoverable must be a boolean", "uncoverable")
    try:
        return OcpInstance(
            required=tuple(eid for _, eid, _ in labels),
            universe=tuple(Element(eid, val) for _, eid, val in labels + extras),
            edges=tuple(edges),
            budget=budget,
            allow_uncoverable=uncoverable,
        )
    except InstanceError as exc:
        raise ParseError(str(exc), "edges") from None


def serialize_instance(instance: OcpInstance) -> str:
    required = set(instance.required)
    doc = {
        "format_version": FORMAT_VERSION,
        "labels": [{"id": el.id, "val": el.weight} for el in instance.universe if el.id in required],
        "extra_elements": [{"id": el.id, "val": el.weight} for el in instance.universe if el.id not in required],
        "edges": [{"id": e.id, "elements": list(e.elements)} for e in instance.edges],
    }
    if instance.budget is not None:
        doc["budget"] = _budget_doc(instance.budget)
    if instance.allow_uncoverable:
        doc["uncoverable"] = True
    return _dump(doc)


def parse_covering(text: str, instance: OcpInstance | None = None) -> tuple[Covering, str | None]:
    """Return the covering and its instance reference; ids are checked when ``instance`` is given."""
    doc = _load(text, "covering")
    seq = _get(doc, "sequence", "", list)
    for k, eid in enumerate(seq):
        if not isinstance(eid, str):
            raise ParseError("edge id must be a string", f"sequence[{k}]")
        if instance is not None and eid not in instance._edge_index:
            raise ParseError(f"unknown edge {eid!r}", f"sequence[{k}]")
    ref = doc.get("instance")
    if ref is not None and not isinstance(ref, str):
        raise ParseError("instance reference must be a string", "instance")
    return Covering(seq), ref


def serialize_covering(covering: Covering, instance_ref: str | None = None) -> str:
    doc = {"format_version": FORMAT_VERSION, "sequence": list(covering.sequence)}
    if instance_ref is not None:
        doc["instance"] = instance_ref
    return _dump(doc)


def parse_3p(text: str) -> ThreePartitionInstance:
    doc = _load(text, "3-Partition")
    m, B, a = _get(doc, "m", ""), _get(doc, "B", ""), _get(doc, "a", "", list)
    if not _is_int(m):
        raise ParseError("m must be an integer", "m")
    if not _is_int(B):
        raise ParseError("B must be an integer", "B")
    for k, v in enumerate(a):
        if not _is_int(v):
            raise ParseError("entries must be integers", f"a[{k}]")
    return ThreePartitionInstance(m, B, tuple(a))


def serialize_3p(tp: ThreePartitionInstance) -> str:
    return _dump({"format_version": FORMAT_VERSION, "m": tp.m, "B": tp.B, "a": list(tp.a)})


def serialize_partition(partition: Partition3 | None) -> str:
    triplets = None if partition is None else [list(t) for t in partition.triplets]
    return _dump({"format_version": FORMAT_VERSION, "triplets": triplets})


def parse_partition(text: str) -> Partition3 | None:
    doc = _load(text, "partition")
    triplets = doc.get("triplets")
    return None if triplets is None else Partition3(triplets)


def serialize_map(rmap: ReductionMap) -> str:
    doc = {
        "format_version": FORMAT_VERSION,
        "m": rmap.m,
        "B": rmap.B,
        "t": rmap.t,
        "w": rmap.w,
        "infeasible": rmap.infeasible,
        "triplets": [list(x) for x in rmap.triplets],
        "edges": [[eid, *key] for eid, key in rmap.edge_key.items()],
        "tokens": [[tid, *key] for tid, key in rmap.token_key.items()],
    }
    return _dump(doc)


def parse_map(text: str) -> ReductionMap:
    doc = _load(text, "reduction map")
    try:
        return ReductionMap(
            m=doc["m"],
            B=doc["B"],
            t=doc["t"],
            w=doc["w"],
            triplets=tuple(tuple(x) for x in doc["triplets"]),
            edge_key={row[0]: tuple(row[1:]) for row in doc["edges"]},
            token_key={row[0]: tuple(row[1:]) for row in doc["tokens"]},
            infeasible=bool(doc.get("infeasible", False)),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed reduction map: {exc}") from None


def _fixture(weights, edges):
    return {
        "format_version": FORMAT_VERSION,
        "labels": [{"id": f"s{i}", "val": v} for i, v in enumerate(weights, start=1)],
        "extra_elements": [],
        "edges": [{"id": f"E{i}", "elements": [f"s{x}" for x in e]} for i, e in enumerate(edges, start=1)],
    }


FIXTURES = {
    "testA": _fixture((8, 2, 4, 4, 2, 2, 4), ((1, 2), (2, 3, 4, 5), (4, 5, 6, 7), (5, 6))),
    "testB": _fixture((4, 2, 8, 2, 2), ((1, 2), (2, 3, 4, 5), (3, 4), (4, 5))),
}


def fixture_text(name: str) -> str:
    try:
        return _dump(FIXTURES[name])
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}") from None


def load_fixture(name: str) -> OcpInstance:
    """The two small example instances ``testA`` and ``testB``."""
    return parse_instance(fixture_text(name))


def read_instance(path: str | Path) -> OcpInstance:
    """Load an instance file; a bare fixture name also works when no such file exists."""
    p = Path(path)
    if not p.exists() and str(path) in FIXTURES:
        return load_fixture(str(path))
    return parse_instance(p.read_text(encoding="utf-8"))
