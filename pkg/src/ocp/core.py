"""Ordered covering instances, residual traces and the certificate verifier."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .cost import BigCost
from .errors import ConfigurationError, InstanceError, MalformedCertificateError, PreconditionError

__all__ = [
    "Element",
    "Edge",
    "OcpInstance",
    "Covering",
    "TraceStep",
    "ResidualTrace",
    "Reason",
    "Verdict",
    "residual_trace",
    "total_cost",
    "covers",
    "verify_certificate",
    "normalize_covering",
]


@dataclass(frozen=True)
class Element:
    id: str
    weight: int

    def __post_init__(self):
        if isinstance(self.weight, bool) or not isinstance(self.weight, int):
            raise InstanceError(f"element {self.id!r}: weight must be an integer")
        if self.weight < 1:
            raise InstanceError(f"element {self.id!r}: weight must be positive, got {self.weight}")


@dataclass(frozen=True)
class Edge:
    id: str
    elements: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise InstanceError(f"edge {self.id!r} is empty")
        if len(set(self.elements)) != len(self.elements):
            raise InstanceError(f"edge {self.id!r} lists an element twice")


@dataclass(frozen=True)
class OcpInstance:
    """Required labels S, the full weighted element universe, edges and an optional budget.

    ``universe`` holds every element that may appear in an edge; the required
    labels are a subset of it and come first in declaration order.  Instances
    whose edges cannot cover S are rejected unless ``allow_uncoverable`` is set,
    which the 3-Partition reduction uses to emit its trivially infeasible case.
    """

    required: tuple[str, ...]
    universe: tuple[Element, ...]
    edges: tuple[Edge, ...]
    budget: BigCost | None = None
    allow_uncoverable: bool = False
    _weights: dict = field(init=False, repr=False, compare=False)
    _edge_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "required", tuple(self.required))
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "edges", tuple(self.edges))
        weights = {}
        for el in self.universe:
            if el.id in weights:
                raise InstanceError(f"duplicate element id {el.id!r}")
            weights[el.id] = el.weight
        if len(set(self.required)) != len(self.required):
            raise InstanceError("duplicate required label")
        for r in self.required:
            if r not in weights:
                raise InstanceError(f"required label {r!r} is not in the universe")
        edge_index = {}
        for i, e in enumerate(self.edges):
            if e.id in edge_index:
                raise InstanceError(f"duplicate edge id {e.id!r}")
            edge_index[e.id] = i
            for x in e.elements:
                if x not in weights:
                    raise InstanceError(f"edge {e.id!r} references unknown element {x!r}")
        if self.budget is not None and not isinstance(self.budget, BigCost):
            object.__setattr__(self, "budget", BigCost.from_int(int(self.budget)))
        object.__setattr__(self, "_weights", weights)
        object.__setattr__(self, "_edge_index", edge_index)
        if not self.allow_uncoverable:
            missing = self.uncoverable_labels()
            if missing:
                raise InstanceError(f"labels not covered by any edge: {', '.join(missing)}")

    def weight(self, element_id: str) -> int:
        return self._weights[element_id]

    def edge(self, edge_id: str) -> Edge:
        try:
            return self.edges[self._edge_index[edge_id]]
        except KeyError:
            raise MalformedCertificateError(f"unknown edge id {edge_id!r}") from None

    def edge_position(self, edge_id: str) -> int:
        try:
            return self._edge_index[edge_id]
        except KeyError:
            raise MalformedCertificateError(f"unknown edge id {edge_id!r}") from None

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def uncoverable_labels(self) -> list[str]:
        seen = set()
        for e in self.edges:
            seen.update(e.elements)
        return [r for r in self.required if r not in seen]

    def with_budget(self, budget) -> "OcpInstance":
        if budget is not None and not isinstance(budget, BigCost):
            budget = BigCost.from_int(budget)
        return OcpInstance(self.required, self.universe, self.edges, budget, self.allow_uncoverable)


@dataclass(frozen=True)
class Covering:
    sequence: tuple[str, ...]

    def __init__(self, sequence: Iterable[str] = ()):
        object.__setattr__(self, "sequence", tuple(sequence))

    def __len__(self):
        return len(self.sequence)

    def __iter__(self):
        return iter(self.sequence)


CoveringLike = Union[Covering, Sequence[str]]


def _seq(covering: CoveringLike) -> tuple[str, ...]:
    if isinstance(covering, Covering):
        return covering.sequence
    if isinstance(covering, str):
        raise TypeError("a covering is a sequence of edge ids, not a single string")
    return tuple(covering)


@dataclass(frozen=True)
class TraceStep:
    edge_id: str
    residual: frozenset
    weight: int
    cost: BigCost


@dataclass(frozen=True)
class ResidualTrace:
    steps: tuple[TraceStep, ...]

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(s.weight for s in self.steps)

    def __len__(self):
        return len(self.steps)


def residual_trace(instance: OcpInstance, covering: CoveringLike) -> ResidualTrace:
    """Residual set, residual weight and partial cost of every step, in order."""
    seen: set[str] = set()
    steps = []
    for eid in _seq(covering):
        edge = instance.edge(eid)
        residual = frozenset(x for x in edge.elements if x not in seen)
        seen.update(residual)
        u = sum(instance.weight(x) for x in residual)
        steps.append(TraceStep(eid, residual, u, BigCost.pow2(u) if u > 0 else BigCost.zero()))
    return ResidualTrace(tuple(steps))


def total_cost(trace: ResidualTrace) -> BigCost:
    exps = [s.weight for s in trace.steps if s.weight > 0]
    return BigCost(exps)


def covers(instance: OcpInstance, covering: CoveringLike) -> bool:
    seen = set()
    for eid in _seq(covering):
        seen.update(instance.edge(eid).elements)
    return all(r in seen for r in instance.required)


class Reason(enum.Enum):
    ACCEPTED = "Accepted"
    NOT_A_COVERING = "NotACovering"
    BUDGET_EXCEEDED = "BudgetExceeded"
    OVERSIZED_EXPONENT = "OversizedExponent"
    MALFORMED_CERTIFICATE = "MalformedCertificate"


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: Reason
    cost: BigCost | None = None
    detail: str = ""

    def __post_init__(self):
        if self.accepted != (self.reason is Reason.ACCEPTED):
            raise ValueError("accepted must agree with reason")

    def __bool__(self):
        return self.accepted


def verify_certificate(instance: OcpInstance, covering: CoveringLike) -> Verdict:
    """Decide whether ``covering`` covers S within the instance budget.

    Runs in time polynomial in the bit size of the input: a step whose
    residual weight exceeds ``floor(log2(C))`` is rejected on the spot, so no
    power of two larger than the budget is ever formed.
    """
    if instance.budget is None:
        raise ConfigurationError("instance has no budget")
    budget = instance.budget
    seq = _seq(covering)

    # 1. ids and coverage of S
    positions = []
    for k, eid in enumerate(seq):
        if not isinstance(eid, str) or eid not in instance._edge_index:
            return Verdict(False, Reason.MALFORMED_CERTIFICATE, detail=f"position {k}: unknown edge {eid!r}")
        positions.append(instance._edge_index[eid])
    covered = set()
    for p in positions:
        covered.update(instance.edges[p].elements)
    missing = [r for r in instance.required if r not in covered]
    if missing:
        return Verdict(False, Reason.NOT_A_COVERING, detail=f"uncovered: {', '.join(missing)}")

    # 2. residual weights with a running seen-set
    seen: set[str] = set()
    weights = []
    for p in positions:
        residual = [x for x in instance.edges[p].elements if x not in seen]
        seen.update(residual)
        weights.append(sum(instance.weight(x) for x in residual))

    # 3. early reject on oversized exponents, then exact accumulation
    log_c = budget.floor_log2() if not budget.is_zero() else -1
    total = BigCost.zero()
    for k, u in enumerate(weights):
        if u == 0:
            continue
        if u > log_c:
            return Verdict(
                False,
                Reason.OVERSIZED_EXPONENT,
                detail=f"position {k}: residual weight {u} exceeds floor(log2 C) = {log_c}",
            )
        total = total + BigCost.pow2(u)
    if total > budget:
        return Verdict(False, Reason.BUDGET_EXCEEDED, total, detail=f"cost {total} > budget {budget}")
    return Verdict(True, Reason.ACCEPTED, total)


def normalize_covering(instance: OcpInstance, covering: CoveringLike) -> Covering:
    """Drop every step whose residual set is empty."""
    if not covers(instance, covering):
        raise PreconditionError("not a covering of the required labels")
    trace = residual_trace(instance, covering)
    return Covering(s.edge_id for s in trace.steps if s.residual)
