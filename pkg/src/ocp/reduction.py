"""3-Partition instances and their reduction to ordered covering.

A 3-Partition instance ``(a, B, m)`` becomes an ordered covering instance with
one required label ``alpha_l`` per number and, for every bin ``i`` and every
valid triplet ``X_j`` (three labels summing to ``B``), an opening edge
``A_i_j = {omega_i_j}`` and an assignment edge
``E_i_j = X_j | {omega_i_j, tau_i_j}``.  The opening tokens weigh
``w = t + B + ceil(log2 m) + 1`` and the closing tokens ``t = 1``; the budget is
``m * (2**w + 2**(t + B))``.  A covering fits the budget exactly when its
positive-residual assignment edges spell out a 3-partition.

Indices of numbers, bins and triplets are 1-based throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import Covering, Edge, Element, OcpInstance, residual_trace, verify_certificate
from .cost import BigCost
from .errors import InstanceError, PreconditionError, ReductionSoundnessError, SolverCapacityError

__all__ = [
    "ThreePartitionInstance",
    "Partition3",
    "ReductionMap",
    "validate_3p",
    "enumerate_valid_triplets",
    "reduce_3p_to_ocp",
    "canonical_covering",
    "extract_partition",
    "lemma_violations",
    "solve_3p_bruteforce",
    "partition_violations",
    "CLOSING_WEIGHT",
]

CLOSING_WEIGHT = 1


@dataclass(frozen=True)
class ThreePartitionInstance:
    m: int
    B: int
    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))

    def value(self, index: int) -> int:
        return self.a[index - 1]


@dataclass(frozen=True)
class Partition3:
    """m triplets of 1-based indices, each sorted, listed in sorted order."""

    triplets: tuple[tuple[int, int, int], ...]

    def __init__(self, triplets):
        object.__setattr__(self, "triplets", tuple(sorted(tuple(sorted(t)) for t in triplets)))


def validate_3p(tp: ThreePartitionInstance) -> list[str]:
    """Return every violated 3-Partition constraint; empty means valid."""
    out = []
    if not isinstance(tp.m, int) or tp.m < 1:
        out.append(f"m must be a positive integer, got {tp.m!r}")
    if not isinstance(tp.B, int) or tp.B < 1:
        out.append(f"B must be a positive integer, got {tp.B!r}")
    if out:
        return out
    if len(tp.a) != 3 * tp.m:
        out.append(f"|a| = {len(tp.a)} but 3m = {3 * tp.m}")
    for i, v in enumerate(tp.a, start=1):
        if not isinstance(v, int) or v < 1:
            out.append(f"a_{i} = {v!r} is not a positive integer")
            continue
        # B/4 < v < B/2 without fractions
        if not 4 * v > tp.B:
            out.append(f"a_{i} = {v} <= B/4 = {tp.B / 4:g}")
        if not 2 * v < tp.B:
            out.append(f"a_{i} = {v} >= B/2 = {tp.B / 2:g}")
    total = sum(v for v in tp.a if isinstance(v, int))
    if total != tp.m * tp.B:
        out.append(f"sum(a) = {total} but m*B = {tp.m * tp.B}")
    return out


def _check_valid(tp):
    problems = validate_3p(tp)
    if problems:
        raise InstanceError("invalid 3-Partition instance: " + "; ".join(problems))


def enumerate_valid_triplets(tp: ThreePartitionInstance) -> list[tuple[int, int, int]]:
    """All index triples ``l1 < l2 < l3`` whose values sum to B, lexicographically."""
    _check_valid(tp)
    return [
        t
        for t in itertools.combinations(range(1, len(tp.a) + 1), 3)
        if sum(tp.value(i) for i in t) == tp.B
    ]


def partition_violations(tp: ThreePartitionInstance, partition: Partition3) -> list[str]:
    out = []
    if len(partition.triplets) != tp.m:
        out.append(f"{len(partition.triplets)} triplets, expected {tp.m}")
    seen = []
    for t in partition.triplets:
        if len(set(t)) != 3:
            out.append(f"{t} is not a 3-set")
        for i in t:
            if not 1 <= i <= len(tp.a):
                out.append(f"index {i} out of range")
        seen.extend(t)
        if all(1 <= i <= len(tp.a) for i in t) and sum(tp.value(i) for i in t) != tp.B:
            out.append(f"{t} sums to {sum(tp.value(i) for i in t)}, not {tp.B}")
    if sorted(seen) != list(range(1, len(tp.a) + 1)):
        out.append("triplets do not partition the index set")
    return out


def _ceil_log2(m: int) -> int:
    return (m - 1).bit_length()


def label_id(index: int) -> str:
    return f"alpha_{index}"


@dataclass(frozen=True)
class ReductionMap:
    """Bookkeeping that ties generated edges and tokens back to bins and triplets."""

    m: int
    B: int
    t: int
    w: int
    triplets: tuple[tuple[int, int, int], ...]
    edge_key: dict = field(hash=False)
    token_key: dict = field(hash=False)
    infeasible: bool = False

    @property
    def budget(self) -> BigCost:
        return BigCost([self.w] * self.m + [self.t + self.B] * self.m)

    def opening_id(self, i: int, j: int) -> str:
        return f"A_{i}_{j}"

    def assignment_id(self, i: int, j: int) -> str:
        return f"E_{i}_{j}"

    def triplet_position(self, triplet) -> int:
        return self.triplets.index(tuple(sorted(triplet))) + 1


def reduce_3p_to_ocp(tp: ThreePartitionInstance) -> tuple[OcpInstance, ReductionMap]:
    """Build the ordered covering instance and its map for a valid instance.

    With no valid triplet the instance has no edges at all; it is emitted with
    ``allow_uncoverable=True`` and ``map.infeasible`` set, since no covering
    of S exists.
    """
    _check_valid(tp)
    t = CLOSING_WEIGHT
    w = t + tp.B + _ceil_log2(tp.m) + 1
    triplets = enumerate_valid_triplets(tp)

    labels = [Element(label_id(i), v) for i, v in enumerate(tp.a, start=1)]
    tokens = []
    edges = []
    edge_key = {}
    token_key = {}
    for i in range(1, tp.m + 1):
        for j, X in enumerate(triplets, start=1):
            omega, tau = f"omega_{i}_{j}", f"tau_{i}_{j}"
            tokens += [Element(omega, w), Element(tau, t)]
            token_key[omega] = ("opening", i, j)
            token_key[tau] = ("closing", i, j)
            a_id, e_id = f"A_{i}_{j}", f"E_{i}_{j}"
            edges.append(Edge(a_id, (omega,)))
            edges.append(Edge(e_id, tuple(label_id(x) for x in X) + (omega, tau)))
            edge_key[a_id] = ("opening", i, j)
            edge_key[e_id] = ("assignment", i, j)

    rmap = ReductionMap(tp.m, tp.B, t, w, tuple(triplets), edge_key, token_key, infeasible=not triplets)
    instance = OcpInstance(
        required=tuple(el.id for el in labels),
        universe=tuple(labels + tokens),
        edges=tuple(edges),
        budget=rmap.budget,
        allow_uncoverable=not triplets,
    )
    return instance, rmap


def canonical_covering(tp: ThreePartitionInstance, partition: Partition3, rmap: ReductionMap) -> Covering:
    """Opening/assignment pairs for bins 1..m, bin i taking the i-th triplet."""
    problems = partition_violations(tp, partition)
    if problems:
        raise PreconditionError("invalid partition: " + "; ".join(problems))
    seq = []
    for i, P in enumerate(partition.triplets, start=1):
        try:
            j = rmap.triplet_position(P)
        except ValueError:
            raise ReductionSoundnessError(f"triplet {P} missing from the valid triplet list") from None
        seq += [rmap.opening_id(i, j), rmap.assignment_id(i, j)]
    return Covering(seq)


def _label_index(element_id: str) -> int:
    return int(element_id.split("_", 1)[1])


def _active_assignments(rmap, instance, covering):
    """(position, edge id, residual) of every assignment step with a nonempty residual."""
    trace = residual_trace(instance, covering)
    return [
        (pos, s.edge_id, s.residual)
        for pos, s in enumerate(trace.steps)
        if s.residual and rmap.edge_key[s.edge_id][0] == "assignment"
    ], trace


def extract_partition(rmap: ReductionMap, instance: OcpInstance, covering) -> Partition3:
    """Read the 3-partition off a budget-feasible covering of a reduced instance."""
    verdict = verify_certificate(instance, covering)
    if not verdict.accepted:
        raise PreconditionError(f"covering is not budget-feasible ({verdict.reason.value})")
    active, _ = _active_assignments(rmap, instance, covering)
    required = set(instance.required)
    triplets = []
    for _, _, residual in active:
        q = sorted(_label_index(x) for x in residual if x in required)
        triplets.append(tuple(q))
    values = tuple(instance.weight(label_id(i)) for i in range(1, 3 * rmap.m + 1))
    tp = ThreePartitionInstance(rmap.m, rmap.B, values)
    bad = [t for t in triplets if len(t) != 3]
    if bad:
        raise ReductionSoundnessError(f"extracted contributions are not 3-sets: {bad}")
    partition = Partition3(triplets)
    problems = partition_violations(tp, partition)
    if problems:
        raise ReductionSoundnessError("extracted structure is not a 3-partition: " + "; ".join(problems))
    return partition


def lemma_violations(rmap: ReductionMap, instance: OcpInstance, covering) -> list[str]:
    """Structural checks that must hold for any budget-feasible covering.

    Returns a list of human-readable violations tagged ``opening``,
    ``count`` or ``triplets``:

    * every positive-residual assignment edge comes after its opening edge;
    * exactly m assignment edges have positive residuals;
    * their contributions to S are disjoint 3-sets whose union is S.
    """
    active, trace = _active_assignments(rmap, instance, covering)
    out = []
    positions = {}
    for pos, s in enumerate(trace.steps):
        positions.setdefault(s.edge_id, pos)
    for pos, eid, _ in active:
        _, i, j = rmap.edge_key[eid]
        opened = positions.get(rmap.opening_id(i, j))
        if opened is None or opened > pos:
            out.append(f"opening: {eid} at position {pos} is not preceded by {rmap.opening_id(i, j)}")
    if len(active) != rmap.m:
        out.append(f"count: {len(active)} positive-residual assignment edges, expected {rmap.m}")
    required = set(instance.required)
    contributions = [frozenset(x for x in res if x in required) for _, _, res in active]
    for (_, eid, _), q in zip(active, contributions):
        if len(q) != 3:
            out.append(f"triplets: {eid} contributes {len(q)} labels of S")
    union = frozenset().union(*contributions) if contributions else frozenset()
    if sum(len(q) for q in contributions) != len(union):
        out.append("triplets: contributions overlap")
    if union != required:
        out.append("triplets: contributions do not cover S")
    return out


def solve_3p_bruteforce(tp: ThreePartitionInstance, max_m: int = 4) -> Partition3 | None:
    """Backtracking search; always extends the lowest unassigned index."""
    _check_valid(tp)
    if tp.m > max_m:
        raise SolverCapacityError(f"m = {tp.m} exceeds brute-force guard {max_m}")
    n = len(tp.a)
    used = [False] * n
    chosen = []

    def search():
        try:
            first = used.index(False)
        except ValueError:
            return True
        used[first] = True
        for second in range(first + 1, n):
            if used[second]:
                continue
            need = tp.B - tp.a[first] - tp.a[second]
            used[second] = True
            for third in range(second + 1, n):
                if not used[third] and tp.a[third] == need:
                    used[third] = True
                    chosen.append((first + 1, second + 1, third + 1))
                    if search():
                        return True
                    chosen.pop()
                    used[third] = False
            used[second] = False
        used[first] = False
        return False

    return Partition3(chosen) if search() else None
