"""Greedy, exact and branch-and-bound minimization of the ordered covering cost.

All solvers work on a bitset view of the instance: element ``k`` of the
universe (declaration order) is bit ``k``.  The cost of applying an edge
depends only on the set already covered, which is what makes the
covered-set shortest-path formulation in :func:`solve_exact_dp` exact.
"""

from __future__ import annotations

import functools
import heapq
import itertools
import os
from dataclasses import dataclass, field

from .core import Covering, OcpInstance, covers, residual_trace, total_cost
from .cost import BigCost
from .errors import PreconditionError, SolverCapacityError

__all__ = [
    "SolveResult",
    "solve_greedy",
    "solve_exact_dp",
    "solve_exact_perm",
    "solve_bnb",
    "lower_bound",
    "SOLVERS",
    "DEFAULT_MAX_UNIVERSE",
    "DEFAULT_MAX_PERM_EDGES",
]

DEFAULT_MAX_UNIVERSE = 64
DEFAULT_MAX_PERM_EDGES = 9

# Path costs stay below 2**(heaviest edge + log2(#edges)); past this many bits
# plain ints get expensive and BigCost takes over.
_INT_COST_BITS = 1 << 16


@dataclass(frozen=True)
class SolveResult:
    covering: Covering
    cost: BigCost
    optimal: bool
    stats: dict = field(default_factory=dict)


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


class _BitView:
    def __init__(self, instance: OcpInstance):
        self.instance = instance
        index = {el.id: k for k, el in enumerate(instance.universe)}
        self.weights = [el.weight for el in instance.universe]
        self.required_mask = 0
        for r in instance.required:
            self.required_mask |= 1 << index[r]
        self.edge_masks = []
        self.edge_items = []
        for e in instance.edges:
            bits = [1 << index[x] for x in e.elements]
            self.edge_masks.append(sum(bits))
            self.edge_items.append([(b, instance.weight(x)) for b, x in zip(bits, e.elements)])
        heaviest = max((sum(w for _, w in items) for items in self.edge_items), default=0)
        if heaviest + len(self.edge_masks).bit_length() <= _INT_COST_BITS:
            self.pow2 = lambda u: (1 << u) if u else 0
            self.zero = 0
        else:
            self.pow2 = lambda u: BigCost.pow2(u) if u else BigCost.zero()
            self.zero = BigCost.zero()
        self.label_bits = [(1 << index[r], instance.weight(r)) for r in instance.required]

    def residual_weight(self, k, covered):
        return sum(w for b, w in self.edge_items[k] if not covered & b)

    def coverable(self):
        union = 0
        for m in self.edge_masks:
            union |= m
        return union & self.required_mask == self.required_mask


def _as_bigcost(value) -> BigCost:
    return value if isinstance(value, BigCost) else BigCost.from_int(value)


def _require_coverable(view: _BitView):
    if not view.coverable():
        raise PreconditionError("edges do not cover every required label")


def _result(instance, sequence, optimal, stats) -> SolveResult:
    cov = Covering(sequence)
    return SolveResult(cov, total_cost(residual_trace(instance, cov)), optimal, stats)


def solve_greedy(instance: OcpInstance) -> SolveResult:
    """Repeatedly apply the edge of least residual weight among those that
    still reach an uncovered required label; ties go to the earlier edge."""
    view = _BitView(instance)
    _require_coverable(view)
    covered = 0
    sequence = []
    steps = 0
    while covered & view.required_mask != view.required_mask:
        best = None
        for k, m in enumerate(view.edge_masks):
            if not m & view.required_mask & ~covered:
                continue
            u = view.residual_weight(k, covered)
            if best is None or u < best[0]:
                best = (u, k)
            steps += 1
        _, k = best
        covered |= view.edge_masks[k]
        sequence.append(instance.edges[k].id)
    return _result(instance, sequence, False, {"evaluations": steps})


class _FutureBound:
    """Admissible estimate of the cost still to pay from a covered set.

    Weights are at least 1, so ``2**(a + b) >= 2**a + 2**b`` and any step
    costs at least ``sum(2**val(y))`` over the elements it covers.  Every
    uncovered required label ``x`` is first covered by some edge ``e``
    containing it, and all of ``e`` gets covered.  Charging each required
    label its own term plus, for the cheapest such ``e``, the non-required
    terms of ``e`` split over the edges sharing each element and over the
    required labels ``e`` can take, never overcounts.
    """

    def __init__(self, view: _BitView):
        req = view.required_mask
        n = len(view.weights)
        sharing = [0] * n
        for m in view.edge_masks:
            if m & req:
                for k in range(n):
                    if m >> k & 1:
                        sharing[k] += 1
        self.labels = []
        for k in range(n):
            bit = 1 << k
            if not req & bit:
                continue
            options = []
            for m in view.edge_masks:
                if m & bit:
                    extras = [(1 << j, (1 << view.weights[j]) // sharing[j])
                              for j in range(n) if m >> j & 1 and not req >> j & 1]
                    options.append((m & req, m & ~req, sum(c for _, c in extras), extras))
            self.labels.append((bit, 1 << view.weights[k], options))

    def __call__(self, covered: int) -> int:
        total = 0
        for bit, own, options in self.labels:
            if covered & bit:
                continue
            cheapest = None
            for req_part, extra_mask, full, extras in options:
                if not extra_mask & covered:
                    share = full
                else:
                    share = sum(c for b, c in extras if not covered & b)
                if share:
                    share //= (req_part & ~covered).bit_count()
                if cheapest is None or share < cheapest:
                    cheapest = share
                    if not share:
                        break
            total += own + cheapest
        return total


def solve_exact_dp(
    instance: OcpInstance,
    max_universe: int | None = None,
    max_states: int | None = None,
) -> SolveResult:
    """Shortest path over covered sets.

    From coverage ``X`` an edge ``e`` leads to ``X | e`` at cost
    ``2**weight(e - X)``; the cheapest path to a state containing S is an
    optimal covering.  Only the cheapest cost per state is kept.

    Two exact reductions keep the search small:

    * A step whose residual holds no required label only pays off if a later
      edge touches that residual, and it can always be postponed to sit right
      before the first such edge without changing any cost.  States also
      carry the residuals of such pending steps; each must be touched before
      the next step that covers a required label, and states where that is
      impossible are dropped.
    * The search is ordered by cost plus :class:`_FutureBound` (A*), with
      states re-opened when a cheaper path turns up.  Costs beyond the
      plain-int range fall back to uninformed Dijkstra.

    Args:
        max_universe: guard on the universe size (default 64, env
            ``OCP_MAX_UNIVERSE``).  Pass a larger value for reduced instances.
        max_states: optional cap on expanded states; exceeding it raises
            :class:`SolverCapacityError`.
    """
    if max_universe is None:
        max_universe = _env_int("OCP_MAX_UNIVERSE", DEFAULT_MAX_UNIVERSE)
    n = len(instance.universe)
    if n > max_universe:
        raise SolverCapacityError(f"universe has {n} elements, guard is {max_universe}")
    view = _BitView(instance)
    _require_coverable(view)

    req = view.required_mask
    masks = view.edge_masks
    pow2 = view.pow2
    residual_weight = view.residual_weight
    if isinstance(view.zero, int):
        estimate = functools.lru_cache(maxsize=None)(_FutureBound(view))
    else:
        estimate = lambda covered: view.zero  # noqa: E731
    empty = frozenset()
    start = (0, empty)
    best = {start: view.zero}
    parent = {start: None}
    heap = [(estimate(0), 0, view.zero, 0, empty)]
    tick = 1
    expanded = 0
    pushes = 0
    goal = None
    done = {}
    while heap:
        _, _, g, covered, pending = heapq.heappop(heap)
        key = (covered, pending)
        if best[key] < g:
            continue
        open_req = req & ~covered
        if not open_req and not pending:
            goal = key
            break
        if done.get(key) == g:
            continue
        done[key] = g
        expanded += 1
        if max_states is not None and expanded > max_states:
            raise SolverCapacityError(f"more than {max_states} states expanded")
        live = [k for k, m in enumerate(masks) if m & ~covered]
        # edges that may run before the next required label is covered;
        # free_except[k] over-approximates what stays applicable after edge k
        free = [k for k in live if not masks[k] & open_req]
        free_except = {}
        acc = 0
        for k in free:
            free_except[k] = acc
            acc |= masks[k]
        acc = 0
        for k in reversed(free):
            free_except[k] |= acc
            acc |= masks[k]
        closers = [masks[k] for k in live if masks[k] & open_req]
        closer_union = 0
        for m in closers:
            closer_union |= m
        for k in live:
            mask = masks[k]
            residual = mask & ~covered
            left = frozenset(p for p in pending if not p & mask) if pending else empty
            nxt_cov = covered | mask
            if residual & req:
                if left:
                    continue
                nxt = (nxt_cov, empty)
            else:
                left = left | {residual}
                reach = free_except[k]
                loose = [p for p in left if not p & reach]
                if loose:
                    if len(loose) == 1:
                        if not loose[0] & closer_union:
                            continue
                    elif not any(all(m & p for p in loose) for m in closers):
                        continue
                nxt = (nxt_cov, left)
            cost = g + pow2(residual_weight(k, covered))
            old = best.get(nxt)
            if old is None or cost < old:
                best[nxt] = cost
                parent[nxt] = (key, k)
                heapq.heappush(heap, (cost + estimate(nxt_cov), tick, cost, nxt[0], nxt[1]))
                tick += 1
                pushes += 1

    sequence = []
    state = goal
    while parent[state] is not None:
        prev, k = parent[state]
        sequence.append(instance.edges[k].id)
        state = prev
    sequence.reverse()
    result = _result(instance, sequence, True, {"states": expanded, "pushes": pushes})
    assert result.cost == _as_bigcost(best[goal])
    return result


def solve_exact_perm(instance: OcpInstance, max_edges: int | None = None) -> SolveResult:
    """Brute force over every ordered selection of distinct edges.

    Each candidate is scored by :func:`ocp.core.residual_trace`, independently
    of the bitset machinery used by the other exact solvers.
    """
    if max_edges is None:
        max_edges = _env_int("OCP_MAX_PERM_EDGES", DEFAULT_MAX_PERM_EDGES)
    ids = instance.edge_ids
    if len(ids) > max_edges:
        raise SolverCapacityError(f"{len(ids)} edges, permutation guard is {max_edges}")
    if instance.uncoverable_labels():
        raise PreconditionError("edges do not cover every required label")
    best_cost = None
    best_seq = None
    evaluated = 0
    for k in range(len(ids) + 1):
        for seq in itertools.permutations(ids, k):
            if not covers(instance, seq):
                continue
            evaluated += 1
            c = total_cost(residual_trace(instance, seq))
            if best_cost is None or c < best_cost:
                best_cost, best_seq = c, seq
    return SolveResult(Covering(best_seq), best_cost, True, {"sequences": evaluated})


def lower_bound(instance: OcpInstance, covered: set | frozenset) -> BigCost:
    """Admissible bound on the cost still to pay from coverage ``covered``.

    Every uncovered required label lands in some future residual set, which
    then weighs at least as much as that label.
    """
    ws = [instance.weight(r) for r in instance.required if r not in covered]
    return BigCost.pow2(max(ws)) if ws else BigCost.zero()


def solve_bnb(instance: OcpInstance) -> SolveResult:
    """Depth-first branch and bound over sequences of distinct edges.

    The incumbent starts at the greedy covering.  A node is pruned when its
    cost plus :func:`lower_bound` cannot beat the incumbent, or when the same
    covered set was already reached at no greater cost.  Children are tried
    in ascending marginal cost.
    """
    view = _BitView(instance)
    _require_coverable(view)
    req = view.required_mask
    greedy = solve_greedy(instance)
    incumbent_seq = list(greedy.covering.sequence)
    incumbent = greedy.cost if isinstance(view.zero, BigCost) else greedy.cost.to_int()
    stats = {"nodes": 0, "pruned": 0, "improvements": 0}
    seen_at = {}
    label_bits = view.label_bits

    def bound(covered):
        m = 0
        for b, w in label_bits:
            if not covered & b and w > m:
                m = w
        return view.pow2(m)

    path = []

    def dfs(covered, g):
        nonlocal incumbent, incumbent_seq
        stats["nodes"] += 1
        if covered & req == req:
            if g < incumbent:
                incumbent, incumbent_seq = g, list(path)
                stats["improvements"] += 1
            return
        if not g + bound(covered) < incumbent:
            stats["pruned"] += 1
            return
        prev = seen_at.get(covered)
        if prev is not None and prev <= g:
            stats["pruned"] += 1
            return
        seen_at[covered] = g
        children = []
        for k, mask in enumerate(view.edge_masks):
            if mask & ~covered:
                children.append((view.pow2(view.residual_weight(k, covered)), k))
        children.sort()
        for step, k in children:
            path.append(instance.edges[k].id)
            dfs(covered | view.edge_masks[k], g + step)
            path.pop()

    dfs(0, view.zero)
    return _result(instance, incumbent_seq, True, stats)


SOLVERS = {
    "greedy": solve_greedy,
    "dp": solve_exact_dp,
    "perm": solve_exact_perm,
    "bnb": solve_bnb,
}
