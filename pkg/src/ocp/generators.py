"""Seeded random instance generators."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import Edge, Element, OcpInstance
from .errors import ConfigurationError
from .reduction import ThreePartitionInstance

__all__ = ["GenParams", "gen_random_ocp", "gen_random_3p", "FAMILIES", "feasible_values"]

FAMILIES = ("random-ocp", "planted-3p", "unconstrained-3p")


@dataclass(frozen=True)
class GenParams:
    family: str = "random-ocp"
    seed: int = 0
    # random-ocp knobs
    n_labels: int = 6
    n_edges: int = 5
    max_weight: int = 5
    edge_density: float = 0.4
    n_extra: int = 0
    # 3-Partition knobs
    m: int = 2
    B_min: int = 9
    B_max: int = 15
    max_attempts: int = 10_000

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigurationError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")


def gen_random_ocp(params: GenParams) -> OcpInstance:
    """Labels with uniform weights in ``[1, max_weight]`` and random edges.

    ``n_extra`` auxiliary elements (outside S) are drawn the same way.  Each
    element joins each edge with probability ``edge_density``; empty edges
    get one random element, and a final sweep drops every still-uncovered
    label into a random edge.
    """
    p = params
    if p.n_labels < 1 or p.n_edges < 1 or p.max_weight < 1 or p.n_extra < 0:
        raise ConfigurationError("n_labels, n_edges and max_weight must be positive, n_extra nonnegative")
    if not 0.0 <= p.edge_density <= 1.0:
        raise ConfigurationError("edge_density must lie in [0, 1]")
    rng = random.Random(p.seed)
    labels = [Element(f"s{i}", rng.randint(1, p.max_weight)) for i in range(1, p.n_labels + 1)]
    extras = [Element(f"x{i}", rng.randint(1, p.max_weight)) for i in range(1, p.n_extra + 1)]
    universe = labels + extras
    members = [[x for x in range(len(universe)) if rng.random() < p.edge_density] for _ in range(p.n_edges)]
    for e in members:
        if not e:
            e.append(rng.randrange(len(universe)))
    covered = {x for e in members for x in e}
    for x in range(p.n_labels):
        if x not in covered:
            members[rng.randrange(p.n_edges)].append(x)
    edges = [
        Edge(f"E{k}", tuple(universe[x].id for x in sorted(e)))
        for k, e in enumerate(members, start=1)
    ]
    return OcpInstance(tuple(el.id for el in labels), tuple(universe), tuple(edges))


def feasible_values(B: int) -> range:
    """Integers strictly between B/4 and B/2."""
    return range(B // 4 + 1, (B + 1) // 2)


def _triples_summing_to(B):
    vals = feasible_values(B)
    return [(x, y, B - x - y) for x in vals for y in vals if (B - x - y) in vals]


def gen_random_3p(params: GenParams) -> ThreePartitionInstance:
    """Planted (always YES) or unconstrained 3-Partition instances.

    ``planted-3p`` draws m triples that each sum to B and shuffles them;
    ``unconstrained-3p`` rejection-samples value vectors meeting the sum and
    range constraints, so the answer is unknown.
    """
    p = params
    if p.family not in ("planted-3p", "unconstrained-3p"):
        raise ConfigurationError(f"family {p.family!r} does not produce 3-Partition instances")
    if p.m < 1 or p.B_min < 1 or p.B_max < p.B_min:
        raise ConfigurationError("need m >= 1 and 1 <= B_min <= B_max")
    rng = random.Random(p.seed)
    candidates = [B for B in range(p.B_min, p.B_max + 1) if _triples_summing_to(B)]
    if not candidates:
        raise ConfigurationError(f"no B in [{p.B_min}, {p.B_max}] admits a triple inside (B/4, B/2)")
    B = rng.choice(candidates)
    if p.family == "planted-3p":
        triples = _triples_summing_to(B)
        a = [v for _ in range(p.m) for v in rng.choice(triples)]
        rng.shuffle(a)
        return ThreePartitionInstance(p.m, B, tuple(a))
    vals = feasible_values(B)
    for _ in range(p.max_attempts):
        a = [rng.choice(vals) for _ in range(3 * p.m - 1)]
        last = p.m * B - sum(a)
        if last in vals:
            a.append(last)
            rng.shuffle(a)
            return ThreePartitionInstance(p.m, B, tuple(a))
    raise ConfigurationError(f"no valid instance found in {p.max_attempts} attempts")
