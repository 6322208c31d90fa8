"""Hypothesis strategies and a naive evaluator shared by the tests."""

from hypothesis import strategies as st

from ocp.core import Edge, Element, OcpInstance


@st.composite
def instances(draw, max_labels=6, max_extra=2, max_edges=5, max_weight=5):
    n = draw(st.integers(1, max_labels))
    k = draw(st.integers(0, max_extra))
    labels = [Element(f"s{i}", draw(st.integers(1, max_weight))) for i in range(1, n + 1)]
    extras = [Element(f"x{i}", draw(st.integers(1, max_weight))) for i in range(1, k + 1)]
    universe = labels + extras
    ids = [el.id for el in universe]
    m = draw(st.integers(1, max_edges))
    members = [
        draw(st.lists(st.sampled_from(ids), min_size=1, max_size=len(ids), unique=True))
        for _ in range(m)
    ]
    covered = {x for e in members for x in e}
    for el in labels:
        if el.id not in covered:
            members[draw(st.integers(0, m - 1))].append(el.id)
    edges = [Edge(f"E{j}", tuple(e)) for j, e in enumerate(members, start=1)]
    return OcpInstance(tuple(el.id for el in labels), tuple(universe), tuple(edges))


@st.composite
def instance_and_sequence(draw, **kw):
    inst = draw(instances(**kw))
    seq = draw(st.lists(st.sampled_from(inst.edge_ids), max_size=8))
    return inst, seq


def naive_cost(instance, sequence) -> int:
    """Direct transcription of the cost definition with Python ints."""
    total = 0
    for i, eid in enumerate(sequence):
        edge = set(instance.edge(eid).elements)
        before = set()
        for prev in sequence[:i]:
            before |= set(instance.edge(prev).elements)
        u = sum(instance.weight(x) for x in edge - before)
        total += 2**u if u > 0 else 0
    return total
