"""Shared test utilities: independent oracles and random input generators."""

import math
import random

from wsnlife.topology import SpherePartition, Topology, canonical_edge


def hop_distances_oracle(topology: Topology) -> dict:
    """Brute-force shortest hop counts by repeated edge relaxation.

    Deliberately not a breadth-first search, so it is an independent check
    of the partitioner.
    """
    dist = {v: math.inf for v in topology.nodes}
    dist[topology.base] = 0
    for _ in range(len(topology.nodes)):
        changed = False
        for a, b in topology.edges:
            if dist[a] + 1 < dist[b]:
                dist[b] = dist[a] + 1
                changed = True
            if dist[b] + 1 < dist[a]:
                dist[a] = dist[b] + 1
                changed = True
        if not changed:
            break
    return dist


def random_connected_topology(rng: random.Random, n: int) -> Topology:
    """Random spanning tree over n nodes plus a few extra edges; base is v00."""
    nodes = [f"v{i:02d}" for i in range(n)]
    edges = set()
    for i in range(1, n):
        edges.add(canonical_edge(nodes[i], nodes[rng.randrange(i)]))
    for _ in range(rng.randrange(0, max(1, n))):
        a, b = rng.sample(nodes, 2)
        edges.add(canonical_edge(a, b))
    return Topology(nodes=frozenset(nodes), edges=frozenset(edges), base=nodes[0])


def random_partition(rng: random.Random, max_total: int = 50) -> SpherePartition:
    """Random sphere-size structure with one base node and N <= max_total."""
    sizes = [1]
    remaining = rng.randint(1, max_total - 1)
    while remaining > 0:
        size = rng.randint(1, remaining)
        sizes.append(size)
        remaining -= size
    return SpherePartition.from_sizes(sizes)
