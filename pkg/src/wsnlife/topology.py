"""Sensor network graph and its hop-distance layering around the base station.

Nodes are opaque identifiers (strings or ints) compared by equality;
deterministic ordering always uses the canonical string form.
"""

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import Error

NodeId = str | int


class TopologyError(Error):
    pass


class EmptyTopology(TopologyError):
    """The node set is empty."""


class UnreachableNode(TopologyError):
    """Some node has no path to the base station."""

    def __init__(self, nodes):
        self.nodes = tuple(nodes)
        names = ", ".join(node_key(v) for v in self.nodes)
        super().__init__(f"no path to the base station from: {names}")


def node_key(node: NodeId) -> str:
    """Canonical sort key for node identifiers."""
    return str(node)


def canonical_edge(a: NodeId, b: NodeId) -> tuple[NodeId, NodeId]:
    return tuple(sorted((a, b), key=node_key))


@dataclass(frozen=True)
class Topology:
    """Undirected node graph with a designated base station."""

    nodes: frozenset
    edges: frozenset
    base: NodeId

    def __post_init__(self):
        nodes = frozenset(self.nodes)
        if not nodes:
            raise EmptyTopology("topology has no nodes")
        canon = set()
        for edge in self.edges:
            a, b = edge
            if a == b:
                raise TopologyError(f"self-loop on node {node_key(a)!r}")
            for v in (a, b):
                if v not in nodes:
                    raise TopologyError(f"edge endpoint {node_key(v)!r} is not a node")
            canon.add(canonical_edge(a, b))
        if self.base not in nodes:
            raise TopologyError(f"base station {node_key(self.base)!r} is not a node")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", frozenset(canon))

    def adjacency(self) -> dict:
        adj = {v: set() for v in self.nodes}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def to_dict(self) -> dict:
        return {
            "nodes": sorted(self.nodes, key=node_key),
            "edges": sorted([list(e) for e in self.edges]),
            "base": self.base,
        }


@dataclass(frozen=True)
class SpherePartition:
    """Hop-distance layers S_0..S_k with sizes s_i and cumulative sizes b_i.

    ``spheres[i]`` holds the nodes exactly i hops from the base station,
    ``sizes[i]`` its cardinality and ``cumulative[i]`` the number of nodes
    within i hops.  ``total`` is the network size N.
    """

    spheres: tuple
    sizes: tuple
    cumulative: tuple
    total: int

    @property
    def k(self) -> int:
        """Largest hop distance in the network."""
        return len(self.spheres) - 1

    @classmethod
    def from_spheres(cls, spheres) -> "SpherePartition":
        spheres = tuple(frozenset(s) for s in spheres)
        if not spheres:
            raise EmptyTopology("partition has no spheres")
        seen = set()
        for i, sphere in enumerate(spheres):
            if not sphere:
                raise TopologyError(f"sphere {i} is empty")
            if seen & sphere:
                raise TopologyError(f"sphere {i} overlaps an inner sphere")
            seen |= sphere
        sizes = tuple(len(s) for s in spheres)
        cumulative = []
        running = 0
        for s in sizes:
            running += s
            cumulative.append(running)
        return cls(spheres, sizes, tuple(cumulative), running)

    @classmethod
    def from_sizes(cls, sizes) -> "SpherePartition":
        """Synthetic partition with placeholder node names, for analysis that
        depends only on the layer sizes."""
        spheres = []
        for i, size in enumerate(sizes):
            spheres.append(frozenset(f"s{i}n{j:02d}" for j in range(size)))
        return cls.from_spheres(spheres)

    def sphere_index(self, node: NodeId) -> int:
        for i, sphere in enumerate(self.spheres):
            if node in sphere:
                return i
        raise KeyError(node)

    def to_dict(self) -> dict:
        return {
            "spheres": [sorted(s, key=node_key) for s in self.spheres],
            "sizes": list(self.sizes),
            "cumulative": list(self.cumulative),
            "total": self.total,
            "max_hops": self.k,
        }


def partition(topology: Topology) -> SpherePartition:
    """Layer the network by breadth-first hop distance from the base station.

    Raises UnreachableNode if the graph is disconnected: every analysis in
    this package assumes all nodes route to the base.
    """
    if not topology.nodes:
        raise EmptyTopology("topology has no nodes")
    adj = topology.adjacency()
    reached = {topology.base}
    layers = [[topology.base]]
    frontier = [topology.base]
    while frontier:
        nxt = []
        for v in sorted(frontier, key=node_key):
            for u in sorted(adj[v], key=node_key):
                if u not in reached:
                    reached.add(u)
                    nxt.append(u)
        if nxt:
            layers.append(nxt)
        frontier = nxt
    missing = topology.nodes - reached
    if missing:
        raise UnreachableNode(sorted(missing, key=node_key))
    return SpherePartition.from_spheres(layers)


_TOPOLOGY_FIELDS = {"schema_version", "nodes", "edges", "base"}


def topology_from_dict(doc: dict, source: str = "<topology>") -> Topology:
    """Build a Topology from a parsed document, rejecting unknown fields."""
    if not isinstance(doc, dict):
        raise TopologyError(f"{source}: topology document must be an object")
    unknown = set(doc) - _TOPOLOGY_FIELDS
    if unknown:
        raise TopologyError(f"{source}: unknown fields: {', '.join(sorted(unknown))}")
    for required in ("nodes", "edges", "base"):
        if required not in doc:
            raise TopologyError(f"{source}: missing field {required!r}")
    nodes = doc["nodes"]
    if not isinstance(nodes, list):
        raise TopologyError(f"{source}: 'nodes' must be a list")
    edges = []
    seen = set()
    for i, pair in enumerate(doc["edges"]):
        if not isinstance(pair, list) or len(pair) != 2:
            raise TopologyError(f"{source}: edge {i} must be a two-element list")
        canon = canonical_edge(pair[0], pair[1])
        if canon in seen:
            raise TopologyError(f"{source}: duplicate edge {list(canon)}")
        seen.add(canon)
        edges.append(canon)
    return Topology(nodes=frozenset(nodes), edges=frozenset(edges), base=doc["base"])


def load_topology(path) -> Topology:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise TopologyError(f"{path}: not valid JSON: {exc}") from exc
    return topology_from_dict(doc, source=str(path))


def save_topology(topology: Topology, path) -> None:
    doc = {"schema_version": 1, **topology.to_dict()}
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
