"""Weighted spatial graph shared by the image builders, analysis and simulator."""

import math
from collections import deque
from collections.abc import Iterable, Iterator, Mapping
from types import MappingProxyType
from typing import TYPE_CHECKING, Final

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from core.exceptions import GraphError

if TYPE_CHECKING:
    import networkx as nx

Position = tuple[float, float]

# Hop distance reported for nodes outside the source's component.
UNREACHABLE: Final = None


class SpatialGraph:
    """Adjacency-list graph keyed by dense integer ids, with optional 2D positions.

    Construction is single-writer: builders add nodes and edges, then call
    ``freeze()``; afterwards the graph is read-only and may be shared.
    """

    def __init__(
        self,
        directed: bool = False,
        allow_self_loops: bool = False,
        bounds: tuple[float, float] | None = None,
    ) -> None:
        self.directed = directed
        self.allow_self_loops = allow_self_loops
        self.bounds = bounds
        self._adj: list[dict[int, float]] = []
        self._positions: list[Position | None] = []
        self._frozen = False

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edges: Iterable[tuple[int, int, float]],
        positions: Iterable[Position | None] | None = None,
        directed: bool = False,
        allow_self_loops: bool = False,
        bounds: tuple[float, float] | None = None,
    ) -> "SpatialGraph":
        graph = cls(directed=directed, allow_self_loops=allow_self_loops, bounds=bounds)
        pos_list = list(positions) if positions is not None else [None] * node_count
        if len(pos_list) != node_count:
            raise GraphError(
                "Position count does not match node count",
                details={"positions": len(pos_list), "nodes": node_count},
            )
        for pos in pos_list:
            graph.add_node(pos)
        for u, v, w in edges:
            graph.add_edge(u, v, w)
        return graph

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> "SpatialGraph":
        self._frozen = True
        return self

    def _check_mutable(self) -> None:
        if self._frozen:
            raise GraphError("Graph is frozen; construction phase has ended")

    def _check_node(self, u: int) -> None:
        if not 0 <= u < len(self._adj):
            raise GraphError(f"Unknown node {u}", details={"node_count": len(self._adj)})

    def add_node(self, position: Position | None = None) -> int:
        self._check_mutable()
        if position is not None:
            x, y = float(position[0]), float(position[1])
            if not (math.isfinite(x) and math.isfinite(y)):
                raise GraphError("Node position must be finite", details={"position": position})
            if self.bounds is not None:
                width, height = self.bounds
                if not (0.0 <= x < width and 0.0 <= y < height):
                    raise GraphError(
                        "Node position outside declared bounds",
                        details={"position": position, "bounds": self.bounds},
                    )
            position = (x, y)
        self._adj.append({})
        self._positions.append(position)
        return len(self._adj) - 1

    def add_edge(self, u: int, v: int, w: float = 1.0) -> None:
        self._check_mutable()
        self._check_node(u)
        self._check_node(v)
        if u == v and not self.allow_self_loops:
            raise GraphError(f"Self-loop on node {u} is not allowed")
        if not (w > 0.0 and math.isfinite(w)):
            raise GraphError("Edge weight must be positive and finite", details={"weight": w})
        self._adj[u][v] = float(w)
        if not self.directed:
            self._adj[v][u] = float(w)

    def position(self, u: int) -> Position | None:
        self._check_node(u)
        return self._positions[u]

    @property
    def has_positions(self) -> bool:
        return bool(self._positions) and all(p is not None for p in self._positions)

    @property
    def positions(self) -> np.ndarray | None:
        """(N, 2) array of x, y when every node is positioned, else None."""
        if not self.has_positions:
            return None
        return np.array(self._positions, dtype=float).reshape(-1, 2)

    def neighbors(self, u: int) -> Mapping[int, float]:
        self._check_node(u)
        return MappingProxyType(self._adj[u])

    def degree(self, u: int) -> int:
        """Incident edge count (out-edges for directed graphs; a self-loop counts once)."""
        self._check_node(u)
        return len(self._adj[u])

    def strength(self, u: int) -> float:
        self._check_node(u)
        return math.fsum(self._adj[u].values())

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Yield (u, v, w) in ascending order; undirected edges appear once with u <= v."""
        for u, nbrs in enumerate(self._adj):
            for v in sorted(nbrs):
                if self.directed or u <= v:
                    yield u, v, nbrs[v]

    @property
    def edge_count(self) -> int:
        return sum(1 for _ in self.edges())

    @property
    def total_strength(self) -> float:
        return math.fsum(math.fsum(nbrs.values()) for nbrs in self._adj)

    def shortest_path_lengths(self, u: int) -> list[int | None]:
        """Unweighted BFS hop distances from u; ``UNREACHABLE`` outside its component."""
        self._check_node(u)
        hops = [-1] * len(self._adj)
        hops[u] = 0
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in self._adj[x]:
                if hops[y] < 0:
                    hops[y] = hops[x] + 1
                    queue.append(y)
        return [h if h >= 0 else UNREACHABLE for h in hops]

    def adjacency_matrix(self) -> sparse.csr_matrix:
        n = len(self._adj)
        rows: list[int] = []
        cols: list[int] = []
        data: list[float] = []
        for u, nbrs in enumerate(self._adj):
            for v, w in nbrs.items():
                rows.append(u)
                cols.append(v)
                data.append(w)
        return sparse.csr_matrix((data, (rows, cols)), shape=(n, n), dtype=float)

    def connected_components(self) -> tuple[int, np.ndarray]:
        """Component count and per-node component label (weak components if directed)."""
        if not self._adj:
            return 0, np.zeros(0, dtype=int)
        count, labels = csgraph.connected_components(
            self.adjacency_matrix(), directed=self.directed, connection="weak"
        )
        return int(count), labels

    def is_connected(self) -> bool:
        count, _ = self.connected_components()
        return count == 1

    def subgraph(self, nodes: Iterable[int]) -> "SpatialGraph":
        """Induced subgraph; node i of the result is the i-th id of ``sorted(set(nodes))``."""
        keep = sorted(set(nodes))
        for u in keep:
            self._check_node(u)
        index = {u: i for i, u in enumerate(keep)}
        sub = SpatialGraph(
            directed=self.directed,
            allow_self_loops=self.allow_self_loops,
            bounds=self.bounds,
        )
        for u in keep:
            sub.add_node(self._positions[u])
        for u in keep:
            for v, w in self._adj[u].items():
                if v in index and (self.directed or u <= v):
                    sub.add_edge(index[u], index[v], w)
        return sub.freeze()

    def to_networkx(self) -> "nx.Graph":
        import networkx as nx

        graph: nx.Graph = nx.DiGraph() if self.directed else nx.Graph()
        for u, pos in enumerate(self._positions):
            if pos is None:
                graph.add_node(u)
            else:
                graph.add_node(u, pos=pos)
        graph.add_weighted_edges_from(self.edges())
        return graph

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"SpatialGraph({kind}, nodes={self.node_count}, edges={self.edge_count})"
