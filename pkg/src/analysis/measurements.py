"""Node- and graph-level complex-network measurements."""

import logging
from collections import Counter
from itertools import combinations
from pathlib import Path

import numpy as np
import pandas as pd
from scipy import sparse
from scipy.sparse import csgraph

from core.exceptions import GraphError
from graphs.spatial_graph import SpatialGraph
from models.features import FEATURE_NAMES, DegreeHistogram, NodeFeatureVector
from models.simulation import TopologyStats
from utils.tables import write_csv

logger = logging.getLogger(__name__)

_PATH_CHUNK = 256


def _require_undirected(g: SpatialGraph) -> None:
    if g.directed:
        raise GraphError("measurement defined for undirected graphs only")


def clustering_coefficient(g: SpatialGraph, u: int) -> float:
    _require_undirected(g)
    nbrs = [v for v in g.neighbors(u) if v != u]
    k = len(nbrs)
    if k < 2:
        return 0.0
    links = sum(1 for a, b in combinations(nbrs, 2) if b in g.neighbors(a))
    return links / (k * (k - 1) / 2)


def hierarchical_degree(g: SpatialGraph, u: int, h: int) -> int:
    """Number of nodes at hop distance exactly h from u."""
    if h < 1:
        raise GraphError("hierarchical level must be >= 1", details={"h": h})
    return sum(1 for d in g.shortest_path_lengths(u) if d == h)


def degree_distribution(g: SpatialGraph) -> DegreeHistogram:
    counts = Counter(g.degree(u) for u in range(g.node_count))
    return DegreeHistogram(counts=dict(sorted(counts.items())))


def node_feature_vector(g: SpatialGraph, u: int) -> NodeFeatureVector:
    _require_undirected(g)
    hops = g.shortest_path_lengths(u)
    return NodeFeatureVector(
        degree=g.degree(u),
        strength=g.strength(u),
        clustering=clustering_coefficient(g, u),
        hdeg2=sum(1 for d in hops if d == 2),
        hdeg3=sum(1 for d in hops if d == 3),
    )


def _binary(matrix: sparse.csr_matrix) -> sparse.csr_matrix:
    out = matrix.copy().tocsr()
    out.data[:] = 1.0
    return out


def node_feature_matrix(g: SpatialGraph) -> np.ndarray:
    """(N, 5) array of every node's feature vector, computed with sparse products."""
    _require_undirected(g)
    n = g.node_count
    if n == 0:
        return np.zeros((0, len(FEATURE_NAMES)))

    weighted = g.adjacency_matrix()
    degree = np.diff(weighted.indptr).astype(float)
    strength = np.asarray(weighted.sum(axis=1)).ravel()

    links = _binary(weighted)
    links = (links - sparse.diags(links.diagonal())).tocsr()
    links.eliminate_zeros()
    k = np.asarray(links.sum(axis=1)).ravel()
    closed = np.asarray((links @ links).multiply(links).sum(axis=1)).ravel() / 2.0
    pairs = k * (k - 1) / 2.0
    clustering = np.divide(closed, pairs, out=np.zeros(n), where=k >= 2)

    step = _binary(links + sparse.identity(n, format="csr"))
    reach_prev = np.ones(n)
    reach = step.copy()
    rings: list[np.ndarray] = []
    for level in range(3):
        counts = np.diff(reach.indptr).astype(float)
        rings.append(counts - reach_prev)
        reach_prev = counts
        if level < 2:
            reach = _binary(reach @ step)

    return np.column_stack([degree, strength, clustering, rings[1], rings[2]])


def average_path_length(g: SpatialGraph) -> float:
    """Mean hop distance over ordered reachable pairs u != v; 0.0 when there are none."""
    n = g.node_count
    if n < 2:
        return 0.0
    adjacency = g.adjacency_matrix()
    total, pairs = 0.0, 0
    for start in range(0, n, _PATH_CHUNK):
        rows = np.arange(start, min(start + _PATH_CHUNK, n))
        dist = csgraph.shortest_path(adjacency, directed=g.directed, unweighted=True, indices=rows)
        finite = np.isfinite(dist) & (dist > 0)
        total += float(dist[finite].sum())
        pairs += int(finite.sum())
    return total / pairs if pairs else 0.0


def graph_summary(g: SpatialGraph) -> TopologyStats:
    count, _ = g.connected_components()
    clustering = 0.0
    if not g.directed and g.node_count:
        clustering = float(node_feature_matrix(g)[:, 2].mean())
    degrees = np.array([g.degree(u) for u in range(g.node_count)], dtype=float)
    return TopologyStats(
        node_count=g.node_count,
        edge_count=g.edge_count,
        mean_degree=float(degrees.mean()) if len(degrees) else 0.0,
        mean_clustering=clustering,
        avg_path_len=average_path_length(g),
        components=count,
    )


def features_table(features: np.ndarray) -> pd.DataFrame:
    table = pd.DataFrame(features, columns=list(FEATURE_NAMES))
    table = table.astype({"degree": "int64", "hdeg2": "int64", "hdeg3": "int64"})
    table.insert(0, "node", np.arange(len(table)))
    return table


def export_features_csv(g: SpatialGraph, path: Path) -> None:
    write_csv(features_table(node_feature_matrix(g)), path)
    logger.info("Wrote node features for %d nodes to %s", g.node_count, path)


def export_histogram_csv(histogram: DegreeHistogram, path: Path) -> None:
    table = pd.DataFrame(
        {"degree": list(histogram.counts), "count": list(histogram.counts.values())},
        dtype="int64",
    )
    write_csv(table, path)
