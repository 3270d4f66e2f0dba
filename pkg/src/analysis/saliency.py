"""Random-walk saliency over the edge-pixel line network."""

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import ValidationError
from scipy import sparse
from scipy.sparse import csgraph

from builders.orientation_lines import LineMode, build_saliency_network
from core.exceptions import BuildError, ConvergenceError, StochasticMatrixError
from graphs.spatial_graph import SpatialGraph
from models.image import EdgePixelSet, GrayImage
from models.saliency import OccupancyVector, SaliencyIndexVector
from utils.tables import read_csv_table, write_csv

logger = logging.getLogger(__name__)

COLUMN_ATOL = 1e-12
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000


class StochasticMatrix:
    """Column-stochastic transition matrix; column j holds the moves out of node j.

    ``node_mass`` is each node's share used to weight disconnected components
    against each other (node strength when built from a graph).
    """

    def __init__(self, matrix: sparse.spmatrix, node_mass: np.ndarray | None = None) -> None:
        m = sparse.csc_matrix(matrix, dtype=float)
        rows, cols = m.shape
        if rows != cols:
            raise StochasticMatrixError("transition matrix must be square", {"shape": m.shape})
        if m.nnz and m.data.min() < 0.0:
            raise StochasticMatrixError("transition matrix has negative entries")
        sums = np.asarray(m.sum(axis=0)).ravel()
        bad = np.flatnonzero(np.abs(sums - 1.0) > COLUMN_ATOL)
        if len(bad):
            raise StochasticMatrixError(
                "columns do not sum to 1",
                details={"columns": bad[:10].tolist(), "sums": sums[bad[:10]].tolist()},
            )
        self.matrix = m
        self.node_mass = np.ones(rows) if node_mass is None else np.asarray(node_mass, float)

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[0])

    def dense(self) -> np.ndarray:
        return np.asarray(self.matrix.todense())


def build_stochastic_matrix(
    g: SpatialGraph, indices: SaliencyIndexVector | None = None
) -> StochasticMatrix:
    """W_ij = w_ji s_i / sum_m w_jm s_m: move from j to a neighbour i, biased by s."""
    n = g.node_count
    if n == 0:
        raise StochasticMatrixError("walk graph has no nodes")
    s = np.ones(n) if indices is None else indices.values
    if len(s) != n:
        raise StochasticMatrixError(
            "saliency index count does not match node count", {"indices": len(s), "nodes": n}
        )

    biased = (sparse.diags(s) @ g.adjacency_matrix().T).tocsc()
    mass = np.asarray(biased.sum(axis=0)).ravel()
    stuck = np.flatnonzero(mass <= 0.0)
    if len(stuck):
        raise StochasticMatrixError(
            "nodes with no outgoing transition mass", details={"nodes": stuck[:10].tolist()}
        )
    walk = (biased @ sparse.diags(1.0 / mass)).tocsc()
    strength = np.asarray(g.adjacency_matrix().sum(axis=1)).ravel()
    return StochasticMatrix(walk, node_mass=strength)


def _lazy_power(sub: sparse.csc_matrix, tol: float, max_iter: int) -> tuple[np.ndarray, int]:
    size = sub.shape[0]
    q = np.full(size, 1.0 / size)
    for step in range(1, max_iter + 1):
        nxt = 0.5 * (sub @ q + q)
        change = float(np.abs(nxt - q).sum())
        q = nxt
        if change <= tol:
            return q / q.sum(), step
    raise ConvergenceError(
        "stationary distribution did not converge",
        details={"max_iter": max_iter, "tol": tol, "nodes": size},
    )


def stationary_distribution(
    w: StochasticMatrix | sparse.spmatrix,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> OccupancyVector:
    """Fixed point q = Wq by power iteration on (W + I) / 2, one component at a time.

    Components are scaled by their share of total node mass, so for an
    unbiased walk on an undirected graph q_i = strength_i / total strength.
    """
    if not isinstance(w, StochasticMatrix):
        w = StochasticMatrix(w)
    count, labels = csgraph.connected_components(w.matrix, directed=True, connection="weak")
    total_mass = float(w.node_mass.sum())

    q = np.zeros(w.dimension)
    iterations = 0
    for comp in range(count):
        idx = np.flatnonzero(labels == comp)
        sub = w.matrix[idx][:, idx].tocsc()
        local, steps = _lazy_power(sub, tol, max_iter)
        share = float(w.node_mass[idx].sum()) / total_mass if total_mass > 0 else len(idx) / len(q)
        q[idx] = local * share
        iterations = max(iterations, steps)

    logger.debug("Stationary solve: %d components, %d iterations", count, iterations)
    return OccupancyVector(values=q / q.sum(), iterations=iterations)


def saliency_map(
    dims: tuple[int, int], edges: EdgePixelSet, q: np.ndarray
) -> GrayImage:
    """Edge pixels rescaled so min q maps to 1 and max q to 255; everything else 0."""
    height, width = dims
    q = np.asarray(q, dtype=float)
    if len(q) != len(edges):
        raise BuildError(
            "occupancy length does not match edge pixel count",
            details={"q": len(q), "edges": len(edges)},
        )
    samples = np.zeros((height, width))
    if len(q):
        lo, hi = float(q.min()), float(q.max())
        scaled = np.full(len(q), 255.0) if hi == lo else 1.0 + (q - lo) * (254.0 / (hi - lo))
        samples[edges.coords[:, 1], edges.coords[:, 0]] = scaled
    return GrayImage(width=width, height=height, samples=samples)


@dataclass(frozen=True)
class SaliencyResult:
    edges: EdgePixelSet
    graph: SpatialGraph
    walk_nodes: np.ndarray
    q: np.ndarray
    occupancy: OccupancyVector
    image: GrayImage

    def table(self) -> pd.DataFrame:
        """Raw per-edge-pixel occupancy; ``q_ratio`` is q times the walk size."""
        return pd.DataFrame(
            {
                "node": np.arange(len(self.q)),
                "x": self.edges.coords[:, 0],
                "y": self.edges.coords[:, 1],
                "q": self.q,
                "q_ratio": self.q * len(self.walk_nodes),
            }
        )


def read_saliency_indices(path: Path, edges: EdgePixelSet) -> SaliencyIndexVector:
    """Per-edge-pixel priors from an ``x,y,s`` CSV; unlisted pixels keep 1."""
    table = read_csv_table(
        path,
        StochasticMatrixError,
        ["x", "y", "s"],
        integer_columns=["x", "y"],
        numeric_columns=["s"],
    )
    lookup = {
        (int(x), int(y)): float(s) for x, y, s in table[["x", "y", "s"]].itertuples(index=False)
    }
    values = np.array([lookup.get((x, y), 1.0) for x, y in edges.coords.tolist()])
    try:
        return SaliencyIndexVector(values=values)
    except ValidationError as exc:
        raise StochasticMatrixError(f"Invalid saliency indices in {path}: s must be > 0") from exc


def compute_saliency(
    img: GrayImage,
    contrast: float,
    mode: LineMode = "tangent",
    indices: SaliencyIndexVector | None = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SaliencyResult:
    edges, graph = build_saliency_network(img, contrast, mode)
    active = np.array([u for u in range(graph.node_count) if graph.degree(u) > 0], dtype=np.int64)
    if len(active) == 0:
        raise StochasticMatrixError("no edge pixel has a line neighbour")
    if len(active) < graph.node_count:
        logger.info(
            "Excluding %d isolated edge pixels from the walk", graph.node_count - len(active)
        )

    walk = graph.subgraph(active.tolist())
    walk_indices = None if indices is None else SaliencyIndexVector(values=indices.values[active])
    occupancy = stationary_distribution(build_stochastic_matrix(walk, walk_indices), tol, max_iter)

    q = np.zeros(graph.node_count)
    q[active] = occupancy.values
    return SaliencyResult(
        edges=edges,
        graph=graph,
        walk_nodes=active,
        q=q,
        occupancy=occupancy,
        image=saliency_map(img.shape, edges, q),
    )


def export_saliency_csv(result: SaliencyResult, path: Path) -> None:
    write_csv(result.table(), path)
