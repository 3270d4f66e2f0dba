"""Community detection on image networks and its mapping back to pixel regions."""

import heapq
import logging
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np
import pandas as pd
from scipy import sparse

from builders.similarity import DEFAULT_RADIUS, build_pixel_similarity_network
from core.exceptions import SegmentationError
from graphs.spatial_graph import SpatialGraph
from imaging.netpbm import write_pgm
from models.features import SimilarityFeatures
from models.image import BACKGROUND, GrayImage, LabelImage
from models.segmentation import Partition
from utils.tables import read_csv_table, write_csv

logger = logging.getLogger(__name__)

CommunityMethod = Literal["greedy_modularity", "label_propagation"]

MAX_PROPAGATION_PASSES = 100

_LABEL_COLUMNS = ["x", "y", "label"]


def _require_undirected(g: SpatialGraph) -> None:
    if g.directed:
        raise SegmentationError("community detection needs an undirected graph")


def _check_partition(g: SpatialGraph, p: Partition) -> None:
    if len(p.labels) != g.node_count:
        raise SegmentationError(
            "partition does not cover the graph",
            details={"labels": len(p.labels), "nodes": g.node_count},
        )


def modularity(g: SpatialGraph, p: Partition) -> float:
    """Weighted Q = sum_c (e_cc - a_c^2)."""
    _require_undirected(g)
    _check_partition(g, p)
    adj = g.adjacency_matrix()
    total = float(adj.sum())
    if total <= 0.0:
        raise SegmentationError("modularity is undefined on a graph without edges")

    k = p.community_count
    member = sparse.csr_matrix(
        (np.ones(len(p.labels)), (np.arange(len(p.labels)), p.labels)),
        shape=(len(p.labels), k),
    )
    inner = np.asarray((member.T @ adj @ member).diagonal()).ravel() / total
    ends = np.asarray(member.T @ np.asarray(adj.sum(axis=1)).ravel()).ravel() / total
    return float(np.sum(inner - ends * ends))


def _greedy_modularity(g: SpatialGraph) -> np.ndarray:
    n = g.node_count
    total = 2.0 * sum(w for u, v, w in g.edges() if u != v)
    labels = np.arange(n)
    if total <= 0.0:
        return labels

    # e[a][b]: fraction of edge ends joining communities a and b (a != b)
    e: list[dict[int, float]] = [defaultdict(float) for _ in range(n)]
    share = np.zeros(n)
    for u, v, w in g.edges():
        if u == v:
            continue
        e[u][v] += w / total
        e[v][u] += w / total
        share[u] += w / total
        share[v] += w / total

    alive = [True] * n
    members: list[list[int]] = [[u] for u in range(n)]
    version = [0] * n
    heap: list[tuple[float, int, int, int]] = []

    def push_row_best(a: int) -> None:
        version[a] += 1
        best: tuple[float, int] | None = None
        for b, eab in e[a].items():
            if b <= a:
                continue
            dq = 2.0 * (eab - share[a] * share[b])
            if best is None or dq > best[0] or (dq == best[0] and b < best[1]):
                best = (dq, b)
        if best is not None:
            heapq.heappush(heap, (-best[0], a, best[1], version[a]))

    for a in range(n):
        push_row_best(a)

    merges = 0
    while heap:
        neg_dq, a, b, ver = heapq.heappop(heap)
        if not alive[a] or ver != version[a]:
            continue
        if -neg_dq <= 0.0:
            break
        # merge b into the smaller label a
        for c, ebc in e[b].items():
            if c == a:
                continue
            e[a][c] += ebc
            e[c][a] += ebc
            del e[c][b]
        del e[a][b]
        e[b] = defaultdict(float)
        share[a] += share[b]
        alive[b] = False
        members[a].extend(members[b])
        members[b] = []
        merges += 1
        for c in [a, *e[a]]:
            push_row_best(c)

    for lab, nodes in enumerate(members):
        labels[nodes] = lab
    logger.debug("Greedy modularity performed %d merges", merges)
    return labels


def _label_propagation(g: SpatialGraph, seed: int) -> np.ndarray:
    n = g.node_count
    labels = np.arange(n)
    rng = np.random.default_rng(seed)
    for sweep in range(1, MAX_PROPAGATION_PASSES + 1):
        changed = False
        for u in rng.permutation(n).tolist():
            votes: dict[int, float] = defaultdict(float)
            for v, w in g.neighbors(u).items():
                if v != u:
                    votes[int(labels[v])] += w
            if not votes:
                continue
            top = max(votes.values())
            winner = min(lab for lab, weight in votes.items() if weight == top)
            if winner != labels[u]:
                labels[u] = winner
                changed = True
        if not changed:
            logger.debug("Label propagation settled after %d passes", sweep)
            break
    else:
        logger.warning("Label propagation stopped at the %d-pass limit", MAX_PROPAGATION_PASSES)
    return labels


def detect_communities(
    g: SpatialGraph, method: CommunityMethod = "greedy_modularity", seed: int = 42
) -> Partition:
    _require_undirected(g)
    if g.node_count == 0:
        raise SegmentationError("cannot detect communities on an empty graph")
    if method == "greedy_modularity":
        labels = _greedy_modularity(g)
    elif method == "label_propagation":
        labels = _label_propagation(g, seed)
    else:
        raise SegmentationError(f"unknown community method {method!r}")
    partition = Partition.from_labels(labels)
    logger.info("%s found %d communities", method, partition.community_count)
    return partition


def merge_small_communities(g: SpatialGraph, p: Partition, min_size: int) -> Partition:
    """Fold communities under ``min_size`` into their most strongly linked neighbour."""
    _check_partition(g, p)
    if min_size < 0:
        raise SegmentationError("min_size must be non-negative", details={"min_size": min_size})
    labels = p.labels.copy()
    members: dict[int, list[int]] = {lab: nodes for lab, nodes in enumerate(p.communities())}
    stranded: set[int] = set()

    while True:
        small = [
            (len(nodes), lab)
            for lab, nodes in members.items()
            if len(nodes) < min_size and lab not in stranded
        ]
        if not small:
            break
        _, lab = min(small)
        links: dict[int, float] = defaultdict(float)
        for u in members[lab]:
            for v, w in g.neighbors(u).items():
                other = int(labels[v])
                if other != lab:
                    links[other] += w
        if not links:
            stranded.add(lab)
            continue
        top = max(links.values())
        target = min(other for other, weight in links.items() if weight == top)
        labels[members[lab]] = target
        members[target].extend(members.pop(lab))

    return Partition.from_labels(labels)


def partition_to_label_image(
    p: Partition, g: SpatialGraph, dims: tuple[int, int]
) -> LabelImage:
    """Paint node labels at their pixels; the largest community becomes label 0.

    ``dims`` is (height, width). Pixels without a node hold ``BACKGROUND``.
    """
    _check_partition(g, p)
    positions = g.positions
    if positions is None:
        raise SegmentationError("graph nodes carry no pixel positions")
    height, width = dims
    pixels = np.rint(positions).astype(np.int64)
    outside = (
        (pixels[:, 0] < 0) | (pixels[:, 0] >= width) | (pixels[:, 1] < 0) | (pixels[:, 1] >= height)
    )
    if np.any(outside):
        raise SegmentationError(
            "node position outside the image",
            details={"node": int(np.flatnonzero(outside)[0]), "dims": dims},
        )

    sizes = np.bincount(p.labels, minlength=p.community_count)
    order = sorted(range(p.community_count), key=lambda lab: (-sizes[lab], lab))
    rank = np.empty(p.community_count, dtype=np.int64)
    rank[order] = np.arange(p.community_count)

    grid = np.full((height, width), BACKGROUND, dtype=np.int64)
    grid[pixels[:, 1], pixels[:, 0]] = rank[p.labels]
    return LabelImage(width=width, height=height, labels=grid)


@dataclass(frozen=True)
class SegmentationResult:
    graph: SpatialGraph
    partition: Partition
    modularity: float | None
    label_image: LabelImage


def segment_image(
    img: GrayImage,
    threshold: float,
    radius: float = DEFAULT_RADIUS,
    method: CommunityMethod = "greedy_modularity",
    seed: int = 42,
    min_size: int = 0,
    features: SimilarityFeatures | None = None,
) -> SegmentationResult:
    graph = build_pixel_similarity_network(img, threshold, radius, features)
    partition = detect_communities(graph, method, seed)
    if min_size > 1:
        before = partition.community_count
        partition = merge_small_communities(graph, partition, min_size)
        logger.info(
            "Merged communities below %d nodes: %d -> %d",
            min_size,
            before,
            partition.community_count,
        )
    quality = modularity(graph, partition) if graph.edge_count else None
    return SegmentationResult(
        graph=graph,
        partition=partition,
        modularity=quality,
        label_image=partition_to_label_image(partition, graph, img.shape),
    )


def label_table(image: LabelImage) -> pd.DataFrame:
    ys, xs = np.indices(image.labels.shape)
    return pd.DataFrame(
        {"x": xs.ravel(), "y": ys.ravel(), "label": image.labels.ravel()}
    )


def export_labels_csv(image: LabelImage, path: Path) -> None:
    write_csv(label_table(image), path)


def read_labels_csv(path: Path, dims: tuple[int, int]) -> LabelImage:
    """Label image from an ``x,y,label`` table; unlisted pixels are background."""
    table = read_csv_table(
        path, SegmentationError, _LABEL_COLUMNS, integer_columns=_LABEL_COLUMNS
    )
    height, width = dims
    xs, ys = table["x"].to_numpy(), table["y"].to_numpy()
    if np.any((xs < 0) | (xs >= width) | (ys < 0) | (ys >= height)):
        raise SegmentationError("label file names pixels outside the image", {"dims": dims})
    grid = np.full((height, width), BACKGROUND, dtype=np.int64)
    grid[ys, xs] = table["label"].to_numpy()
    return LabelImage(width=width, height=height, labels=grid)


def preview_samples(image: LabelImage) -> np.ndarray:
    """Gray levels for a quick look: background 0, label l shown as 1 + l mod 255."""
    labels = image.labels
    return np.where(labels == BACKGROUND, 0, 1 + labels % 255)


def export_labels_pgm(image: LabelImage, path: Path) -> None:
    write_pgm(preview_samples(image), path)
