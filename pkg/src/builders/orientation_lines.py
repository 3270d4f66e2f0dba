"""Edge-pixel network: each edge pixel links to the edge pixels under its tangent or normal line."""

import logging
from typing import Literal

import numpy as np

from core.exceptions import BuildError
from graphs.spatial_graph import SpatialGraph
from imaging.gradient import estimate_gradient, fold_orientation, select_edge_pixels
from imaging.rasterize import rasterize_line
from models.image import EdgePixelSet, GrayImage

logger = logging.getLogger(__name__)

LineMode = Literal["tangent", "normal"]


def line_directions(edges: EdgePixelSet, mode: LineMode) -> np.ndarray:
    """Stored orientations are normals; the tangent is the normal turned by pi/2."""
    if mode == "tangent":
        return fold_orientation(edges.orientation + np.pi / 2)
    return np.array(edges.orientation, dtype=float)


def build_orientation_line_network(
    img: GrayImage, edges: EdgePixelSet, mode: LineMode = "tangent"
) -> SpatialGraph:
    if len(edges) == 0:
        raise BuildError("no edge pixels")

    index = np.full((img.height, img.width), -1, dtype=np.int64)
    index[edges.coords[:, 1], edges.coords[:, 0]] = np.arange(len(edges))

    graph = SpatialGraph(bounds=(img.width, img.height))
    for x, y in edges.coords.tolist():
        graph.add_node((float(x), float(y)))

    for i, ((x, y), alpha) in enumerate(
        zip(edges.coords.tolist(), line_directions(edges, mode).tolist(), strict=True)
    ):
        line = rasterize_line((x, y), alpha, img.width, img.height)
        hits = index[line[:, 1], line[:, 0]]
        for j in hits[(hits >= 0) & (hits != i)].tolist():
            graph.add_edge(i, j, 1.0)

    logger.info(
        "Line network (%s): %d edge pixels, %d links", mode, graph.node_count, graph.edge_count
    )
    return graph.freeze()


def build_saliency_network(
    img: GrayImage, contrast: float, mode: LineMode = "tangent"
) -> tuple[EdgePixelSet, SpatialGraph]:
    edges = select_edge_pixels(estimate_gradient(img), contrast)
    return edges, build_orientation_line_network(img, edges, mode)
