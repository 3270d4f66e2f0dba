"""Pixel-similarity network: one node per pixel, edges between similar nearby pixels."""

import logging

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from core.exceptions import BuildError
from graphs.spatial_graph import SpatialGraph
from imaging.gradient import estimate_gradient
from models.features import SimilarityFeatures
from models.image import GrayImage

logger = logging.getLogger(__name__)

DEFAULT_RADIUS = 3.0
# Integer lattice distances never fall within this slack above r.
_RADIUS_SLACK = 1e-9


def pixel_coordinates(width: int, height: int) -> np.ndarray:
    """(x, y) of every pixel in row-major order; row i is node i."""
    ys, xs = np.indices((height, width))
    return np.column_stack([xs.ravel(), ys.ravel()])


def local_dispersion(samples: np.ndarray, window: int) -> np.ndarray:
    mean = ndimage.uniform_filter(samples, size=window, mode="nearest")
    mean_sq = ndimage.uniform_filter(samples * samples, size=window, mode="nearest")
    return np.sqrt(np.maximum(mean_sq - mean * mean, 0.0))


def _feature_distance(
    img: GrayImage, pairs: np.ndarray, features: SimilarityFeatures
) -> np.ndarray:
    i, j = pairs[:, 0], pairs[:, 1]
    gray = img.samples.ravel()
    dist = features.gray * np.abs(gray[i] - gray[j])

    if features.needs_gradient:
        field = estimate_gradient(img)
        if features.gradient > 0.0:
            mag = field.magnitude.ravel()
            dist += features.gradient * np.abs(mag[i] - mag[j])
        if features.orientation > 0.0:
            alpha = field.orientation.ravel()
            delta = np.abs(alpha[i] - alpha[j])
            dist += features.orientation * np.minimum(delta, np.pi - delta)

    if features.dispersion > 0.0 and features.dispersion_window is not None:
        disp = local_dispersion(img.samples, features.dispersion_window).ravel()
        dist += features.dispersion * np.abs(disp[i] - disp[j])
    return dist


def build_pixel_similarity_network(
    img: GrayImage,
    threshold: float,
    radius: float = DEFAULT_RADIUS,
    features: SimilarityFeatures | None = None,
) -> SpatialGraph:
    """Connect pixel pairs within ``radius`` whose similarity 1 / (1 + d) reaches ``threshold``."""
    if not 0.0 < threshold <= 1.0:
        raise BuildError("similarity threshold must lie in (0, 1]", details={"T": threshold})
    if radius < 1.0:
        raise BuildError("radius must be at least one pixel", details={"r": radius})
    features = features or SimilarityFeatures()

    coords = pixel_coordinates(img.width, img.height)
    pairs = cKDTree(coords).query_pairs(radius + _RADIUS_SLACK, output_type="ndarray")
    pairs = np.sort(pairs.reshape(-1, 2), axis=1)
    pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]

    weights = 1.0 / (1.0 + _feature_distance(img, pairs, features))
    if features.distance_decay > 0.0:
        span = np.hypot(*(coords[pairs[:, 0]] - coords[pairs[:, 1]]).T)
        weights = weights / (1.0 + span) ** features.distance_decay
    keep = weights >= threshold

    graph = SpatialGraph.from_edges(
        len(coords),
        zip(pairs[keep, 0].tolist(), pairs[keep, 1].tolist(), weights[keep].tolist(), strict=True),
        positions=[(float(x), float(y)) for x, y in coords],
        bounds=(img.width, img.height),
    )
    logger.info(
        "Similarity network: %d nodes, %d of %d candidate pairs kept (T=%.3f, r=%.2f)",
        graph.node_count,
        int(keep.sum()),
        len(pairs),
        threshold,
        radius,
    )
    return graph.freeze()
