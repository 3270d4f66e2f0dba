"""Region texture descriptors from network measurements and a nearest-centroid classifier."""

import logging
import math
from collections.abc import Iterable, Mapping
from pathlib import Path

import numpy as np
import pandas as pd

from analysis.measurements import node_feature_matrix
from builders.similarity import DEFAULT_RADIUS, build_pixel_similarity_network
from core.exceptions import ClassificationError
from graphs.spatial_graph import SpatialGraph
from models.features import REGION_COLUMNS, RegionFeature, SimilarityFeatures
from models.image import BACKGROUND, GrayImage, LabelImage
from utils.tables import read_csv_table, write_csv

logger = logging.getLogger(__name__)


def extract_region_features(g: SpatialGraph, nodes: Iterable[int]) -> RegionFeature:
    """Mean and population std of each node measurement over ``nodes``."""
    subset = sorted(set(nodes))
    if not subset:
        raise ClassificationError("cannot describe an empty region")
    if subset[0] < 0 or subset[-1] >= g.node_count:
        raise ClassificationError(
            "region refers to unknown nodes", details={"node_count": g.node_count}
        )
    values = node_feature_matrix(g)[subset]
    return RegionFeature(
        means=tuple(float(v) for v in values.mean(axis=0)),  # type: ignore[arg-type]
        stds=tuple(float(v) for v in values.std(axis=0)),  # type: ignore[arg-type]
    )


def classify_nearest_centroid(
    features: RegionFeature, centroids: Mapping[str, RegionFeature]
) -> str:
    """Label of the closest centroid after standardizing by the centroid set.

    Dimensions where all centroids agree carry no information and are dropped.
    Equal distances resolve to the smallest label.
    """
    if not centroids:
        raise ClassificationError("no centroids to classify against")
    names = sorted(centroids)
    table = np.vstack([centroids[name].as_array() for name in names])
    centre = table.mean(axis=0)
    spread = table.std(axis=0)
    keep = spread > 0.0
    if not np.any(keep):
        return names[0]

    scaled = (table[:, keep] - centre[keep]) / spread[keep]
    query = (features.as_array()[keep] - centre[keep]) / spread[keep]
    distances = np.sum((scaled - query) ** 2, axis=1)
    return min(zip(distances.tolist(), names, strict=True))[1]


def tile_regions(dims: tuple[int, int], size: int) -> LabelImage:
    """Square tiles of ``size`` pixels, numbered row-major; edge tiles may be smaller."""
    if size < 1:
        raise ClassificationError("tile size must be positive", details={"size": size})
    height, width = dims
    ys, xs = np.indices((height, width))
    per_row = math.ceil(width / size)
    return LabelImage(width=width, height=height, labels=(ys // size) * per_row + xs // size)


def region_features_for_labels(
    img: GrayImage,
    labels: LabelImage,
    threshold: float,
    radius: float = DEFAULT_RADIUS,
    features: SimilarityFeatures | None = None,
) -> dict[int, RegionFeature]:
    """One RegionFeature per labelled region, measured on that region's own subnetwork."""
    if (labels.height, labels.width) != img.shape:
        raise ClassificationError(
            "label image does not match the image",
            details={"labels": (labels.height, labels.width), "image": img.shape},
        )
    graph = build_pixel_similarity_network(img, threshold, radius, features)
    flat = labels.labels.ravel()
    regions: dict[int, RegionFeature] = {}
    for region in np.unique(flat[flat != BACKGROUND]).tolist():
        sub = graph.subgraph(np.flatnonzero(flat == region).tolist())
        regions[region] = extract_region_features(sub, range(sub.node_count))
    logger.info("Described %d regions", len(regions))
    return regions


def region_table(
    regions: Mapping[int, RegionFeature] | Mapping[str, RegionFeature], key: str
) -> pd.DataFrame:
    rows = [[name, *feature.as_array().tolist()] for name, feature in regions.items()]
    return pd.DataFrame(rows, columns=[key, *REGION_COLUMNS])


def export_region_features_csv(regions: Mapping[int, RegionFeature], path: Path) -> None:
    write_csv(region_table(regions, "region"), path)


def export_centroids_csv(centroids: Mapping[str, RegionFeature], path: Path) -> None:
    write_csv(region_table(centroids, "label"), path)


def read_centroids_csv(path: Path) -> dict[str, RegionFeature]:
    table = read_csv_table(
        path,
        ClassificationError,
        ["label", *REGION_COLUMNS],
        numeric_columns=REGION_COLUMNS,
        dtype={"label": str},
        float_precision="round_trip",
    )
    if table.empty:
        raise ClassificationError(f"Centroid file {path} lists no centroids")
    return {
        str(row.label): RegionFeature.from_array(
            np.array([getattr(row, col) for col in REGION_COLUMNS], dtype=float)
        )
        for row in table.itertuples(index=False)
    }
