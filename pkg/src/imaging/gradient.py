import logging

import numpy as np
from scipy import ndimage

from core.exceptions import BuildError
from models.image import EdgePixelSet, GradientField, GrayImage

logger = logging.getLogger(__name__)

KERNEL_SIZE = 3


def fold_orientation(angles: np.ndarray) -> np.ndarray:
    """Map line directions onto [0, pi); alpha and alpha + pi describe the same line."""
    folded = np.mod(angles, np.pi)
    folded[folded >= np.pi] = 0.0
    return folded


def estimate_gradient(img: GrayImage) -> GradientField:
    """3x3 Sobel response with replicate padding; orientation is the gradient (normal) line."""
    if img.width < KERNEL_SIZE or img.height < KERNEL_SIZE:
        raise BuildError(
            "Image smaller than the Sobel kernel",
            details={"width": img.width, "height": img.height, "kernel": KERNEL_SIZE},
        )
    gx = ndimage.sobel(img.samples, axis=1, mode="nearest")
    gy = ndimage.sobel(img.samples, axis=0, mode="nearest")
    magnitude = np.hypot(gx, gy)
    orientation = fold_orientation(np.arctan2(gy, gx))
    orientation[magnitude == 0.0] = 0.0
    return GradientField(magnitude=magnitude, orientation=orientation, gx=gx, gy=gy)


def select_edge_pixels(field: GradientField, contrast_fraction: float) -> EdgePixelSet:
    """Pixels with magnitude >= c * max magnitude, in scan-line order.

    A field with no gradient anywhere has no edges, whatever c is.
    """
    if not 0.0 < contrast_fraction <= 1.0:
        raise BuildError("contrast fraction must lie in (0, 1]", details={"c": contrast_fraction})
    peak = float(field.magnitude.max(initial=0.0))
    if peak == 0.0:
        logger.info("Gradient field is flat; no edge pixels")
        return EdgePixelSet(coords=np.zeros((0, 2)), orientation=np.zeros(0), magnitude=np.zeros(0))

    threshold = contrast_fraction * peak
    ys, xs = np.nonzero(field.magnitude >= threshold)
    edges = EdgePixelSet(
        coords=np.column_stack([xs, ys]),
        orientation=field.orientation[ys, xs],
        magnitude=field.magnitude[ys, xs],
        threshold=threshold,
    )
    logger.debug("Selected %d edge pixels at threshold %.3f", len(edges), threshold)
    return edges
