import math

import numpy as np

from core.exceptions import BuildError

# Half-pixel band; the slack covers centres lying exactly on the band edge
HALF_WIDTH = 0.5 + 1e-9


def rasterize_line(
    p: tuple[int, int], alpha: float, width: int, height: int
) -> np.ndarray:
    """Pixels whose centre lies within half a pixel of the infinite line through p.

    The line has direction (cos alpha, sin alpha). Returns an (k, 2) array of
    (x, y) in scan-line order, clipped to the image and always containing p.
    """
    px, py = int(p[0]), int(p[1])
    if not (0 <= px < width and 0 <= py < height):
        raise BuildError("Line anchor outside image", details={"p": p, "bounds": (width, height)})

    c, s = math.cos(alpha), math.sin(alpha)
    if abs(c) >= abs(s):
        # At most two rows per column: |y - py - (x - px) tan| <= h / |cos|.
        xs = np.arange(width)
        centre = py + (xs - px) * (s / c)
        spread = HALF_WIDTH / abs(c)
        lo = np.maximum(np.ceil(centre - spread), 0).astype(np.int64)
        hi = np.minimum(np.floor(centre + spread), height - 1).astype(np.int64)
        pixels = [(x, y) for x, a, b in zip(xs, lo, hi, strict=True) for y in range(a, b + 1)]
    else:
        ys = np.arange(height)
        centre = px + (ys - py) * (c / s)
        spread = HALF_WIDTH / abs(s)
        lo = np.maximum(np.ceil(centre - spread), 0).astype(np.int64)
        hi = np.minimum(np.floor(centre + spread), width - 1).astype(np.int64)
        pixels = [(x, y) for y, a, b in zip(ys, lo, hi, strict=True) for x in range(a, b + 1)]

    coords = np.array(pixels, dtype=np.int64).reshape(-1, 2)
    order = np.lexsort((coords[:, 0], coords[:, 1]))
    return coords[order]
