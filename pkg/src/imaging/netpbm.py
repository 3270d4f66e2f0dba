"""Reading PGM/PPM (P2, P3, P5, P6) and writing ASCII PGM."""

import logging
import re
from pathlib import Path

import numpy as np

from core.exceptions import ImageFormatError
from models.image import GrayImage

logger = logging.getLogger(__name__)

LUMA_WEIGHTS = np.array([0.299, 0.587, 0.114])

_CHANNELS = {b"P2": 1, b"P5": 1, b"P3": 3, b"P6": 3}
_COMMENT_RE = re.compile(rb"#[^\n]*")


def to_luminance(rgb: np.ndarray) -> np.ndarray:
    """(H, W, 3) colour samples to (H, W) luminance."""
    return np.asarray(rgb, dtype=float) @ LUMA_WEIGHTS


def _skip_blank(data: bytes, pos: int) -> int:
    while pos < len(data):
        if data[pos : pos + 1].isspace():
            pos += 1
        elif data[pos : pos + 1] == b"#":
            newline = data.find(b"\n", pos)
            pos = len(data) if newline < 0 else newline + 1
        else:
            break
    return pos


def _read_header(data: bytes) -> tuple[bytes, int, int, int, int]:
    magic = data[:2]
    if magic not in _CHANNELS:
        raise ImageFormatError(f"Unsupported magic number {magic!r}", offset=0)
    pos = 2
    fields: list[int] = []
    for name in ("width", "height", "maxval"):
        pos = _skip_blank(data, pos)
        start = pos
        while pos < len(data) and data[pos : pos + 1].isdigit():
            pos += 1
        if start == pos:
            raise ImageFormatError(
                f"Malformed header: expected {name} at byte {start}", offset=start
            )
        fields.append(int(data[start:pos]))
    width, height, maxval = fields
    if width <= 0 or height <= 0:
        raise ImageFormatError("Image dimensions must be positive", offset=pos)
    if not 0 < maxval <= 255:
        raise ImageFormatError(f"maxval {maxval} outside 1..255", offset=pos)
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise ImageFormatError(f"Missing whitespace after header at byte {pos}", offset=pos)
    return magic, width, height, maxval, pos + 1


def decode_netpbm(data: bytes) -> GrayImage:
    magic, width, height, maxval, offset = _read_header(data)
    channels = _CHANNELS[magic]
    expected = width * height * channels

    if magic in (b"P5", b"P6"):
        available = len(data) - offset
        if available < expected:
            raise ImageFormatError(
                f"Truncated raster: {expected} bytes expected from byte {offset}, "
                f"file ends at byte {len(data)}",
                offset=len(data),
            )
        raster = np.frombuffer(data, dtype=np.uint8, count=expected, offset=offset).astype(float)
    else:
        tokens = _COMMENT_RE.sub(b" ", data[offset:]).split()
        if len(tokens) < expected:
            raise ImageFormatError(
                f"Truncated raster: {expected} samples expected, {len(tokens)} found "
                f"before byte {len(data)}",
                offset=len(data),
            )
        try:
            raster = np.array([int(t) for t in tokens[:expected]], dtype=float)
        except ValueError as exc:
            raise ImageFormatError("Non-numeric sample in ASCII raster", offset=offset) from exc

    if raster.max(initial=0.0) > maxval:
        raise ImageFormatError(f"Sample exceeds maxval {maxval}", offset=offset)
    if maxval != 255:
        raster = raster * (255.0 / maxval)

    if channels == 3:
        samples = to_luminance(raster.reshape(height, width, 3))
    else:
        samples = raster.reshape(height, width)
    return GrayImage(width=width, height=height, samples=np.clip(samples, 0.0, 255.0))


def read_image(path: Path) -> GrayImage:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ImageFormatError(f"Cannot read image {path}") from exc
    img = decode_netpbm(data)
    logger.debug("Read %dx%d image from %s", img.width, img.height, path)
    return img


def encode_pgm(samples: np.ndarray) -> str:
    values = np.clip(np.rint(np.asarray(samples, dtype=float)), 0, 255).astype(np.int64)
    height, width = values.shape
    lines = [f"P2\n{width} {height}\n255"]
    lines.extend(" ".join(str(v) for v in row) for row in values.tolist())
    return "\n".join(lines) + "\n"


def write_pgm(samples: np.ndarray, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(encode_pgm(samples), encoding="ascii")
    logger.info("Wrote %s", path)
