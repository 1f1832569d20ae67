"""8-bit image container and binary Netpbm (PGM P5 / PPM P6) file IO."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np


class ImageFormatError(ValueError):
    """Unreadable or unsupported image file."""


@dataclass(frozen=True)
class ImagePlane:
    """Row-major 8-bit raster, grayscale or RGB.

    data has shape (height, width) for grayscale and (height, width, 3)
    for RGB, dtype uint8.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.dtype != np.uint8:
            raise ImageFormatError(f"samples must be uint8, got {arr.dtype}")
        if arr.ndim == 2:
            pass
        elif arr.ndim == 3 and arr.shape[2] == 3:
            pass
        else:
            raise ImageFormatError(f"unsupported image shape {arr.shape}")
        object.__setattr__(self, "data", arr)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def channels(self) -> int:
        return 1 if self.data.ndim == 2 else 3

    def same_shape(self, other: "ImagePlane") -> bool:
        return self.data.shape == other.data.shape


def _read_token(stream) -> bytes:
    """Next whitespace-delimited header token, skipping `#` comments."""
    token = b""
    while True:
        ch = stream.read(1)
        if not ch:
            raise ImageFormatError("truncated header")
        if ch == b"#":
            while ch not in (b"\n", b""):
                ch = stream.read(1)
            continue
        if ch.isspace():
            if token:
                return token
            continue
        token += ch


def read_netpbm(path: Union[str, Path]) -> ImagePlane:
    """Read a binary PGM (P5) or PPM (P6) file with maxval 255."""
    path = Path(path)
    with path.open("rb") as fh:
        magic = _read_token(fh)
        if magic not in (b"P5", b"P6"):
            raise ImageFormatError(f"{path}: unsupported magic {magic!r}")
        width = int(_read_token(fh))
        height = int(_read_token(fh))
        maxval = int(_read_token(fh))
        if maxval != 255:
            raise ImageFormatError(f"{path}: only maxval 255 supported, got {maxval}")
        channels = 1 if magic == b"P5" else 3
        count = width * height * channels
        raw = fh.read(count)
        if len(raw) != count:
            raise ImageFormatError(f"{path}: expected {count} samples, got {len(raw)}")
    arr = np.frombuffer(raw, dtype=np.uint8)
    shape = (height, width) if channels == 1 else (height, width, 3)
    return ImagePlane(arr.reshape(shape).copy())


def write_netpbm(img: ImagePlane, path: Union[str, Path]) -> None:
    """Write as binary PGM for grayscale, PPM for RGB."""
    path = Path(path)
    magic = b"P5" if img.channels == 1 else b"P6"
    header = b"%s\n%d %d\n255\n" % (magic, img.width, img.height)
    with path.open("wb") as fh:
        fh.write(header)
        fh.write(img.data.tobytes())
