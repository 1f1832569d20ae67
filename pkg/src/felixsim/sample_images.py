"""Deterministic benchmark imagery for the application pipelines.

The classic photographer image ships with scikit-image and is used at
256x256 (2x downsample) and at its native 512x512. The rice-grain image is
not freely redistributable, so a deterministic look-alike is synthesized:
bright elongated grains over a vertically illuminated background. Each
helper records its provenance so reports can state what was measured.
"""

from __future__ import annotations

import numpy as np

from .imaging import ImagePlane

PROVENANCE = {
    "cameraman": "scikit-image data.camera(), downsampled to 256x256",
    "rice": "synthetic rice-grain look-alike (seeded RNG), 256x256",
    "motion": "scikit-image data.camera() 512x512 with a synthetic object at two positions",
    "rgb": "scikit-image data.coffee(), 400x600 RGB",
    "pooling": "scikit-image data.camera(), 512x512",
}


def cameraman() -> ImagePlane:
    from skimage import data

    return ImagePlane(np.ascontiguousarray(data.camera()[::2, ::2]))


def rice(seed: int = 1, size: int = 256) -> ImagePlane:
    """Synthetic grains: ~140 bright ellipses at random positions and
    orientations over a smoothly lit background."""
    rng = np.random.default_rng(seed)
    y = np.linspace(0.0, 1.0, size).reshape(-1, 1)
    background = 120.0 + 35.0 * np.sin(np.pi * y) + np.zeros((size, size))
    img = background.copy()
    yy, xx = np.mgrid[0:size, 0:size]
    for _ in range(140):
        cy, cx = rng.uniform(5, size - 5, 2)
        angle = rng.uniform(0.0, np.pi)
        length = rng.uniform(8.0, 13.0)
        width = rng.uniform(2.5, 4.0)
        dy, dx = yy - cy, xx - cx
        u = dy * np.cos(angle) + dx * np.sin(angle)
        v = -dy * np.sin(angle) + dx * np.cos(angle)
        mask = (u / length) ** 2 + (v / width) ** 2 < 1.0
        img[mask] = np.maximum(img[mask], background[mask] + rng.uniform(60.0, 110.0))
    return ImagePlane(np.clip(img, 0, 255).astype(np.uint8))


def _paste_disc(img: np.ndarray, cy: int, cx: int, radius: int, value: int) -> np.ndarray:
    out = img.copy()
    yy, xx = np.mgrid[0:img.shape[0], 0:img.shape[1]]
    out[(yy - cy) ** 2 + (xx - cx) ** 2 < radius * radius] = value
    return out


def motion_frames() -> tuple:
    """Two 512x512 frames: a static background with a bright object that
    has moved between exposures."""
    from skimage import data

    base = data.camera()
    first = _paste_disc(base, 300, 150, 18, 220)
    second = _paste_disc(base, 310, 170, 18, 220)
    return ImagePlane(first), ImagePlane(second)


def rgb_reference() -> ImagePlane:
    from skimage import data

    img = data.coffee()
    # pooling-compatible even dimensions
    return ImagePlane(img[: img.shape[0] // 2 * 2, : img.shape[1] // 2 * 2].copy())


def pooling_reference() -> ImagePlane:
    from skimage import data

    return ImagePlane(data.camera().copy())
