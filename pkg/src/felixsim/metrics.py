"""Image quality metrics: PSNR and structural similarity.

Two structural-similarity conventions are provided: `ssim` averages the
local index over sliding 8x8 uniform windows, `mssim` over 11x11 Gaussian
windows (sigma 1.5). Both use the standard stabilizing constants
C1 = (K1*L)^2 and C2 = (K2*L)^2 with K1 = 0.01, K2 = 0.03, L = 255.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.signal import convolve2d

from .imaging import ImagePlane

PSNR_INFINITE = math.inf

_K1 = 0.01
_K2 = 0.03
_L = 255.0


def psnr(reference: ImagePlane, test: ImagePlane) -> float:
    """Peak signal-to-noise ratio in dB; inf for identical images."""
    if not reference.same_shape(test):
        raise ValueError("images must have identical dimensions")
    diff = reference.data.astype(np.float64) - test.data.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return PSNR_INFINITE
    return 10.0 * math.log10(_L * _L / mse)


def _gaussian_kernel(size: int, sigma: float) -> np.ndarray:
    half = (size - 1) / 2.0
    coords = np.arange(size) - half
    g = np.exp(-(coords ** 2) / (2.0 * sigma ** 2))
    kernel = np.outer(g, g)
    return kernel / kernel.sum()


def _local_ssim_map(x: np.ndarray, y: np.ndarray, window: np.ndarray) -> np.ndarray:
    c1 = (_K1 * _L) ** 2
    c2 = (_K2 * _L) ** 2

    def filt(img):
        return convolve2d(img, window, mode="valid")

    mu_x = filt(x)
    mu_y = filt(y)
    mu_xx = mu_x * mu_x
    mu_yy = mu_y * mu_y
    mu_xy = mu_x * mu_y
    sigma_xx = filt(x * x) - mu_xx
    sigma_yy = filt(y * y) - mu_yy
    sigma_xy = filt(x * y) - mu_xy
    num = (2 * mu_xy + c1) * (2 * sigma_xy + c2)
    den = (mu_xx + mu_yy + c1) * (sigma_xx + sigma_yy + c2)
    return num / den


def ssim_pair(reference: ImagePlane, test: ImagePlane, mode: str = "ssim") -> float:
    """Mean local structural similarity.

    mode "ssim": 8x8 uniform window; mode "mssim": 11x11 Gaussian window
    with sigma 1.5. RGB images are scored per channel and averaged.
    """
    if not reference.same_shape(test):
        raise ValueError("images must have identical dimensions")
    if mode == "ssim":
        window = np.full((8, 8), 1.0 / 64.0)
    elif mode == "mssim":
        window = _gaussian_kernel(11, 1.5)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    ref = reference.data.astype(np.float64)
    tst = test.data.astype(np.float64)
    if reference.channels == 1:
        return float(np.mean(_local_ssim_map(ref, tst, window)))
    scores = [float(np.mean(_local_ssim_map(ref[..., c], tst[..., c], window)))
              for c in range(3)]
    return float(np.mean(scores))
