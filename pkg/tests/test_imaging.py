import math

import numpy as np
import pytest

from felixsim.imaging import ImageFormatError, ImagePlane, read_netpbm, write_netpbm
from felixsim.metrics import psnr, ssim_pair


def _gray(seed=0, shape=(32, 40)):
    rng = np.random.default_rng(seed)
    return ImagePlane(rng.integers(0, 256, size=shape, dtype=np.uint8))


def test_image_plane_properties():
    img = _gray()
    assert img.height == 32
    assert img.width == 40
    assert img.channels == 1
    rgb = ImagePlane(np.zeros((4, 6, 3), dtype=np.uint8))
    assert rgb.channels == 3


def test_image_plane_validation():
    with pytest.raises(ImageFormatError):
        ImagePlane(np.zeros((4, 4), dtype=np.float64))
    with pytest.raises(ImageFormatError):
        ImagePlane(np.zeros((4, 4, 2), dtype=np.uint8))
    with pytest.raises(ImageFormatError):
        ImagePlane(np.zeros(16, dtype=np.uint8))


def test_pgm_round_trip(tmp_path):
    img = _gray(1)
    path = tmp_path / "img.pgm"
    write_netpbm(img, path)
    back = read_netpbm(path)
    assert np.array_equal(back.data, img.data)


def test_ppm_round_trip(tmp_path):
    rng = np.random.default_rng(2)
    img = ImagePlane(rng.integers(0, 256, size=(8, 9, 3), dtype=np.uint8))
    path = tmp_path / "img.ppm"
    write_netpbm(img, path)
    back = read_netpbm(path)
    assert back.channels == 3
    assert np.array_equal(back.data, img.data)


def test_read_header_comments(tmp_path):
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P5\n# a comment\n2 # inline\n2\n255\n\x00\x01\x02\x03")
    img = read_netpbm(path)
    assert img.data.tolist() == [[0, 1], [2, 3]]


def test_read_rejects_bad_magic(tmp_path):
    path = tmp_path / "bad.pgm"
    path.write_bytes(b"P2\n2 2\n255\n")
    with pytest.raises(ImageFormatError):
        read_netpbm(path)


def test_read_rejects_wrong_maxval(tmp_path):
    path = tmp_path / "bad.pgm"
    path.write_bytes(b"P5\n2 2\n65535\n" + b"\x00" * 8)
    with pytest.raises(ImageFormatError):
        read_netpbm(path)


def test_read_rejects_truncated_payload(tmp_path):
    path = tmp_path / "short.pgm"
    path.write_bytes(b"P5\n4 4\n255\n\x00\x01")
    with pytest.raises(ImageFormatError):
        read_netpbm(path)


def test_psnr_identical_is_infinite():
    img = _gray(3)
    assert math.isinf(psnr(img, img))


def test_psnr_known_mse():
    a = ImagePlane(np.zeros((10, 10), dtype=np.uint8))
    b = ImagePlane(np.full((10, 10), 2, dtype=np.uint8))
    assert psnr(a, b) == pytest.approx(10 * math.log10(255 ** 2 / 4))


def test_psnr_shape_mismatch():
    with pytest.raises(ValueError):
        psnr(_gray(0, (8, 8)), _gray(0, (8, 9)))


def test_ssim_identical_is_one():
    img = _gray(4, (64, 64))
    assert ssim_pair(img, img, "ssim") == pytest.approx(1.0)
    assert ssim_pair(img, img, "mssim") == pytest.approx(1.0)


def test_ssim_degrades_with_noise():
    # a smooth ramp image, so additive noise dominates the local statistics
    ramp = np.tile(np.arange(64, dtype=np.uint8) * 2, (64, 1))
    img = ImagePlane(ramp)
    rng = np.random.default_rng(6)
    noisy = ImagePlane(np.clip(ramp.astype(np.int64)
                               + rng.integers(-40, 40, ramp.shape), 0, 255)
                       .astype(np.uint8))
    assert ssim_pair(img, noisy, "ssim") < 0.9
    assert ssim_pair(img, noisy, "ssim") < ssim_pair(img, img, "ssim")


def test_ssim_rgb_averages_channels():
    rng = np.random.default_rng(7)
    rgb = ImagePlane(rng.integers(0, 256, size=(32, 32, 3), dtype=np.uint8))
    assert ssim_pair(rgb, rgb, "mssim") == pytest.approx(1.0)


def test_ssim_unknown_mode():
    img = _gray(8)
    with pytest.raises(ValueError):
        ssim_pair(img, img, "ms-ssim-x")
