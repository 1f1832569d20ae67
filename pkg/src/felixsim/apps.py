"""Image-processing applications driven by the ripple-carry adders.

Each pipeline performs all of its additions through a configurable adder
scenario, so running it once with an all-exact scenario and once with an
approximate one isolates the adder approximation as the only difference.
Pixel-wise additions are evaluated through precomputed result tables of
the scenario's adder, which keeps whole-image runs fast while staying
bit-identical to scalar ripple addition.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, List, Union

import numpy as np

from .adders import RcaScenario, extend_scenario
from .error_analysis import sum_table
from .imaging import ImagePlane, read_netpbm
from .metrics import psnr, ssim_pair


class DatasetError(ValueError):
    """Empty or unusable dataset directory."""


@lru_cache(maxsize=32)
def _table(scenario: RcaScenario) -> np.ndarray:
    return sum_table(scenario)


def exact_scenario(width: int = 8) -> RcaScenario:
    return RcaScenario(width=width, approx_lsb_count=0)


def app_addition(img_a: ImagePlane, img_b: ImagePlane,
                 scenario: RcaScenario) -> ImagePlane:
    """Pixel-wise addition with saturation at 255."""
    if not img_a.same_shape(img_b) or img_a.channels != 1:
        raise ValueError("inputs must be equal-size grayscale images")
    table = _table(replace(scenario, width=8, carry_in=0))
    result = table[img_a.data.astype(np.int64), img_b.data.astype(np.int64)]
    return ImagePlane(np.minimum(result, 255).astype(np.uint8))


def app_grayscale(rgb: ImagePlane, scenario: RcaScenario) -> ImagePlane:
    """(R + G + B) / 3 with both additions through the scenario adder and
    an exact integer division."""
    if rgb.channels != 3:
        raise ValueError("input must be an RGB image")
    base = replace(scenario, width=8, carry_in=0)
    t8 = _table(base)
    t9 = _table(extend_scenario(base, 9))
    r = rgb.data[..., 0].astype(np.int64)
    g = rgb.data[..., 1].astype(np.int64)
    b = rgb.data[..., 2].astype(np.int64)
    total = t9[t8[r, g], b]
    return ImagePlane((total // 3).astype(np.uint8))


def app_motion(img_a: ImagePlane, img_b: ImagePlane,
               scenario: RcaScenario) -> ImagePlane:
    """Absolute frame difference.

    Operands are ordered exactly so that minuend >= subtrahend, then the
    difference is computed as minuend + complement(subtrahend) + 1 on the
    scenario adder, dropping the top carry bit.
    """
    if not img_a.same_shape(img_b) or img_a.channels != 1:
        raise ValueError("inputs must be equal-size grayscale images")
    a = img_a.data.astype(np.int64)
    b = img_b.data.astype(np.int64)
    minuend = np.maximum(a, b)
    subtrahend = np.minimum(a, b)
    table = _table(replace(scenario, width=8, carry_in=1))
    diff = table[minuend, 255 - subtrahend] & 0xFF
    return ImagePlane(diff.astype(np.uint8))


def app_avg_pool(img: ImagePlane, scenario: RcaScenario) -> ImagePlane:
    """Non-overlapping 2x2 average pooling; halves both dimensions."""
    if img.channels != 1:
        raise ValueError("input must be grayscale")
    if img.height % 2 or img.width % 2:
        raise ValueError("image dimensions must be even")
    base = replace(scenario, width=8, carry_in=0)
    t8 = _table(base)
    t9 = _table(extend_scenario(base, 9))
    d = img.data.astype(np.int64)
    p00 = d[0::2, 0::2]
    p01 = d[0::2, 1::2]
    p10 = d[1::2, 0::2]
    p11 = d[1::2, 1::2]
    total = t9[t8[p00, p01], t8[p10, p11]]
    return ImagePlane((total // 4).astype(np.uint8))


#: pipelines by name; value is (callable, number of input images)
APPLICATIONS: Dict[str, tuple] = {
    "addition": (app_addition, 2),
    "motion": (app_motion, 2),
    "grayscale": (app_grayscale, 1),
    "pooling": (app_avg_pool, 1),
}


@dataclass(frozen=True)
class QualityReport:
    app: str
    scenario: str
    psnr: float
    ssim: float
    mssim: float
    source: str = ""

    def as_dict(self) -> dict:
        return {
            "app": self.app,
            "scenario": self.scenario,
            "psnr": self.psnr,
            "ssim": self.ssim,
            "mssim": self.mssim,
            "source": self.source,
        }


def score_pair(reference: ImagePlane, test: ImagePlane, app: str,
               scenario_label: str, source: str = "") -> QualityReport:
    return QualityReport(
        app=app,
        scenario=scenario_label,
        psnr=psnr(reference, test),
        ssim=ssim_pair(reference, test, "ssim"),
        mssim=ssim_pair(reference, test, "mssim"),
        source=source,
    )


def run_application(app: str, images: List[ImagePlane],
                    scenario: RcaScenario) -> ImagePlane:
    """Dispatch one pipeline run."""
    if app not in APPLICATIONS:
        raise ValueError(f"unknown application {app!r}")
    fn, arity = APPLICATIONS[app]
    if len(images) != arity:
        raise ValueError(f"{app} takes {arity} input image(s), got {len(images)}")
    return fn(*images, scenario)


def benchmark_application(app: str, images: List[ImagePlane],
                          scenario: RcaScenario,
                          scenario_label: str, source: str = "") -> QualityReport:
    """Run a pipeline under the approximate scenario and score it against
    the same pipeline under the all-exact adder."""
    approx = run_application(app, images, scenario)
    exact = run_application(app, images, exact_scenario())
    return score_pair(exact, approx, app, scenario_label, source)


@dataclass(frozen=True)
class DatasetReport:
    rows: List[QualityReport]
    average: QualityReport


def run_dataset(directory: Union[str, Path], app: str,
                scenario: RcaScenario, scenario_label: str) -> DatasetReport:
    """Apply one pipeline over a directory of Netpbm images.

    Files are taken in lexicographic order. Two-input applications consume
    consecutive non-overlapping pairs; single-input applications process
    each file individually.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise DatasetError(f"not a directory: {directory}")
    files = sorted(p for p in directory.iterdir()
                   if p.suffix.lower() in (".pgm", ".ppm"))
    if not files:
        raise DatasetError(f"no .pgm/.ppm images in {directory}")
    _, arity = APPLICATIONS[app]
    if arity == 2:
        if len(files) % 2:
            raise DatasetError(f"{app} needs an even number of images, got {len(files)}")
        groups = [files[i:i + 2] for i in range(0, len(files), 2)]
    else:
        groups = [[f] for f in files]
    rows: List[QualityReport] = []
    for group in groups:
        images = [read_netpbm(p) for p in group]
        source = "+".join(p.name for p in group)
        rows.append(benchmark_application(app, images, scenario,
                                          scenario_label, source))
    average = QualityReport(
        app=app,
        scenario=scenario_label,
        psnr=float(np.mean([r.psnr for r in rows])),
        ssim=float(np.mean([r.ssim for r in rows])),
        mssim=float(np.mean([r.mssim for r in rows])),
        source="average",
    )
    return DatasetReport(rows=rows, average=average)
