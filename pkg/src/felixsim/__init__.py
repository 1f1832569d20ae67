"""Simulator and analysis toolkit for memristive stateful-logic adders.

Layers, bottom to top:

- ``device``: behavioral memristor model and state integration
- ``engine``: single-gate transient execution and static voltage windows
- ``isa``: functional micro-programs and resource accounting
- ``adders``: full-adder variants and ripple-carry composition
- ``error_analysis``: exhaustive/sampled error metrics (exact rationals)
- ``imaging`` / ``metrics`` / ``apps``: image pipelines and quality scores
- ``transient``: transient execution of whole adder micro-programs
- ``service`` / ``cli``: HTTP service and its command-line client
"""

from .adders import (
    AdderVariant,
    RcaScenario,
    UnsupportedVariantError,
    cell_resources,
    full_add,
    rca_add,
    rca_resources,
    scenario_1,
    scenario_2,
)
from .config import ConfigError, RunConfig, load_config
from .device import DeviceError, DeviceParams, LEGACY_PARAMS, MemristorCell
from .engine import GateKind, VoltageWindow, default_v0, static_window, verify_gate_truth_table
from .error_analysis import ErrorReport, cell_metrics, rca_metrics, rca_metrics_oracle
from .imaging import ImageFormatError, ImagePlane, read_netpbm, write_netpbm
from .isa import FunctionalOp, InitPolicy, MicroProgram, ResourceReport, run_program
from .metrics import psnr, ssim_pair
from .apps import benchmark_application, run_application, run_dataset

__version__ = "0.1.0"

__all__ = [
    "AdderVariant",
    "ConfigError",
    "DeviceError",
    "DeviceParams",
    "ErrorReport",
    "FunctionalOp",
    "GateKind",
    "ImageFormatError",
    "ImagePlane",
    "InitPolicy",
    "LEGACY_PARAMS",
    "MemristorCell",
    "MicroProgram",
    "RcaScenario",
    "ResourceReport",
    "RunConfig",
    "UnsupportedVariantError",
    "VoltageWindow",
    "benchmark_application",
    "cell_metrics",
    "cell_resources",
    "default_v0",
    "full_add",
    "load_config",
    "psnr",
    "rca_add",
    "rca_metrics",
    "rca_metrics_oracle",
    "rca_resources",
    "read_netpbm",
    "run_application",
    "run_dataset",
    "run_program",
    "scenario_1",
    "scenario_2",
    "ssim_pair",
    "static_window",
    "verify_gate_truth_table",
    "write_netpbm",
]
