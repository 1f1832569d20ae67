"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field


class DeviceSettings(BaseModel):
    """Behavioral-model parameters; omitted fields use the defaults."""

    a: Optional[float] = None
    r_on: Optional[float] = None
    r_off: Optional[float] = None
    v_on: Optional[float] = None
    v_off: Optional[float] = None
    x_init: Optional[float] = None


class RunSettings(BaseModel):
    """Common knobs accepted by every endpoint."""

    device: DeviceSettings = Field(default_factory=DeviceSettings)
    v0_preset: Optional[Literal["derived", "table6", "explicit"]] = None
    explicit_v0: Dict[str, float] = Field(default_factory=dict)
    pulse_width: Optional[float] = None
    dt: Optional[float] = None
    seed: Optional[int] = None
    dump_waveforms: bool = False


class GatesVerifyRequest(BaseModel):
    settings: RunSettings = Field(default_factory=RunSettings)
    gates: Optional[List[str]] = None  # default: all transient gates


class PatternReport(BaseModel):
    bits: List[int]
    expected: int
    actual: int
    inputs_preserved: bool
    ok: bool
    energy: float


class GateReport(BaseModel):
    gate: str
    window_low: float
    window_high: float
    window_empty: bool
    v0: float
    v0_in_window: bool
    node_voltages_by_ones: Dict[int, float]
    patterns: List[PatternReport]
    all_ok: bool
    mean_energy: float


class GatesVerifyResponse(BaseModel):
    v0_preset: str
    gates: List[GateReport]
    all_ok: bool
    traces: Optional[Dict[str, List[List[float]]]] = None


class AdderRequest(BaseModel):
    settings: RunSettings = Field(default_factory=RunSettings)
    variant: Literal["exact", "fafa1", "fafa2"] = "fafa1"


class TruthRow(BaseModel):
    a: int
    b: int
    cin: int
    sum: int
    cout: int
    exact_sum: int
    exact_cout: int


class CellMetricsReport(BaseModel):
    ed_max: int
    ed_total: int
    er_sum: float
    er_cout: float
    med: float
    nmed: float
    normalization_constant: int


class ResourcesReport(BaseModel):
    memristor_count: int
    compute_cycles: int
    cycles_with_init: int


class AdderResponse(BaseModel):
    variant: str
    truth_table: List[TruthRow]
    functional_matches_truth: bool
    transient_matches_functional: Optional[bool]
    transient_inputs_preserved: Optional[bool]
    mean_transient_energy: Optional[float]
    metrics: CellMetricsReport
    resources: ResourcesReport
    reference_energy_uj: Optional[float] = None
    traces: Optional[Dict[str, List[List[float]]]] = None


class RcaRequest(BaseModel):
    settings: RunSettings = Field(default_factory=RunSettings)
    scenario: Literal[1, 2] = 1
    variant: Literal["exact", "fafa1", "fafa2"] = "fafa1"
    width: int = 8
    sample_count: Optional[int] = None


class RankedRowReport(BaseModel):
    name: str
    med: float
    nmed: float
    computed: bool


class DiscrepancyFlag(BaseModel):
    field: str
    computed: float
    published: float
    note: str


class RcaResponse(BaseModel):
    scenario: int
    variant: str
    width: int
    approx_lsb_count: int
    metrics: CellMetricsReport
    resources: ResourcesReport
    published_cycles: Optional[int]
    published_memristors: Optional[int]
    flags: List[DiscrepancyFlag]
    ranking: List[RankedRowReport]
    sample_count: int


class ImageRequest(BaseModel):
    settings: RunSettings = Field(default_factory=RunSettings)
    app: Literal["addition", "motion", "grayscale", "pooling"]
    scenario: Literal[1, 2] = 1
    variant: Literal["fafa1", "fafa2"] = "fafa1"
    inputs: Optional[List[str]] = None  # paths; None selects bundled samples
    output_dir: Optional[str] = None


class QualityReportModel(BaseModel):
    app: str
    scenario: str
    psnr: Optional[float]  # None encodes an infinite ratio (identical images)
    ssim: float
    mssim: float
    source: str


class ImageResponse(BaseModel):
    report: QualityReportModel
    outputs_written: List[str]
    provenance: List[str]


class DatasetRequest(BaseModel):
    settings: RunSettings = Field(default_factory=RunSettings)
    app: Literal["addition", "motion", "grayscale", "pooling"]
    scenario: Literal[1, 2] = 1
    variant: Literal["fafa1", "fafa2"] = "fafa1"
    directory: str


class DatasetResponse(BaseModel):
    rows: List[QualityReportModel]
    average: QualityReportModel
