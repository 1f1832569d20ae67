"""FastAPI service wrapping the simulator and analysis toolkit.

The command-line interface talks to these endpoints (in process by
default); they can equally be served with uvicorn for remote use.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Dict, List, Optional

from fastapi import FastAPI, HTTPException

from . import reference, sample_images
from .adders import (
    AdderVariant,
    RcaScenario,
    cell_resources,
    full_add,
    full_add_program,
    rca_resources,
)
from .apps import APPLICATIONS, benchmark_application, exact_scenario, run_application
from .config import ConfigError, RunConfig
from .device import DeviceError, DeviceParams
from .engine import GateKind, gate_arity, node_voltage, static_window, verify_gate_truth_table
from .error_analysis import cell_metrics, compare_with_references, rca_metrics
from .imaging import ImageFormatError, read_netpbm, write_netpbm
from .adders import PROGRAM_FOR_VARIANT
from .apps import DatasetError, run_dataset
from .schemas import (
    AdderRequest,
    AdderResponse,
    CellMetricsReport,
    DatasetRequest,
    DatasetResponse,
    DiscrepancyFlag,
    GateReport,
    GatesVerifyRequest,
    GatesVerifyResponse,
    ImageRequest,
    ImageResponse,
    PatternReport,
    QualityReportModel,
    RankedRowReport,
    RcaRequest,
    RcaResponse,
    ResourcesReport,
    RunSettings,
    TruthRow,
)
from .transient import run_program_transient

app = FastAPI(
    title="felixsim",
    description="Stateful-logic approximate adder simulator and benchmark service",
)

_VARIANTS = {
    "exact": AdderVariant.EXACT_FELIX,
    "fafa1": AdderVariant.FAFA1,
    "fafa2": AdderVariant.FAFA2,
}


def _config_from_settings(settings: RunSettings) -> RunConfig:
    d = settings.device
    device_kwargs = {}
    for src, dst in [("a", "a"), ("r_on", "r_on"), ("r_off", "r_off"),
                     ("v_on", "v_on_threshold"), ("v_off", "v_off_threshold"),
                     ("x_init", "x_init")]:
        value = getattr(d, src)
        if value is not None:
            device_kwargs[dst] = value
    explicit = {}
    for name, v0 in settings.explicit_v0.items():
        try:
            explicit[GateKind(name)] = v0
        except ValueError:
            raise HTTPException(422, f"unknown gate {name!r}")
    preset = settings.v0_preset or ("explicit" if explicit else "derived")
    try:
        return RunConfig(
            device=DeviceParams(**device_kwargs),
            v0_preset=preset,
            explicit_v0=explicit,
            pulse_width=settings.pulse_width,
            dt=settings.dt,
            seed=settings.seed,
            dump_waveforms=settings.dump_waveforms,
        )
    except (ConfigError, DeviceError) as exc:
        raise HTTPException(422, str(exc))


def _scenario(request) -> RcaScenario:
    return RcaScenario(
        width=getattr(request, "width", 8),
        approx_lsb_count=(4 if request.scenario == 1 else 5),
        approx_variant=_VARIANTS[request.variant],
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/gates/verify", response_model=GatesVerifyResponse)
def gates_verify(request: GatesVerifyRequest) -> GatesVerifyResponse:
    config = _config_from_settings(request.settings)
    params = config.device
    if request.gates is None:
        gates = list(GateKind)
    else:
        try:
            gates = [GateKind(g) for g in request.gates]
        except ValueError as exc:
            raise HTTPException(422, str(exc))
    reports: List[GateReport] = []
    traces: Optional[Dict[str, List[List[float]]]] = (
        {} if config.dump_waveforms else None)
    for gate in gates:
        window = static_window(gate, params)
        try:
            v0 = config.v0_for(gate)
        except ConfigError as exc:
            raise HTTPException(422, str(exc))
        table = verify_gate_truth_table(
            gate, v0, params, pulse_width=config.pulse_width, dt=config.dt)
        arity = gate_arity(gate)
        node_by_ones = {
            ones: node_voltage(
                v0, params.r_on,
                [params.r_on] * ones + [params.r_off] * (arity - ones))
            for ones in range(arity + 1)
        }
        reports.append(GateReport(
            gate=gate.value,
            window_low=window.low,
            window_high=window.high,
            window_empty=window.empty,
            v0=v0,
            v0_in_window=window.contains(v0),
            node_voltages_by_ones=node_by_ones,
            patterns=[PatternReport(
                bits=list(p.bits), expected=p.expected, actual=p.actual,
                inputs_preserved=p.inputs_preserved, ok=p.ok, energy=p.energy)
                for p in table.patterns],
            all_ok=table.all_ok,
            mean_energy=table.mean_energy,
        ))
        if traces is not None:
            from .device import MemristorCell, set_logic
            from .engine import StepSetup, execute_step
            for p in table.patterns:
                cells = [set_logic(MemristorCell(0.0), b, params) for b in p.bits]
                out = set_logic(MemristorCell(0.0), 1, params)
                setup = StepSetup(gate=gate, inputs=cells, output=out, v0=v0,
                                  pulse_width=config.pulse_width, dt=config.dt,
                                  record_trace=True)
                result = execute_step(setup, params)
                key = f"{gate.value}/" + "".join(str(b) for b in p.bits)
                traces[key] = [[t, v, *xs] for t, v, xs in result.trace]
    return GatesVerifyResponse(
        v0_preset=config.v0_preset,
        gates=reports,
        all_ok=all(r.all_ok for r in reports),
        traces=traces,
    )


def _metrics_report(report) -> CellMetricsReport:
    return CellMetricsReport(
        ed_max=report.ed_max,
        ed_total=report.ed_total,
        er_sum=float(report.er_sum) if report.er_sum is not None else 0.0,
        er_cout=float(report.er_cout) if report.er_cout is not None else 0.0,
        med=report.med_float,
        nmed=report.nmed_float,
        normalization_constant=report.normalization_constant,
    )


@app.post("/adder", response_model=AdderResponse)
def adder(request: AdderRequest) -> AdderResponse:
    config = _config_from_settings(request.settings)
    variant = _VARIANTS[request.variant]
    params = config.device

    truth: List[TruthRow] = []
    functional_ok = True
    for pattern in range(8):
        a, b, c = (pattern >> 2) & 1, (pattern >> 1) & 1, pattern & 1
        s, cout = full_add(variant, a, b, c)
        es, ec = full_add(AdderVariant.EXACT_ARITHMETIC, a, b, c)
        functional_ok &= full_add_program(variant, a, b, c) == (s, cout)
        truth.append(TruthRow(a=a, b=b, cin=c, sum=s, cout=cout,
                              exact_sum=es, exact_cout=ec))

    prog = PROGRAM_FOR_VARIANT[variant]
    transient_ok: Optional[bool] = None
    transient_preserved: Optional[bool] = None
    mean_energy: Optional[float] = None
    traces: Optional[Dict[str, List[List[float]]]] = None
    if variant.is_approximate:
        transient_ok = True
        transient_preserved = True
        total_energy = 0.0
        if config.dump_waveforms:
            traces = {}
        for pattern in range(8):
            bits = {"A": (pattern >> 2) & 1, "B": (pattern >> 1) & 1,
                    "Cin": pattern & 1}
            result = run_program_transient(
                prog, bits, params,
                v0_for_gate=lambda g, p: config.v0_for(g),
                record_traces=config.dump_waveforms)
            s, cout = full_add(variant, bits["A"], bits["B"], bits["Cin"])
            transient_ok &= result.outputs == {"Sum": s, "Cout": cout}
            transient_preserved &= result.inputs_preserved
            total_energy += result.energy
            if traces is not None:
                for idx, step in enumerate(result.step_results):
                    key = f"{request.variant}/{bits['A']}{bits['B']}{bits['Cin']}/step{idx}"
                    traces[key] = [[t, v, *xs] for t, v, xs in step.trace]
        mean_energy = total_energy / 8.0

    metrics = cell_metrics(variant)
    resources = cell_resources(variant)
    ref_key = {"exact": "exact_felix", "fafa1": "fafa1", "fafa2": "fafa2"}[request.variant]
    ref_energy = reference.cell_circuit_constants()[ref_key]["energy_uj"]
    return AdderResponse(
        variant=request.variant,
        truth_table=truth,
        functional_matches_truth=functional_ok,
        transient_matches_functional=transient_ok,
        transient_inputs_preserved=transient_preserved,
        mean_transient_energy=mean_energy,
        metrics=_metrics_report(metrics),
        resources=ResourcesReport(
            memristor_count=resources.memristor_count,
            compute_cycles=resources.compute_cycles,
            cycles_with_init=resources.cycles_with_init,
        ),
        reference_energy_uj=ref_energy,
        traces=traces,
    )


@app.post("/rca", response_model=RcaResponse)
def rca(request: RcaRequest) -> RcaResponse:
    config = _config_from_settings(request.settings)
    scenario = _scenario(request)
    try:
        metrics = rca_metrics(scenario, sample_count=request.sample_count,
                              seed=config.seed)
    except ValueError as exc:
        raise HTTPException(422, str(exc))
    resources = rca_resources(scenario)
    ranking = compare_with_references(metrics, scenario)

    published = None
    flags: List[DiscrepancyFlag] = []
    if scenario.width == 8:
        key = None
        if scenario.approx_lsb_count == 0:
            key = "exact"
        elif request.variant in ("fafa1", "fafa2"):
            key = f"scenario{request.scenario}_{request.variant}"
        if key is not None:
            published = reference.rca_circuit_constants()[key]
            if published["cycles"] != resources.cycles_with_init:
                flags.append(DiscrepancyFlag(
                    field="cycles_with_init",
                    computed=resources.cycles_with_init,
                    published=published["cycles"],
                    note="published cycle count is not reproducible from the "
                         "per-cell costs under any consistent init policy",
                ))
            if published["memristors"] != resources.memristor_count:
                flags.append(DiscrepancyFlag(
                    field="memristor_count",
                    computed=resources.memristor_count,
                    published=published["memristors"],
                    note="computed from the explicit cell inventory with "
                         "carry sharing; the published total implies an "
                         "unstated additional sharing rule",
                ))
    return RcaResponse(
        scenario=request.scenario,
        variant=request.variant,
        width=scenario.width,
        approx_lsb_count=scenario.approx_lsb_count,
        metrics=_metrics_report(metrics),
        resources=ResourcesReport(
            memristor_count=resources.memristor_count,
            compute_cycles=resources.compute_cycles,
            cycles_with_init=resources.cycles_with_init,
        ),
        published_cycles=published["cycles"] if published else None,
        published_memristors=published["memristors"] if published else None,
        flags=flags,
        ranking=[RankedRowReport(name=r.name, med=r.med, nmed=r.nmed,
                                 computed=r.computed) for r in ranking],
        sample_count=metrics.sample_count,
    )


def _quality_model(report) -> QualityReportModel:
    return QualityReportModel(
        app=report.app,
        scenario=report.scenario,
        psnr=None if math.isinf(report.psnr) else report.psnr,
        ssim=report.ssim,
        mssim=report.mssim,
        source=report.source,
    )


def _sample_inputs(app_name: str):
    if app_name == "addition":
        return ([sample_images.cameraman(), sample_images.rice()],
                [sample_images.PROVENANCE["cameraman"], sample_images.PROVENANCE["rice"]])
    if app_name == "motion":
        first, second = sample_images.motion_frames()
        return [first, second], [sample_images.PROVENANCE["motion"]]
    if app_name == "grayscale":
        return [sample_images.rgb_reference()], [sample_images.PROVENANCE["rgb"]]
    return [sample_images.pooling_reference()], [sample_images.PROVENANCE["pooling"]]


@app.post("/image", response_model=ImageResponse)
def image(request: ImageRequest) -> ImageResponse:
    scenario = _scenario(request)
    _, arity = APPLICATIONS[request.app]
    if request.inputs is None:
        images, provenance = _sample_inputs(request.app)
        source = "bundled-samples"
    else:
        if len(request.inputs) != arity:
            raise HTTPException(422, f"{request.app} takes {arity} input image(s)")
        try:
            images = [read_netpbm(p) for p in request.inputs]
        except (FileNotFoundError, ImageFormatError) as exc:
            raise HTTPException(422, str(exc))
        provenance = [str(p) for p in request.inputs]
        source = "+".join(Path(p).name for p in request.inputs)
    try:
        quality = benchmark_application(
            request.app, images, scenario, f"scenario{request.scenario}", source)
    except ValueError as exc:
        raise HTTPException(422, str(exc))

    written: List[str] = []
    if request.output_dir is not None:
        out_dir = Path(request.output_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        approx_img = run_application(request.app, images, scenario)
        exact_img = run_application(request.app, images, exact_scenario())
        for name, img in [("approx", approx_img), ("exact", exact_img)]:
            suffix = ".ppm" if img.channels == 3 else ".pgm"
            path = out_dir / f"{request.app}_scenario{request.scenario}_{name}{suffix}"
            write_netpbm(img, path)
            written.append(str(path))
    return ImageResponse(
        report=_quality_model(quality),
        outputs_written=written,
        provenance=provenance,
    )


@app.post("/dataset", response_model=DatasetResponse)
def dataset(request: DatasetRequest) -> DatasetResponse:
    scenario = _scenario(request)
    try:
        result = run_dataset(request.directory, request.app, scenario,
                             f"scenario{request.scenario}")
    except (DatasetError, ImageFormatError) as exc:
        raise HTTPException(422, str(exc))
    return DatasetResponse(
        rows=[_quality_model(r) for r in result.rows],
        average=_quality_model(result.average),
    )
