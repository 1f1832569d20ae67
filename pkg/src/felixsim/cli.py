"""Command-line front end.

A thin client over the HTTP service: commands build a request, post it to
the FastAPI app (in process by default, or a remote server via --server)
and render the JSON response as json or csv.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional

import click
import httpx

from .config import ConfigError, RunConfig, load_config
from .engine import GateKind


def _client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=300.0)
    import warnings

    from .service import app as service_app

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient
    return TestClient(service_app)


def _settings_payload(config: RunConfig) -> dict:
    return {
        "device": {
            "a": config.device.a,
            "r_on": config.device.r_on,
            "r_off": config.device.r_off,
            "v_on": config.device.v_on_threshold,
            "v_off": config.device.v_off_threshold,
            "x_init": config.device.x_init,
        },
        "v0_preset": config.v0_preset,
        "explicit_v0": {g.value: v for g, v in config.explicit_v0.items()},
        "pulse_width": config.pulse_width,
        "dt": config.dt,
        "seed": config.seed,
        "dump_waveforms": config.dump_waveforms,
    }


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    response = client.post(path, json=payload)
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except Exception:
            detail = response.text
        raise click.ClickException(f"{path}: {detail}")
    return response.json()


def _rows_to_csv(rows, fieldnames) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames)
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row.get(k, "") for k in fieldnames})
    return buf.getvalue()


def _emit_json(data: dict) -> None:
    click.echo(json.dumps(data, indent=2, sort_keys=True))


def _write_waveforms(traces: dict, directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for key, samples in traces.items():
        path = directory / (key.replace("/", "_") + ".csv")
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            n_cells = len(samples[0]) - 2 if samples else 0
            writer.writerow(["time", "node_voltage"]
                            + [f"x{i}" for i in range(n_cells)])
            writer.writerows(samples)
    click.echo(f"wrote {len(traces)} waveform files to {directory}", err=True)


_common_options = [
    click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path),
                 default=None, help="flat key=value config file"),
    click.option("--server", default=None,
                 help="base URL of a running service; default runs in process"),
    click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None,
                 help="report format (default json)"),
    click.option("--v0-preset", type=click.Choice(["derived", "table6"]), default=None),
    click.option("--dump-waveforms", is_flag=True, default=False),
    click.option("--waveform-dir", type=click.Path(path_type=Path),
                 default=Path("waveforms")),
]


def common_options(fn):
    for option in reversed(_common_options):
        fn = option(fn)
    return fn


def _build_config(config_path, fmt, v0_preset, dump_waveforms, **overrides) -> RunConfig:
    values = {"format": fmt, "v0_preset": v0_preset}
    values.update(overrides)
    if dump_waveforms:
        values["dump_waveforms"] = True
    try:
        return load_config(config_path, overrides=values)
    except (ConfigError, OSError, ValueError) as exc:
        raise click.ClickException(str(exc))


@click.group()
def main():
    """Simulator and analysis toolkit for stateful-logic approximate adders."""


@main.group()
def gates():
    """Gate-level verification commands."""


@gates.command("verify")
@common_options
@click.option("--gate", "gate_names", multiple=True,
              type=click.Choice([g.value for g in GateKind]),
              help="restrict to specific gates (default: all)")
def gates_verify(config_path, server, fmt, v0_preset, dump_waveforms,
                 waveform_dir, gate_names):
    """Verify every gate's truth table at its operating voltage."""
    config = _build_config(config_path, fmt, v0_preset, dump_waveforms)
    payload = {"settings": _settings_payload(config),
               "gates": list(gate_names) or None}
    with _client(server) as client:
        data = _post(client, "/gates/verify", payload)
    if config.dump_waveforms and data.get("traces"):
        _write_waveforms(data.pop("traces"), waveform_dir)
    data.pop("traces", None)
    if config.report_format == "csv":
        rows = []
        for gate in data["gates"]:
            for pattern in gate["patterns"]:
                rows.append({
                    "gate": gate["gate"],
                    "v0": gate["v0"],
                    "window_low": gate["window_low"],
                    "window_high": gate["window_high"],
                    "bits": "".join(str(b) for b in pattern["bits"]),
                    "expected": pattern["expected"],
                    "actual": pattern["actual"],
                    "inputs_preserved": pattern["inputs_preserved"],
                    "ok": pattern["ok"],
                    "energy": pattern["energy"],
                })
        click.echo(_rows_to_csv(rows, list(rows[0].keys())), nl=False)
    else:
        _emit_json(data)
    if not data["all_ok"]:
        sys.exit(1)


@main.command()
@common_options
@click.option("--variant", type=click.Choice(["exact", "fafa1", "fafa2"]),
              default="fafa1")
def adder(config_path, server, fmt, v0_preset, dump_waveforms, waveform_dir,
          variant):
    """Full truth-table, metric and resource report for one adder cell."""
    config = _build_config(config_path, fmt, v0_preset, dump_waveforms)
    payload = {"settings": _settings_payload(config), "variant": variant}
    with _client(server) as client:
        data = _post(client, "/adder", payload)
    if config.dump_waveforms and data.get("traces"):
        _write_waveforms(data.pop("traces"), waveform_dir)
    data.pop("traces", None)
    if config.report_format == "csv":
        rows = [dict(row) for row in data["truth_table"]]
        click.echo(_rows_to_csv(rows, list(rows[0].keys())), nl=False)
        summary = {k: v for k, v in data.items() if k != "truth_table"}
        click.echo(json.dumps(summary, indent=2, sort_keys=True))
    else:
        _emit_json(data)


@main.command()
@common_options
@click.option("--scenario", type=click.Choice(["1", "2"]), default="1")
@click.option("--variant", type=click.Choice(["exact", "fafa1", "fafa2"]),
              default="fafa1")
@click.option("--width", type=int, default=8)
@click.option("--sample-count", type=int, default=None,
              help="sampled mode for wide adders (requires seed)")
@click.option("--seed", type=int, default=None)
def rca(config_path, server, fmt, v0_preset, dump_waveforms, waveform_dir,
        scenario, variant, width, sample_count, seed):
    """Exhaustive (or sampled) error metrics and resources for a composed adder."""
    config = _build_config(config_path, fmt, v0_preset, dump_waveforms,
                           scenario=int(scenario), seed=seed)
    payload = {
        "settings": _settings_payload(config),
        "scenario": int(scenario),
        "variant": variant,
        "width": width,
        "sample_count": sample_count,
    }
    with _client(server) as client:
        data = _post(client, "/rca", payload)
    if config.report_format == "csv":
        rows = [dict(r) for r in data["ranking"]]
        click.echo(_rows_to_csv(rows, ["name", "med", "nmed", "computed"]), nl=False)
        summary = {k: v for k, v in data.items() if k != "ranking"}
        click.echo(json.dumps(summary, indent=2, sort_keys=True))
    else:
        _emit_json(data)


@main.command()
@common_options
@click.option("--app", "app_name", required=True,
              type=click.Choice(["addition", "motion", "grayscale", "pooling"]))
@click.option("--scenario", type=click.Choice(["1", "2"]), default="1")
@click.option("--variant", type=click.Choice(["fafa1", "fafa2"]), default="fafa1")
@click.option("--input", "inputs", multiple=True,
              type=click.Path(exists=True, path_type=Path),
              help="input image(s); omit to use the bundled samples")
@click.option("--output-dir", type=click.Path(path_type=Path), default=None)
def image(config_path, server, fmt, v0_preset, dump_waveforms, waveform_dir,
          app_name, scenario, variant, inputs, output_dir):
    """Run one image application and score approximate vs exact output."""
    config = _build_config(config_path, fmt, v0_preset, dump_waveforms,
                           scenario=int(scenario))
    payload = {
        "settings": _settings_payload(config),
        "app": app_name,
        "scenario": int(scenario),
        "variant": variant,
        "inputs": [str(p) for p in inputs] or None,
        "output_dir": str(output_dir) if output_dir else None,
    }
    with _client(server) as client:
        data = _post(client, "/image", payload)
    if config.report_format == "csv":
        row = dict(data["report"])
        click.echo(_rows_to_csv([row], list(row.keys())), nl=False)
    else:
        _emit_json(data)


@main.command()
@common_options
@click.option("--app", "app_name", required=True,
              type=click.Choice(["addition", "motion", "grayscale", "pooling"]))
@click.option("--scenario", type=click.Choice(["1", "2"]), default="1")
@click.option("--variant", type=click.Choice(["fafa1", "fafa2"]), default="fafa1")
@click.argument("directory", type=click.Path(path_type=Path))
def dataset(config_path, server, fmt, v0_preset, dump_waveforms, waveform_dir,
            app_name, scenario, variant, directory):
    """Run one application across a directory of images and average scores."""
    config = _build_config(config_path, fmt, v0_preset, dump_waveforms,
                           scenario=int(scenario))
    payload = {
        "settings": _settings_payload(config),
        "app": app_name,
        "scenario": int(scenario),
        "variant": variant,
        "directory": str(directory),
    }
    with _client(server) as client:
        data = _post(client, "/dataset", payload)
    if config.report_format == "csv":
        rows = [dict(r) for r in data["rows"]] + [dict(data["average"])]
        click.echo(_rows_to_csv(rows, ["source", "app", "scenario", "psnr",
                                       "ssim", "mssim"]), nl=False)
    else:
        _emit_json(data)


if __name__ == "__main__":
    main()
