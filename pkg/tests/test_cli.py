import json

import numpy as np
import pytest
from click.testing import CliRunner

from felixsim.cli import main
from felixsim.imaging import ImagePlane, write_netpbm


@pytest.fixture
def runner():
    return CliRunner()


def test_gates_verify_json(runner):
    result = runner.invoke(main, ["gates", "verify", "--gate", "not1"])
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert data["all_ok"]
    assert data["gates"][0]["gate"] == "not1"


def test_gates_verify_csv(runner):
    result = runner.invoke(main, ["gates", "verify", "--gate", "not1",
                                  "--format", "csv"])
    assert result.exit_code == 0, result.output
    lines = result.output.strip().splitlines()
    assert lines[0].startswith("gate,v0,")
    assert len(lines) == 3  # header + two patterns


def test_gates_verify_fails_at_published_preset(runner):
    result = runner.invoke(main, ["gates", "verify", "--gate", "min3",
                                  "--v0-preset", "table6"])
    assert result.exit_code == 1


def test_gates_verify_waveform_dump(runner, tmp_path):
    wavedir = tmp_path / "waves"
    result = runner.invoke(main, ["gates", "verify", "--gate", "not1",
                                  "--dump-waveforms",
                                  "--waveform-dir", str(wavedir)])
    assert result.exit_code == 0, result.output
    files = list(wavedir.glob("*.csv"))
    assert len(files) == 2
    header = files[0].read_text().splitlines()[0]
    assert header.startswith("time,node_voltage")


def test_adder_json(runner):
    result = runner.invoke(main, ["adder", "--variant", "fafa2"])
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert data["resources"]["memristor_count"] == 5


def test_rca_csv(runner):
    result = runner.invoke(main, ["rca", "--scenario", "2",
                                  "--variant", "fafa2", "--format", "csv"])
    assert result.exit_code == 0, result.output
    assert result.output.startswith("name,med,nmed,computed")
    assert "FAFA (fafa2)" in result.output


def test_rca_config_file(runner, tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("format = csv\n")
    result = runner.invoke(main, ["rca", "--config", str(conf)])
    assert result.exit_code == 0, result.output
    assert result.output.startswith("name,med,nmed,computed")


def test_rca_env_override(runner, monkeypatch):
    monkeypatch.setenv("FELIXSIM_FORMAT", "csv")
    result = runner.invoke(main, ["rca"])
    assert result.exit_code == 0, result.output
    assert result.output.startswith("name,med,nmed,computed")


def test_bad_config_file(runner, tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("bogus = 1\n")
    result = runner.invoke(main, ["rca", "--config", str(conf)])
    assert result.exit_code != 0


def test_image_with_files_csv(runner, tmp_path):
    rng = np.random.default_rng(0)
    paths = []
    for i in range(2):
        img = ImagePlane(rng.integers(0, 256, size=(32, 32), dtype=np.uint8))
        p = tmp_path / f"i{i}.pgm"
        write_netpbm(img, p)
        paths.append(str(p))
    result = runner.invoke(main, ["image", "--app", "addition",
                                  "--input", paths[0], "--input", paths[1],
                                  "--format", "csv"])
    assert result.exit_code == 0, result.output
    assert result.output.startswith("app,scenario,psnr")


def test_image_rejects_wrong_input_count(runner, tmp_path):
    img = ImagePlane(np.zeros((8, 8), dtype=np.uint8))
    p = tmp_path / "one.pgm"
    write_netpbm(img, p)
    result = runner.invoke(main, ["image", "--app", "addition",
                                  "--input", str(p)])
    assert result.exit_code != 0


def test_dataset_command(runner, tmp_path):
    rng = np.random.default_rng(1)
    for i in range(2):
        img = ImagePlane(rng.integers(0, 256, size=(24, 24), dtype=np.uint8))
        write_netpbm(img, tmp_path / f"d{i}.pgm")
    result = runner.invoke(main, ["dataset", "--app", "addition",
                                  "--format", "csv", str(tmp_path)])
    assert result.exit_code == 0, result.output
    lines = result.output.strip().splitlines()
    assert lines[-1].startswith("average,")
