import pytest

from felixsim.adders import AdderVariant
from felixsim.config import ConfigError, RunConfig, load_config
from felixsim.engine import GateKind, TABLE_V0_PRESET, default_v0


def test_defaults():
    config = load_config(environ={})
    assert config.v0_preset == "derived"
    assert config.scenario == 1
    assert config.variant is AdderVariant.FAFA1
    assert config.report_format == "json"
    assert not config.dump_waveforms


def test_file_values(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text(
        "# comment\n"
        "scenario = 2\n"
        "variant = fafa2\n"
        "r_on = 200\n"
        "dump_waveforms = true\n"
    )
    config = load_config(path, environ={})
    assert config.scenario == 2
    assert config.variant is AdderVariant.FAFA2
    assert config.device.r_on == 200.0
    assert config.dump_waveforms


def test_file_rejects_unknown_key(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("colour = blue\n")
    with pytest.raises(ConfigError):
        load_config(path, environ={})


def test_file_rejects_malformed_line(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("scenario 2\n")
    with pytest.raises(ConfigError):
        load_config(path, environ={})


def test_environment_overrides_file(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("scenario = 1\n")
    config = load_config(path, environ={"FELIXSIM_SCENARIO": "2"})
    assert config.scenario == 2


def test_explicit_overrides_environment():
    config = load_config(environ={"FELIXSIM_SCENARIO": "2"},
                         overrides={"scenario": 1})
    assert config.scenario == 1


def test_none_overrides_are_ignored():
    config = load_config(environ={}, overrides={"scenario": None})
    assert config.scenario == 1


def test_explicit_v0_keys_activate_explicit_preset():
    config = load_config(environ={"FELIXSIM_V0_NOT1": "1.25"})
    assert config.v0_preset == "explicit"
    assert config.v0_for(GateKind.NOT1) == 1.25
    with pytest.raises(ConfigError):
        config.v0_for(GateKind.MIN3)


def test_explicit_v0_range_check():
    with pytest.raises(ConfigError):
        load_config(environ={"FELIXSIM_V0_NOT1": "12.0"})


def test_v0_presets():
    config = load_config(environ={})
    assert config.v0_for(GateKind.MIN3) == pytest.approx(
        default_v0(GateKind.MIN3, config.device))
    table = load_config(environ={}, overrides={"v0_preset": "table6"})
    assert table.v0_for(GateKind.NOT1) == TABLE_V0_PRESET[GateKind.NOT1]


@pytest.mark.parametrize("kwargs", [
    {"v0_preset": "tableX"},
    {"scenario": 3},
    {"report_format": "xml"},
])
def test_run_config_validation(kwargs):
    with pytest.raises(ConfigError):
        RunConfig(**kwargs)


def test_unknown_variant():
    with pytest.raises(ConfigError):
        load_config(environ={}, overrides={"variant": "safan"})


def test_rca_scenario_mapping():
    one = load_config(environ={}).rca_scenario()
    assert (one.width, one.approx_lsb_count) == (8, 4)
    two = load_config(environ={}, overrides={"scenario": 2,
                                             "variant": "fafa2"}).rca_scenario()
    assert two.approx_lsb_count == 5
    assert two.approx_variant is AdderVariant.FAFA2
