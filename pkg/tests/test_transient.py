import pytest

from felixsim.adders import AdderVariant, full_add
from felixsim.device import DeviceParams
from felixsim.isa import (
    EXACT_PROGRAM,
    FAFA1_PROGRAM,
    FAFA2_PROGRAM,
    ProgramError,
)
from felixsim.transient import (
    average_program_energy,
    run_program_transient,
    v0_table,
)

PARAMS = DeviceParams()


def _bits(pattern):
    return {"A": (pattern >> 2) & 1, "B": (pattern >> 1) & 1, "Cin": pattern & 1}


@pytest.mark.parametrize("prog,variant", [
    (FAFA1_PROGRAM, AdderVariant.FAFA1),
    (FAFA2_PROGRAM, AdderVariant.FAFA2),
])
def test_transient_matches_functional(prog, variant):
    for pattern in range(8):
        bits = _bits(pattern)
        result = run_program_transient(prog, bits, PARAMS)
        s, cout = full_add(variant, bits["A"], bits["B"], bits["Cin"])
        assert result.outputs == {"Sum": s, "Cout": cout}
        assert result.inputs_preserved
        assert result.energy > 0


def test_exact_program_has_no_transient_form():
    # the two-cycle composite steps have no single-voltage realization
    with pytest.raises(ProgramError):
        run_program_transient(EXACT_PROGRAM, _bits(0), PARAMS)


def test_missing_input_rejected():
    with pytest.raises(ProgramError):
        run_program_transient(FAFA2_PROGRAM, {"A": 0, "B": 1}, PARAMS)


def test_traces_recorded_per_step():
    result = run_program_transient(FAFA2_PROGRAM, _bits(5), PARAMS,
                                   record_traces=True)
    assert len(result.step_results) == 2
    assert all(step.trace for step in result.step_results)


def test_published_voltage_preset_breaks_the_cell():
    # at the out-of-window preset voltages the minority step misfires
    ok = True
    for pattern in range(8):
        bits = _bits(pattern)
        result = run_program_transient(FAFA2_PROGRAM, bits, PARAMS,
                                       v0_for_gate=v0_table)
        s, cout = full_add(AdderVariant.FAFA2, bits["A"], bits["B"], bits["Cin"])
        ok = ok and result.outputs == {"Sum": s, "Cout": cout} \
            and result.inputs_preserved
    assert not ok


def test_average_energy_orders_variants():
    e1 = average_program_energy(FAFA1_PROGRAM, PARAMS)
    e2 = average_program_energy(FAFA2_PROGRAM, PARAMS)
    assert 0 < e2 < e1
