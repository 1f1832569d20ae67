from fractions import Fraction

import numpy as np
import pytest

from felixsim.adders import AdderVariant, RcaScenario, rca_add, scenario_1, scenario_2
from felixsim.error_analysis import (
    cell_metrics,
    compare_with_references,
    rca_metrics,
    rca_metrics_oracle,
    sum_table,
)


def test_exact_cell_has_no_error():
    report = cell_metrics(AdderVariant.EXACT_FELIX)
    assert report.ed_total == 0
    assert report.med == 0
    assert report.er_sum == 0
    assert report.er_cout == 0


@pytest.mark.parametrize("variant", [AdderVariant.FAFA1, AdderVariant.FAFA2])
def test_approximate_cell_metrics(variant):
    report = cell_metrics(variant)
    assert report.ed_max == 1
    assert report.ed_total == 2
    assert report.med == Fraction(1, 4)
    assert report.nmed == Fraction(1, 12)
    assert report.er_sum == Fraction(1, 4)
    assert report.er_cout == 0
    assert report.normalization_constant == 3
    assert report.sample_count == 8


def test_nmed_is_med_over_normalization():
    for scenario in (scenario_1(), scenario_2()):
        report = rca_metrics(scenario)
        assert report.nmed == report.med / report.normalization_constant
        assert report.normalization_constant == (1 << 9) - 1


def test_scenario_1_metrics():
    report = rca_metrics(scenario_1())
    assert report.sample_count == 65536
    assert report.med == Fraction(report.ed_total, 65536)
    assert report.med_float == pytest.approx(3.6171875)
    assert report.nmed_float == pytest.approx(3.6171875 / 511)


def test_scenario_2_metrics():
    report = rca_metrics(scenario_2())
    assert report.med_float == pytest.approx(7.376953125)


def test_variant_choice_does_not_change_rca_error():
    # both approximate cells compute the same Boolean function
    assert rca_metrics(scenario_1(AdderVariant.FAFA1)).med == \
        rca_metrics(scenario_1(AdderVariant.FAFA2)).med


def test_enumerator_matches_oracle_width_6():
    scenario = RcaScenario(width=6, approx_lsb_count=3)
    fast = rca_metrics(scenario)
    slow = rca_metrics_oracle(scenario)
    assert fast.ed_total == slow.ed_total
    assert fast.ed_max == slow.ed_max
    assert fast.med == slow.med


def test_wide_adders_require_sampling():
    wide = RcaScenario(width=20, approx_lsb_count=4)
    with pytest.raises(ValueError):
        rca_metrics(wide)
    report = rca_metrics(wide, sample_count=1000, seed=7)
    assert report.sample_count == 1000
    again = rca_metrics(wide, sample_count=1000, seed=7)
    assert report.ed_total == again.ed_total


def test_sampling_validates_count():
    with pytest.raises(ValueError):
        rca_metrics(scenario_1(), sample_count=0)


def test_sum_table_matches_scalar_ripple():
    scenario = scenario_2()
    table = sum_table(scenario)
    assert table.shape == (256, 256)
    rng = np.random.default_rng(3)
    for a, b in rng.integers(0, 256, size=(50, 2)):
        assert table[a, b] == rca_add(scenario, int(a), int(b))


def test_compare_with_references_layout():
    report = rca_metrics(scenario_1())
    rows = compare_with_references(report, scenario_1())
    assert rows[0].name == "Exact"
    nmeds = [r.nmed for r in rows]
    assert nmeds == sorted(nmeds)
    computed = [r for r in rows if r.computed]
    assert len(computed) == 1
    assert computed[0].med == pytest.approx(3.6171875)
    # no duplicate entry for the computed design
    assert sum(r.name.startswith("FAFA") for r in rows) == 1
