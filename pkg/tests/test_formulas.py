"""Closed-form value formulas against independent hand arithmetic."""

import pytest

from baltic_dst.model import formulas
from baltic_dst.model.params import DragModel, EconParams, EmissionParams

ECON = EconParams()
EMIS = EmissionParams()
DRAG = DragModel()


class TestEcotoxPressure:
    def test_non_biocidal_is_zero(self):
        for coating in ("hard coating", "fouling release coating"):
            assert formulas.ecotox_pressure_value(0.01, coating, 12.0,
                                                  "hard brushes", EMIS) == 0.0

    def test_baseline_255_5(self):
        # 7 ug/cm2/day * 1e8 cm2 * 365 d * 1e-9 kg/ug
        got = formulas.ecotox_pressure_value(0.01, "biocidal coating", 0.0,
                                             "soft brushes", EMIS)
        assert got == pytest.approx(255.5, abs=1e-9)

    def test_two_hard_cleanings_280_7(self):
        # replaces 14 baseline days by 14 days at 25 ug/cm2/day
        want = 255.5 - 7 * 7 * 2 * 0.1 + 25 * 7 * 2 * 0.1
        got = formulas.ecotox_pressure_value(0.01, "biocidal coating", 2.0,
                                             "hard brushes", EMIS)
        assert got == pytest.approx(want, abs=1e-9)
        assert got == pytest.approx(280.7, abs=1e-6)

    def test_soft_peak_smaller_than_hard(self):
        soft = formulas.ecotox_pressure_value(0.01, "biocidal coating", 2.0,
                                              "soft brushes", EMIS)
        hard = formulas.ecotox_pressure_value(0.01, "biocidal coating", 2.0,
                                              "hard brushes", EMIS)
        assert soft < hard


class TestIwcCost:
    def test_no_iwc_mode_is_zero(self):
        assert formulas.iwc_cost_value(0.01, 12.0, "no IWC", 2.0, ECON) == 0.0

    def test_two_cleanings_no_collect(self):
        # 3 EUR/m2 * 0.4 * 1e4 m2 * 2
        got = formulas.iwc_cost_value(0.01, 2.0, "IWC + no collecting", 0.0, ECON)
        assert got == pytest.approx(-24_000.0, abs=1e-9)

    def test_collect_surcharge_50_percent(self):
        got = formulas.iwc_cost_value(0.01, 2.0, "IWC + collecting", 0.0, ECON)
        assert got == pytest.approx(-36_000.0, abs=1e-9)

    def test_zero_cleanings(self):
        assert formulas.iwc_cost_value(0.01, 0.0, "IWC + collecting", 2.0, ECON) == 0.0

    def test_off_hire_per_event(self):
        got = formulas.iwc_cost_value(0.01, 2.0, "IWC + no collecting", 1.0, ECON)
        assert got == pytest.approx(-24_000.0 - 20_000.0 * 1.0 * 2, abs=1e-9)


class TestCoatingCost:
    @pytest.mark.parametrize("coating,want", [
        ("hard coating", -60_000.0),
        ("biocidal coating", -40_000.0),
        ("fouling release coating", -100_000.0),
    ])
    def test_annualized_prices(self, coating, want):
        got = formulas.coating_cost_value(0.01, coating, ECON)
        assert got == pytest.approx(want, abs=1e-9)


class TestFuelChain:
    def test_first_bucket_anchor(self):
        real, co2_h, cost_y, co2_y = formulas.fuel_chain_values(
            3000.0, 0, "heavy fuel oil", 1000.0, DRAG, EMIS, ECON)
        assert real == pytest.approx(3060.0)
        assert co2_h == pytest.approx(3060.0 * 3.114)
        assert cost_y == pytest.approx(-(3060.0 / 1000.0) * 450.0 * 1000.0)
        assert co2_y == pytest.approx(co2_h * 1000.0)

    def test_zero_drag_map_identity(self):
        flat = DragModel(penalty_by_interval=(0.02, 0.02, 0.02, 0.02, 0.02, 0.02))
        assert formulas.real_fuel_value(2000.0, 5, flat) == pytest.approx(2040.0)

    def test_drag_nondecreasing_enforced(self):
        with pytest.raises(ValueError):
            DragModel(penalty_by_interval=(0.02, 0.01, 0.07, 0.11, 0.16, 0.25))

    def test_first_bucket_anchored_2_4_percent(self):
        with pytest.raises(ValueError):
            DragModel(penalty_by_interval=(0.05, 0.06, 0.07, 0.11, 0.16, 0.25))


class TestPotentialRisk:
    def test_main_hull(self):
        assert formulas.potential_risk_value(1.0, 5.0, 2.0, False, EMIS) == 10.0

    def test_niche_multiplier(self):
        assert formulas.potential_risk_value(1.0, 5.0, 2.0, True, EMIS) == \
            pytest.approx(26.0)

    def test_large_product_exceeds_top_bound(self):
        # clamping to the terminal bin happens at CPT construction
        assert formulas.potential_risk_value(53.0, 75.0, 100.0, False, EMIS) == \
            pytest.approx(397_500.0)


class TestSedimentRisk:
    def test_pattern(self):
        assert formulas.sediment_risk_value("high", "hard coating") == 0.0
        assert formulas.sediment_risk_value("low", "biocidal coating") == -50.0
        assert formulas.sediment_risk_value("high", "biocidal coating") == -100.0


class TestNisRisk:
    def test_zero_risk_is_zero_everywhere(self):
        for mode in ("IWC + collecting", "IWC + no collecting", "no IWC"):
            assert formulas.nis_risk_value(0.0, mode, "soft fouling",
                                           2e-4, 2.0, 0.25, 1.0, 1.25) == 0.0

    def test_mode_ordering(self):
        args = (100.0,)
        vals = {mode: abs(formulas.nis_risk_value(
            *args, mode, "hard fouling", 2e-4, 2.0, 0.25, 1.0, 1.25))
            for mode in ("IWC + collecting", "no IWC", "IWC + no collecting")}
        assert vals["IWC + collecting"] < vals["no IWC"] < vals["IWC + no collecting"]
