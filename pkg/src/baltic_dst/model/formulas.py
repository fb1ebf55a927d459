"""Closed-form value formulas behind the network's CPTs and utility tables.

These are the independent, hand-checkable versions: the network builder
evaluates them at interval midpoints and bins the results; the acceptance
suite evaluates them directly and compares.
"""

from __future__ import annotations

from .params import EconParams, EmissionParams, DragModel

KM2_TO_M2 = 1.0e6
KM2_TO_CM2 = 1.0e10
KM2_TO_HM2 = 100.0
UG_TO_KG = 1.0e-9
DAYS_PER_YEAR = 365.0

BIOCIDAL = "biocidal coating"
NO_IWC = "no IWC"
COLLECT = "IWC + collecting"
NO_COLLECT = "IWC + no collecting"


def ecotox_pressure_value(wsa_km2: float, coating: str, iwc_times: float,
                          iwc_method: str, emis: EmissionParams) -> float:
    """Annual copper release to the sea in kg/year.

    Zero for non-biocidal coatings.  Each cleaning replaces the baseline
    flux by the method's elevated peak flux for ``peak_days`` days.
    """
    if coating != BIOCIDAL:
        return 0.0
    area_cm2 = wsa_km2 * KM2_TO_CM2
    peak = emis.peak_cu_flux_hard if iwc_method == "hard brushes" else emis.peak_cu_flux_soft
    peak_day_total = emis.peak_days * iwc_times
    baseline_days = DAYS_PER_YEAR - peak_day_total
    ug = emis.baseline_cu_flux * area_cm2 * baseline_days + peak * area_cm2 * peak_day_total
    return ug * UG_TO_KG


def iwc_cost_value(wsa_km2: float, iwc_times: float, collect_mode: str,
                   off_hire_days: float, econ: EconParams) -> float:
    """Annual in-water cleaning cost as a (non-positive) utility in EUR/year."""
    if collect_mode == NO_IWC:
        return 0.0
    wsa_m2 = wsa_km2 * KM2_TO_M2
    price = econ.iwc_price_per_m2
    if collect_mode == COLLECT:
        price *= 1.0 + econ.collect_surcharge
    cleaning = price * econ.cleaned_fraction_of_wsa * wsa_m2 * iwc_times
    off_hire = econ.off_hire_per_day * off_hire_days * iwc_times
    return -(cleaning + off_hire)


def coating_cost_value(wsa_km2: float, coating: str, econ: EconParams) -> float:
    """Annualized coating cost in EUR/year (coating renewed every life period)."""
    wsa_m2 = wsa_km2 * KM2_TO_M2
    return -econ.coating_cost_per_m2[coating] * wsa_m2 / econ.coating_life_years


def real_fuel_value(theoretical_kg_h: float, nstm_state: int, drag: DragModel) -> float:
    return theoretical_kg_h * (1.0 + drag.penalty(nstm_state))


def co2_per_hour_value(real_fuel_kg_h: float, fuel_type: str, emis: EmissionParams) -> float:
    return real_fuel_kg_h * emis.co2_per_fuel_tonne[fuel_type]


def fuel_chain_values(theoretical_kg_h: float, nstm_state: int, fuel_type: str,
                      annual_hours: float, drag: DragModel, emis: EmissionParams,
                      econ: EconParams):
    """(real fuel kg/h, CO2 kg/h, fuel cost EUR/year, CO2 kg/year)."""
    real = real_fuel_value(theoretical_kg_h, nstm_state, drag)
    co2_h = co2_per_hour_value(real, fuel_type, emis)
    fuel_cost_y = -(real / 1000.0) * econ.fuel_price_per_tonne[fuel_type] * annual_hours
    co2_y = co2_h * annual_hours
    return real, co2_h, fuel_cost_y, co2_y


def potential_risk_value(nis_value: float, nstm_midpoint: float, area_hm2: float,
                         is_niche: bool, emis: EmissionParams) -> float:
    mult = emis.niche_fouling_multiplier if is_niche else 1.0
    return nis_value * nstm_midpoint * area_hm2 * mult


def sediment_risk_value(sediment_class: str, coating: str) -> float:
    if coating != BIOCIDAL:
        return 0.0
    return -100.0 if sediment_class == "high" else -50.0


def nis_risk_value(combined_risk_midpoint: float, collect_mode: str, fouling_type: str,
                   scale: float, mult_no_collect: float, mult_collect: float,
                   mult_no_iwc: float, hard_fouling_factor: float) -> float:
    """Risk utility: linear in the combined potential-risk midpoint, scaled by
    the cleaning-mode multiplier (collect < no IWC < no collect) and a
    fouling-hardness factor."""
    mode_mult = {
        NO_COLLECT: mult_no_collect,
        COLLECT: mult_collect,
        NO_IWC: mult_no_iwc,
    }[collect_mode]
    fouling = hard_fouling_factor if fouling_type == "hard fouling" else 1.0
    return -scale * combined_risk_midpoint * mode_mult * fouling
