"""CPT construction for the biofouling network.

Transcribed tables (wetted surface area per ship type, sediment class per
route, per-route NIS point values, fouling type) are encoded verbatim.
The biofouling-pressure tables are only partially published; the published
anchor columns are encoded exactly and the remaining columns follow the
documented monotone degradation rule.  Reconstructed columns are reported
so the model file can flag them.
"""

from __future__ import annotations

import numpy as np

from . import catalog
from .params import DragModel, EconParams, EmissionParams, NICHE_FRACTION
from . import formulas

N_NSTM = 6

# -- biofouling pressure ---------------------------------------------------

# severity index 0..5 over the NSTM intervals at zero cleaning, per coating
# and year since coating; hard coating degrades fastest, biocidal holds out
# for two seasons, fouling release stays clean
_BASE_SEVERITY = {
    "hard coating": (0.0, 5.0, 5.0, 5.0, 5.0),
    "biocidal coating": (0.0, 0.0, 1.0, 4.0, 5.0),
    "fouling release coating": (0.0, 0.0, 0.0, 0.0, 0.0),
}

# multiplicative relief per cleanings/season; more cleaning, lower severity
_IWC_RELIEF = {0.0: 1.0, 2.0: 0.3, 6.0: 0.12, 12.0: 0.08}


def biofouling_cpt(coating: str, time_since_coating: float, iwc_times: float) -> np.ndarray:
    """Probability vector over the 6 NSTM intervals for one parent config.

    The severity index is spread over the two adjacent NSTM states, which
    keeps the table CDF-monotone in both time since coating (worse) and
    cleanings per season (better).
    """
    base = _BASE_SEVERITY[coating][int(time_since_coating)]
    severity = base * _IWC_RELIEF[iwc_times]
    vec = np.zeros(N_NSTM)
    lo = int(np.floor(severity))
    frac = severity - lo
    if lo >= N_NSTM - 1:
        vec[N_NSTM - 1] = 1.0
    else:
        vec[lo] = 1.0 - frac
        vec[lo + 1] = frac
    return vec


def biofouling_column_is_anchor(coating: str, time_since_coating: float,
                                iwc_times: float) -> bool:
    """True for columns pinned by the published table fragments."""
    if time_since_coating == 0.0 or coating == "fouling release coating":
        return True
    return iwc_times == 0.0


def biofouling_table() -> np.ndarray:
    """Full table, axes (coating, time, iwc, nstm)."""
    out = np.zeros((3, 5, 4, N_NSTM))
    for ci, coating in enumerate(catalog.COATING_TYPES):
        for ti, t in enumerate(catalog.TIME_SINCE_COATING_VALUES):
            for ii, iwc in enumerate(catalog.IWC_TIMES_VALUES):
                out[ci, ti, ii] = biofouling_cpt(coating, t, iwc)
    return out


# -- wetted surface area ---------------------------------------------------

# transcribed per-ship-type distributions over the 12 WSA intervals
# (Polish seaport arrivals, 2018); row order follows catalog.SHIP_TYPES
WSA_ROWS = np.array([
    [1.58873e-4, 0.00301329, 0.34364, 0.403583, 0.248493,
     1.58873e-4, 1.58873e-4, 1.58873e-4, 1.58873e-4, 1.58873e-4, 1.58873e-4, 1.58873e-4],
    [5.88568e-5, 5.88568e-5, 0.555222, 0.370168, 0.0740806,
     5.88568e-5, 5.88568e-5, 5.88568e-5, 5.88568e-5, 5.88568e-5, 5.88568e-5, 5.88568e-5],
    [0.0106709, 0.0319514, 0.916743, 0.039106, 2.14085e-4, 3.97537e-4,
     2.14085e-4, 3.06324e-5, 2.14085e-4, 2.14085e-4, 3.06324e-5, 2.14085e-4],
    [0.112046, 0.00610589, 0.677391, 0.184323, 0.0189771,
     1.65322e-4, 1.65322e-4, 1.65322e-4, 1.65322e-4, 1.65322e-4, 1.65322e-4, 1.65322e-4],
    [5.09397e-4, 0.00286012, 0.442681, 0.5534, 2.74324e-4,
     3.92517e-5, 3.92517e-5, 3.92517e-5, 3.92517e-5, 3.92517e-5, 3.92517e-5, 3.92517e-5],
    [0.0560839, 0.283236, 0.51303, 0.131625, 0.0154078,
     8.82073e-5, 8.82073e-5, 8.82073e-5, 8.82073e-5, 8.82073e-5, 8.82073e-5, 8.82073e-5],
])


def wsa_cpt(ship_type: str) -> np.ndarray:
    row = WSA_ROWS[catalog.SHIP_TYPES.index(ship_type)].copy()
    s = row.sum()
    if abs(s - 1.0) > 1e-6:
        raise ValueError(f"transcribed WSA row for {ship_type!r} sums to {s!r}")
    return row / s


# -- fouling type ----------------------------------------------------------

def fouling_type_table() -> np.ndarray:
    """Axes (nstm_max, fouling_type): soft below 30 NSTM, hard above, an
    even split in the 30-40 transition band."""
    t = np.zeros((N_NSTM, 2))
    t[0] = t[1] = t[2] = (1.0, 0.0)
    t[3] = (0.5, 0.5)
    t[4] = t[5] = (0.0, 1.0)
    return t


# -- copper emission -------------------------------------------------------

def copper_emission_table() -> np.ndarray:
    """Axes (coating, emission state {0, 7}): copper is released only by the
    biocidal coating."""
    t = np.zeros((3, 2))
    for ci, coating in enumerate(catalog.COATING_TYPES):
        t[ci, 1 if coating == formulas.BIOCIDAL else 0] = 1.0
    return t


# -- NIS value -------------------------------------------------------------

def nis_value_table_default() -> np.ndarray:
    """Axes (route, nis state): the published network's per-route point
    masses.  Replaceable by a refit through the salinity model."""
    t = np.zeros((len(catalog.ROUTES), len(catalog.NIS_VALUES)))
    for ri, route in enumerate(catalog.ROUTES):
        t[ri, catalog.ROUTE_NIS_STATE[route.label]] = 1.0
    return t


# -- sediment copper -------------------------------------------------------

def sediment_cu_table() -> np.ndarray:
    t = np.zeros((len(catalog.ROUTES), 2))
    for ri, cls in enumerate(catalog.SEDIMENT_CLASS):
        t[ri, catalog.SEDIMENT_STATES.index(cls)] = 1.0
    return t


# -- deterministic binned chains ------------------------------------------

def wsa_split_tables():
    """(wsa_no_niche, niche_areas) tables, axes (wsa, ship_type, child)."""
    wsa_space = catalog.chance_variables()[2].states
    nn_space = [v for v in catalog.chance_variables() if v.id == "wsa_no_niche"][0].states
    niche_space = [v for v in catalog.chance_variables() if v.id == "niche_areas"][0].states
    n_wsa = len(wsa_space)
    nn = np.zeros((n_wsa, len(catalog.SHIP_TYPES), len(nn_space)))
    niche = np.zeros((n_wsa, len(catalog.SHIP_TYPES), len(niche_space)))
    for wi in range(n_wsa):
        hm2 = wsa_space.midpoint(wi) * formulas.KM2_TO_HM2
        for si, ship in enumerate(catalog.SHIP_TYPES):
            frac = NICHE_FRACTION[ship]
            nn[wi, si, nn_space.bin_index(hm2 * (1.0 - frac))] = 1.0
            niche[wi, si, niche_space.bin_index(hm2 * frac)] = 1.0
    return nn, niche


def fuel_real_table(drag: DragModel) -> np.ndarray:
    """Axes (theoretical_fuel, biofouling_avg, fuel_real)."""
    theo = catalog.THEORETICAL_FUEL_BOUNDS
    space = [v for v in catalog.chance_variables() if v.id == "fuel_real"][0].states
    t = np.zeros((4, N_NSTM, len(space)))
    for ti in range(4):
        mid = 0.5 * (theo[ti] + theo[ti + 1])
        for ni in range(N_NSTM):
            real = formulas.real_fuel_value(mid, ni, drag)
            t[ti, ni, space.bin_index(real)] = 1.0
    return t


def co2_hr_table(emis: EmissionParams) -> np.ndarray:
    """Axes (fuel_real, fuel_type, co2_hr)."""
    fr_space = [v for v in catalog.chance_variables() if v.id == "fuel_real"][0].states
    co2_space = [v for v in catalog.chance_variables() if v.id == "co2_hr"][0].states
    t = np.zeros((len(fr_space), 2, len(co2_space)))
    for fi in range(len(fr_space)):
        for yi, fuel in enumerate(catalog.FUEL_TYPES):
            co2 = formulas.co2_per_hour_value(fr_space.midpoint(fi), fuel, emis)
            t[fi, yi, co2_space.bin_index(co2)] = 1.0
    return t


def potential_risk_tables(emis: EmissionParams):
    """(potential_risk_wsa, potential_risk_niche) deterministic tables."""
    spaces = {v.id: v.states for v in catalog.chance_variables()}
    nis = catalog.NIS_VALUES
    nstm = spaces["biofouling_max"]
    wsa_risk = np.zeros((len(nis), len(spaces["wsa_no_niche"]), N_NSTM,
                         len(spaces["potential_risk_wsa"])))
    niche_risk = np.zeros((len(nis), len(spaces["niche_areas"]), N_NSTM,
                           len(spaces["potential_risk_niche"])))
    for vi, value in enumerate(nis):
        for ni in range(N_NSTM):
            m = nstm.midpoint(ni)
            for ai in range(len(spaces["wsa_no_niche"])):
                score = formulas.potential_risk_value(
                    value, m, spaces["wsa_no_niche"].midpoint(ai), False, emis)
                wsa_risk[vi, ai, ni, spaces["potential_risk_wsa"].bin_index(score)] = 1.0
            for ai in range(len(spaces["niche_areas"])):
                score = formulas.potential_risk_value(
                    value, m, spaces["niche_areas"].midpoint(ai), True, emis)
                niche_risk[vi, ai, ni, spaces["potential_risk_niche"].bin_index(score)] = 1.0
    return wsa_risk, niche_risk


def ecotox_pressure_table(emis: EmissionParams) -> np.ndarray:
    """Axes (iwc_method, iwc_times, copper_emission, wsa, ecotox_pressure)."""
    spaces = {v.id: v.states for v in catalog.chance_variables()}
    wsa_space = spaces["wsa"]
    eco_space = spaces["ecotox_pressure"]
    t = np.zeros((2, 4, 2, len(wsa_space), len(eco_space)))
    for mi, method in enumerate(catalog.IWC_METHODS):
        for ii, iwc in enumerate(catalog.IWC_TIMES_VALUES):
            for ci, flux in enumerate(catalog.COPPER_EMISSION_VALUES):
                for wi in range(len(wsa_space)):
                    if flux == 0.0:
                        kg = 0.0
                    else:
                        local = EmissionParams(
                            baseline_cu_flux=flux,
                            peak_cu_flux_soft=emis.peak_cu_flux_soft,
                            peak_cu_flux_hard=emis.peak_cu_flux_hard,
                            peak_days=emis.peak_days,
                            co2_per_fuel_tonne=emis.co2_per_fuel_tonne,
                            niche_fouling_multiplier=emis.niche_fouling_multiplier,
                            sediment_threshold_mg_kg=emis.sediment_threshold_mg_kg,
                        )
                        kg = formulas.ecotox_pressure_value(
                            wsa_space.midpoint(wi), formulas.BIOCIDAL, iwc, method, local)
                    t[mi, ii, ci, wi, eco_space.bin_index(kg)] = 1.0
    return t


# -- decision admissibility ------------------------------------------------

def coating_admissibility() -> np.ndarray:
    """Axes (routes, coating): fouling release coating is inadmissible on
    ice-affected routes."""
    t = np.ones((len(catalog.ROUTES), 3))
    fr = catalog.COATING_TYPES.index("fouling release coating")
    for ri, route in enumerate(catalog.ROUTES):
        if route.ice_affected:
            t[ri, fr] = 0.0
    return t
