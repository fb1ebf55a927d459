"""Assemble the full influence diagram from catalog, parameters and CPTs."""

from __future__ import annotations

import numpy as np

from ..factors import Factor
from ..network import Network, UtilityNode, validate_network
from . import catalog, cpts, formulas
from .params import DragModel, EconParams, EmissionParams, NIS_RISK_DEFAULTS

__all__ = ["build_network"]

OFF_HIRE_DAYS = (0.0, 1.0, 2.0)


def _cpt_factor(vid: str, table: np.ndarray, spaces: dict) -> Factor:
    scope = tuple(catalog.PARENTS.get(vid, ())) + (vid,)
    cards = tuple(len(spaces[s]) for s in scope)
    return Factor(scope, cards, np.asarray(table, dtype=np.float64).reshape(cards))


def _utility(uid: str, table: np.ndarray, spaces: dict) -> UtilityNode:
    parents = catalog.UTILITY_PARENTS[uid]
    cards = tuple(len(spaces[p]) for p in parents)
    return UtilityNode(uid, catalog.UTILITY_NAMES[uid], parents, cards, table,
                       units=catalog.UTILITY_UNITS[uid])


def _utility_tables(spaces: dict, econ: EconParams, emis: EmissionParams,
                    drag: DragModel, nis_risk: dict) -> dict:
    fr = spaces["fuel_real"]
    co2 = spaces["co2_hr"]
    hours = spaces["annual_hours"]
    wsa = spaces["wsa"]
    iwc = catalog.IWC_TIMES_VALUES
    tables: dict[str, np.ndarray] = {}

    t = np.zeros((len(fr), 2, len(hours)))
    th = np.zeros((len(fr), 2))
    for fi in range(len(fr)):
        for yi, fuel in enumerate(catalog.FUEL_TYPES):
            per_tonne = econ.fuel_price_per_tonne[fuel]
            th[fi, yi] = -(fr.midpoint(fi) / 1000.0) * per_tonne
            for hi in range(len(hours)):
                t[fi, yi, hi] = th[fi, yi] * hours.midpoint(hi)
    tables["fuel_cost_year"] = t
    tables["fuel_cost_hour"] = th

    t = np.zeros((len(hours), len(co2)))
    for hi in range(len(hours)):
        for ci in range(len(co2)):
            t[hi, ci] = -hours.midpoint(hi) * co2.midpoint(ci)
    tables["co2_year"] = t
    tables["co2_hour"] = np.array([-co2.midpoint(ci) for ci in range(len(co2))])

    t = np.zeros((len(iwc), len(wsa), 3, 3))
    for ii, times in enumerate(iwc):
        for wi in range(len(wsa)):
            for oi, days in enumerate(OFF_HIRE_DAYS):
                for mi, mode in enumerate(catalog.IWC_COLLECT_MODES):
                    t[ii, wi, oi, mi] = formulas.iwc_cost_value(
                        wsa.midpoint(wi), times, mode, days, econ)
    tables["iwc_cost"] = t

    t = np.zeros((len(wsa), 3))
    for wi in range(len(wsa)):
        for ci, coating in enumerate(catalog.COATING_TYPES):
            t[wi, ci] = formulas.coating_cost_value(wsa.midpoint(wi), coating, econ)
    tables["coating_cost"] = t

    rw = spaces["potential_risk_wsa"]
    rn = spaces["potential_risk_niche"]
    t = np.zeros((len(rw), len(rn), 3, 2))
    for ai in range(len(rw)):
        for bi in range(len(rn)):
            combined = rw.midpoint(ai) + rn.midpoint(bi)
            for mi, mode in enumerate(catalog.IWC_COLLECT_MODES):
                for fi, ftype in enumerate(catalog.FOULING_TYPES):
                    t[ai, bi, mi, fi] = formulas.nis_risk_value(
                        combined, mode, ftype,
                        nis_risk["scale"], nis_risk["mult_no_collect"],
                        nis_risk["mult_collect"], nis_risk["mult_no_iwc"],
                        nis_risk["hard_fouling_factor"])
    tables["nis_risk"] = t

    eco = spaces["ecotox_pressure"]
    tables["ecotox_risk"] = np.array([-eco.midpoint(i) for i in range(len(eco))])

    t = np.zeros((2, 3))
    for si, cls in enumerate(catalog.SEDIMENT_STATES):
        for ci, coating in enumerate(catalog.COATING_TYPES):
            t[si, ci] = formulas.sediment_risk_value(cls, coating)
    tables["sediment_risk"] = t
    return tables


def build_network(econ: EconParams | None = None,
                  emis: EmissionParams | None = None,
                  drag: DragModel | None = None,
                  nis_table: np.ndarray | None = None,
                  nis_risk: dict | None = None,
                  meta: dict | None = None) -> Network:
    """The full 34-node model.

    ``nis_table`` replaces the default per-route NIS value distribution
    (axes route x NIS state), which is how a salinity-model refit lands
    in the network.
    """
    econ = econ or EconParams()
    emis = emis or EmissionParams()
    drag = drag or DragModel()
    nis_risk = dict(NIS_RISK_DEFAULTS, **(nis_risk or {}))

    variables = catalog.all_variables()
    spaces = {v.id: v.states for v in variables}

    bio = cpts.biofouling_table()
    wsa_rows = np.stack([cpts.wsa_cpt(s) for s in catalog.SHIP_TYPES])
    no_niche, niche = cpts.wsa_split_tables()
    risk_wsa, risk_niche = cpts.potential_risk_tables(emis)
    if nis_table is None:
        nis_table = cpts.nis_value_table_default()
    nis_table = np.asarray(nis_table, dtype=np.float64)
    if nis_table.shape != (len(catalog.ROUTES), len(catalog.NIS_VALUES)):
        raise ValueError(f"NIS table shape {nis_table.shape} != "
                         f"({len(catalog.ROUTES)}, {len(catalog.NIS_VALUES)})")

    tables = {
        "biofouling_avg": bio,
        "biofouling_max": bio,
        "wsa": wsa_rows,
        "wsa_no_niche": no_niche,
        "niche_areas": niche,
        "fuel_real": cpts.fuel_real_table(drag),
        "co2_hr": cpts.co2_hr_table(emis),
        "fouling_type": cpts.fouling_type_table(),
        "nis_value": nis_table,
        "potential_risk_wsa": risk_wsa,
        "potential_risk_niche": risk_niche,
        "copper_emission": cpts.copper_emission_table(),
        "ecotox_pressure": cpts.ecotox_pressure_table(emis),
        "sediment_cu": cpts.sediment_cu_table(),
    }
    cpt_factors = {vid: _cpt_factor(vid, tab, spaces) for vid, tab in tables.items()}

    adm = Factor(("routes", "coating_type"), (len(catalog.ROUTES), 3),
                 cpts.coating_admissibility())

    util_tables = _utility_tables(spaces, econ, emis, drag, nis_risk)
    utilities = [_utility(uid, util_tables[uid], spaces)
                 for uid in catalog.UTILITY_PARENTS]

    parents = dict(catalog.PARENTS)
    reconstructed = [
        {"node": nid, "coating": c, "time_since_coating": t, "iwc_times": i}
        for nid in ("biofouling_avg", "biofouling_max")
        for c in catalog.COATING_TYPES
        for t in catalog.TIME_SINCE_COATING_VALUES
        for i in catalog.IWC_TIMES_VALUES
        if not cpts.biofouling_column_is_anchor(c, t, i)
    ]
    net = Network(
        variables=variables,
        parents=parents,
        cpts=cpt_factors,
        utilities=utilities,
        decision_constraints={"coating_type": adm},
        meta=dict(meta or {}, reconstructed_columns=reconstructed),
    )
    problems = validate_network(net)
    if problems:
        raise ValueError("built network failed validation: " + "; ".join(problems))
    return net
