"""Node catalog for the Baltic Sea biofouling management network.

State spaces, display names and the route/area catalogs.  The model has
11 decision nodes, 14 chance nodes and 9 utility nodes; edges are defined
in :mod:`baltic_dst.model.build`.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..factors import StateSpace, Variable, VariableKind

# -- areas -----------------------------------------------------------------

AREAS = (
    "Gulf of Bothnia",
    "Gulf of Finland",
    "Gulf of Riga",
    "Baltic Proper",
    "Southwestern Baltic",
    "North Sea (eastern part)",
)

AREA_CODES = {
    "GoB": "Gulf of Bothnia",
    "GoF": "Gulf of Finland",
    "GoR": "Gulf of Riga",
    "BP": "Baltic Proper",
    "SWB": "Southwestern Baltic",
    "NS": "North Sea (eastern part)",
}

# areas with partial winter ice cover; fouling-release coating is not
# ice resistant, so routes touching these areas rule it out
ICE_AREAS = frozenset({"Gulf of Bothnia", "Gulf of Finland", "Gulf of Riga"})


@dataclass(frozen=True)
class Route:
    label: str
    departure: str
    arrival: str

    @property
    def ice_affected(self) -> bool:
        return self.departure in ICE_AREAS or self.arrival in ICE_AREAS


def _r(label, dep, arr):
    return Route(label, AREA_CODES[dep], AREA_CODES[arr])


# ten route pairs, A = outbound, B = return direction
ROUTES = (
    _r("1A", "NS", "SWB"), _r("1B", "SWB", "NS"),
    _r("2A", "NS", "GoF"), _r("2B", "GoF", "NS"),
    _r("3A", "NS", "GoB"), _r("3B", "GoB", "NS"),
    _r("4A", "SWB", "BP"), _r("4B", "BP", "SWB"),
    _r("5A", "SWB", "GoR"), _r("5B", "GoR", "SWB"),
    _r("6A", "GoF", "BP"), _r("6B", "BP", "GoF"),
    _r("7A", "GoF", "GoF"), _r("7B", "GoF", "GoF"),
    _r("8A", "SWB", "BP"), _r("8B", "BP", "SWB"),
    _r("9A", "SWB", "BP"), _r("9B", "BP", "SWB"),
    _r("10A", "SWB", "SWB"), _r("10B", "SWB", "SWB"),
)

ROUTE_LABELS = tuple(r.label for r in ROUTES)

# per-route sediment copper class (52 mg/kg threshold), transcribed from
# the bundled classification; index order follows ROUTES
SEDIMENT_CLASS = (
    "high", "low", "low", "low", "high", "low", "high", "high", "low", "high",
    "high", "low", "low", "low", "low", "high", "low", "high", "high", "high",
)

# -- state spaces ----------------------------------------------------------

SHIP_TYPES = ("bulker", "container", "general cargo", "passenger", "RoRo", "tanker")
COATING_TYPES = ("hard coating", "biocidal coating", "fouling release coating")
FUEL_TYPES = ("light fuel oil", "heavy fuel oil")
IWC_METHODS = ("soft brushes", "hard brushes")
OFF_HIRE = ("none", "1 day", "2 days")
IWC_COLLECT_MODES = ("IWC + no collecting", "IWC + collecting", "no IWC")
FOULING_TYPES = ("soft fouling", "hard fouling")
SEDIMENT_STATES = ("low", "high")

NSTM_BOUNDS = (0.0, 10.0, 20.0, 30.0, 40.0, 50.0, 100.0)
WSA_BOUNDS = (0.0, 5.0e-4, 0.001, 0.005, 0.01, 0.02, 0.04, 0.06, 0.08, 0.1, 0.2, 1.0, 1.04)
WSA_NO_NICHE_BOUNDS = tuple(float(x) for x in range(0, 101, 5))
NICHE_BOUNDS = tuple(float(x) for x in range(0, 31, 2))
THEORETICAL_FUEL_BOUNDS = (1000.0, 2000.0, 3000.0, 4000.0, 5000.0)
ANNUAL_HOURS_BOUNDS = (1000.0, 2000.0, 3000.0, 4000.0, 5000.0, 6000.0, 7000.0, 8000.0, 8760.0)
FUEL_REAL_BOUNDS = (1000.0, 2000.0, 3000.0, 4000.0, 5000.0, 6000.0, 7000.0)
CO2_HR_BOUNDS = (2000.0, 3000.0, 4000.0, 5000.0, 6000.0, 8000.0, 10000.0, 12000.0,
                 14000.0, 16000.0, 18000.0, 20000.0, 22000.0, 24000.0)
NIS_VALUES = (1.0, 3.0, 7.0, 9.0, 10.0, 15.0, 17.0, 18.0, 30.0, 31.0, 32.0, 33.0, 36.0, 53.0)
RISK_WSA_BOUNDS = (0.0, 25.0, 50.0, 100.0, 500.0, 1000.0, 5000.0, 10000.0, 15000.0,
                   20000.0, 25000.0, 30000.0, 35000.0, 40000.0, 45000.0, 50000.0, 55000.0)
RISK_NICHE_BOUNDS = (0.0, 25.0, 50.0, 100.0, 500.0, 1000.0, 5000.0, 10000.0, 15000.0,
                     20000.0, 25000.0, 30000.0, 35000.0, 40000.0, 45000.0)
COPPER_EMISSION_VALUES = (0.0, 7.0)
# first interval is zero-width: the exact-zero state for non-biocidal coatings
ECOTOX_BOUNDS = (0.0, 0.0, 25.0, 50.0, 100.0, 500.0, 1000.0, 5000.0, 10000.0, 15000.0,
                 20000.0, 25000.0, 30000.0, 35000.0, 40000.0, 45000.0)
TIME_SINCE_COATING_VALUES = (0.0, 1.0, 2.0, 3.0, 4.0)
IWC_TIMES_VALUES = (0.0, 2.0, 6.0, 12.0)


def _labeled(vid, name, labels):
    return Variable(vid, name, VariableKind.DECISION, StateSpace(labels=tuple(labels)))


def _chance(vid, name, **kw):
    return Variable(vid, name, VariableKind.CHANCE, StateSpace(**kw))


def decision_variables() -> list[Variable]:
    d = VariableKind.DECISION
    return [
        Variable("ship_type", "Ship type", d, StateSpace(labels=SHIP_TYPES)),
        Variable("theoretical_fuel", "Theoretical fuel consumption kg/h", d,
                 StateSpace(boundaries=THEORETICAL_FUEL_BOUNDS)),
        Variable("fuel_type", "Fuel type", d, StateSpace(labels=FUEL_TYPES)),
        Variable("annual_hours", "Annual shipping hours", d,
                 StateSpace(boundaries=ANNUAL_HOURS_BOUNDS)),
        Variable("routes", "Routes", d, StateSpace(labels=ROUTE_LABELS)),
        Variable("time_since_coating", "Time since coating (years)", d,
                 StateSpace(values=TIME_SINCE_COATING_VALUES)),
        Variable("coating_type", "Coating type", d, StateSpace(labels=COATING_TYPES)),
        Variable("iwc_times", "In-water cleaning times/growing season", d,
                 StateSpace(values=IWC_TIMES_VALUES)),
        Variable("iwc_method_past", "In-water cleaning method (in the past)", d,
                 StateSpace(labels=IWC_METHODS)),
        Variable("off_hire", "Off hire costs (days)", d, StateSpace(labels=OFF_HIRE)),
        Variable("iwc_collect", "In-water cleaning and collecting in the destination", d,
                 StateSpace(labels=IWC_COLLECT_MODES)),
    ]


def chance_variables() -> list[Variable]:
    return [
        _chance("biofouling_avg", "Biofouling pressure NSTM average", boundaries=NSTM_BOUNDS),
        _chance("biofouling_max", "Biofouling pressure NSTM maximum", boundaries=NSTM_BOUNDS),
        _chance("wsa", "Wetted surface area km2", boundaries=WSA_BOUNDS),
        _chance("wsa_no_niche", "WSA without niche areas hm2", boundaries=WSA_NO_NICHE_BOUNDS),
        _chance("niche_areas", "Niche areas hm2", boundaries=NICHE_BOUNDS),
        _chance("fuel_real", "Fuel consumption real kg/h", boundaries=FUEL_REAL_BOUNDS),
        _chance("co2_hr", "Air emissions CO2 kg/h", boundaries=CO2_HR_BOUNDS),
        _chance("fouling_type", "Fouling type", labels=FOULING_TYPES),
        _chance("nis_value", "NIS value", values=NIS_VALUES),
        _chance("potential_risk_wsa", "Potential risk in WSA (without niche areas)",
                boundaries=RISK_WSA_BOUNDS),
        _chance("potential_risk_niche", "Potential risk in niche areas",
                boundaries=RISK_NICHE_BOUNDS),
        _chance("copper_emission", "Copper emissions ug/cm2/day", values=COPPER_EMISSION_VALUES),
        _chance("ecotox_pressure", "Eco-toxicological pressure kg/year", boundaries=ECOTOX_BOUNDS),
        _chance("sediment_cu", "Sediment copper concentration", labels=SEDIMENT_STATES),
    ]


UTILITY_UNITS = {
    "fuel_cost_year": "EUR/year",
    "fuel_cost_hour": "EUR/h",
    "co2_year": "kg/year",
    "co2_hour": "kg/h",
    "iwc_cost": "EUR/year",
    "coating_cost": "EUR/year",
    "nis_risk": "risk/arrival",
    "ecotox_risk": "kg/year",
    "sediment_risk": "risk",
}

UTILITY_NAMES = {
    "fuel_cost_year": "Fuel costs EUR/year",
    "fuel_cost_hour": "Fuel costs EUR/h",
    "co2_year": "CO2 emissions kg/year",
    "co2_hour": "CO2 emissions kg/h",
    "iwc_cost": "In-water cleaning costs EUR/year",
    "coating_cost": "Coating costs EUR/year",
    "nis_risk": "NIS introduction risk/arrival",
    "ecotox_risk": "Ecotoxicological risk kg/year",
    "sediment_risk": "Sediment eco-toxicological risk",
}

# parent lists, order is the CPT/utility table axis order
PARENTS = {
    "biofouling_avg": ("coating_type", "time_since_coating", "iwc_times"),
    "biofouling_max": ("coating_type", "time_since_coating", "iwc_times"),
    "wsa": ("ship_type",),
    "wsa_no_niche": ("wsa", "ship_type"),
    "niche_areas": ("wsa", "ship_type"),
    "fuel_real": ("theoretical_fuel", "biofouling_avg"),
    "co2_hr": ("fuel_real", "fuel_type"),
    "fouling_type": ("biofouling_max",),
    "nis_value": ("routes",),
    "potential_risk_wsa": ("nis_value", "wsa_no_niche", "biofouling_max"),
    "potential_risk_niche": ("nis_value", "niche_areas", "biofouling_max"),
    "copper_emission": ("coating_type",),
    "ecotox_pressure": ("iwc_method_past", "iwc_times", "copper_emission", "wsa"),
    "sediment_cu": ("routes",),
    "coating_type": ("routes",),
}

UTILITY_PARENTS = {
    "fuel_cost_year": ("fuel_real", "fuel_type", "annual_hours"),
    "fuel_cost_hour": ("fuel_real", "fuel_type"),
    "co2_year": ("annual_hours", "co2_hr"),
    "co2_hour": ("co2_hr",),
    "iwc_cost": ("iwc_times", "wsa", "off_hire", "iwc_collect"),
    "coating_cost": ("wsa", "coating_type"),
    "nis_risk": ("potential_risk_wsa", "potential_risk_niche", "iwc_collect", "fouling_type"),
    "ecotox_risk": ("ecotox_pressure",),
    "sediment_risk": ("sediment_cu", "coating_type"),
}

# transcribed per-route NIS value states (index into NIS_VALUES); the
# published network carries a point mass per route
ROUTE_NIS_STATE = {
    "1A": 13, "1B": 9, "2A": 11, "2B": 1, "3A": 12, "3B": 0,
    "4A": 6, "4B": 4, "5A": 6, "5B": 1, "6A": 2, "6B": 5,
    "7A": 2, "7B": 2, "8A": 7, "8B": 3, "9A": 6, "9B": 4,
    "10A": 10, "10B": 8,
}


def all_variables() -> list[Variable]:
    return decision_variables() + chance_variables()
