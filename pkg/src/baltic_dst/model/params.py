"""Economic, emission and drag parameters with flat key-value file I/O.

Defaults marked ``source: assumption`` in the written files are not taken
from published figures; everything else follows the cost and emission
numbers the network was built around.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from pathlib import Path

__all__ = ["EconParams", "EmissionParams", "DragModel",
           "load_params_file", "write_params_file"]

# keys whose defaults are engineering assumptions rather than published values
_ASSUMPTION_KEYS = {
    "fuel_price_light", "fuel_price_heavy",
    "drag_10_20", "drag_20_30", "drag_30_40", "drag_40_50", "drag_50_100",
    "co2_per_tonne_heavy", "co2_per_tonne_light",
    "niche_fraction_bulker", "niche_fraction_container", "niche_fraction_general_cargo",
    "niche_fraction_passenger", "niche_fraction_roro", "niche_fraction_tanker",
    "nis_risk_scale", "nis_risk_mult_no_collect", "nis_risk_mult_collect",
    "nis_risk_mult_no_iwc", "nis_risk_hard_fouling_factor",
}


@dataclass
class EconParams:
    # coating prices EUR/m2, application cost included; renewed every 5 years
    coating_cost_per_m2: dict = field(default_factory=lambda: {
        "hard coating": 30.0,
        "biocidal coating": 20.0,
        "fouling release coating": 50.0,
    })
    coating_life_years: float = 5.0
    iwc_price_per_m2: float = 3.0
    cleaned_fraction_of_wsa: float = 0.4
    collect_surcharge: float = 0.5
    off_hire_per_day: float = 20000.0
    fuel_price_per_tonne: dict = field(default_factory=lambda: {
        "light fuel oil": 650.0,   # assumption
        "heavy fuel oil": 450.0,   # assumption
    })

    def __post_init__(self):
        if not 0.0 <= self.collect_surcharge <= 1.0:
            raise ValueError("collect surcharge must be within [0, 1]")
        for k, v in {**self.coating_cost_per_m2, **self.fuel_price_per_tonne}.items():
            if v <= 0:
                raise ValueError(f"non-positive price for {k!r}")


@dataclass
class EmissionParams:
    baseline_cu_flux: float = 7.0       # ug/cm2/day, biocidal coating only
    peak_cu_flux_soft: float = 12.0     # ug/cm2/day for 7 days after soft-brush IWC
    peak_cu_flux_hard: float = 25.0     # ug/cm2/day for 7 days after hard-brush IWC
    peak_days: float = 7.0
    co2_per_fuel_tonne: dict = field(default_factory=lambda: {
        "heavy fuel oil": 3.114,
        "light fuel oil": 3.206,
    })
    niche_fouling_multiplier: float = 2.6
    sediment_threshold_mg_kg: float = 52.0

    def __post_init__(self):
        if self.peak_cu_flux_soft < self.baseline_cu_flux:
            raise ValueError("peak copper flux below baseline")
        if self.niche_fouling_multiplier < 1.0:
            raise ValueError("niche multiplier must be >= 1")


@dataclass
class DragModel:
    """Fractional fuel-consumption penalty per NSTM biofouling interval.

    Only the first bucket (2 %) is anchored in measurement; the rest is a
    declared monotone extrapolation and is configurable.
    """

    penalty_by_interval: tuple = (0.02, 0.04, 0.07, 0.11, 0.16, 0.25)

    def __post_init__(self):
        p = self.penalty_by_interval
        if any(b < a for a, b in zip(p, p[1:])):
            raise ValueError("drag penalties must be nondecreasing")
        if not 0.02 <= p[0] <= 0.04:
            raise ValueError("first drag bucket must stay within the 2-4 % anchor")

    def penalty(self, nstm_state: int) -> float:
        return self.penalty_by_interval[nstm_state]


# share of the wetted surface belonging to niche areas, per ship type; assumption
NICHE_FRACTION = {
    "bulker": 0.11,
    "container": 0.13,
    "general cargo": 0.12,
    "passenger": 0.17,
    "RoRo": 0.16,
    "tanker": 0.14,
}

# NIS risk utility shape: risk = -scale * (combined potential risk midpoint)
# * mode multiplier * fouling factor.  Multipliers keep the expert ordering
# |collect| < |no IWC| < |no collect|.
NIS_RISK_DEFAULTS = {
    "scale": 2.0e-4,
    "mult_no_collect": 2.0,
    "mult_collect": 0.25,
    "mult_no_iwc": 1.0,
    "hard_fouling_factor": 1.25,
}


def _flatten_econ(p: EconParams) -> dict:
    return {
        "coating_price_hard": p.coating_cost_per_m2["hard coating"],
        "coating_price_biocidal": p.coating_cost_per_m2["biocidal coating"],
        "coating_price_fouling_release": p.coating_cost_per_m2["fouling release coating"],
        "coating_life_years": p.coating_life_years,
        "iwc_price_per_m2": p.iwc_price_per_m2,
        "cleaned_fraction_of_wsa": p.cleaned_fraction_of_wsa,
        "collect_surcharge": p.collect_surcharge,
        "off_hire_per_day": p.off_hire_per_day,
        "fuel_price_light": p.fuel_price_per_tonne["light fuel oil"],
        "fuel_price_heavy": p.fuel_price_per_tonne["heavy fuel oil"],
    }


def _flatten_emis(p: EmissionParams) -> dict:
    return {
        "baseline_cu_flux": p.baseline_cu_flux,
        "peak_cu_flux_soft": p.peak_cu_flux_soft,
        "peak_cu_flux_hard": p.peak_cu_flux_hard,
        "peak_days": p.peak_days,
        "co2_per_tonne_heavy": p.co2_per_fuel_tonne["heavy fuel oil"],
        "co2_per_tonne_light": p.co2_per_fuel_tonne["light fuel oil"],
        "niche_fouling_multiplier": p.niche_fouling_multiplier,
        "sediment_threshold_mg_kg": p.sediment_threshold_mg_kg,
    }


def _flatten_drag(d: DragModel) -> dict:
    names = ("0_10", "10_20", "20_30", "30_40", "40_50", "50_100")
    return {f"drag_{n}": v for n, v in zip(names, d.penalty_by_interval)}


def write_params_file(path: Path, values: dict, header: str = "") -> None:
    lines = []
    if header:
        lines.append(f"# {header}")
    for k, v in values.items():
        if k in _ASSUMPTION_KEYS:
            lines.append(f"{k} = {v}  # source: assumption")
        else:
            lines.append(f"{k} = {v}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_params_file(path: Path) -> dict:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        k, v = (s.strip() for s in line.split("=", 1))
        values[k] = float(v)
    return values


def write_econ(path: Path, p: EconParams) -> None:
    write_params_file(path, _flatten_econ(p), "economic parameters")


def write_emissions(path: Path, p: EmissionParams) -> None:
    write_params_file(path, _flatten_emis(p), "emission parameters")


def write_drag(path: Path, d: DragModel) -> None:
    write_params_file(path, _flatten_drag(d),
                      "fuel penalty per NSTM interval; first bucket measurement-anchored")


def econ_from_values(v: dict) -> EconParams:
    return EconParams(
        coating_cost_per_m2={
            "hard coating": v["coating_price_hard"],
            "biocidal coating": v["coating_price_biocidal"],
            "fouling release coating": v["coating_price_fouling_release"],
        },
        coating_life_years=v["coating_life_years"],
        iwc_price_per_m2=v["iwc_price_per_m2"],
        cleaned_fraction_of_wsa=v["cleaned_fraction_of_wsa"],
        collect_surcharge=v["collect_surcharge"],
        off_hire_per_day=v["off_hire_per_day"],
        fuel_price_per_tonne={
            "light fuel oil": v["fuel_price_light"],
            "heavy fuel oil": v["fuel_price_heavy"],
        },
    )


def emissions_from_values(v: dict) -> EmissionParams:
    return EmissionParams(
        baseline_cu_flux=v["baseline_cu_flux"],
        peak_cu_flux_soft=v["peak_cu_flux_soft"],
        peak_cu_flux_hard=v["peak_cu_flux_hard"],
        peak_days=v["peak_days"],
        co2_per_fuel_tonne={
            "heavy fuel oil": v["co2_per_tonne_heavy"],
            "light fuel oil": v["co2_per_tonne_light"],
        },
        niche_fouling_multiplier=v["niche_fouling_multiplier"],
        sediment_threshold_mg_kg=v["sediment_threshold_mg_kg"],
    )


def drag_from_values(v: dict) -> DragModel:
    names = ("0_10", "10_20", "20_30", "30_40", "40_50", "50_100")
    return DragModel(penalty_by_interval=tuple(v[f"drag_{n}"] for n in names))
