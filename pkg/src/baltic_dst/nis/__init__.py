"""Salinity-tolerance model: species data, MCMC fit, per-route NIS counts."""

from .counts import (
    RouteNisDistribution,
    map_count_to_state,
    route_nis_distribution,
    species_survival,
)
from .diagnostics import split_r_hat
from .mcmc import (
    DESK_PROTOCOL,
    PAPER_PROTOCOL,
    McmcConfig,
    PosteriorSamples,
    PriorConfig,
    fit_salinity_model,
)
from .observations import (
    SalinityObservation,
    default_salinity_path,
    load_salinity_observations,
)
from .species import SpeciesRecord, default_species_path, load_species_table

__all__ = [
    "RouteNisDistribution", "map_count_to_state", "route_nis_distribution",
    "species_survival", "split_r_hat", "DESK_PROTOCOL", "PAPER_PROTOCOL",
    "McmcConfig", "PosteriorSamples", "PriorConfig", "fit_salinity_model",
    "SalinityObservation", "default_salinity_path", "load_salinity_observations",
    "SpeciesRecord", "default_species_path", "load_species_table",
]
