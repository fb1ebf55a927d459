"""Survivor counts per route and their mapping onto the NIS-value states."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ..model.catalog import NIS_VALUES, Route
from .mcmc import PosteriorSamples
from .species import SpeciesRecord

__all__ = ["RouteNisDistribution", "species_survival", "survival_matrix",
           "route_nis_distribution", "map_count_to_state"]


@dataclass(frozen=True)
class RouteNisDistribution:
    route: str
    counts: np.ndarray   # probability vector over survivor counts 0..S
    mapped: np.ndarray   # probability vector over the 14 NIS-value states

    def __post_init__(self):
        for name, vec in (("counts", self.counts), ("mapped", self.mapped)):
            if abs(float(vec.sum()) - 1.0) > 1e-9:
                raise ValueError(f"{self.route}: {name} vector sums to {vec.sum()!r}")
        self.counts.setflags(write=False)
        self.mapped.setflags(write=False)

    @property
    def mean_count(self) -> float:
        return float(np.arange(len(self.counts)) @ self.counts)

    @property
    def mean_mapped(self) -> float:
        return float(np.asarray(NIS_VALUES) @ self.mapped)


def species_survival(mu_x_arrival: float, mu_y_arrival: float,
                     s: SpeciesRecord) -> int:
    """1 iff the species' tolerance interval covers the drawn mean-min..
    mean-max salinity band of the arrival area; the step function at 0
    evaluates to 1, so exact boundary matches survive."""
    ok_min = mu_x_arrival - s.sal_min_tol >= 0.0
    ok_max = s.sal_max_tol - mu_y_arrival >= 0.0
    return 1 if (ok_min and ok_max) else 0


def survival_matrix(species: list, mu_x: np.ndarray, mu_y: np.ndarray) -> np.ndarray:
    """(n_draws, n_species) 0/1 matrix for one arrival area's draws."""
    lo = np.array([s.sal_min_tol for s in species])
    hi = np.array([s.sal_max_tol for s in species])
    return ((mu_x[:, None] >= lo[None, :]) & (mu_y[:, None] <= hi[None, :])).astype(np.int64)


def map_count_to_state(count: int) -> int:
    """Index of the nearest NIS-value state; ties go to the smaller state."""
    values = np.asarray(NIS_VALUES)
    dist = np.abs(values - count)
    return int(np.argmin(dist))  # argmin takes the first (smaller) on ties


def route_nis_distribution(route: Route, species: list,
                           post: PosteriorSamples) -> RouteNisDistribution:
    """Empirical survivor-count distribution over the posterior draws.

    Every species recorded at the departure area counts as a candidate
    (precautionary rule, even if already present at arrival); a candidate
    survives a draw per ``species_survival`` at the arrival area.
    """
    candidates = [s for s in species if s.present_in(route.departure)]
    n_species = len(species)
    if not candidates:
        warnings.warn(
            f"route {route.label}: no species recorded at {route.departure}; "
            f"survivor count is 0, mapped to the lowest NIS state")
        counts = np.zeros(n_species + 1)
        counts[0] = 1.0
        mapped = np.zeros(len(NIS_VALUES))
        mapped[map_count_to_state(0)] = 1.0
        return RouteNisDistribution(route.label, counts, mapped)

    mu_x = post.mu_x(route.arrival)
    mu_y = post.mu_y(route.arrival)
    surv = survival_matrix(candidates, mu_x, mu_y).sum(axis=1)
    counts = np.bincount(surv, minlength=n_species + 1).astype(np.float64)
    counts /= counts.sum()
    mapped = np.zeros(len(NIS_VALUES))
    for count, mass in enumerate(counts):
        if mass > 0.0:
            mapped[map_count_to_state(count)] += mass
    return RouteNisDistribution(route.label, counts, mapped)
