"""Hierarchical salinity-tolerance model fit by Metropolis-within-Gibbs.

Per area k the monthly minimum salinity x and maximum salinity y follow
x ~ N(mu_x_k, C * mu_x_k) and y ~ N(mu_y_k, C * mu_y_k); the area means
are exchangeable, mu_x_k ~ N(nu_x, sigma_x^2), mu_y_k ~ N(nu_y, sigma_y^2),
with a log-normal prior on the coefficient of variation C and uniform
priors on the hyperparameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .diagnostics import split_r_hat
from .kernel import run_chain
from .observations import SalinityObservation

__all__ = ["PriorConfig", "McmcConfig", "PosteriorSamples",
           "fit_salinity_model", "PAPER_PROTOCOL", "DESK_PROTOCOL"]

HYPER_NAMES = ("C", "sigma_x2", "sigma_y2", "nu_x", "nu_y")
R_HAT_PASS = 1.05
R_HAT_DIVERGED = 1.1


@dataclass(frozen=True)
class PriorConfig:
    c_mean: float = 0.1
    c_sd: float = 0.1
    sigma_x2_range: tuple = (0.0, 10.0)
    sigma_y2_range: tuple = (0.0, 10.0)
    nu_x_range: tuple = (0.0, 35.0)
    nu_y_range: tuple = (0.0, 35.0)

    def __post_init__(self):
        for name in ("sigma_x2_range", "sigma_y2_range", "nu_x_range", "nu_y_range"):
            lo, hi = getattr(self, name)
            if not lo < hi:
                raise ValueError(f"{name} is empty")
        if self.c_mean <= 0 or self.c_sd <= 0:
            raise ValueError("log-normal moments must be positive")

    def c_log_params(self) -> tuple:
        """(mu, sigma) of log C matching the requested mean and sd."""
        s2 = math.log(1.0 + (self.c_sd / self.c_mean) ** 2)
        return math.log(self.c_mean) - 0.5 * s2, math.sqrt(s2)


@dataclass(frozen=True)
class McmcConfig:
    iterations: int = 50_000
    chains: int = 3
    thinning: int = 10
    burn_in: int = 20_000
    seed: int = 0

    def __post_init__(self):
        if self.chains < 2:
            raise ValueError("at least 2 chains required")
        if not 0 <= self.burn_in < self.iterations:
            raise ValueError("burn-in must be within [0, iterations)")
        if self.thinning < 1:
            raise ValueError("thinning must be >= 1")

    @property
    def retained_per_chain(self) -> int:
        return (self.iterations - self.burn_in + self.thinning - 1) // self.thinning

    @property
    def retained_total(self) -> int:
        return self.retained_per_chain * self.chains


DESK_PROTOCOL = McmcConfig()
PAPER_PROTOCOL = McmcConfig(iterations=500_000, chains=3, thinning=100,
                            burn_in=200_000)


@dataclass(frozen=True)
class PosteriorSamples:
    """Immutable merged draws, ordered by (chain, iteration)."""

    areas: tuple                 # area names, defines the mu column order
    param_names: tuple           # C, hyperparameters, mu_x per area, mu_y per area
    draws: np.ndarray            # (n_draws, n_params)
    chain_id: np.ndarray         # (n_draws,)
    iteration: np.ndarray        # (n_draws,) source iteration index
    r_hat: dict = field(default_factory=dict)
    acceptance: dict = field(default_factory=dict)
    diverged: bool = False
    mu_order_violation_fraction: float = 0.0

    def __post_init__(self):
        self.draws.setflags(write=False)
        self.chain_id.setflags(write=False)
        self.iteration.setflags(write=False)

    def column(self, name: str) -> np.ndarray:
        return self.draws[:, self.param_names.index(name)]

    def mu_x(self, area: str) -> np.ndarray:
        return self.column(f"mu_x[{area}]")

    def mu_y(self, area: str) -> np.ndarray:
        return self.column(f"mu_y[{area}]")

    @property
    def n_draws(self) -> int:
        return self.draws.shape[0]

    def export(self, path) -> None:
        """One draw per line: chain, iteration, then the parameter columns."""
        header = "chain,iteration," + ",".join(self.param_names)
        body = np.column_stack([self.chain_id, self.iteration, self.draws])
        fmt = ["%d", "%d"] + ["%.17g"] * len(self.param_names)
        np.savetxt(path, body, fmt=fmt, delimiter=",", header=header, comments="")


def _initial_theta(xs, ys, k, prior, rng):
    """Overdispersed per-chain start near the empirical area means."""
    theta = np.empty(5 + 2 * k)
    theta[0] = min(max(prior.c_mean * math.exp(rng.normal(0, 0.5)), 1e-3), 2.0)
    theta[1] = rng.uniform(0.5, 5.0)
    theta[2] = rng.uniform(0.5, 5.0)
    mx = np.array([np.mean(xs[i]) for i in range(k)])
    my = np.array([np.mean(ys[i]) for i in range(k)])
    theta[5:5 + k] = np.maximum(mx * rng.uniform(0.7, 1.3, size=k), 1e-2)
    theta[5 + k:] = np.maximum(my * rng.uniform(0.7, 1.3, size=k), 1e-2)
    theta[3] = min(max(float(theta[5:5 + k].mean()), 1e-2), 34.9)
    theta[4] = min(max(float(theta[5 + k:].mean()), 1e-2), 34.9)
    return theta


def fit_salinity_model(obs: list, prior: PriorConfig | None = None,
                       mcmc: McmcConfig | None = None,
                       force_python: bool = False) -> PosteriorSamples:
    """Fit the model to the observations; areas are taken from the data.

    Proposals are Gaussian random walks with per-parameter steps tuned
    during burn-in toward 20-50 % acceptance.  Chains are merged in
    (chain, iteration) order; split R-hat above 1.1 on any parameter
    flags the result as diverged (it is returned, not discarded).
    """
    prior = prior or PriorConfig()
    mcmc = mcmc or McmcConfig()
    if not obs:
        raise ValueError("no observations")
    areas = tuple(dict.fromkeys(o.area for o in obs))
    k = len(areas)
    index = {a: i for i, a in enumerate(areas)}
    obs_area = np.array([index[o.area] for o in obs], dtype=np.int64)
    obs_x = np.array([o.x_min for o in obs], dtype=np.float64)
    obs_y = np.array([o.y_max for o in obs], dtype=np.float64)
    for a, i in index.items():
        if not np.any(obs_area == i):
            raise ValueError(f"area {a!r} has no observations")
    if np.any(obs_x <= 0.0) or np.any(obs_y <= 0.0):
        raise ValueError("observations must be strictly positive "
                         "(the error scale is C * mu)")

    p = 5 + 2 * k
    names = (HYPER_NAMES
             + tuple(f"mu_x[{a}]" for a in areas)
             + tuple(f"mu_y[{a}]" for a in areas))
    c_mu, c_sigma = prior.c_log_params()
    lo = np.empty(p)
    hi = np.empty(p)
    lo[0], hi[0] = 0.0, np.inf
    lo[1], hi[1] = prior.sigma_x2_range
    lo[2], hi[2] = prior.sigma_y2_range
    lo[3], hi[3] = prior.nu_x_range
    lo[4], hi[4] = prior.nu_y_range
    lo[5:], hi[5:] = 0.0, np.inf

    xs = [obs_x[obs_area == i] for i in range(k)]
    ys = [obs_y[obs_area == i] for i in range(k)]

    n_keep = mcmc.retained_per_chain
    all_draws = []
    all_chain = []
    all_iter = []
    acc_rates = np.zeros((mcmc.chains, p))
    for c in range(mcmc.chains):
        chain_seed = np.uint64((mcmc.seed * 1_000_003 + 7919 * (c + 1)) % 2**64)
        init_rng = np.random.default_rng([mcmc.seed, c])
        theta0 = _initial_theta(xs, ys, k, prior, init_rng)
        steps = np.maximum(0.1 * np.abs(theta0), 0.01)
        out = np.zeros((n_keep, p))
        acc = np.zeros(p, dtype=np.int64)
        rows = run_chain(obs_area, obs_x, obs_y, k, mcmc.iterations,
                         mcmc.burn_in, mcmc.thinning, chain_seed, theta0,
                         steps, lo, hi, c_mu, c_sigma, out, acc,
                         force_python=force_python)
        if rows != n_keep:
            raise RuntimeError(f"chain {c}: retained {rows} draws, expected {n_keep}")
        all_draws.append(out)
        all_chain.append(np.full(n_keep, c, dtype=np.int64))
        all_iter.append(mcmc.burn_in + mcmc.thinning * np.arange(n_keep, dtype=np.int64))
        acc_rates[c] = acc / mcmc.iterations

    stacked = np.stack(all_draws)                   # (chains, n_keep, p)
    r_hat = split_r_hat(stacked)
    draws = np.concatenate(all_draws)
    mu_x_cols = draws[:, 5:5 + k]
    mu_y_cols = draws[:, 5 + k:]
    violations = float(np.mean(np.any(mu_x_cols > mu_y_cols, axis=1)))
    return PosteriorSamples(
        areas=areas,
        param_names=names,
        draws=draws,
        chain_id=np.concatenate(all_chain),
        iteration=np.concatenate(all_iter),
        r_hat={n: float(r) for n, r in zip(names, r_hat)},
        acceptance={n: float(a) for n, a in zip(names, acc_rates.mean(axis=0))},
        diverged=bool(np.any(r_hat > R_HAT_DIVERGED)),
        mu_order_violation_fraction=violations,
    )
