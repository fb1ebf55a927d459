"""Convergence diagnostics for the salinity sampler."""

from __future__ import annotations

import numpy as np

__all__ = ["split_r_hat"]


def split_r_hat(chains: np.ndarray) -> np.ndarray:
    """Split R-hat per parameter.

    chains: array (n_chains, n_draws, n_params).  Each chain is split in
    half, giving 2m sequences; R-hat compares between- and within-sequence
    variance.  Values near 1 indicate the chains mixed.
    """
    chains = np.asarray(chains, dtype=np.float64)
    if chains.ndim != 3:
        raise ValueError("expected (n_chains, n_draws, n_params)")
    m, n, p = chains.shape
    half = n // 2
    if half < 2:
        raise ValueError("need at least 4 draws per chain for split R-hat")
    seqs = np.concatenate([chains[:, :half, :], chains[:, half:2 * half, :]], axis=0)
    seq_means = seqs.mean(axis=1)                    # (2m, p)
    seq_vars = seqs.var(axis=1, ddof=1)              # (2m, p)
    w = seq_vars.mean(axis=0)
    b = half * seq_means.var(axis=0, ddof=1)
    out = np.ones(p)
    ok = w > 0
    var_plus = (half - 1) / half * w[ok] + b[ok] / half
    out[ok] = np.sqrt(var_plus / w[ok])
    return out
