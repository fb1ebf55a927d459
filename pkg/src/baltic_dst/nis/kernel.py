"""Metropolis-within-Gibbs kernel for the hierarchical salinity model.

The chain loop is written as one flat function over numpy arrays so the
same source runs either compiled through numba or as plain Python.  Set
``BALTIC_DST_DISABLE_NUMBA=1`` to force the interpreted path (slower but
dependency-free); a given (path, seed) pair always produces byte-identical
draws because the RNG is implemented inline.
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = ["run_chain", "python_kernel", "numba_kernel", "NUMBA_ENABLED"]

# inline xorshift64 RNG so the compiled and interpreted paths share the
# exact same stream (no finalizing multiply: numpy scalars warn on
# uint64 multiply overflow, shifts and xors wrap silently)
_U53 = 1.0 / 9007199254740992.0


def _chain_kernel(obs_area, obs_x, obs_y, n_areas, iters, burn, thin,
                  seed, theta0, steps0, lo, hi, c_mu, c_sigma, out, acc):
    """Run one chain in place.

    obs_area/int64, obs_x, obs_y: flat observation arrays.
    theta0: initial parameter vector [C, sX2, sY2, nuX, nuY, muX_k.., muY_k..].
    lo/hi: support bounds per parameter (rejection outside).
    out: (n_retained, P) draw buffer; acc: per-parameter acceptance counts;
    steps0 is updated in place with the tuned step sizes.
    Returns the number of retained rows written.
    """
    P = theta0.shape[0]
    K = n_areas
    n_obs = obs_x.shape[0]
    theta = theta0.copy()
    steps = steps0.copy()

    state = seed ^ np.uint64(0x9E3779B97F4A7C15)
    if state == np.uint64(0):
        state = np.uint64(0x9E3779B97F4A7C15)

    def _u64(s):
        s = s ^ (s >> np.uint64(12))
        s = s ^ (s << np.uint64(25))
        s = s ^ (s >> np.uint64(27))
        return s

    # local log-posterior over the full parameter vector
    def _log_post(th):
        C = th[0]
        sx2 = th[1]
        sy2 = th[2]
        nux = th[3]
        nuy = th[4]
        if C <= 0.0 or sx2 <= 0.0 or sy2 <= 0.0:
            return -np.inf
        lp = (-math.log(C) - math.log(c_sigma)
              - 0.5 * ((math.log(C) - c_mu) / c_sigma) ** 2)
        sx = math.sqrt(sx2)
        sy = math.sqrt(sy2)
        for k in range(K):
            mx = th[5 + k]
            my = th[5 + K + k]
            if mx <= 0.0 or my <= 0.0:
                return -np.inf
            lp += -math.log(sx) - 0.5 * ((mx - nux) / sx) ** 2
            lp += -math.log(sy) - 0.5 * ((my - nuy) / sy) ** 2
        for i in range(n_obs):
            k = obs_area[i]
            mx = th[5 + k]
            my = th[5 + K + k]
            sdx = C * mx
            sdy = C * my
            lp += -math.log(sdx) - 0.5 * ((obs_x[i] - mx) / sdx) ** 2
            lp += -math.log(sdy) - 0.5 * ((obs_y[i] - my) / sdy) ** 2
        return lp

    lp_cur = _log_post(theta)
    tries = np.zeros(P, dtype=np.int64)
    accepted = np.zeros(P, dtype=np.int64)
    row = 0
    for t in range(iters):
        for j in range(P):
            # two uniforms -> one Box-Muller normal for the proposal,
            # one uniform for the accept test
            state = _u64(state)
            u1 = (state >> np.uint64(11)) * _U53
            state = _u64(state)
            u2 = (state >> np.uint64(11)) * _U53
            if u1 <= 0.0:
                u1 = _U53
            z = math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
            prop = theta[j] + steps[j] * z
            state = _u64(state)
            u_acc = (state >> np.uint64(11)) * _U53
            tries[j] += 1
            if prop <= lo[j] or prop >= hi[j]:
                continue
            old = theta[j]
            theta[j] = prop
            lp_new = _log_post(theta)
            if lp_new - lp_cur >= math.log(u_acc + 1e-300):
                lp_cur = lp_new
                accepted[j] += 1
            else:
                theta[j] = old
        # step-size adaptation during burn-in only, so retained draws come
        # from a fixed kernel
        if t < burn and (t + 1) % 200 == 0:
            for j in range(P):
                if tries[j] > 0:
                    rate = accepted[j] / tries[j]
                    if rate > 0.5:
                        steps[j] *= 1.4
                    elif rate < 0.2:
                        steps[j] *= 0.7
                tries[j] = 0
                acc[j] += accepted[j]
                accepted[j] = 0
        if t >= burn and (t - burn) % thin == 0:
            for j in range(P):
                out[row, j] = theta[j]
            row += 1
    for j in range(P):
        acc[j] += accepted[j]
        steps0[j] = steps[j]
    return row


python_kernel = _chain_kernel

NUMBA_ENABLED = False
numba_kernel = None
if not os.environ.get("BALTIC_DST_DISABLE_NUMBA"):
    try:
        import numba

        numba_kernel = numba.njit(cache=True)(_chain_kernel)
        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover
        pass


def run_chain(*args, force_python: bool = False):
    """Dispatch to the compiled kernel when available."""
    if force_python or not NUMBA_ENABLED:
        return python_kernel(*args)
    return numba_kernel(*args)
