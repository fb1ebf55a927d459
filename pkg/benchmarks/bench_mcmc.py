"""Benchmark the salinity MCMC kernel: compiled vs pure-Python path.

Both paths run the same source; the compiled one is the numba-jitted
version unless BALTIC_DST_DISABLE_NUMBA is set.  Usage:

    python3 benchmarks/bench_mcmc.py [--iters N] [--chains K]
"""

import argparse
import time

from baltic_dst.nis import McmcConfig, fit_salinity_model, load_salinity_observations
from baltic_dst.nis.kernel import NUMBA_ENABLED
from baltic_dst.nis.observations import default_salinity_path


def timed_fit(obs, cfg, force_python):
    t0 = time.perf_counter()
    post = fit_salinity_model(obs, mcmc=cfg, force_python=force_python)
    return time.perf_counter() - t0, post


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--iters", type=int, default=50_000)
    ap.add_argument("--chains", type=int, default=3)
    ap.add_argument("--thin", type=int, default=10)
    ap.add_argument("--burn-in", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    obs = load_salinity_observations(default_salinity_path())
    cfg = McmcConfig(iterations=args.iters, chains=args.chains,
                     thinning=args.thin, burn_in=args.burn_in, seed=args.seed)
    print(f"{len(obs)} observations, {cfg.iterations} iterations x "
          f"{cfg.chains} chains, {cfg.retained_total} retained draws")

    if NUMBA_ENABLED:
        # warm-up pass so compilation is not billed to the benchmark
        warm = McmcConfig(iterations=200, chains=2, thinning=1, burn_in=100,
                         seed=args.seed)
        fit_salinity_model(obs, mcmc=warm, force_python=False)
        t_fast, post_fast = timed_fit(obs, cfg, force_python=False)
        print(f"compiled kernel:     {t_fast:8.2f} s "
              f"(max split R-hat {max(post_fast.r_hat.values()):.4f})")
    else:
        t_fast = None
        print("compiled kernel:     disabled (BALTIC_DST_DISABLE_NUMBA)")

    t_py, post_py = timed_fit(obs, cfg, force_python=True)
    print(f"pure-Python kernel:  {t_py:8.2f} s "
          f"(max split R-hat {max(post_py.r_hat.values()):.4f})")
    if t_fast:
        print(f"speedup: {t_py / t_fast:.1f}x")


if __name__ == "__main__":
    main()
