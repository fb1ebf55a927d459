"""Species table, salinity MCMC and the per-route survivor counts."""

import numpy as np
import pytest

from baltic_dst.model.catalog import AREAS, NIS_VALUES, ROUTES, Route
from baltic_dst.nis import (
    McmcConfig,
    PAPER_PROTOCOL,
    PosteriorSamples,
    PriorConfig,
    SalinityObservation,
    SpeciesRecord,
    default_salinity_path,
    default_species_path,
    fit_salinity_model,
    load_salinity_observations,
    load_species_table,
    map_count_to_state,
    route_nis_distribution,
    species_survival,
    split_r_hat,
)

GOB, GOF, GOR, BP, SWB, NS = AREAS


def make_posterior(mu_x_by_area, mu_y_by_area, n_draws=50):
    """Degenerate posterior with identical draws."""
    areas = tuple(mu_x_by_area)
    k = len(areas)
    names = (("C", "sigma_x2", "sigma_y2", "nu_x", "nu_y")
             + tuple(f"mu_x[{a}]" for a in areas)
             + tuple(f"mu_y[{a}]" for a in areas))
    row = [0.1, 1.0, 1.0, 5.0, 7.0]
    row += [mu_x_by_area[a] for a in areas]
    row += [mu_y_by_area[a] for a in areas]
    draws = np.tile(row, (n_draws, 1))
    return PosteriorSamples(
        areas=areas, param_names=names, draws=draws,
        chain_id=np.zeros(n_draws, dtype=np.int64),
        iteration=np.arange(n_draws, dtype=np.int64))


def sp(name, lo, hi, present):
    flags = tuple(a in present for a in AREAS)
    return SpeciesRecord(name, lo, hi, flags)


# -- species table ---------------------------------------------------------

class TestSpeciesTable:
    def test_full_table_loads(self):
        records = load_species_table(default_species_path())
        assert len(records) == 89
        names = {r.name for r in records}
        assert "Alitta succinea" in names

    def test_sinelobus_row(self):
        records = {r.name: r for r in load_species_table(default_species_path())}
        s = records["Sinelobus vanhaareni"]
        assert s.sal_min_tol == 4.9 and s.sal_max_tol == 7.3
        assert not s.present_in(GOB)
        for area in (GOF, GOR, BP, SWB, NS):
            assert s.present_in(area)

    def test_dikerogammarus_tolerance(self):
        records = {r.name: r for r in load_species_table(default_species_path())}
        s = records["Dikerogammarus haemobaphes"]
        assert (s.sal_min_tol, s.sal_max_tol) == (0.0, 0.5)

    def test_gof_presence_count_matches_route_7(self):
        # routes 7A/7B stay inside the Gulf of Finland and the published
        # network pins their NIS value at 7
        records = load_species_table(default_species_path())
        assert sum(r.present_in(GOF) for r in records) == 7

    def test_empty_file(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("")
        assert load_species_table(p) == []

    def test_malformed_row_names_line(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("name,sal_min_tol,sal_max_tol,present_GoB,present_GoF,"
                     "present_GoR,present_BP,present_SWB,present_NS\n"
                     "Okay,1,2,no,no,no,no,no,yes\n"
                     "Broken,abc,2,no,no,no,no,no,yes\n")
        with pytest.raises(ValueError, match=":3"):
            load_species_table(p)

    def test_inverted_tolerance_rejected(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("name,sal_min_tol,sal_max_tol,present_GoB,present_GoF,"
                     "present_GoR,present_BP,present_SWB,present_NS\n"
                     "Backwards,5,2,no,no,no,no,no,yes\n")
        with pytest.raises(ValueError, match=":2"):
            load_species_table(p)

    def test_wrong_header_rejected(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("species,min,max\nfoo,1,2\n")
        with pytest.raises(ValueError, match="header"):
            load_species_table(p)


class TestSalinityObservations:
    def test_placeholder_file_flagged_and_loads(self):
        text = default_salinity_path().read_text()
        assert "NON-PAPER" in text.splitlines()[0]
        obs = load_salinity_observations(default_salinity_path())
        assert len(obs) == 72
        assert {o.area for o in obs} == set(AREAS)

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            SalinityObservation(GOB, 1, 5.0, 3.0)   # x > y
        with pytest.raises(ValueError):
            SalinityObservation(GOB, 1, 5.0, 45.0)  # beyond 40 PSU
        with pytest.raises(ValueError):
            SalinityObservation("Atlantis", 1, 1.0, 2.0)


# -- survival rule ---------------------------------------------------------

class TestSurvival:
    def test_wide_tolerance_always_survives(self):
        s = sp("tolerant", 0.14, 80.0, {NS})
        assert species_survival(34.9, 35.0, s) == 1

    def test_narrow_tolerance_fails(self):
        s = sp("fresh", 0.0, 0.5, {NS})
        assert species_survival(5.0, 6.0, s) == 0

    def test_step_at_zero_is_one(self):
        # band exactly equal to the tolerance interval
        s = sp("edge", 5.0, 7.0, {NS})
        assert species_survival(5.0, 7.0, s) == 1

    def test_containment_not_overlap(self):
        # overlapping but not containing band does not survive
        s = sp("partial", 6.0, 8.0, {NS})
        assert species_survival(5.0, 7.0, s) == 0


class TestCountMapping:
    def test_states_are_the_published_values(self):
        assert NIS_VALUES == (1.0, 3.0, 7.0, 9.0, 10.0, 15.0, 17.0, 18.0,
                              30.0, 31.0, 32.0, 33.0, 36.0, 53.0)

    def test_ties_go_to_smaller_state(self):
        assert map_count_to_state(2) == 0    # equidistant from 1 and 3
        assert map_count_to_state(5) == 1    # equidistant from 3 and 7
        assert map_count_to_state(8) == 2    # equidistant from 7 and 9

    def test_extremes(self):
        assert map_count_to_state(0) == 0
        assert map_count_to_state(200) == len(NIS_VALUES) - 1


# -- route distributions ---------------------------------------------------

class TestRouteDistribution:
    def test_all_tolerant_constant_count(self):
        species = [sp(f"s{i}", 0.0, 80.0, {NS}) for i in range(5)]
        species += [sp("elsewhere", 0.0, 80.0, {SWB})]
        route = ROUTES[0]  # 1A: NS -> SWB
        post = make_posterior({SWB: 10.0}, {SWB: 15.0})
        dist = route_nis_distribution(route, species, post)
        assert dist.counts[5] == 1.0
        assert dist.mapped.sum() == pytest.approx(1.0)

    def test_degenerate_matches_brute_force_filter(self):
        records = load_species_table(default_species_path())
        mu_x, mu_y = 9.0, 16.0
        post = make_posterior({SWB: mu_x}, {SWB: mu_y})
        route = ROUTES[0]  # NS -> SWB
        dist = route_nis_distribution(route, records, post)
        oracle = sum(1 for s in records
                     if s.present_in(NS)
                     and s.sal_min_tol <= mu_x and s.sal_max_tol >= mu_y)
        assert dist.counts[oracle] == pytest.approx(1.0)

    def test_empty_departure_warns_and_maps_to_lowest(self):
        species = [sp("only-ns", 0.0, 80.0, {NS})]
        route = Route("X", SWB, NS)
        post = make_posterior({NS: 30.0}, {NS: 34.0})
        with pytest.warns(UserWarning, match="no species"):
            dist = route_nis_distribution(route, species, post)
        assert dist.counts[0] == 1.0
        assert dist.mapped[0] == 1.0

    def test_widening_tolerance_never_decreases_expected_count(self):
        rng = np.random.default_rng(5)
        n = 40
        draws_x = rng.uniform(4, 12, n)
        draws_y = draws_x + rng.uniform(0, 6, n)
        areas = (SWB,)
        names = (("C", "sigma_x2", "sigma_y2", "nu_x", "nu_y")
                 + tuple(f"mu_x[{a}]" for a in areas)
                 + tuple(f"mu_y[{a}]" for a in areas))
        draws = np.column_stack([np.full(n, 0.1), np.ones(n), np.ones(n),
                                 np.full(n, 5.0), np.full(n, 7.0),
                                 draws_x, draws_y])
        post = PosteriorSamples(areas=areas, param_names=names, draws=draws,
                                chain_id=np.zeros(n, dtype=np.int64),
                                iteration=np.arange(n, dtype=np.int64))
        route = ROUTES[0]
        base = [sp("a", 5.0, 10.0, {NS}), sp("b", 2.0, 14.0, {NS})]
        before = route_nis_distribution(route, base, post).mean_count
        widened = [sp("a", 3.0, 16.0, {NS}), sp("b", 2.0, 14.0, {NS})]
        after = route_nis_distribution(route, widened, post).mean_count
        assert after >= before

    def test_species_absent_everywhere_is_noop(self):
        species = [sp("a", 0.0, 80.0, {NS})]
        post = make_posterior({SWB: 10.0}, {SWB: 15.0})
        route = ROUTES[0]
        d1 = route_nis_distribution(route, species, post)
        species2 = species + [sp("ghost", 0.0, 80.0, set())]
        d2 = route_nis_distribution(route, species2, post)
        assert np.allclose(d1.mapped, d2.mapped)
        assert d1.mean_count == d2.mean_count

    def test_mapping_error_bounded(self):
        # mean after mapping within half the largest inter-state gap
        records = load_species_table(default_species_path())
        post = make_posterior({a: 5.0 for a in AREAS}, {a: 7.0 for a in AREAS})
        gaps = np.diff(NIS_VALUES)
        for route in ROUTES:
            dist = route_nis_distribution(route, records, post)
            assert abs(dist.mean_mapped - dist.mean_count) <= gaps.max() / 2 + 1e-9


# -- MCMC ------------------------------------------------------------------

def _synthetic_obs(rng, areas_means, c=0.05, per_area=12):
    obs = []
    for area, (mx, my) in areas_means.items():
        for m in range(per_area):
            x = max(float(rng.normal(mx, c * mx)), 0.01)
            y = min(max(float(rng.normal(my, c * my)), x), 40.0)
            obs.append(SalinityObservation(area, m % 12 + 1, x, y))
    return obs


TINY = McmcConfig(iterations=2000, chains=2, thinning=5, burn_in=500, seed=11)


class TestMcmc:
    def test_paper_protocol_draw_arithmetic(self):
        assert PAPER_PROTOCOL.iterations == 500_000
        assert PAPER_PROTOCOL.chains == 3
        assert PAPER_PROTOCOL.thinning == 100
        assert PAPER_PROTOCOL.burn_in == 200_000
        assert PAPER_PROTOCOL.retained_total == 9000

    def test_chains_minimum(self):
        with pytest.raises(ValueError, match="chains"):
            McmcConfig(chains=1)

    def test_prior_defaults(self):
        p = PriorConfig()
        assert p.c_mean == 0.1 and p.c_sd == 0.1
        assert p.sigma_x2_range == (0.0, 10.0)
        assert p.nu_x_range == (0.0, 35.0)

    def test_seeded_determinism_python_path(self):
        rng = np.random.default_rng(0)
        obs = _synthetic_obs(rng, {GOB: (3.0, 4.0), GOF: (5.0, 6.5)})
        a = fit_salinity_model(obs, mcmc=TINY, force_python=True)
        b = fit_salinity_model(obs, mcmc=TINY, force_python=True)
        assert np.array_equal(a.draws, b.draws)

    def test_seeded_determinism_compiled_path(self):
        rng = np.random.default_rng(0)
        obs = _synthetic_obs(rng, {GOB: (3.0, 4.0), GOF: (5.0, 6.5)})
        a = fit_salinity_model(obs, mcmc=TINY)
        b = fit_salinity_model(obs, mcmc=TINY)
        assert np.array_equal(a.draws, b.draws)

    def test_draw_metadata_ordered_by_chain_then_iteration(self):
        rng = np.random.default_rng(0)
        obs = _synthetic_obs(rng, {GOB: (3.0, 4.0)}, per_area=6)
        post = fit_salinity_model(obs, mcmc=TINY)
        order = np.lexsort((post.iteration, post.chain_id))
        assert np.array_equal(order, np.arange(post.n_draws))

    def test_prior_supports_respected(self):
        rng = np.random.default_rng(1)
        obs = _synthetic_obs(rng, {GOB: (3.0, 4.0), BP: (7.0, 8.5)})
        post = fit_salinity_model(obs, mcmc=TINY)
        assert np.all(post.column("C") > 0)
        for p in ("sigma_x2", "sigma_y2"):
            assert np.all((post.column(p) > 0) & (post.column(p) < 10))
        for p in ("nu_x", "nu_y"):
            assert np.all((post.column(p) > 0) & (post.column(p) < 35))

    def test_single_area_low_c_concentrates_at_observation(self):
        obs = [SalinityObservation(GOB, m, 5.0, 7.0) for m in range(1, 13)]
        prior = PriorConfig(c_mean=0.01, c_sd=0.005)
        cfg = McmcConfig(iterations=6000, chains=2, thinning=5, burn_in=2000,
                         seed=3)
        post = fit_salinity_model(obs, prior=prior, mcmc=cfg)
        assert post.mu_x(GOB).mean() == pytest.approx(5.0, abs=0.2)
        assert post.mu_y(GOB).mean() == pytest.approx(7.0, abs=0.25)

    def test_export_one_draw_per_line(self, tmp_path):
        rng = np.random.default_rng(0)
        obs = _synthetic_obs(rng, {GOB: (3.0, 4.0)}, per_area=6)
        post = fit_salinity_model(obs, mcmc=TINY)
        out = tmp_path / "draws.csv"
        post.export(out)
        lines = out.read_text().splitlines()
        assert len(lines) == post.n_draws + 1
        assert lines[0].startswith("chain,iteration,C,sigma_x2")

    def test_draws_are_immutable(self):
        rng = np.random.default_rng(0)
        obs = _synthetic_obs(rng, {GOB: (3.0, 4.0)}, per_area=6)
        post = fit_salinity_model(obs, mcmc=TINY)
        with pytest.raises(ValueError):
            post.draws[0, 0] = 99.0

    def test_mu_order_violation_reported_not_enforced(self):
        rng = np.random.default_rng(0)
        obs = _synthetic_obs(rng, {GOB: (3.0, 4.0)}, per_area=6)
        post = fit_salinity_model(obs, mcmc=TINY)
        assert 0.0 <= post.mu_order_violation_fraction <= 1.0

    def test_missing_area_observations_rejected(self):
        with pytest.raises(ValueError, match="no observations|positive"):
            fit_salinity_model([SalinityObservation(GOB, 1, 0.0, 1.0)],
                               mcmc=TINY)


class TestDiagnostics:
    def test_identical_chains_rhat_near_one(self):
        rng = np.random.default_rng(0)
        draws = rng.normal(size=(1, 400, 2))
        chains = np.concatenate([draws, draws + 1e-9], axis=0)
        r = split_r_hat(chains)
        assert np.all(np.abs(r - 1.0) < 0.05)

    def test_separated_chains_flagged(self):
        rng = np.random.default_rng(0)
        a = rng.normal(0.0, 1.0, size=(1, 400, 1))
        b = rng.normal(10.0, 1.0, size=(1, 400, 1))
        r = split_r_hat(np.concatenate([a, b], axis=0))
        assert r[0] > 1.1

    def test_divergence_flag_set(self):
        # two chains pinned in different modes by wildly different data
        obs = ([SalinityObservation(GOB, m, 3.0, 4.0) for m in range(1, 7)])
        cfg = McmcConfig(iterations=300, chains=2, thinning=1, burn_in=100,
                         seed=1)
        post = fit_salinity_model(obs, mcmc=cfg)
        # short noisy chains: flag must agree with the reported r_hat
        worst = max(post.r_hat.values())
        assert post.diverged == (worst > 1.1)
