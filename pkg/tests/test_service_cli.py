"""CLI commands and the HTTP service over the shipped bundle."""

import json
import time

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from baltic_dst.cli import main
from baltic_dst.service import create_app

TINY_FIT = ["--iters", "800", "--chains", "2", "--thin", "5",
            "--burn-in", "200", "--seed", "7"]


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def client(bundle_copy):
    app = create_app(model_dir=bundle_copy)
    with TestClient(app) as c:
        yield c


class TestCliValidate:
    def test_shipped_bundle_valid(self, runner):
        res = runner.invoke(main, ["validate"])
        assert res.exit_code == 0
        assert "bundle is valid" in res.output
        assert "11 decisions, 14 chance" in res.output

    def test_missing_dir_is_error(self, runner, tmp_path):
        res = runner.invoke(main, ["validate", "--model-dir", str(tmp_path / "x")])
        assert res.exit_code == 1


class TestCliQuery:
    def test_plain_query_prints_nine_utilities(self, runner):
        res = runner.invoke(main, ["query"])
        assert res.exit_code == 0
        lines = [l for l in res.output.splitlines() if l.strip()]
        assert lines[0].startswith("utility")
        assert len(lines) == 10  # header + 9 utility rows

    def test_posterior_flag(self, runner):
        res = runner.invoke(main, [
            "query", "--lock", "time_since_coating=0",
            "--lock", "coating_type=hard coating", "--lock", "iwc_times=0",
            "--posterior", "biofouling_avg"])
        assert res.exit_code == 0
        assert "1.0000" in res.output

    def test_inconsistent_exit_code_2(self, runner):
        res = runner.invoke(main, [
            "query", "--lock", "routes=3A",
            "--lock", "coating_type=fouling release coating"])
        assert res.exit_code == 2
        assert "not admissible" in res.stderr

    def test_inconsistent_json_still_exit_2(self, runner):
        res = runner.invoke(main, [
            "query", "--json", "--lock", "routes=3A",
            "--lock", "coating_type=fouling release coating"])
        assert res.exit_code == 2
        body = json.loads(res.output)
        assert body["consistent"] is False

    def test_unknown_lock_suggests(self, runner):
        res = runner.invoke(main, ["query", "--lock", "coating_typ=hard coating"])
        assert res.exit_code == 1
        assert "coating_type" in res.stderr

    def test_malformed_lock(self, runner):
        res = runner.invoke(main, ["query", "--lock", "nonsense"])
        assert res.exit_code == 1
        assert "Node=State" in res.stderr


class TestCliCompare:
    def test_table_and_json(self, runner, tmp_path):
        f = tmp_path / "scen.json"
        f.write_text(json.dumps([
            {"locks": {"iwc_collect": "IWC + collecting"}},
            {"locks": {"iwc_collect": "IWC + no collecting"}},
        ]))
        res = runner.invoke(main, ["compare", "--scenario-file", str(f)])
        assert res.exit_code == 0
        assert "scenario" in res.output
        res2 = runner.invoke(main, ["compare", "--scenario-file", str(f), "--json"])
        rows = json.loads(res2.output)["rows"]
        assert len(rows) == 2 and all(r["consistent"] for r in rows)

    def test_empty_file_rejected(self, runner, tmp_path):
        f = tmp_path / "scen.json"
        f.write_text("[]")
        res = runner.invoke(main, ["compare", "--scenario-file", str(f)])
        assert res.exit_code == 1


class TestCliExportCpt:
    def test_chance_node(self, runner):
        res = runner.invoke(main, ["export-cpt", "--node", "fouling_type"])
        assert res.exit_code == 0
        lines = res.output.splitlines()
        assert lines[0] == "biofouling_max,fouling_type,value"
        assert len(lines) == 1 + 6 * 2

    def test_utility_node(self, runner):
        res = runner.invoke(main, ["export-cpt", "--node", "sediment_risk"])
        assert res.exit_code == 0
        assert res.output.splitlines()[0] == "sediment_cu,coating_type,value"

    def test_unknown_node(self, runner):
        res = runner.invoke(main, ["export-cpt", "--node", "bogus"])
        assert res.exit_code == 1


class TestCliNisFit:
    def test_seeded_reruns_byte_identical(self, runner, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            res = runner.invoke(main, ["nis", "fit", *TINY_FIT, "--out", str(out)])
            assert res.exit_code == 0, res.output
            assert "draws" in res.output
        assert a.read_bytes() == b.read_bytes()

    def test_nis_out_has_twenty_routes(self, runner, tmp_path):
        res = runner.invoke(main, [
            "nis", "fit", *TINY_FIT, "--out", str(tmp_path / "d.csv"),
            "--nis-out", str(tmp_path / "n.csv")])
        assert res.exit_code == 0, res.output
        lines = (tmp_path / "n.csv").read_text().splitlines()
        assert len(lines) == 21
        assert lines[0].startswith("route,p_state_1,p_state_3")
        for line in lines[1:]:
            probs = [float(x) for x in line.split(",")[1:]]
            assert sum(probs) == pytest.approx(1.0)


class TestServiceModel:
    def test_catalog_counts(self, client):
        body = client.get("/api/model").json()
        assert len(body["nodes"]) == 34 - 9
        assert len(body["utilities"]) == 9
        routes = next(n for n in body["nodes"] if n["id"] == "routes")
        assert len(routes["states"]) == 20

    def test_admissibility_advertised(self, client):
        body = client.get("/api/model").json()
        coating = next(n for n in body["nodes"] if n["id"] == "coating_type")
        assert coating["admissibility_depends_on"] == ["routes"]

    def test_reconstructed_flags_in_meta(self, client):
        body = client.get("/api/model").json()
        assert body["meta"]["reconstructed_columns"]

    def test_repeated_calls_byte_identical(self, client):
        a = client.get("/api/model")
        b = client.get("/api/model")
        assert a.content == b.content


class TestServiceQuery:
    def test_empty_locks_uniform_run(self, client):
        body = client.post("/api/query", json={"locks": {}}).json()
        assert body["consistent"] is True
        assert len(body["posteriors"]) == 14
        assert len(body["utilities"]) == 9
        assert "model_version" in body

    def test_pure_identical_bodies(self, client):
        req = {"locks": {"ship_type": "tanker", "iwc_times": "2"}}
        a = client.post("/api/query", json=req)
        b = client.post("/api/query", json=req)
        assert a.content == b.content

    def test_inconsistent_is_200_with_flag(self, client):
        r = client.post("/api/query", json={"locks": {
            "routes": "3A", "coating_type": "fouling release coating"}})
        assert r.status_code == 200
        body = r.json()
        assert body["consistent"] is False
        assert "not admissible" in body["reason"]

    def test_bad_lock_is_400(self, client):
        r = client.post("/api/query", json={"locks": {"warp_drive": "on"}})
        assert r.status_code == 400
        err = r.json()["error"]
        assert err["code"] == "bad_lock"

    def test_bad_state_suggests(self, client):
        r = client.post("/api/query", json={"locks": {"coating_type": "hard"}})
        assert r.status_code == 400
        assert "hard coating" in r.json()["error"]["message"]

    def test_compare_endpoint(self, client):
        r = client.post("/api/compare", json={"scenarios": [
            {"locks": {"iwc_collect": "IWC + collecting"}},
            {"locks": {"iwc_collect": "IWC + no collecting"}},
        ]})
        rows = r.json()["rows"]
        assert len(rows) == 2
        assert abs(rows[0]["utilities"]["nis_risk"]) < \
            abs(rows[1]["utilities"]["nis_risk"])


class TestCliServiceEquivalence:
    CASES = [
        {},
        {"ship_type": "tanker", "fuel_type": "heavy fuel oil",
         "coating_type": "hard coating", "iwc_times": "2"},
        {"routes": "3A", "coating_type": "fouling release coating"},
    ]

    def test_json_flag_matches_service(self, runner, client):
        for locks in self.CASES:
            args = ["query", "--json"]
            for k, v in locks.items():
                args += ["--lock", f"{k}={v}"]
            res = runner.invoke(main, args)
            cli_body = json.loads(res.output)
            srv_body = client.post("/api/query", json={"locks": locks}).json()
            # the version tag is the service envelope; the scenario payload
            # itself must match field for field
            srv_body.pop("model_version")
            assert cli_body == srv_body


class TestScenarioStore:
    def test_round_trip(self, client):
        r = client.post("/api/scenarios", json={
            "name": "baseline", "locks": {"ship_type": "tanker"}})
        sid = r.json()["id"]
        listed = client.get("/api/scenarios").json()["scenarios"]
        assert [s["id"] for s in listed] == [sid]
        one = client.get(f"/api/scenarios/{sid}").json()
        assert one["locks"] == {"ship_type": 4} or "ship_type" in one["locks"]
        assert client.delete(f"/api/scenarios/{sid}").status_code == 200
        assert client.get(f"/api/scenarios/{sid}").status_code == 404

    def test_unvalidated_locks_rejected(self, client):
        r = client.post("/api/scenarios", json={
            "name": "bad", "locks": {"warp_drive": "on"}})
        assert r.status_code == 400

    def test_nameless_rejected(self, client):
        r = client.post("/api/scenarios", json={"locks": {}})
        assert r.status_code == 400

    def test_survives_restart(self, bundle_copy):
        store = bundle_copy / "scenarios.json"
        with TestClient(create_app(model_dir=bundle_copy,
                                   store_path=store)) as c1:
            sid = c1.post("/api/scenarios", json={
                "name": "kept", "locks": {"ship_type": "tanker"},
                "note": "restart test"}).json()["id"]
        with TestClient(create_app(model_dir=bundle_copy,
                                   store_path=store)) as c2:
            item = c2.get(f"/api/scenarios/{sid}").json()
            assert item["name"] == "kept" and item["note"] == "restart test"


class TestCatalogEndpoints:
    def test_routes(self, client):
        routes = client.get("/api/routes").json()["routes"]
        assert len(routes) == 20
        r3a = next(r for r in routes if r["label"] == "3A")
        assert r3a["ice_affected"] is True

    def test_species(self, client):
        species = client.get("/api/species").json()["species"]
        assert len(species) == 89
        assert all(set(s["presence"]) == {
            "Gulf of Bothnia", "Gulf of Finland", "Gulf of Riga",
            "Baltic Proper", "Southwestern Baltic", "North Sea (eastern part)"}
            for s in species[:3])


class TestRefit:
    TINY = {"iterations": 2000, "chains": 2, "thinning": 10,
            "burn_in": 500, "seed": 3}

    def _wait(self, client, job_id, deadline=120.0):
        t0 = time.time()
        while time.time() - t0 < deadline:
            body = client.get(f"/api/nis/refit/{job_id}").json()
            if body["status"] != "running":
                return body
            time.sleep(0.05)
        raise AssertionError("refit did not finish in time")

    def test_refit_swaps_model_version(self, client):
        v0 = client.get("/api/model").json()["model_version"]
        job = client.post("/api/nis/refit", json=self.TINY).json()
        done = self._wait(client, job["id"])
        assert done["status"] == "done", done["detail"]
        assert "R-hat" in done["detail"]
        v1 = client.get("/api/model").json()["model_version"]
        assert v1 != v0
        assert v1.split("-")[0] == v0.split("-")[0]
        # queries still work against the refreshed NIS table
        body = client.post("/api/query", json={"locks": {}}).json()
        assert body["consistent"] and body["model_version"] == v1

    def test_second_refit_while_running_is_409(self, client):
        slow = dict(self.TINY, iterations=300_000, burn_in=100_000)
        job = client.post("/api/nis/refit", json=slow).json()
        r = client.post("/api/nis/refit", json=self.TINY)
        assert r.status_code == 409
        assert r.json()["error"]["detail"] == job["id"]
        self._wait(client, job["id"], deadline=300.0)

    def test_bad_config_rejected(self, client):
        r = client.post("/api/nis/refit", json={"chains": 1})
        assert r.status_code == 400

    def test_unknown_job_404(self, client):
        assert client.get("/api/nis/refit/nope").status_code == 404
