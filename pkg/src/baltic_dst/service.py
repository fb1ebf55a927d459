"""HTTP facade over the engine.

Queries read an immutable model snapshot; a NIS refit builds a complete
replacement snapshot off-thread and installs it with a single reference
swap, so concurrent requests always see one consistent model version.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .factors import VariableKind
from .locks import LockParseError, parse_locks
from .model import catalog
from .model.bundle import Bundle, load_bundle, rebuild_from_bundle
from .network import LockSet, Network, compare_scenarios, query
from .nis import (
    McmcConfig,
    fit_salinity_model,
    load_salinity_observations,
    load_species_table,
    route_nis_distribution,
)

__all__ = ["create_app", "default_model_dir", "ModelState"]


def default_model_dir() -> Path:
    return Path(__file__).resolve().parent / "data" / "bundle"


@dataclass(frozen=True)
class ModelState:
    """One immutable model snapshot; replaced wholesale on refit."""
    bundle: Bundle
    network: Network
    version: str


@dataclass
class RefitJob:
    id: str
    status: str = "running"       # running | done | failed
    detail: str = ""
    started_at: float = field(default_factory=time.time)
    finished_at: float | None = None

    def to_dict(self) -> dict:
        return {"id": self.id, "status": self.status, "detail": self.detail,
                "started_at": self.started_at, "finished_at": self.finished_at}


class ScenarioStore:
    """Named lock sets in a single JSON file, rewritten on every change."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._items: dict[str, dict] = {}
        if self.path.exists():
            self._items = json.loads(self.path.read_text())

    def _flush(self):
        tmp = self.path.with_suffix(".tmp")
        tmp.write_text(json.dumps(self._items, indent=1))
        tmp.replace(self.path)

    def add(self, name: str, locks: dict, note: str = "") -> dict:
        with self._lock:
            sid = uuid.uuid4().hex[:12]
            item = {"id": sid, "name": name, "locks": locks,
                    "note": note, "created_at": time.time()}
            self._items[sid] = item
            self._flush()
            return item

    def list(self) -> list[dict]:
        with self._lock:
            return sorted(self._items.values(), key=lambda x: x["created_at"])

    def get(self, sid: str) -> dict | None:
        with self._lock:
            return self._items.get(sid)

    def delete(self, sid: str) -> bool:
        with self._lock:
            if sid not in self._items:
                return False
            del self._items[sid]
            self._flush()
            return True


def _error(status: int, code: str, message: str, detail: str = "") -> JSONResponse:
    return JSONResponse(status_code=status, content={
        "error": {"code": code, "message": message, "detail": detail}})


def _model_catalog(state: ModelState) -> dict:
    net = state.network
    nodes = []
    for v in net.variables.values():
        entry = {
            "id": v.id,
            "name": v.name,
            "kind": v.kind.value,
            "states": v.states.names(),
            "parents": list(net.parents.get(v.id, ())),
        }
        if v.id in net.decision_constraints:
            entry["admissibility_depends_on"] = [
                s for s in net.decision_constraints[v.id].scope if s != v.id]
        nodes.append(entry)
    utilities = [
        {"id": u.id, "name": u.name, "units": u.units, "parents": list(u.parents)}
        for u in net.utilities.values()
    ]
    return {
        "model_version": state.version,
        "nodes": nodes,
        "utilities": utilities,
        "meta": net.meta,
    }


def create_app(model_dir=None, ui_dir=None, store_path=None) -> FastAPI:
    model_dir = Path(model_dir) if model_dir else default_model_dir()
    bundle = load_bundle(model_dir)
    app = FastAPI(title="baltic-dst", docs_url=None, redoc_url=None)
    app.state.model = ModelState(bundle=bundle, network=bundle.network,
                                 version=f"{uuid.uuid4().hex[:8]}-0")
    app.state.swap_count = 0
    app.state.refit_lock = threading.Lock()
    app.state.refit_job: RefitJob | None = None
    app.state.store = ScenarioStore(
        Path(store_path) if store_path else model_dir / "scenarios.json")

    @app.exception_handler(LockParseError)
    async def _lock_error(request: Request, exc: LockParseError):
        return _error(400, "bad_lock", str(exc))

    @app.get("/api/model")
    def get_model():
        return _model_catalog(app.state.model)

    @app.post("/api/query")
    def post_query(body: dict):
        state: ModelState = app.state.model
        locks = parse_locks(state.network, body.get("locks") or {})
        result = query(state.network, locks)
        return dict(result.to_dict(), model_version=state.version)

    @app.post("/api/compare")
    def post_compare(body: dict):
        state: ModelState = app.state.model
        scenarios = body.get("scenarios")
        if not isinstance(scenarios, list) or not scenarios:
            return _error(400, "bad_lock", "body needs a non-empty scenarios list")
        lock_sets = []
        for sc in scenarios:
            raw = sc.get("locks", sc) if isinstance(sc, dict) else None
            if raw is None:
                return _error(400, "bad_lock", "each scenario must be an object")
            lock_sets.append(parse_locks(state.network, raw))
        rows = compare_scenarios(state.network, lock_sets)
        return {"model_version": state.version, "rows": rows}

    @app.post("/api/scenarios")
    def post_scenario(body: dict):
        state: ModelState = app.state.model
        name = body.get("name")
        if not name:
            return _error(400, "bad_lock", "scenario needs a name")
        locks = parse_locks(state.network, body.get("locks") or {})
        item = app.state.store.add(name, dict(locks.locks), body.get("note", ""))
        return item

    @app.get("/api/scenarios")
    def list_scenarios():
        return {"scenarios": app.state.store.list()}

    @app.get("/api/scenarios/{sid}")
    def get_scenario(sid: str):
        item = app.state.store.get(sid)
        if item is None:
            return _error(404, "not_found", f"no scenario {sid!r}")
        return item

    @app.delete("/api/scenarios/{sid}")
    def delete_scenario(sid: str):
        if not app.state.store.delete(sid):
            return _error(404, "not_found", f"no scenario {sid!r}")
        return {"deleted": sid}

    @app.get("/api/routes")
    def get_routes():
        return {"routes": [
            {"label": r.label, "departure": r.departure, "arrival": r.arrival,
             "ice_affected": r.ice_affected}
            for r in catalog.ROUTES
        ]}

    @app.get("/api/species")
    def get_species():
        state: ModelState = app.state.model
        records = load_species_table(state.bundle.species_path)
        return {"species": [
            {"name": s.name, "sal_min_tol": s.sal_min_tol,
             "sal_max_tol": s.sal_max_tol,
             "presence": dict(zip(catalog.AREAS, s.presence))}
            for s in records
        ]}

    def _run_refit(job: RefitJob, cfg: McmcConfig):
        try:
            state: ModelState = app.state.model
            species = load_species_table(state.bundle.species_path)
            obs = load_salinity_observations(state.bundle.salinity_path)
            post = fit_salinity_model(obs, mcmc=cfg)
            table = np.stack([
                route_nis_distribution(r, species, post).mapped
                for r in catalog.ROUTES
            ])
            network = rebuild_from_bundle(state.bundle, nis_table=table,
                                          meta=state.network.meta)
            app.state.swap_count += 1
            base = state.version.rsplit("-", 1)[0]
            app.state.model = ModelState(
                bundle=state.bundle, network=network,
                version=f"{base}-{app.state.swap_count}")
            job.status = "done"
            job.detail = (f"max split R-hat "
                          f"{max(post.r_hat.values()):.4f}; "
                          f"{post.n_draws} draws")
        except Exception as exc:  # surfaced through the job status
            job.status = "failed"
            job.detail = f"{type(exc).__name__}: {exc}"
        finally:
            job.finished_at = time.time()

    @app.post("/api/nis/refit")
    def post_refit(body: dict | None = None):
        body = body or {}
        with app.state.refit_lock:
            job = app.state.refit_job
            if job is not None and job.status == "running":
                return _error(409, "model_error", "a refit is already running",
                              detail=job.id)
            try:
                cfg = McmcConfig(
                    iterations=int(body.get("iterations", 50_000)),
                    chains=int(body.get("chains", 3)),
                    thinning=int(body.get("thinning", 10)),
                    burn_in=int(body.get("burn_in", 20_000)),
                    seed=int(body.get("seed", 0)),
                )
            except ValueError as exc:
                return _error(400, "model_error", f"bad MCMC config: {exc}")
            job = RefitJob(id=uuid.uuid4().hex[:12])
            app.state.refit_job = job
            threading.Thread(target=_run_refit, args=(job, cfg),
                             daemon=True).start()
            return job.to_dict()

    @app.get("/api/nis/refit/{job_id}")
    def get_refit(job_id: str):
        job = app.state.refit_job
        if job is None or job.id != job_id:
            return _error(404, "not_found", f"no refit job {job_id!r}")
        return job.to_dict()

    if ui_dir:
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
