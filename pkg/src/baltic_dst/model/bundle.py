"""Model-bundle directory I/O.

A bundle is one directory holding the serialized network plus everything
needed to rebuild or audit it: flat key-value parameter files, the route
and sediment catalogs, the species table, the salinity observations and
the current per-route NIS distribution.
"""

from __future__ import annotations

import csv
import json
import shutil
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..factors import Factor, StateSpace, Variable, VariableKind
from ..network import Network, UtilityNode
from . import catalog
from .build import build_network
from .params import (
    DragModel,
    EconParams,
    EmissionParams,
    NIS_RISK_DEFAULTS,
    drag_from_values,
    econ_from_values,
    emissions_from_values,
    load_params_file,
    write_drag,
    write_econ,
    write_emissions,
    write_params_file,
)

__all__ = ["Bundle", "save_bundle", "load_bundle", "create_default_bundle",
           "network_to_dict", "network_from_dict"]

NETWORK_FILE = "network.json"


# -- network (de)serialization ---------------------------------------------

def _space_to_dict(s: StateSpace) -> dict:
    if s.labels is not None:
        return {"labels": list(s.labels)}
    if s.values is not None:
        return {"values": list(s.values)}
    return {"boundaries": list(s.boundaries)}


def _space_from_dict(d: dict) -> StateSpace:
    if "labels" in d:
        return StateSpace(labels=tuple(d["labels"]))
    if "values" in d:
        return StateSpace(values=tuple(d["values"]))
    return StateSpace(boundaries=tuple(d["boundaries"]))


def network_to_dict(net: Network) -> dict:
    """JSON-ready form; tables are flat row-major with explicit scope."""
    return {
        "format": "influence-diagram",
        "version": 1,
        "variables": [
            {
                "id": v.id,
                "name": v.name,
                "kind": v.kind.value,
                "states": _space_to_dict(v.states),
            }
            for v in net.variables.values()
        ],
        "parents": {k: list(v) for k, v in net.parents.items()},
        "cpts": {
            vid: {"scope": list(f.scope), "cards": list(f.cards),
                  "data": [float(x) for x in f.flat()]}
            for vid, f in net.cpts.items()
        },
        "utilities": [
            {
                "id": u.id, "name": u.name, "parents": list(u.parents),
                "cards": list(u.cards), "units": u.units,
                "data": [float(x) for x in u.flat()],
            }
            for u in net.utilities.values()
        ],
        "decision_constraints": {
            did: {"scope": list(f.scope), "cards": list(f.cards),
                  "data": [float(x) for x in f.flat()]}
            for did, f in net.decision_constraints.items()
        },
        "meta": net.meta,
    }


def network_from_dict(d: dict) -> Network:
    if d.get("format") != "influence-diagram":
        raise ValueError(f"unsupported network format {d.get('format')!r}")
    variables = [
        Variable(v["id"], v["name"], VariableKind(v["kind"]),
                 _space_from_dict(v["states"]))
        for v in d["variables"]
    ]
    cpts = {
        vid: Factor.from_flat(tuple(f["scope"]), tuple(f["cards"]),
                              np.asarray(f["data"]))
        for vid, f in d["cpts"].items()
    }
    utilities = [
        UtilityNode(u["id"], u["name"], tuple(u["parents"]), tuple(u["cards"]),
                    np.asarray(u["data"]), units=u.get("units", ""))
        for u in d["utilities"]
    ]
    constraints = {
        did: Factor.from_flat(tuple(f["scope"]), tuple(f["cards"]),
                              np.asarray(f["data"]))
        for did, f in d.get("decision_constraints", {}).items()
    }
    return Network(variables=variables, parents=d["parents"], cpts=cpts,
                   utilities=utilities, decision_constraints=constraints,
                   meta=d.get("meta", {}))


# -- bundle ----------------------------------------------------------------

@dataclass
class Bundle:
    path: Path
    network: Network
    econ: EconParams
    emissions: EmissionParams
    drag: DragModel
    nis_risk: dict
    nis_table: np.ndarray

    @property
    def species_path(self) -> Path:
        return self.path / "species_table.csv"

    @property
    def salinity_path(self) -> Path:
        return self.path / "salinity_observations.csv"


def _write_routes(path: Path) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["route", "departure", "arrival", "ice_affected"])
        for r in catalog.ROUTES:
            w.writerow([r.label, r.departure, r.arrival,
                        "yes" if r.ice_affected else "no"])


def _write_sediment(path: Path) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["route", "sediment_class"])
        for r, cls in zip(catalog.ROUTES, catalog.SEDIMENT_CLASS):
            w.writerow([r.label, cls])


def _write_nis_table(path: Path, table: np.ndarray) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["route"] + [f"p_state_{int(v)}" for v in catalog.NIS_VALUES])
        for r, row in zip(catalog.ROUTES, table):
            w.writerow([r.label] + [f"{x:.17g}" for x in row])


def _read_nis_table(path: Path) -> np.ndarray:
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    by_route = {row[0]: [float(x) for x in row[1:]] for row in rows[1:]}
    missing = [r.label for r in catalog.ROUTES if r.label not in by_route]
    if missing:
        raise ValueError(f"NIS distribution file missing routes: {missing}")
    return np.array([by_route[r.label] for r in catalog.ROUTES])


def save_bundle(path, network: Network, econ: EconParams, emis: EmissionParams,
                drag: DragModel, nis_table: np.ndarray,
                nis_risk: dict | None = None,
                species_source: Path | None = None,
                salinity_source: Path | None = None) -> Path:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    (path / NETWORK_FILE).write_text(
        json.dumps(network_to_dict(network), indent=1) + "\n")
    write_econ(path / "econ.params", econ)
    write_emissions(path / "emissions.params", emis)
    write_drag(path / "drag.params", drag)
    write_params_file(
        path / "nis_risk.params",
        {f"nis_risk_{k}": v for k, v in dict(NIS_RISK_DEFAULTS, **(nis_risk or {})).items()},
        "NIS risk utility shape")
    _write_routes(path / "routes.csv")
    _write_sediment(path / "sediment.csv")
    _write_nis_table(path / "nis_distribution.csv", np.asarray(nis_table))
    data_dir = Path(__file__).resolve().parent.parent / "data"
    shutil.copyfile(species_source or data_dir / "species_table.csv",
                    path / "species_table.csv")
    shutil.copyfile(salinity_source or data_dir / "salinity_observations.csv",
                    path / "salinity_observations.csv")
    return path


def load_bundle(path) -> Bundle:
    path = Path(path)
    net_file = path / NETWORK_FILE
    if not net_file.exists():
        raise FileNotFoundError(f"{net_file} not found; not a model bundle")
    network = network_from_dict(json.loads(net_file.read_text()))
    econ = econ_from_values(load_params_file(path / "econ.params"))
    emis = emissions_from_values(load_params_file(path / "emissions.params"))
    drag = drag_from_values(load_params_file(path / "drag.params"))
    raw = load_params_file(path / "nis_risk.params")
    nis_risk = {k.removeprefix("nis_risk_"): v for k, v in raw.items()}
    nis_table = _read_nis_table(path / "nis_distribution.csv")
    return Bundle(path=path, network=network, econ=econ, emissions=emis,
                  drag=drag, nis_risk=nis_risk, nis_table=nis_table)


def create_default_bundle(path, meta: dict | None = None) -> Bundle:
    """Write a fresh bundle with default parameters and the bundled
    per-route NIS point-mass distribution."""
    econ = EconParams()
    emis = EmissionParams()
    drag = DragModel()
    net = build_network(econ, emis, drag, meta=meta)
    nis_table = net.cpts["nis_value"].reorder(("routes", "nis_value")).data
    save_bundle(path, net, econ, emis, drag, nis_table)
    return load_bundle(path)


def rebuild_from_bundle(bundle: Bundle, nis_table: np.ndarray | None = None,
                        meta: dict | None = None) -> Network:
    """Rebuild the network from the bundle's parameter files, optionally
    with a replacement NIS distribution (used by refits)."""
    table = bundle.nis_table if nis_table is None else nis_table
    return build_network(bundle.econ, bundle.emissions, bundle.drag,
                         nis_table=table, nis_risk=bundle.nis_risk, meta=meta)
