"""Command line interface.

Exit codes: 0 success, 2 valid-but-inconsistent scenario, 1 error.
``--json`` output matches the HTTP service's response shape field for
field, so scripts can switch between the two transports.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from .locks import LockParseError, parse_locks
from .model import catalog
from .model.bundle import load_bundle, rebuild_from_bundle, save_bundle
from .network import compare_scenarios, query, validate_network
from .nis import (
    McmcConfig,
    fit_salinity_model,
    load_salinity_observations,
    load_species_table,
    route_nis_distribution,
)
from .service import default_model_dir


def _load(model_dir):
    try:
        return load_bundle(Path(model_dir) if model_dir else default_model_dir())
    except (OSError, ValueError) as exc:
        raise click.ClickException(str(exc))


def _parse_lock_args(net, lock_args):
    raw = {}
    for item in lock_args:
        if "=" not in item:
            raise click.ClickException(f"lock {item!r} must look like Node=State")
        node, state = item.split("=", 1)
        raw[node.strip()] = state.strip()
    try:
        return parse_locks(net, raw)
    except LockParseError as exc:
        raise click.ClickException(str(exc))


@click.group()
def main():
    """Biofouling management decision support."""


@main.command()
@click.option("--model-dir", type=click.Path(), default=None,
              help="Model bundle directory (default: the shipped bundle).")
def validate(model_dir):
    """Validate a model bundle."""
    bundle = _load(model_dir)
    problems = validate_network(bundle.network)
    n = bundle.network
    click.echo(f"variables: {len(n.variables)} "
               f"({len(n.decision_ids())} decisions, {len(n.chance_ids())} chance), "
               f"utilities: {len(n.utilities)}")
    if problems:
        for p in problems:
            click.echo(f"problem: {p}", err=True)
        sys.exit(1)
    click.echo("bundle is valid")


@main.command(name="query")
@click.option("--model-dir", type=click.Path(), default=None)
@click.option("--lock", "locks", multiple=True, metavar="NODE=STATE")
@click.option("--posterior", "posteriors", multiple=True, metavar="NODE",
              help="Chance nodes whose posterior to print (default: none).")
@click.option("--json", "as_json", is_flag=True,
              help="Emit the service's ScenarioResult JSON shape.")
def query_cmd(model_dir, locks, posteriors, as_json):
    """Run one scenario under the given locks."""
    bundle = _load(model_dir)
    net = bundle.network
    lockset = _parse_lock_args(net, locks)
    result = query(net, lockset)
    if as_json:
        click.echo(json.dumps(result.to_dict(), indent=1))
        sys.exit(0 if result.consistent else 2)
    if not result.consistent:
        click.echo(f"inconsistent scenario: {result.reason}", err=True)
        sys.exit(2)
    click.echo(f"{'utility':<34}{'units':<14}expected value")
    for uid, u in net.utilities.items():
        click.echo(f"{u.name:<34}{u.units:<14}{result.utilities[uid]:,.2f}")
    for node in posteriors:
        if node not in result.posteriors:
            raise click.ClickException(f"no posterior for {node!r}")
        var = net.var(node)
        click.echo(f"\n{var.name}:")
        for i, p in enumerate(result.posteriors[node]):
            click.echo(f"  {var.states.state_name(i):<14}{p:.4f}")


@main.command()
@click.option("--model-dir", type=click.Path(), default=None)
@click.option("--scenario-file", type=click.Path(exists=True), required=True,
              help="JSON list of lock sets ({\"locks\": {...}} or bare objects).")
@click.option("--json", "as_json", is_flag=True)
def compare(model_dir, scenario_file, as_json):
    """Compare several scenarios side by side."""
    bundle = _load(model_dir)
    net = bundle.network
    raw = json.loads(Path(scenario_file).read_text())
    if isinstance(raw, dict):
        raw = raw.get("scenarios", [])
    try:
        lock_sets = [parse_locks(net, sc.get("locks", sc)) for sc in raw]
    except LockParseError as exc:
        raise click.ClickException(str(exc))
    if not lock_sets:
        raise click.ClickException("scenario file holds no scenarios")
    rows = compare_scenarios(net, lock_sets)
    if as_json:
        click.echo(json.dumps({"rows": rows}, indent=1))
        return
    uids = list(net.utilities)
    click.echo("scenario  consistent  " + "  ".join(f"{u:>16}" for u in uids))
    for row in rows:
        if row["consistent"]:
            vals = "  ".join(f"{row['utilities'][u]:>16,.2f}" for u in uids)
        else:
            vals = f"-- {row['reason']}"
        click.echo(f"{row['scenario']:<9} {str(row['consistent']):<11} {vals}")


@main.group()
def nis():
    """Salinity model operations."""


@nis.command()
@click.option("--species", type=click.Path(exists=True), default=None,
              help="Species table (default: the bundled one).")
@click.option("--salinity", type=click.Path(exists=True), default=None,
              help="Salinity observations (default: the bundled placeholder).")
@click.option("--iters", default=50_000, show_default=True)
@click.option("--chains", default=3, show_default=True)
@click.option("--thin", default=10, show_default=True)
@click.option("--burn-in", default=20_000, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", type=click.Path(), required=True,
              help="Posterior draw file (one draw per line).")
@click.option("--nis-out", type=click.Path(), default=None,
              help="Also write the per-route mapped NIS distribution CSV.")
def fit(species, salinity, iters, chains, thin, burn_in, seed, out, nis_out):
    """Fit the salinity model and export the posterior."""
    from .nis.species import default_species_path
    from .nis.observations import default_salinity_path
    species_path = Path(species) if species else default_species_path()
    salinity_path = Path(salinity) if salinity else default_salinity_path()
    records = load_species_table(species_path)
    obs = load_salinity_observations(salinity_path)
    cfg = McmcConfig(iterations=iters, chains=chains, thinning=thin,
                     burn_in=burn_in, seed=seed)
    post = fit_salinity_model(obs, mcmc=cfg)
    post.export(out)
    worst = max(post.r_hat.values())
    click.echo(f"{post.n_draws} draws, max split R-hat {worst:.4f}"
               + (" (diverged)" if post.diverged else ""))
    if nis_out:
        with open(nis_out, "w") as fh:
            fh.write("route," + ",".join(
                f"p_state_{int(v)}" for v in catalog.NIS_VALUES) + "\n")
            for r in catalog.ROUTES:
                dist = route_nis_distribution(r, records, post)
                fh.write(r.label + "," +
                         ",".join(f"{x:.17g}" for x in dist.mapped) + "\n")
        click.echo(f"wrote per-route NIS distribution to {nis_out}")


@main.command(name="export-cpt")
@click.option("--model-dir", type=click.Path(), default=None)
@click.option("--node", required=True)
def export_cpt(model_dir, node):
    """Print a node's CPT (or a utility's value table) as CSV."""
    bundle = _load(model_dir)
    net = bundle.network
    if node in net.cpts:
        f = net.cpts[node]
        scope, table = f.scope, f.data
    elif node in net.utilities:
        u = net.utilities[node]
        scope, table = u.parents, u.table
    else:
        raise click.ClickException(f"no CPT or utility table for {node!r}")
    click.echo(",".join(scope) + ",value")
    spaces = [net.var(v).states for v in scope]
    for idx in np.ndindex(*table.shape):
        names = [spaces[d].state_name(i) for d, i in enumerate(idx)]
        click.echo(",".join(names) + f",{table[idx]:.17g}")


@main.command()
@click.option("--model-dir", type=click.Path(), default=None)
@click.option("--ui-dir", type=click.Path(exists=True), default=None)
@click.option("--addr", default="127.0.0.1:8000", show_default=True)
def serve(model_dir, ui_dir, addr):
    """Run the HTTP service."""
    import uvicorn
    from .service import create_app
    host, _, port = addr.rpartition(":")
    app = create_app(model_dir=model_dir, ui_dir=ui_dir)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))


if __name__ == "__main__":
    main()
