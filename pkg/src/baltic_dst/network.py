"""Influence-diagram container and query semantics.

Decisions are evaluated by enumeration under user locks, never by policy
optimization: an unlocked decision behaves as a uniform chance variable,
a locked variable is reduced as hard evidence.  Utilities are reported
per node and never summed (their units are not commensurable).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .factors import (
    Factor,
    FactorError,
    Variable,
    VariableKind,
    eliminate,
    factor_product,
    factor_reduce,
)

__all__ = [
    "UtilityNode",
    "Network",
    "LockSet",
    "ScenarioResult",
    "validate_network",
    "query",
    "sweep_decision",
    "compare_scenarios",
]

CPT_COLUMN_TOL = 1e-9


class UtilityNode:
    """Value table over the configurations of its parents.

    Unlike CPT factors the entries may be negative (this model's convention
    is that every utility is a loss, reported as a value <= 0).
    """

    def __init__(self, id, name, parents, cards, table, units=""):
        self.id = id
        self.name = name
        self.parents = tuple(parents)
        self.cards = tuple(int(c) for c in cards)
        self.table = np.asarray(table, dtype=np.float64).reshape(self.cards)
        self.units = units
        if not np.all(np.isfinite(self.table)):
            raise ValueError(f"utility {id}: non-finite table entry")

    def flat(self) -> np.ndarray:
        return self.table.reshape(-1)


class Network:
    """Immutable influence diagram: chance + decision variables, CPTs for
    chance variables, optional 0/1 admissibility tables for decisions with
    parents, and utility nodes."""

    def __init__(self, variables, parents, cpts, utilities,
                 decision_constraints=None, meta=None):
        self.variables: dict[str, Variable] = {v.id: v for v in variables}
        if len(self.variables) != len(list(variables)):
            raise ValueError("duplicate variable ids")
        self.parents: dict[str, tuple[str, ...]] = {
            k: tuple(v) for k, v in parents.items()
        }
        self.cpts: dict[str, Factor] = dict(cpts)
        self.utilities: dict[str, UtilityNode] = {u.id: u for u in utilities}
        self.decision_constraints: dict[str, Factor] = dict(decision_constraints or {})
        self.meta: dict = dict(meta or {})
        self._check_structure()

    # -- structure ---------------------------------------------------------

    def _check_structure(self):
        for vid, pids in self.parents.items():
            if vid not in self.variables:
                raise ValueError(f"parent list for undeclared variable {vid!r}")
            for p in pids:
                if p not in self.variables:
                    raise ValueError(f"{vid!r} references undeclared parent {p!r}")
        for vid, var in self.variables.items():
            if var.kind is VariableKind.CHANCE:
                if vid not in self.cpts:
                    raise ValueError(f"chance variable {vid!r} has no CPT")
        for vid, cpt in self.cpts.items():
            expected = tuple(self.parents.get(vid, ())) + (vid,)
            if tuple(sorted(cpt.scope)) != tuple(sorted(expected)):
                raise ValueError(
                    f"CPT scope for {vid!r} is {cpt.scope}, expected parents+self {expected}"
                )
        for uid, u in self.utilities.items():
            for p in u.parents:
                if p not in self.variables:
                    raise ValueError(f"utility {uid!r} references undeclared parent {p!r}")
        cycle = self._find_cycle()
        if cycle:
            raise ValueError(f"parent graph contains a cycle: {' -> '.join(cycle)}")

    def _find_cycle(self):
        WHITE, GREY, BLACK = 0, 1, 2
        color = {v: WHITE for v in self.variables}
        stack: list[str] = []

        def visit(v):
            color[v] = GREY
            stack.append(v)
            for p in self.parents.get(v, ()):
                if color[p] == GREY:
                    return stack[stack.index(p):] + [p]
                if color[p] == WHITE:
                    found = visit(p)
                    if found:
                        return found
            color[v] = BLACK
            stack.pop()
            return None

        for v in sorted(self.variables):
            if color[v] == WHITE:
                found = visit(v)
                if found:
                    return found
        return None

    # -- accessors ---------------------------------------------------------

    def chance_ids(self) -> list[str]:
        return [v.id for v in self.variables.values() if v.kind is VariableKind.CHANCE]

    def decision_ids(self) -> list[str]:
        return [v.id for v in self.variables.values() if v.kind is VariableKind.DECISION]

    def var(self, vid: str) -> Variable:
        return self.variables[vid]

    def utility_ids(self) -> list[str]:
        return list(self.utilities)


@dataclass
class LockSet:
    """User-locked states: decision locks plus optional chance-node locks
    (the tool recommends locking the wetted-surface-area node)."""

    locks: dict[str, int] = field(default_factory=dict)

    def __init__(self, locks=None, **kw):
        self.locks = dict(locks or {})
        self.locks.update(kw)

    def validate(self, net: Network) -> list[str]:
        problems = []
        for vid, state in self.locks.items():
            if vid not in net.variables:
                problems.append(f"unknown node {vid!r}")
            elif not isinstance(state, (int, np.integer)):
                problems.append(f"lock for {vid!r} is not a state index")
            elif not (0 <= state < net.variables[vid].n_states):
                problems.append(
                    f"state {state} out of range for {vid!r} "
                    f"({net.variables[vid].n_states} states)"
                )
        return problems

    def items(self):
        return self.locks.items()

    def __contains__(self, vid):
        return vid in self.locks

    def with_lock(self, vid: str, state: int) -> "LockSet":
        new = dict(self.locks)
        new[vid] = state
        return LockSet(new)


@dataclass
class ScenarioResult:
    posteriors: dict[str, np.ndarray]
    utilities: dict[str, float]
    consistent: bool
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "consistent": self.consistent,
            "reason": self.reason,
            "posteriors": {k: [float(x) for x in v] for k, v in self.posteriors.items()},
            "utilities": {k: float(v) for k, v in self.utilities.items()},
        }


# ---------------------------------------------------------------------------


def validate_network(net: Network) -> list[str]:
    """Diagnostics list; empty iff the network is well formed.

    Construction already rejects hard structural errors, so this focuses on
    the soft numeric checks: CPT column normalization and admissibility
    table sanity.
    """
    diagnostics: list[str] = []
    for vid in sorted(net.cpts):
        cpt = net.cpts[vid]
        parent_ids = net.parents.get(vid, ())
        f = cpt.reorder(tuple(parent_ids) + (vid,)) if cpt.scope else cpt
        table = f.data.reshape(-1, net.var(vid).n_states)
        sums = table.sum(axis=1)
        bad = np.nonzero(np.abs(sums - 1.0) > CPT_COLUMN_TOL)[0]
        for idx in bad[:5]:
            config = np.unravel_index(
                idx, [net.var(p).n_states for p in parent_ids]
            ) if parent_ids else ()
            diagnostics.append(
                f"unnormalized CPT column for {vid!r} at parent config "
                f"{dict(zip(parent_ids, map(int, config)))}: sum={sums[idx]:.6g}"
            )
        if len(bad) > 5:
            diagnostics.append(
                f"unnormalized CPT for {vid!r}: {len(bad)} columns total"
            )
    for did, table in net.decision_constraints.items():
        if net.var(did).kind is not VariableKind.DECISION:
            diagnostics.append(f"admissibility table on non-decision node {did!r}")
        vals = np.unique(table.data)
        if not np.all(np.isin(vals, (0.0, 1.0))):
            diagnostics.append(f"admissibility table for {did!r} is not 0/1")
    return diagnostics


def _scenario_factors(net: Network) -> list[Factor]:
    """All factors of the uniform-unlocked transformation of the network:
    CPTs, uniform priors for decisions, and admissibility tables."""
    factors: list[Factor] = []
    for vid in net.chance_ids():
        factors.append(net.cpts[vid])
    for did in net.decision_ids():
        n = net.var(did).n_states
        factors.append(Factor((did,), (n,), np.full(n, 1.0 / n)))
        if did in net.decision_constraints:
            factors.append(net.decision_constraints[did])
    return factors


def _apply_locks(factors: list[Factor], locks: LockSet) -> list[Factor]:
    reduced = []
    for f in factors:
        for vid, state in locks.items():
            if vid in f.scope:
                f = factor_reduce(f, vid, int(state))
        reduced.append(f)
    return reduced


def query(net: Network, locks: LockSet, targets=None) -> ScenarioResult:
    """Posterior marginals for ``targets`` (default: every chance node) and
    expected values of every utility node under the locks.

    Inconsistent locks (zero joint mass, e.g. fouling-release coating locked
    on an icy route) return ``consistent=False`` with a readable reason
    rather than raising: the interactive clients treat that as a first-class
    outcome.
    """
    problems = locks.validate(net)
    if problems:
        raise ValueError("; ".join(problems))
    if targets is None:
        targets = [v for v in net.chance_ids() if v not in locks]
    else:
        targets = list(targets)

    factors = _apply_locks(_scenario_factors(net), locks)
    total_mass = eliminate(factors, set()).total()
    if total_mass <= 0.0:
        reason = _inconsistency_reason(net, locks)
        return ScenarioResult(posteriors={}, utilities={}, consistent=False, reason=reason)

    posteriors: dict[str, np.ndarray] = {}
    for vid in targets:
        if vid in locks:
            vec = np.zeros(net.var(vid).n_states)
            vec[int(locks.locks[vid])] = 1.0
            posteriors[vid] = vec
            continue
        marg = eliminate(factors, {vid})
        posteriors[vid] = marg.normalized().data

    utilities: dict[str, float] = {}
    for uid, u in net.utilities.items():
        free = [p for p in u.parents if p not in locks]
        joint = eliminate(factors, set(free))
        # slice the value table at the locked parents, then align the
        # remaining axes to the posterior joint's scope and take the dot
        table = u.table
        for ax, pid in reversed(list(enumerate(u.parents))):
            if pid in locks:
                table = np.take(table, int(locks.locks[pid]), axis=ax)
        free_order = [p for p in u.parents if p not in locks]
        if free_order:
            aligned = joint.reorder(sorted(joint.scope))
            perm = [free_order.index(v) for v in aligned.scope]
            table = np.transpose(table, perm)
            utilities[uid] = float((aligned.data * table).sum() / total_mass)
        else:
            utilities[uid] = float(table)
    return ScenarioResult(posteriors=posteriors, utilities=utilities, consistent=True)


def _inconsistency_reason(net: Network, locks: LockSet) -> str:
    # look for a locked decision whose admissibility table rules the state out
    for did, table in net.decision_constraints.items():
        if did not in locks:
            continue
        t = table
        for vid, state in locks.items():
            if vid in t.scope:
                t = factor_reduce(t, vid, int(state))
        if t.total() == 0.0:
            var = net.var(did)
            state_name = var.states.state_name(int(locks.locks[did]))
            return (
                f"locked state {state_name!r} of {var.name!r} is not admissible "
                f"under the other locks (zero support)"
            )
    return "locked states have zero joint probability"


def sweep_decision(net: Network, locks: LockSet, decision_id: str):
    """One query per state of ``decision_id``, the other locks held fixed."""
    if decision_id in locks:
        raise ValueError(f"{decision_id!r} is already locked")
    if decision_id not in net.variables:
        raise ValueError(f"unknown node {decision_id!r}")
    var = net.var(decision_id)
    out = []
    for s in range(var.n_states):
        out.append((var.states.state_name(s), query(net, locks.with_lock(decision_id, s))))
    return out


def compare_scenarios(net: Network, scenarios) -> list[dict]:
    """Aggregate ``query`` over a list of lock sets.

    Rows carry every utility value plus the consistency flag; inconsistent
    scenarios keep their reason and drop the utilities.
    """
    scenarios = list(scenarios)
    if not scenarios:
        raise ValueError("at least one scenario required")
    rows = []
    for i, locks in enumerate(scenarios):
        res = query(net, locks, targets=[])
        rows.append({
            "scenario": i,
            "locks": dict(locks.locks),
            "consistent": res.consistent,
            "reason": res.reason,
            "utilities": dict(res.utilities),
        })
    return rows
