"""Parsing user-supplied locks (node=state pairs) against a network."""

from __future__ import annotations

import difflib

from .network import LockSet, Network

__all__ = ["LockParseError", "parse_locks"]


class LockParseError(ValueError):
    """A lock referenced an unknown node or state; message suggests the
    nearest valid spelling."""


def _suggest(value: str, options) -> str:
    close = difflib.get_close_matches(value, list(options), n=1, cutoff=0.4)
    return f"; did you mean {close[0]!r}?" if close else ""


def _resolve_node(net: Network, node: str) -> str:
    if node in net.variables:
        return node
    # allow display names too
    by_name = {v.name: v.id for v in net.variables.values()}
    if node in by_name:
        return by_name[node]
    options = list(net.variables) + list(by_name)
    raise LockParseError(f"unknown node {node!r}{_suggest(node, options)}")


def _resolve_state(net: Network, node: str, state) -> int:
    var = net.variables[node]
    n = var.n_states
    if isinstance(state, bool):
        raise LockParseError(f"{node}: boolean is not a state")
    if isinstance(state, int):
        if not 0 <= state < n:
            raise LockParseError(
                f"{node}: state index {state} out of range 0..{n - 1}")
        return state
    text = str(state).strip()
    names = var.states.names()
    if text in names:
        return names.index(text)
    if text.lstrip("-").isdigit():
        return _resolve_state(net, node, int(text))
    raise LockParseError(
        f"{node}: unknown state {text!r}{_suggest(text, names)}")


def parse_locks(net: Network, raw: dict) -> LockSet:
    """raw maps node id (or display name) to a state name or index."""
    locks = {}
    for node, state in raw.items():
        vid = _resolve_node(net, node)
        locks[vid] = _resolve_state(net, vid, state)
    return LockSet(locks)
