"""Discrete-variable factor algebra and exact sum-product elimination.

Factors are dense numpy tables over an ordered scope of discrete variables.
All arithmetic is plain 64-bit floating point; the networks this package
handles are shallow enough that log-space is unnecessary.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "VariableKind",
    "StateSpace",
    "Variable",
    "Factor",
    "FactorError",
    "CapacityError",
    "factor_product",
    "factor_marginalize",
    "factor_reduce",
    "eliminate",
    "brute_force_joint",
]

BRUTE_FORCE_CELL_CAP = 10_000_000


class FactorError(ValueError):
    """Structural problem with a factor operation (scope/state mismatch)."""


class CapacityError(FactorError):
    """Joint state space exceeds the brute-force enumeration cap."""


class VariableKind(enum.Enum):
    CHANCE = "chance"
    DECISION = "decision"


@dataclass(frozen=True)
class StateSpace:
    """State space of a discrete variable.

    Exactly one of ``labels``, ``values`` (numbered) or ``boundaries``
    (interval) is set.  Interval boundaries have length state_count + 1 and
    are nondecreasing; at most one zero-width interval is allowed (used for
    the exact-zero state of the copper-pressure node).
    """

    labels: tuple[str, ...] | None = None
    values: tuple[float, ...] | None = None
    boundaries: tuple[float, ...] | None = None

    def __post_init__(self):
        set_fields = [f for f in (self.labels, self.values, self.boundaries) if f is not None]
        if len(set_fields) != 1:
            raise ValueError("state space needs exactly one of labels/values/boundaries")
        if self.labels is not None:
            if len(self.labels) == 0:
                raise ValueError("empty label list")
            if len(set(self.labels)) != len(self.labels):
                raise ValueError("duplicate state labels")
        if self.values is not None:
            if len(self.values) == 0:
                raise ValueError("empty value list")
            if any(b <= a for a, b in zip(self.values, self.values[1:])):
                raise ValueError("numbered state values must be strictly increasing")
        if self.boundaries is not None:
            if len(self.boundaries) < 2:
                raise ValueError("interval space needs at least 2 boundaries")
            if any(b < a for a, b in zip(self.boundaries, self.boundaries[1:])):
                raise ValueError("interval boundaries must be nondecreasing")
            zero_width = sum(1 for a, b in zip(self.boundaries, self.boundaries[1:]) if a == b)
            if zero_width > 1:
                raise ValueError("at most one zero-width interval allowed")

    def __len__(self) -> int:
        if self.labels is not None:
            return len(self.labels)
        if self.values is not None:
            return len(self.values)
        return len(self.boundaries) - 1

    @property
    def kind(self) -> str:
        if self.labels is not None:
            return "labeled"
        if self.values is not None:
            return "numbered"
        return "interval"

    def midpoint(self, i: int) -> float:
        """Numeric value of state i: the value itself for numbered spaces,
        the interval midpoint for interval spaces."""
        if self.values is not None:
            return self.values[i]
        if self.boundaries is not None:
            return 0.5 * (self.boundaries[i] + self.boundaries[i + 1])
        raise TypeError("labeled state space has no midpoint")

    def value(self, i: int) -> float:
        return self.midpoint(i)

    def state_name(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        if self.values is not None:
            v = self.values[i]
            return str(int(v)) if v == int(v) else str(v)
        lo, hi = self.boundaries[i], self.boundaries[i + 1]
        return f"{_fmt(lo)} - {_fmt(hi)}"

    def names(self) -> list[str]:
        return [self.state_name(i) for i in range(len(self))]

    def bin_index(self, value: float) -> int:
        """Index of the interval containing ``value``.

        Zero-width intervals capture only their exact value; out-of-range
        values clamp to the terminal bins.
        """
        if self.boundaries is None:
            raise TypeError("bin_index only defined for interval spaces")
        b = self.boundaries
        if value <= b[0]:
            # may still be the zero-width first interval's exact point
            return 0
        for i in range(len(self)):
            lo, hi = b[i], b[i + 1]
            if lo == hi:
                if value == lo:
                    return i
                continue
            if lo <= value < hi:
                return i
        return len(self) - 1

    def nearest_index(self, value: float) -> int:
        """Index of the numbered state closest to ``value``; ties go to the
        smaller state."""
        if self.values is None:
            raise TypeError("nearest_index only defined for numbered spaces")
        best, best_d = 0, abs(value - self.values[0])
        for i, v in enumerate(self.values[1:], start=1):
            d = abs(value - v)
            if d < best_d:
                best, best_d = i, d
        return best


def _fmt(x: float) -> str:
    return str(int(x)) if x == int(x) else str(x)


@dataclass(frozen=True)
class Variable:
    id: str
    name: str
    kind: VariableKind
    states: StateSpace

    def __post_init__(self):
        if len(self.states) < 1:
            raise ValueError(f"variable {self.id} has no states")

    @property
    def n_states(self) -> int:
        return len(self.states)


class Factor:
    """Nonnegative real table over an ordered scope of discrete variables.

    ``data`` is stored as an ndarray whose axes follow ``scope`` order
    (row-major, matching the flat layout the model file uses).  An empty
    scope is a single scalar cell.
    """

    __slots__ = ("scope", "cards", "data")

    def __init__(self, scope, cards, data):
        scope = tuple(scope)
        cards = tuple(int(c) for c in cards)
        if len(scope) != len(cards):
            raise FactorError("scope and cardinality lists differ in length")
        if len(set(scope)) != len(scope):
            raise FactorError(f"duplicate variable in scope {scope}")
        arr = np.asarray(data, dtype=np.float64).reshape(cards)
        if not np.all(np.isfinite(arr)):
            raise FactorError("factor entries must be finite")
        if np.any(arr < 0):
            raise FactorError("factor entries must be nonnegative")
        self.scope = scope
        self.cards = cards
        self.data = arr

    @classmethod
    def scalar(cls, value: float = 1.0) -> "Factor":
        return cls((), (), np.asarray(value, dtype=np.float64))

    @classmethod
    def from_flat(cls, scope, cards, flat) -> "Factor":
        return cls(scope, cards, np.asarray(flat, dtype=np.float64))

    def flat(self) -> np.ndarray:
        return self.data.reshape(-1)

    def card_of(self, var: str) -> int:
        return self.cards[self.scope.index(var)]

    def total(self) -> float:
        return float(self.data.sum())

    def normalized(self) -> "Factor":
        total = self.data.sum()
        if total <= 0:
            raise FactorError("cannot normalize a zero-mass factor")
        return Factor(self.scope, self.cards, self.data / total)

    def reorder(self, new_scope) -> "Factor":
        """Same table with axes permuted to ``new_scope`` (a permutation of
        the current scope)."""
        new_scope = tuple(new_scope)
        if set(new_scope) != set(self.scope) or len(new_scope) != len(self.scope):
            raise FactorError("reorder target must be a permutation of the scope")
        perm = [self.scope.index(v) for v in new_scope]
        return Factor(new_scope, [self.cards[p] for p in perm], self.data.transpose(perm))

    def __repr__(self):
        return f"Factor(scope={self.scope}, cards={self.cards})"


def _check_shared_cards(a: Factor, b: Factor) -> None:
    for v in a.scope:
        if v in b.scope and a.card_of(v) != b.card_of(v):
            raise FactorError(
                f"state-count mismatch on shared variable {v!r}: "
                f"{a.card_of(v)} vs {b.card_of(v)}"
            )


def factor_product(a: Factor, b: Factor) -> Factor:
    """Pointwise product over the union of the two scopes."""
    _check_shared_cards(a, b)
    union = list(a.scope) + [v for v in b.scope if v not in a.scope]
    cards = [a.card_of(v) if v in a.scope else b.card_of(v) for v in union]

    def aligned(f: Factor) -> np.ndarray:
        # transpose factor axes into union order, add broadcast axes for
        # the variables it does not mention
        idx = [f.scope.index(v) for v in union if v in f.scope]
        arr = f.data.transpose(idx) if idx else f.data
        shape = [f.card_of(v) if v in f.scope else 1 for v in union]
        return arr.reshape(shape)

    return Factor(union, cards, aligned(a) * aligned(b))


def factor_marginalize(f: Factor, var: str) -> Factor:
    """Sum ``var`` out of the factor."""
    if var not in f.scope:
        raise FactorError(f"variable {var!r} not in scope {f.scope}")
    ax = f.scope.index(var)
    scope = f.scope[:ax] + f.scope[ax + 1:]
    cards = f.cards[:ax] + f.cards[ax + 1:]
    return Factor(scope, cards, f.data.sum(axis=ax))


def factor_reduce(f: Factor, var: str, state: int) -> Factor:
    """Slice the table at ``var = state`` and drop the variable.

    The result is unnormalized; an all-zero result signals evidence that the
    factor assigns no mass to, which callers must surface explicitly.
    """
    if var not in f.scope:
        raise FactorError(f"variable {var!r} not in scope {f.scope}")
    ax = f.scope.index(var)
    if not (0 <= state < f.cards[ax]):
        raise IndexError(f"state {state} out of range for {var!r} ({f.cards[ax]} states)")
    scope = f.scope[:ax] + f.scope[ax + 1:]
    cards = f.cards[:ax] + f.cards[ax + 1:]
    return Factor(scope, cards, np.take(f.data, state, axis=ax))


def _min_fill_order(factors: list[Factor], to_eliminate: set[str]) -> list[str]:
    """Min-fill elimination order with lexicographic variable-id tie-break."""
    # build the interaction graph
    neighbors: dict[str, set[str]] = {}
    for f in factors:
        for v in f.scope:
            neighbors.setdefault(v, set()).update(u for u in f.scope if u != v)
    remaining = {v for v in to_eliminate if v in neighbors}
    order: list[str] = []
    while remaining:
        best_v, best_fill = None, None
        for v in sorted(remaining):
            nbrs = [u for u in neighbors.get(v, ()) if u in neighbors]
            fill = 0
            for i, u in enumerate(nbrs):
                for w in nbrs[i + 1:]:
                    if w not in neighbors[u]:
                        fill += 1
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
        order.append(best_v)
        nbrs = [u for u in neighbors.get(best_v, ()) if u in neighbors]
        for i, u in enumerate(nbrs):
            for w in nbrs[i + 1:]:
                neighbors[u].add(w)
                neighbors[w].add(u)
        for u in nbrs:
            neighbors[u].discard(best_v)
        del neighbors[best_v]
        remaining.discard(best_v)
    return order


def eliminate(factors: list[Factor], keep: set[str]) -> Factor:
    """Unnormalized joint over ``keep`` by repeated product + marginalize.

    The elimination order is min-fill with a deterministic lexicographic
    tie-break, so plans are reproducible across runs.
    """
    factors = list(factors)
    mentioned: set[str] = set()
    for f in factors:
        mentioned.update(f.scope)
    to_eliminate = mentioned - set(keep)
    for v in _min_fill_order(factors, to_eliminate):
        bucket = [f for f in factors if v in f.scope]
        rest = [f for f in factors if v not in f.scope]
        prod = bucket[0]
        for f in bucket[1:]:
            prod = factor_product(prod, f)
        factors = rest + [factor_marginalize(prod, v)]
    result = Factor.scalar(1.0)
    for f in factors:
        result = factor_product(result, f)
    # present the result with scope sorted for a canonical shape
    if result.scope:
        result = result.reorder(sorted(result.scope))
    return result


def brute_force_joint(factors: list[Factor], cap: int = BRUTE_FORCE_CELL_CAP) -> Factor:
    """Full joint by direct product of every factor; the test oracle.

    No elimination, no cleverness.  Refuses joints above ``cap`` cells.
    """
    cards: dict[str, int] = {}
    for f in factors:
        for v, c in zip(f.scope, f.cards):
            if cards.setdefault(v, c) != c:
                raise FactorError(f"state-count mismatch on {v!r}")
    n_cells = math.prod(cards.values()) if cards else 1
    if n_cells > cap:
        raise CapacityError(f"joint of {n_cells} cells exceeds cap {cap}")
    result = Factor.scalar(1.0)
    for f in factors:
        result = factor_product(result, f)
    if result.scope:
        result = result.reorder(sorted(result.scope))
    return result
