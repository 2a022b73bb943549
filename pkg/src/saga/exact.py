"""Exhaustive reference for small circuits.

Searches every topological order of the gate vertices and reports the true
minimum and maximum footprint, a deterministic witness (the
lexicographically first minimizer, by vertex id), and the number of
distinct orders. Sequencing for minimum cells is NP-hard, so calls are
gated behind a gate-count limit.

The default method memoizes over executed gate sets: the set of values
still resident between steps is a function of which gates have run, so the
best completion from a state depends only on that set. The plain
``enumerate`` method walks every order and prices each one with
:func:`~saga.memory.footprint`; it is the arbiter the memoized search is
validated against in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .circuit import CircuitDag, Sequence
from .errors import TooLarge
from .memory import footprint

DEFAULT_VERTEX_LIMIT = 12


@dataclass(frozen=True)
class OracleResult:
    min_area: int
    max_area: int
    order_count: int
    argmin_sequence: Sequence


def enumerate_min(
    dag: CircuitDag,
    vertex_limit: int = DEFAULT_VERTEX_LIMIT,
    method: str = "dp",
) -> OracleResult:
    """Exact footprint bounds over all topological orders of ``dag``.

    Raises :class:`TooLarge` when the circuit has more than ``vertex_limit``
    gates. ``method`` is ``"dp"`` (memoized, default) or ``"enumerate"``
    (plain backtracking; factorial, only sensible for tiny circuits).
    """
    if dag.gate_count > vertex_limit:
        raise TooLarge(dag.gate_count, vertex_limit)
    if dag.gate_count == 0:
        return OracleResult(dag.n_inputs, dag.n_inputs, 1, ())
    if method == "dp":
        return _subset_search(dag)
    if method == "enumerate":
        return _plain_enumeration(dag)
    raise ValueError(f"unknown oracle method '{method}'")


def _subset_search(dag: CircuitDag) -> OracleResult:
    n_inputs = dag.n_inputs
    gates = list(dag.gate_vertices)
    m = len(gates)
    full = (1 << m) - 1

    pred_masks = []
    for g in gates:
        mask = 0
        for p in dag.preds[g]:
            if p >= n_inputs:
                mask |= 1 << (p - n_inputs)
        pred_masks.append(mask)
    consumer_masks = []
    for v in range(dag.n_vertices):
        mask = 0
        for c in dag.succs[v]:
            mask |= 1 << (c - n_inputs)
        consumer_masks.append(mask)
    input_consumers = consumer_masks[:n_inputs]
    gate_consumers = consumer_masks[n_inputs:]
    gate_is_output = [dag.is_output[g] for g in gates]

    @lru_cache(maxsize=None)
    def boundary(executed: int) -> int:
        """Values resident between steps, given the executed gate set."""
        if executed == 0:
            return n_inputs  # everything loaded, nothing swept yet
        live = 0
        remaining = ~executed
        for mask in input_consumers:
            if mask & remaining:
                live += 1
        todo = executed
        while todo:
            b = (todo & -todo).bit_length() - 1
            todo &= todo - 1
            if gate_is_output[b] or (gate_consumers[b] & remaining):
                live += 1
        return live

    @lru_cache(maxsize=None)
    def ready(executed: int) -> tuple[int, ...]:
        return tuple(
            b
            for b in range(m)
            if not (executed >> b) & 1 and (pred_masks[b] & executed) == pred_masks[b]
        )

    @lru_cache(maxsize=None)
    def solve(executed: int) -> tuple[int, int, int]:
        """(min peak, max peak, order count) over completions of this state."""
        if executed == full:
            return (0, 0, 1)
        usage = boundary(executed) + 1
        best = None
        worst = 0
        count = 0
        for b in ready(executed):
            sub_min, sub_max, sub_count = solve(executed | (1 << b))
            low = usage if usage > sub_min else sub_min
            high = usage if usage > sub_max else sub_max
            if best is None or low < best:
                best = low
            if high > worst:
                worst = high
            count += sub_count
        return (best, worst, count)

    min_area, max_area, order_count = solve(0)

    # Lexicographically-first witness: greedily take the smallest ready gate
    # that still allows finishing at the optimum.
    executed = 0
    witness = []
    while executed != full:
        usage = boundary(executed) + 1
        for b in ready(executed):
            sub_min, _, _ = solve(executed | (1 << b))
            if max(usage, sub_min) <= min_area:
                witness.append(gates[b])
                executed |= 1 << b
                break

    solve.cache_clear()
    ready.cache_clear()
    boundary.cache_clear()
    return OracleResult(min_area, max_area, order_count, tuple(witness))


def _plain_enumeration(dag: CircuitDag) -> OracleResult:
    n_inputs = dag.n_inputs
    min_area = None
    max_area = 0
    count = 0
    argmin: Sequence = ()

    pending = [0] * dag.n_vertices
    ready = []
    for g in dag.gate_vertices:
        pending[g] = sum(1 for p in dag.preds[g] if p >= n_inputs)
        if pending[g] == 0:
            ready.append(g)
    prefix: list[int] = []

    def recurse():
        nonlocal min_area, max_area, count, argmin
        if not ready:
            count += 1
            area = footprint(dag, tuple(prefix)).area
            if min_area is None or area < min_area:
                min_area = area
                argmin = tuple(prefix)
            if area > max_area:
                max_area = area
            return
        for g in sorted(ready):
            ready.remove(g)
            prefix.append(g)
            woken = []
            for w in dag.succs[g]:
                pending[w] -= 1
                if pending[w] == 0:
                    ready.append(w)
                    woken.append(w)
            recurse()
            for w in woken:
                ready.remove(w)
            for w in dag.succs[g]:
                pending[w] += 1
            prefix.pop()
            ready.append(g)

    recurse()
    return OracleResult(min_area, max_area, count, argmin)
