"""Memory-cell footprint of an execution sequence.

Execution is strictly sequential: step ``i`` performs gate ``seq[i]``, so
cycles always equal the gate count. A value occupies one cell from the
step that produces it until the step of its last consumer, after which a
mark-and-sweep pass reclaims the cell. Primary inputs are loaded before
the first step (loading costs no cycles) and primary outputs are never
reclaimed, so results stay readable after the run. The footprint (area)
of a sequence is the peak number of simultaneously occupied cells, and
``efficiency = 10^6 / (area * cycles)``, kept in full precision and
rounded to an integer only for display.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .circuit import CircuitDag, Sequence, is_valid_sequence
from .errors import InvalidSequence, WrongVertexSet

EFFICIENCY_SCALE = 10**6


def efficiency(area: int, cycles: int) -> float:
    if area <= 0 or cycles <= 0:
        return math.inf
    return EFFICIENCY_SCALE / (area * cycles)


@dataclass(frozen=True)
class EvalResult:
    area: int
    cycles: int
    efficiency: float

    @property
    def display_efficiency(self) -> int:
        """Efficiency rounded to the nearest whole number, for reports."""
        return round(self.efficiency)


@dataclass(frozen=True)
class TraceStep:
    vertex: int
    cell: int
    freed: tuple[int, ...]  # cells reclaimed by the sweep after this step


@dataclass(frozen=True)
class CellTrace:
    input_cells: tuple[int, ...]  # cell per input vertex, declaration order
    steps: tuple[TraceStep, ...]
    peak: int


def _checked(dag: CircuitDag, seq) -> Sequence:
    seq = tuple(seq)
    try:
        ok = is_valid_sequence(dag, seq)
    except WrongVertexSet as exc:
        raise InvalidSequence(str(exc)) from exc
    if not ok:
        raise InvalidSequence("sequence schedules a gate before one of its operands")
    return seq


def _death_steps(dag: CircuitDag, seq: Sequence) -> list[int]:
    """Last step at which each produced value must stay resident.

    Inputs are born before step 0; a value with no consumers dies right
    after its own step. Output-driving values get ``len(seq)``, meaning
    they are never swept.
    """
    m = len(seq)
    death = [0] * dag.n_vertices
    for i, g in enumerate(seq):
        death[g] = i
    n_inputs = dag.n_inputs
    for i, g in enumerate(seq):
        for p in dag.preds[g]:
            if death[p] < i:
                death[p] = i
    for v in range(dag.n_vertices):
        if dag.is_output[v]:
            death[v] = m
    return death


def footprint(dag: CircuitDag, seq) -> EvalResult:
    """Evaluate one sequence: peak live cells, cycle count, efficiency.

    Validity is checked here on every call; an invalid sequence raises
    :class:`InvalidSequence` rather than returning a number.
    """
    seq = _checked(dag, seq)
    m = len(seq)
    if m == 0:
        return EvalResult(dag.n_inputs, 0, efficiency(dag.n_inputs, 0))

    pos = [0] * dag.n_vertices
    for i, g in enumerate(seq):
        pos[g] = i
    death = _death_steps(dag, seq)

    delta = [0] * (m + 1)
    for v in range(dag.n_vertices):
        birth = 0 if v < dag.n_inputs else pos[v]
        last = min(death[v], m - 1)
        delta[birth] += 1
        delta[last + 1] -= 1
    area = 0
    live = 0
    for i in range(m):
        live += delta[i]
        if live > area:
            area = live
    return EvalResult(area, m, efficiency(area, m))


def cell_trace(dag: CircuitDag, seq) -> CellTrace:
    """Replay the sequence with greedy lowest-free-cell assignment.

    Inputs take cells ``0..k-1`` up front; each step writes its result to
    the lowest-indexed free cell, then the sweep reclaims every cell whose
    value has no remaining consumer. The peak of the trace equals
    ``footprint(dag, seq).area``.
    """
    seq = _checked(dag, seq)
    m = len(seq)
    death = _death_steps(dag, seq)

    dying: list[list[int]] = [[] for _ in range(m)]
    for v in range(dag.n_vertices):
        if death[v] < m:
            dying[death[v]].append(v)

    cell_of = {v: v for v in range(dag.n_inputs)}
    free: list[int] = []
    next_cell = dag.n_inputs
    in_use = dag.n_inputs
    peak = dag.n_inputs
    steps = []
    for i, g in enumerate(seq):
        if free:
            cell = heapq.heappop(free)
        else:
            cell = next_cell
            next_cell += 1
        cell_of[g] = cell
        in_use += 1
        if in_use > peak:
            peak = in_use
        freed = sorted(cell_of[v] for v in dying[i])
        for c in freed:
            heapq.heappush(free, c)
        in_use -= len(freed)
        steps.append(TraceStep(g, cell, tuple(freed)))

    return CellTrace(
        input_cells=tuple(range(dag.n_inputs)),
        steps=tuple(steps),
        peak=peak,
    )
