"""Execution DAG over a netlist: reachability, seed orders, validity checks.

Vertices are numbered with primary inputs first (declaration order) and
gates after (declaration order), so gate declaration order and vertex id
order coincide. Edges point in the direction of data flow. Ancestor and
descendant sets are precomputed once as dense bitmasks because the genetic
operators query comparability millions of times per run.

A :data:`Sequence` is a permutation of the *gate* vertices only; inputs
have no scheduling freedom and are implicitly loaded before step 0.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ._validation import as_rng
from .blif import GateKind, Netlist, validate_netlist
from .errors import CombinationalCycle, WrongVertexSet

Sequence = tuple[int, ...]

INPUT_KIND = "input"


@dataclass(frozen=True, eq=False)
class CircuitDag:
    """Immutable circuit DAG; safe to share across threads."""

    name: str
    n_inputs: int
    names: tuple[str, ...]
    kinds: tuple[str, ...]               # "input" | "INV" | "NOR2"
    preds: tuple[tuple[int, ...], ...]   # operand vertices, data-flow sources
    succs: tuple[tuple[int, ...], ...]   # consuming gate vertices, ascending
    is_output: tuple[bool, ...]
    ancestors: tuple[int, ...]           # bitmask of transitive predecessors
    descendants: tuple[int, ...]         # bitmask of transitive successors
    name_to_vertex: dict

    @property
    def n_vertices(self) -> int:
        return len(self.names)

    @property
    def gate_count(self) -> int:
        return len(self.names) - self.n_inputs

    @property
    def gate_vertices(self) -> range:
        return range(self.n_inputs, len(self.names))

    def is_input(self, v: int) -> bool:
        return v < self.n_inputs

    def comparable(self, u: int, v: int) -> bool:
        """True when one vertex is an ancestor of the other."""
        return bool((self.ancestors[v] >> u) & 1 or (self.ancestors[u] >> v) & 1)

    def sequence_to_names(self, seq: Sequence) -> list[str]:
        return [self.names[v] for v in seq]

    def sequence_from_names(self, names: list[str]) -> Sequence:
        seq = []
        for name in names:
            v = self.name_to_vertex.get(name)
            if v is None or self.is_input(v):
                raise WrongVertexSet(f"'{name}' is not a gate output of '{self.name}'")
            seq.append(v)
        return tuple(seq)


def build_dag(netlist: Netlist) -> CircuitDag:
    """Build the execution DAG and precompute reachability.

    The netlist must be semantically valid; a netlist whose gates form a
    feedback loop raises :class:`CombinationalCycle` naming the vertices
    stuck on the loop.
    """
    validate_netlist(netlist)

    names = list(netlist.inputs) + [g.output for g in netlist.gates]
    n_inputs = len(netlist.inputs)
    n = len(names)
    index = {name: i for i, name in enumerate(names)}

    kinds = [INPUT_KIND] * n_inputs + [g.kind.value for g in netlist.gates]
    preds: list[tuple[int, ...]] = [()] * n_inputs
    succs: list[list[int]] = [[] for _ in range(n)]
    for gi, gate in enumerate(netlist.gates):
        v = n_inputs + gi
        ops = tuple(index[op] for op in gate.operands)
        preds.append(ops)
        for p in ops:
            succs[p].append(v)

    output_set = set(netlist.outputs)
    is_output = tuple(name in output_set for name in names)

    # Kahn over the full graph; anything left over sits on a cycle.
    indeg = [len(p) for p in preds]
    queue = deque(v for v in range(n) if indeg[v] == 0)
    topo = []
    while queue:
        u = queue.popleft()
        topo.append(u)
        for w in succs[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if len(topo) != n:
        raise CombinationalCycle(_extract_cycle(names, preds, indeg))

    ancestors = [0] * n
    for v in topo:
        acc = 0
        for p in preds[v]:
            acc |= ancestors[p] | (1 << p)
        ancestors[v] = acc
    descendants = [0] * n
    for v in reversed(topo):
        acc = 0
        for c in succs[v]:
            acc |= descendants[c] | (1 << c)
        descendants[v] = acc

    return CircuitDag(
        name=netlist.name,
        n_inputs=n_inputs,
        names=tuple(names),
        kinds=tuple(kinds),
        preds=tuple(preds),
        succs=tuple(tuple(s) for s in succs),
        is_output=is_output,
        ancestors=tuple(ancestors),
        descendants=tuple(descendants),
        name_to_vertex=index,
    )


def _extract_cycle(names, preds, indeg) -> list[str]:
    """Walk unresolved predecessors until a vertex repeats."""
    stuck = {v for v, d in enumerate(indeg) if d > 0}
    v = min(stuck)
    seen: dict[int, int] = {}
    path = []
    while v not in seen:
        seen[v] = len(path)
        path.append(v)
        v = next(p for p in preds[v] if p in stuck)
    cycle = path[seen[v]:] + [v]
    return [names[u] for u in reversed(cycle)]


def bfs_seed(dag: CircuitDag) -> Sequence:
    """Breadth-first topological order, visiting all inputs first.

    The FIFO queue starts with the inputs in declaration order, and gates
    enter it the moment their last operand is visited; simultaneous
    arrivals tie-break in declaration order. Deterministic for a netlist.
    """
    indeg = [len(p) for p in dag.preds]
    queue = deque(range(dag.n_inputs))
    order = []
    while queue:
        u = queue.popleft()
        if u >= dag.n_inputs:
            order.append(u)
        for w in dag.succs[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return tuple(order)


def random_topo_sort(dag: CircuitDag, rng_seed) -> Sequence:
    """A valid order drawn by Kahn's algorithm with uniformly random picks.

    ``rng_seed`` may be an integer seed or a ``random.Random`` instance;
    results are reproducible for a given seed.
    """
    rng = as_rng(rng_seed)
    n_inputs = dag.n_inputs
    pending = [0] * dag.n_vertices
    ready = []
    for g in dag.gate_vertices:
        count = sum(1 for p in dag.preds[g] if p >= n_inputs)
        pending[g] = count
        if count == 0:
            ready.append(g)
    order = []
    while ready:
        k = rng.randrange(len(ready))
        ready[k], ready[-1] = ready[-1], ready[k]
        g = ready.pop()
        order.append(g)
        for w in dag.succs[g]:
            pending[w] -= 1
            if pending[w] == 0:
                ready.append(w)
    return tuple(order)


def is_valid_sequence(dag: CircuitDag, seq: Sequence) -> bool:
    """True iff every gate appears after all gates producing its operands.

    Raises :class:`WrongVertexSet` when ``seq`` is not a permutation of the
    gate vertices.
    """
    gates = dag.gate_vertices
    if len(seq) != len(gates) or set(seq) != set(gates):
        raise WrongVertexSet(
            f"sequence is not a permutation of the {len(gates)} gate vertices"
        )
    pos = [0] * dag.n_vertices
    for i, g in enumerate(seq):
        pos[g] = i
    n_inputs = dag.n_inputs
    for i, g in enumerate(seq):
        for p in dag.preds[g]:
            if p >= n_inputs and pos[p] > i:
                return False
    return True
