"""Shared test utilities: fixture loading, random circuit generation, and
independent reference implementations used as oracles.

The reference implementations here intentionally share no code with the
package: `naive_area` recomputes liveness per step with plain sets, and
`ReferenceBlif` is a generic cover-table interpreter.
"""

from __future__ import annotations

import itertools
from pathlib import Path

from saga import Gate, GateKind, Netlist, is_valid_sequence

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def all_fixture_paths() -> list[Path]:
    return sorted(FIXTURES.glob("*.blif"))


def chain_netlist(k: int) -> Netlist:
    """One input feeding k chained inverters; the last one is the output."""
    gates = []
    prev = "a"
    for i in range(k):
        out = f"g{i + 1}"
        gates.append(Gate(GateKind.INV, (prev,), out))
        prev = out
    return Netlist("chain", ["a"], [prev], gates)


def random_netlist(rng, n_gates: int, n_inputs: int | None = None,
                   name: str = "rand") -> Netlist:
    """A random acyclic INV/NOR2 netlist; every sink gate is an output."""
    if n_inputs is None:
        n_inputs = rng.randint(2, 4)
    inputs = [f"i{k}" for k in range(n_inputs)]
    signals = list(inputs)
    gates = []
    for k in range(n_gates):
        out = f"g{k}"
        if len(signals) >= 2 and rng.random() < 0.7:
            a, b = rng.sample(signals, 2)
            gates.append(Gate(GateKind.NOR2, (a, b), out))
        else:
            gates.append(Gate(GateKind.INV, (rng.choice(signals),), out))
        signals.append(out)
    used = {op for g in gates for op in g.operands}
    outputs = [g.output for g in gates if g.output not in used]
    return Netlist(name, inputs, outputs, gates)


def naive_area(dag, seq) -> int:
    """Independent recomputation of the footprint: scan each step and count
    the values that must be resident, using plain sets."""
    m = len(seq)
    if m == 0:
        return dag.n_inputs
    pos = {g: i for i, g in enumerate(seq)}
    peak = 0
    for step in range(m):
        live = set()
        for v in range(dag.n_vertices):
            born = 0 if v < dag.n_inputs else pos[v]
            if born > step:
                continue
            if dag.is_output[v]:
                last = m - 1
            else:
                last = max((pos[c] for c in dag.succs[v]), default=born)
            if last >= step:
                live.add(v)
        peak = max(peak, len(live))
    return peak


def dfs_reachability(dag):
    """Brute-force per-vertex ancestor/descendant sets."""
    n = dag.n_vertices
    descendants = []
    for v in range(n):
        seen = set()
        stack = list(dag.succs[v])
        while stack:
            u = stack.pop()
            if u not in seen:
                seen.add(u)
                stack.extend(dag.succs[u])
        descendants.append(seen)
    ancestors = [set() for _ in range(n)]
    for v in range(n):
        for u in descendants[v]:
            ancestors[u].add(v)
    return ancestors, descendants


def valid_permutations(dag) -> list[tuple[int, ...]]:
    """All gate permutations passing the validity check (factorial; keep tiny)."""
    out = []
    for perm in itertools.permutations(dag.gate_vertices):
        if is_valid_sequence(dag, perm):
            out.append(perm)
    return out


class ReferenceBlif:
    """Generic single-output cover-table interpreter, independent of the
    package parser: any row widths, don't-cares, and multiple rows."""

    def __init__(self, text: str):
        logical = []
        pending = ""
        for raw in text.split("\n"):
            raw = raw.split("#", 1)[0].rstrip()
            if raw.endswith("\\"):
                pending += raw[:-1] + " "
                continue
            line = (pending + raw).strip()
            pending = ""
            if line:
                logical.append(line)
        self.inputs: list[str] = []
        self.outputs: list[str] = []
        self.covers: list[tuple[list[str], str, list[list[str]]]] = []
        current = None
        for line in logical:
            tok = line.split()
            if tok[0] == ".inputs":
                self.inputs += tok[1:]
                current = None
            elif tok[0] == ".outputs":
                self.outputs += tok[1:]
                current = None
            elif tok[0] == ".names":
                current = (tok[1:-1], tok[-1], [])
                self.covers.append(current)
            elif tok[0].startswith("."):
                current = None
            else:
                assert current is not None, f"stray row: {line}"
                current[2].append(tok)

    def evaluate(self, assignment: dict[str, int]) -> dict[str, int]:
        values = {k: 1 if v else 0 for k, v in assignment.items()}
        todo = list(self.covers)
        while todo:
            rest = []
            progressed = False
            for ins, out, rows in todo:
                if not all(sig in values for sig in ins):
                    rest.append((ins, out, rows))
                    continue
                result = 0
                for row in rows:
                    plane = row[0] if len(row) == 2 else ""
                    if all(ch == "-" or int(ch) == values[sig]
                           for ch, sig in zip(plane, ins)):
                        if row[-1] == "1":
                            result = 1
                        break
                values[out] = result
                progressed = True
            assert progressed, "combinational cycle"
            todo = rest
        return {name: values[name] for name in self.outputs}


def exhaustive_truth_match(netlist: Netlist, text: str):
    """Compare package simulation against the reference interpreter on every
    input assignment. Only sensible for small input counts."""
    from saga import evaluate_netlist

    ref = ReferenceBlif(text)
    assert ref.inputs == netlist.inputs
    assert ref.outputs == netlist.outputs
    for bits in itertools.product((0, 1), repeat=len(netlist.inputs)):
        assignment = dict(zip(netlist.inputs, bits))
        assert evaluate_netlist(netlist, assignment) == ref.evaluate(assignment), (
            f"mismatch on {assignment}"
        )
