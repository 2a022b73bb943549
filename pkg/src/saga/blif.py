"""Parsing, validation and serialization of gate-level netlists.

The accepted file format is the structural BLIF subset that technology
mapping to a two-gate library produces: one ``.model``, ``.inputs`` and
``.outputs`` declarations, single-output ``.names`` blocks and ``.end``.
Every cover table must describe either an inverter (``0 1``) or a 2-input
NOR (``00 1``); anything else (AND/OR covers, constants, buffers, latches,
multi-row tables) is rejected. ``#`` starts a comment, ``\\`` at end of
line continues it, and signal names are case-sensitive and
whitespace-delimited.

A JSON representation of the same data (``inputs``/``outputs``/``gates``
arrays) is read and written for tooling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .errors import (
    BlifParseError,
    CombinationalCycle,
    DuplicateDriver,
    MissingModelSections,
    UndefinedSignal,
    UnknownDirective,
    UnsupportedCover,
)


class GateKind(str, Enum):
    INV = "INV"
    NOR2 = "NOR2"


@dataclass(frozen=True)
class Gate:
    """One logic gate: an inverter (1 operand) or a 2-input NOR."""

    kind: GateKind
    operands: tuple[str, ...]
    output: str


@dataclass
class Netlist:
    """A validated combinational circuit over the INV/NOR2 library.

    ``gates`` keeps file declaration order; operands may reference gates
    declared later, as long as the result is acyclic.
    """

    name: str
    inputs: list[str]
    outputs: list[str]
    gates: list[Gate]

    @property
    def gate_outputs(self) -> set[str]:
        return {g.output for g in self.gates}


@dataclass(frozen=True)
class Violation:
    """One semantic problem found by :func:`check_semantics`."""

    kind: str
    message: str
    severity: str  # "error" | "warning"


_SEVERITY_ERROR = "error"
_SEVERITY_WARNING = "warning"


def _logical_lines(text: str):
    """Yield ``(first_physical_line_no, tokens)`` for each non-empty logical line.

    Comments are stripped before continuation handling, so a ``\\`` inside a
    comment does not join lines.
    """
    physical = text.split("\n")
    i = 0
    n = len(physical)
    while i < n:
        start = i + 1  # 1-based
        parts = []
        while i < n:
            line = physical[i]
            i += 1
            hash_pos = line.find("#")
            if hash_pos != -1:
                line = line[:hash_pos]
            line = line.rstrip()
            if line.endswith("\\"):
                parts.append(line[:-1])
                continue
            parts.append(line)
            break
        tokens = " ".join(parts).split()
        if tokens:
            yield start, tokens


def _gate_from_cover(ins, out, rows, names_line):
    """Translate one single-output cover table into a Gate.

    NOR with a repeated operand computes NOT, so it is normalized to INV.
    """
    if not ins:
        raise UnsupportedCover(
            f"constant cover for '{out}' is not in the gate library", names_line
        )
    if not rows:
        raise UnsupportedCover(
            f"empty cover for '{out}' (constant 0) is not in the gate library", names_line
        )
    if len(rows) > 1:
        raise UnsupportedCover(
            f"multi-row cover for '{out}' is not a single INV/NOR2 gate", rows[1][0]
        )
    row_line, row = rows[0]
    if len(row) != 2:
        raise UnsupportedCover(
            f"cover row for '{out}' must be '<input-plane> 1'", row_line
        )
    plane, value = row
    if value != "1":
        raise UnsupportedCover(
            f"cover for '{out}' must list the on-set row, got output '{value}'", row_line
        )
    if len(ins) == 1:
        if plane != "0":
            raise UnsupportedCover(
                f"1-input cover '{plane} 1' for '{out}' is not an inverter", row_line
            )
        return Gate(GateKind.INV, (ins[0],), out)
    if len(ins) == 2:
        if plane != "00":
            raise UnsupportedCover(
                f"2-input cover '{plane} 1' for '{out}' is not a NOR", row_line
            )
        if ins[0] == ins[1]:
            return Gate(GateKind.INV, (ins[0],), out)
        return Gate(GateKind.NOR2, (ins[0], ins[1]), out)
    raise UnsupportedCover(
        f"{len(ins)}-input cover for '{out}' exceeds the 2-input library", names_line
    )


def parse_blif(text: str) -> Netlist:
    """Parse BLIF text into a validated :class:`Netlist`.

    Raises a :class:`~saga.errors.BlifParseError` subclass naming the
    offending line for any structural or semantic problem.
    """
    model_name = None
    saw_inputs = False
    saw_outputs = False
    saw_end = False
    input_decls: list[tuple[str, int]] = []
    output_decls: list[tuple[str, int]] = []
    gate_decls: list[tuple[int, Gate]] = []

    pending = None  # (line_no, signal tokens) of the open .names block
    rows: list[tuple[int, list[str]]] = []

    def close_pending():
        nonlocal pending, rows
        if pending is None:
            return
        line_no, signals = pending
        gate = _gate_from_cover(signals[:-1], signals[-1], rows, line_no)
        gate_decls.append((line_no, gate))
        pending = None
        rows = []

    for line_no, tokens in _logical_lines(text):
        head = tokens[0]
        if saw_end:
            raise BlifParseError(f"content after .end: '{' '.join(tokens)}'", line_no)
        if head.startswith("."):
            close_pending()
            if head == ".model":
                if model_name is not None:
                    raise BlifParseError("duplicate .model directive", line_no)
                if len(tokens) != 2:
                    raise BlifParseError(".model expects exactly one name", line_no)
                model_name = tokens[1]
            elif head == ".inputs":
                saw_inputs = True
                input_decls.extend((name, line_no) for name in tokens[1:])
            elif head == ".outputs":
                saw_outputs = True
                output_decls.extend((name, line_no) for name in tokens[1:])
            elif head == ".names":
                if len(tokens) < 2:
                    raise BlifParseError(".names expects at least an output signal", line_no)
                pending = (line_no, tokens[1:])
            elif head == ".end":
                saw_end = True
            else:
                raise UnknownDirective(f"unsupported directive '{head}'", line_no)
        else:
            if pending is None:
                raise BlifParseError(f"unexpected text '{' '.join(tokens)}'", line_no)
            rows.append((line_no, tokens))
    close_pending()

    missing = [
        section
        for section, present in (
            (".model", model_name is not None),
            (".inputs", saw_inputs),
            (".outputs", saw_outputs),
            (".end", saw_end),
        )
        if not present
    ]
    if missing:
        raise MissingModelSections("missing required sections: " + ", ".join(missing))

    driver_line: dict[str, int] = {}
    for name, line_no in input_decls:
        if name in driver_line:
            raise DuplicateDriver(f"input '{name}' declared more than once", line_no)
        driver_line[name] = line_no
    for line_no, gate in gate_decls:
        if gate.output in driver_line:
            raise DuplicateDriver(f"signal '{gate.output}' has more than one driver", line_no)
        driver_line[gate.output] = line_no

    input_set = {name for name, _ in input_decls}
    gate_outputs = {g.output for _, g in gate_decls}
    for line_no, gate in gate_decls:
        for op in gate.operands:
            if op not in driver_line:
                raise UndefinedSignal(f"signal '{op}' is not defined", line_no)
    for name, line_no in output_decls:
        if name in input_set:
            raise UndefinedSignal(
                f"primary output '{name}' must be driven by a gate, not passed through "
                "from an input",
                line_no,
            )
        if name not in gate_outputs:
            raise UndefinedSignal(f"primary output '{name}' is not defined", line_no)

    return Netlist(
        name=model_name,
        inputs=[name for name, _ in input_decls],
        outputs=[name for name, _ in output_decls],
        gates=[gate for _, gate in gate_decls],
    )


def serialize_blif(netlist: Netlist) -> str:
    """Render a netlist back to canonical BLIF text."""
    lines = [f".model {netlist.name}"]
    lines.append(".inputs" + "".join(f" {s}" for s in netlist.inputs))
    lines.append(".outputs" + "".join(f" {s}" for s in netlist.outputs))
    for gate in netlist.gates:
        lines.append(".names " + " ".join(gate.operands) + f" {gate.output}")
        lines.append("0 1" if gate.kind is GateKind.INV else "00 1")
    lines.append(".end")
    return "\n".join(lines) + "\n"


def check_semantics(netlist: Netlist) -> list[Violation]:
    """Report semantic problems as data instead of raising.

    Error-severity violations correspond exactly to broken netlist
    invariants (duplicate drivers, undefined operands, malformed gates,
    undriven primary outputs). Combinational cycles and gates with no path
    to any primary output are reported as warnings.
    """
    out: list[Violation] = []

    input_set = set(netlist.inputs)
    drivers: set[str] = set(netlist.inputs)
    if len(input_set) != len(netlist.inputs):
        dupes = sorted({s for s in netlist.inputs if netlist.inputs.count(s) > 1})
        for name in dupes:
            out.append(
                Violation("duplicate_driver", f"input '{name}' declared more than once",
                          _SEVERITY_ERROR)
            )
    for gate in netlist.gates:
        arity = {GateKind.INV: 1, GateKind.NOR2: 2}.get(gate.kind)
        if arity is None or len(gate.operands) != arity:
            out.append(
                Violation(
                    "invalid_gate",
                    f"gate '{gate.output}' has {len(gate.operands)} operand(s) "
                    f"for kind {getattr(gate.kind, 'value', gate.kind)}",
                    _SEVERITY_ERROR,
                )
            )
        elif gate.kind is GateKind.NOR2 and gate.operands[0] == gate.operands[1]:
            out.append(
                Violation(
                    "invalid_gate",
                    f"NOR2 gate '{gate.output}' repeats operand '{gate.operands[0]}'",
                    _SEVERITY_ERROR,
                )
            )
        if gate.output in drivers:
            out.append(
                Violation("duplicate_driver",
                          f"signal '{gate.output}' has more than one driver",
                          _SEVERITY_ERROR)
            )
        drivers.add(gate.output)

    defined = input_set | netlist.gate_outputs
    for gate in netlist.gates:
        for op in gate.operands:
            if op not in defined:
                out.append(
                    Violation("undefined_signal", f"signal '{op}' is not defined",
                              _SEVERITY_ERROR)
                )
    for name in netlist.outputs:
        if name in input_set:
            out.append(
                Violation(
                    "undriven_output",
                    f"primary output '{name}' must be driven by a gate",
                    _SEVERITY_ERROR,
                )
            )
        elif name not in netlist.gate_outputs:
            out.append(
                Violation("undriven_output", f"primary output '{name}' is not defined",
                          _SEVERITY_ERROR)
            )

    out.extend(_cycle_and_dangling_warnings(netlist))
    return out


def has_errors(violations: list[Violation]) -> bool:
    return any(v.severity == _SEVERITY_ERROR for v in violations)


def _cycle_and_dangling_warnings(netlist: Netlist) -> list[Violation]:
    out: list[Violation] = []
    by_output = {g.output: g for g in netlist.gates}

    # Kahn over the gate-to-gate dependency graph; leftovers sit on a cycle.
    indeg = {}
    consumers: dict[str, list[str]] = {g.output: [] for g in netlist.gates}
    for gate in netlist.gates:
        gate_ops = [op for op in gate.operands if op in by_output]
        indeg[gate.output] = len(gate_ops)
        for op in gate_ops:
            consumers[op].append(gate.output)
    queue = [name for name, d in indeg.items() if d == 0]
    done = 0
    while queue:
        name = queue.pop()
        done += 1
        for nxt in consumers[name]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                queue.append(nxt)
    if done != len(netlist.gates):
        stuck = sorted(name for name, d in indeg.items() if d > 0)
        out.append(
            Violation(
                "cycle",
                "combinational cycle through: " + ", ".join(stuck),
                _SEVERITY_WARNING,
            )
        )

    # Reverse reachability from output-driving gates.
    useful = {name for name in netlist.outputs if name in by_output}
    frontier = list(useful)
    while frontier:
        name = frontier.pop()
        for op in by_output[name].operands:
            if op in by_output and op not in useful:
                useful.add(op)
                frontier.append(op)
    for gate in netlist.gates:
        if gate.output not in useful:
            out.append(
                Violation(
                    "dangling_gate",
                    f"gate '{gate.output}' has no path to any primary output",
                    _SEVERITY_WARNING,
                )
            )
    return out


_ERROR_CLASSES = {
    "duplicate_driver": DuplicateDriver,
    "undefined_signal": UndefinedSignal,
    "undriven_output": UndefinedSignal,
    "invalid_gate": UnsupportedCover,
}


def validate_netlist(netlist: Netlist) -> None:
    """Raise the matching exception for the first error-severity violation."""
    for violation in check_semantics(netlist):
        if violation.severity == _SEVERITY_ERROR:
            raise _ERROR_CLASSES[violation.kind](violation.message)


def evaluate_netlist(netlist: Netlist, assignment: dict[str, int]) -> dict[str, int]:
    """Simulate the netlist on one input assignment; returns primary outputs.

    ``assignment`` must provide a 0/1 value for every primary input.
    """
    values: dict[str, int] = {}
    for name in netlist.inputs:
        if name not in assignment:
            raise ValueError(f"no value supplied for input '{name}'")
        values[name] = 1 if assignment[name] else 0

    remaining = list(netlist.gates)
    while remaining:
        progressed = False
        deferred = []
        for gate in remaining:
            if all(op in values for op in gate.operands):
                if gate.kind is GateKind.INV:
                    values[gate.output] = 1 - values[gate.operands[0]]
                else:
                    a, b = gate.operands
                    values[gate.output] = 1 if (values[a] == 0 and values[b] == 0) else 0
                progressed = True
            else:
                deferred.append(gate)
        if not progressed:
            raise CombinationalCycle(sorted(g.output for g in deferred))
        remaining = deferred
    return {name: values[name] for name in netlist.outputs}


def netlist_to_json_dict(netlist: Netlist) -> dict:
    return {
        "name": netlist.name,
        "inputs": list(netlist.inputs),
        "outputs": list(netlist.outputs),
        "gates": [
            {"kind": g.kind.value, "operands": list(g.operands), "output": g.output}
            for g in netlist.gates
        ],
    }


def netlist_from_json_dict(data: dict) -> Netlist:
    try:
        gates = []
        for entry in data["gates"]:
            kind = GateKind(entry["kind"])
            operands = tuple(entry["operands"])
            if kind is GateKind.NOR2 and len(operands) == 2 and operands[0] == operands[1]:
                kind, operands = GateKind.INV, (operands[0],)
            gates.append(Gate(kind, operands, entry["output"]))
        netlist = Netlist(
            name=data["name"],
            inputs=list(data["inputs"]),
            outputs=list(data["outputs"]),
            gates=gates,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise BlifParseError(f"malformed netlist JSON: {exc}") from exc
    validate_netlist(netlist)
    return netlist


def netlist_to_json(netlist: Netlist) -> str:
    return json.dumps(netlist_to_json_dict(netlist), indent=2, sort_keys=True) + "\n"


def netlist_from_json(text: str) -> Netlist:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BlifParseError(f"malformed netlist JSON: {exc}") from exc
    return netlist_from_json_dict(data)
