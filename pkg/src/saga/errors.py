"""Exception types shared across the package."""

from __future__ import annotations


class SagaError(Exception):
    """Base class for every error this package raises on bad input."""


class BlifParseError(SagaError):
    """Malformed netlist file. Carries the 1-based offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class UnknownDirective(BlifParseError):
    """A dot-directive outside the supported structural subset."""


class UnsupportedCover(BlifParseError):
    """A gate or cover table outside the inverter / 2-input NOR library."""


class UndefinedSignal(BlifParseError):
    """A referenced signal with no driver, or an undriven primary output."""


class DuplicateDriver(BlifParseError):
    """Two drivers (inputs or gate outputs) claim the same signal name."""


class MissingModelSections(BlifParseError):
    """Required .model / .inputs / .outputs / .end sections are absent."""


class CombinationalCycle(SagaError):
    """The netlist contains a feedback loop, so no execution order exists."""

    def __init__(self, cycle: list[str]):
        self.cycle = list(cycle)
        super().__init__("combinational cycle: " + " -> ".join(self.cycle))


class WrongVertexSet(SagaError):
    """A sequence is not a permutation of the circuit's gate vertices."""


class InvalidSequence(SagaError):
    """A sequence schedules some gate before one of its operands."""


class TooLarge(SagaError):
    """Circuit exceeds the exhaustive-search size gate."""

    def __init__(self, gate_count: int, limit: int):
        self.gate_count = gate_count
        self.limit = limit
        super().__init__(
            f"exhaustive enumeration limited to {limit} gates, circuit has {gate_count}"
        )


class MissingBaseline(SagaError):
    """A benchmark row has no matching entry in the baseline table."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"no baseline entry for benchmark '{name}'")
