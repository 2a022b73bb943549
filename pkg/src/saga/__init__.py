"""Minimal-footprint execution sequencing for write-based in-memory logic.

Parse an inverter/NOR2 gate-level netlist, build its data-flow DAG, and
search the space of topological orders with a generational genetic
algorithm so the schedule needs as few simultaneously-live memory cells
as possible. An exhaustive oracle provides ground truth on small
circuits, and a benchmark harness compares runs against published
baselines.
"""

from . import errors
from .bench import (
    BenchRow,
    MetricStats,
    SummaryStats,
    emit_report,
    load_published_results,
    published_baseline,
    published_result_rows,
    run_suite,
    summarize,
)
from .blif import (
    Gate,
    GateKind,
    Netlist,
    Violation,
    check_semantics,
    evaluate_netlist,
    has_errors,
    netlist_from_json,
    netlist_to_json,
    parse_blif,
    serialize_blif,
    validate_netlist,
)
from .circuit import (
    CircuitDag,
    Sequence,
    bfs_seed,
    build_dag,
    is_valid_sequence,
    random_topo_sort,
)
from .estimator import SequenceOptimizer
from .evolve import (
    Checkpoint,
    GaConfig,
    GaRun,
    GenerationStats,
    crossover,
    mutate,
    optimize,
    step_generation,
)
from .exact import OracleResult, enumerate_min
from .memory import (
    EFFICIENCY_SCALE,
    CellTrace,
    EvalResult,
    TraceStep,
    cell_trace,
    efficiency,
    footprint,
)

__version__ = "0.1.0"

__all__ = [
    "BenchRow",
    "CellTrace",
    "Checkpoint",
    "CircuitDag",
    "EFFICIENCY_SCALE",
    "EvalResult",
    "GaConfig",
    "GaRun",
    "Gate",
    "GateKind",
    "GenerationStats",
    "MetricStats",
    "Netlist",
    "OracleResult",
    "Sequence",
    "SequenceOptimizer",
    "SummaryStats",
    "TraceStep",
    "Violation",
    "bfs_seed",
    "build_dag",
    "cell_trace",
    "check_semantics",
    "crossover",
    "efficiency",
    "emit_report",
    "enumerate_min",
    "errors",
    "evaluate_netlist",
    "footprint",
    "has_errors",
    "is_valid_sequence",
    "load_published_results",
    "mutate",
    "netlist_from_json",
    "netlist_to_json",
    "optimize",
    "parse_blif",
    "published_baseline",
    "published_result_rows",
    "random_topo_sort",
    "run_suite",
    "serialize_blif",
    "step_generation",
    "summarize",
    "validate_netlist",
]
