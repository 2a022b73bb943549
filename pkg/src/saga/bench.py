"""Benchmark harness: circuit sweeps, baseline comparisons and reports.

``run_suite`` optimizes each circuit once per stall budget (nested by
default, so one long run is checkpointed as each budget stalls out, which
makes per-circuit area non-increasing in epsilon by construction).
``summarize`` turns per-benchmark percentage changes against a baseline
table into the usual summary statistics plus a one-tailed paired t-test,
and ``emit_report`` renders rows and statistics as JSON, CSV or a
markdown table.

Baseline tables hold transcribed published numbers and are used only for
improvement-percentage arithmetic; absolute areas are not comparable
across tools because cell-counting conventions differ.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import statistics
from dataclasses import dataclass, replace
from importlib import resources

from scipy import stats as _scipy_stats

from .blif import Netlist
from .circuit import build_dag, bfs_seed
from .errors import MissingBaseline, SagaError
from .evolve import GaConfig, optimize
from .memory import EFFICIENCY_SCALE, footprint

logger = logging.getLogger(__name__)

_METRICS = ("cycles", "area", "efficiency")


@dataclass(frozen=True)
class BenchRow:
    benchmark: str
    epsilon: int
    cycles: int
    area: int
    efficiency: float
    baseline_area: int | None = None  # breadth-first seed footprint
    cycles_improvement_pct: float | None = None
    area_improvement_pct: float | None = None
    efficiency_improvement_pct: float | None = None
    delta_eff_pct: float | None = None  # vs the previous (smaller) epsilon row

    def to_json_dict(self) -> dict:
        return {
            "benchmark": self.benchmark,
            "epsilon": self.epsilon,
            "cycles": self.cycles,
            "area": self.area,
            "efficiency": self.efficiency,
            "baseline_area": self.baseline_area,
            "cycles_improvement_pct": self.cycles_improvement_pct,
            "area_improvement_pct": self.area_improvement_pct,
            "efficiency_improvement_pct": self.efficiency_improvement_pct,
            "delta_eff_pct": self.delta_eff_pct,
        }


@dataclass(frozen=True)
class MetricStats:
    arithmetic_mean_pct: float
    geometric_mean_pct: float
    std_dev_pct: float | None
    ci95: tuple[float, float] | None


@dataclass(frozen=True)
class SummaryStats:
    cycles: MetricStats
    area: MetricStats
    efficiency: MetricStats
    t_statistic: float | None
    p_value: float | None

    def to_json_dict(self) -> dict:
        def ms(stats: MetricStats) -> dict:
            return {
                "arithmetic_mean_pct": stats.arithmetic_mean_pct,
                "geometric_mean_pct": stats.geometric_mean_pct,
                "std_dev_pct": stats.std_dev_pct,
                "ci95": list(stats.ci95) if stats.ci95 is not None else None,
            }

        return {
            "cycles": ms(self.cycles),
            "area": ms(self.area),
            "efficiency": ms(self.efficiency),
            "t_statistic": self.t_statistic,
            "p_value": self.p_value,
        }


def lower_is_better_change(baseline: float, ours: float) -> float:
    """Percent improvement for cycles/area: positive when ours is smaller."""
    return (baseline - ours) / baseline * 100.0


def higher_is_better_change(baseline: float, ours: float) -> float:
    """Percent improvement for efficiency: positive when ours is larger."""
    return (ours - baseline) / baseline * 100.0


def _baseline_efficiency(entry: dict) -> float:
    if "efficiency" in entry and entry["efficiency"] is not None:
        return float(entry["efficiency"])
    return EFFICIENCY_SCALE / (entry["cycles"] * entry["area"])


def _improvements(entry: dict, cycles: int, area: int, eff: float):
    base_eff = _baseline_efficiency(entry)
    return (
        lower_is_better_change(entry["cycles"], cycles),
        lower_is_better_change(entry["area"], area),
        higher_is_better_change(base_eff, eff),
    )


def run_suite(
    circuits: list[Netlist],
    epsilons: list[int],
    cfg: GaConfig,
    baseline: dict[str, dict] | None = None,
    nested: bool = True,
) -> list[BenchRow]:
    """One row per (circuit, epsilon); circuits that fail are skipped.

    With ``nested=True`` (default) all budgets for a circuit come from one
    run checkpointed as each stall condition is first met, so area is
    non-increasing in epsilon. ``nested=False`` runs each budget
    independently from the same master seed.
    """
    if not epsilons:
        raise ValueError("epsilons must be a non-empty list")
    eps_sorted = sorted(set(epsilons))
    rows: list[BenchRow] = []
    for netlist in circuits:
        try:
            rows.extend(_circuit_rows(netlist, eps_sorted, cfg, baseline, nested))
        except MissingBaseline:
            raise
        except SagaError as exc:
            logger.warning("skipping benchmark %s: %s", netlist.name, exc)
    return rows


def _circuit_rows(netlist, eps_sorted, cfg, baseline, nested):
    dag = build_dag(netlist)
    seed_area = footprint(dag, bfs_seed(dag)).area

    per_epsilon = {}
    if nested:
        run = optimize(dag, cfg, checkpoint_epsilons=eps_sorted)
        for cp in run.checkpoints:
            per_epsilon[cp.epsilon] = cp.result
    else:
        for eps in eps_sorted:
            run = optimize(dag, replace(cfg, epsilon=eps))
            per_epsilon[eps] = run.best_result

    entry = None
    if baseline is not None:
        entry = baseline.get(netlist.name)
        if entry is None:
            raise MissingBaseline(netlist.name)

    rows = []
    prev_eff = None
    for eps in eps_sorted:
        result = per_epsilon[eps]
        improvements = (None, None, None)
        if entry is not None:
            improvements = _improvements(
                entry, result.cycles, result.area, result.efficiency
            )
        delta = None
        if prev_eff is not None:
            delta = higher_is_better_change(prev_eff, result.efficiency)
        rows.append(
            BenchRow(
                benchmark=netlist.name,
                epsilon=eps,
                cycles=result.cycles,
                area=result.area,
                efficiency=result.efficiency,
                baseline_area=seed_area,
                cycles_improvement_pct=improvements[0],
                area_improvement_pct=improvements[1],
                efficiency_improvement_pct=improvements[2],
                delta_eff_pct=delta,
            )
        )
        prev_eff = result.efficiency
    return rows


def _geometric_mean_pct(changes: list[float]) -> float:
    factors = [1.0 + c / 100.0 for c in changes]
    if any(f <= 0 for f in factors):
        raise SagaError(
            "geometric mean undefined: a percentage change of -100% or worse"
        )
    return (math.exp(math.fsum(math.log(f) for f in factors) / len(factors)) - 1.0) * 100.0


def _metric_stats(changes: list[float]) -> MetricStats:
    mean = statistics.fmean(changes)
    geo = _geometric_mean_pct(changes)
    if len(changes) < 2:
        return MetricStats(mean, geo, None, None)
    std = statistics.stdev(changes)
    stderr = std / math.sqrt(len(changes))
    t_crit = float(_scipy_stats.t.ppf(0.975, len(changes) - 1))
    return MetricStats(mean, geo, std, (mean - t_crit * stderr, mean + t_crit * stderr))


def _one_tailed_paired_t(changes: list[float]):
    """t statistic and one-tailed p for H1: mean change > 0."""
    n = len(changes)
    if n < 2:
        return None, None
    mean = statistics.fmean(changes)
    std = statistics.stdev(changes)
    if std == 0.0:
        if mean > 0:
            return math.inf, 0.0
        return 0.0 if mean == 0 else -math.inf, 1.0
    t = mean / (std / math.sqrt(n))
    return t, float(_scipy_stats.t.sf(t, n - 1))


def summarize(rows: list[BenchRow], baseline: dict[str, dict]) -> SummaryStats:
    """Summary statistics of per-benchmark percentage changes vs a baseline.

    When a benchmark has several epsilon rows, its largest-epsilon row is
    used. The significance test is a one-tailed paired t-test over the
    per-benchmark efficiency percentage changes (H1: mean change > 0,
    df = n - 1).
    """
    chosen: dict[str, BenchRow] = {}
    for row in rows:
        best = chosen.get(row.benchmark)
        if best is None or row.epsilon > best.epsilon:
            chosen[row.benchmark] = row

    cycles_changes, area_changes, eff_changes = [], [], []
    for name, row in chosen.items():
        entry = baseline.get(name)
        if entry is None:
            raise MissingBaseline(name)
        c, a, e = _improvements(entry, row.cycles, row.area, row.efficiency)
        cycles_changes.append(c)
        area_changes.append(a)
        eff_changes.append(e)

    t_stat, p_value = _one_tailed_paired_t(eff_changes)
    return SummaryStats(
        cycles=_metric_stats(cycles_changes),
        area=_metric_stats(area_changes),
        efficiency=_metric_stats(eff_changes),
        t_statistic=t_stat,
        p_value=p_value,
    )


def emit_report(
    rows: list[BenchRow],
    stats: SummaryStats | None = None,
    format: str = "json",
) -> str:
    """Render rows (and optional summary) deterministically.

    ``json`` emits an array of row objects, or an object with ``rows`` and
    ``summary`` keys when statistics are supplied. ``csv`` emits the rows
    only (RFC 4180). ``md`` mirrors the usual results-table column order:
    cycles, area, efficiency, then improvement columns.
    """
    if not rows:
        raise ValueError("no rows to report")
    if format == "json":
        if stats is None:
            payload = [r.to_json_dict() for r in rows]
        else:
            payload = {
                "rows": [r.to_json_dict() for r in rows],
                "summary": stats.to_json_dict(),
            }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if format == "csv":
        return _emit_csv(rows)
    if format in ("md", "markdown"):
        return _emit_markdown(rows, stats)
    raise ValueError(f"unknown report format '{format}'")


_CSV_COLUMNS = [
    "benchmark",
    "epsilon",
    "cycles",
    "area",
    "efficiency",
    "baseline_area",
    "cycles_improvement_pct",
    "area_improvement_pct",
    "efficiency_improvement_pct",
    "delta_eff_pct",
]


def _emit_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(_CSV_COLUMNS)
    for row in rows:
        data = row.to_json_dict()
        writer.writerow(["" if data[c] is None else data[c] for c in _CSV_COLUMNS])
    return buf.getvalue()


def _fmt_pct(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.1f}%"


def _emit_markdown(rows: list[BenchRow], stats: SummaryStats | None) -> str:
    lines = [
        "| Benchmark | Epsilon | Cycles | Area | Efficiency | Seed Area "
        "| Cycles Impr. | Area Impr. | Eff. Impr. | Delta Eff. |",
        "|---|---|---|---|---|---|---|---|---|---|",
    ]
    for r in rows:
        lines.append(
            f"| {r.benchmark} | {r.epsilon} | {r.cycles} | {r.area} "
            f"| {round(r.efficiency)} "
            f"| {'n/a' if r.baseline_area is None else r.baseline_area} "
            f"| {_fmt_pct(r.cycles_improvement_pct)} | {_fmt_pct(r.area_improvement_pct)} "
            f"| {_fmt_pct(r.efficiency_improvement_pct)} | {_fmt_pct(r.delta_eff_pct)} |"
        )
    if stats is not None:
        lines.append("")
        lines.append("| Statistic | Cycles | Area | Efficiency |")
        lines.append("|---|---|---|---|")
        for label, attr in (
            ("Arithmetic mean", "arithmetic_mean_pct"),
            ("Geometric mean", "geometric_mean_pct"),
            ("Std. deviation", "std_dev_pct"),
        ):
            values = [
                getattr(getattr(stats, metric), attr) for metric in _METRICS
            ]
            lines.append(
                f"| {label} | " + " | ".join(_fmt_pct(v) for v in values) + " |"
            )
        ci_cells = []
        for metric in _METRICS:
            ci = getattr(stats, metric).ci95
            ci_cells.append(
                "n/a" if ci is None else f"({ci[0]:.1f}, {ci[1]:.1f})"
            )
        lines.append("| 95% confidence | " + " | ".join(ci_cells) + " |")
        if stats.p_value is not None:
            lines.append("")
            lines.append(
                f"One-tailed paired t-test on efficiency changes: "
                f"t = {stats.t_statistic:.4f}, p = {stats.p_value:.5f}."
            )
    return "\n".join(lines) + "\n"


def load_published_results() -> dict:
    """Transcribed published results shipped with the package."""
    path = resources.files("saga").joinpath("data/published_results.json")
    with path.open("r", encoding="utf-8") as handle:
        return json.load(handle)


def published_baseline(tool: str = "simpler") -> dict[str, dict]:
    """Flat ``{benchmark: {cycles, area}}`` table for one published tool."""
    data = load_published_results()
    table = {}
    for entry in data["benchmarks"]:
        record = entry.get(tool)
        if record is not None:
            table[entry["name"]] = {"cycles": record["cycles"], "area": record["area"]}
    return table


def published_result_rows() -> list[BenchRow]:
    """This tool's published runs as BenchRow values (for statistics checks)."""
    data = load_published_results()
    rows = []
    for entry in data["benchmarks"]:
        record = entry["saga"]
        cycles, area = record["cycles"], record["area"]
        rows.append(
            BenchRow(
                benchmark=entry["name"],
                epsilon=record["epsilon"],
                cycles=cycles,
                area=area,
                efficiency=EFFICIENCY_SCALE / (cycles * area),
            )
        )
    return rows
