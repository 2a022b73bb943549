"""Command-line interface.

Subcommands::

    saga optimize <netlist> [--epsilon N --pop N --mut-rate F --seed N
                             --max-gens N] [--out seq.json] [--history h.csv]
    saga evaluate <netlist> <seq.json>
    saga oracle   <netlist> [--limit N]
    saga bench    <dir> --epsilons 50,500,5000 [--baseline table.json]
                  [--pop N --mut-rate F --seed N] --format csv|json|md
                  [--independent] [--out file]

Netlist files may be BLIF (``.blif``) or the JSON netlist form
(``.json``). Exit codes: 0 success, 1 input error, 2 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import emit_report, run_suite, summarize
from .blif import Netlist, netlist_from_json, parse_blif
from .circuit import build_dag
from .errors import SagaError
from .evolve import GaConfig, optimize
from .exact import DEFAULT_VERTEX_LIMIT, enumerate_min
from .memory import footprint

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INTERNAL_ERROR = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the CLI contract reserves
    # 2 for internal errors, so route usage problems through exit code 1.
    def error(self, message):
        raise _UsageError(message)


def _load_netlist(path_str: str) -> Netlist:
    path = Path(path_str)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        return netlist_from_json(text)
    return parse_blif(text)


_CONFIG_KEYS = (
    "population_size", "mutation_rate", "epsilon", "master_seed", "max_generations"
)


def _config_from_args(args, epsilon=None) -> GaConfig:
    """Merge defaults, an optional --config JSON file, and explicit flags."""
    file_cfg = {}
    if getattr(args, "config", None):
        file_cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))
        unknown = set(file_cfg) - set(_CONFIG_KEYS)
        if unknown:
            raise SagaError(f"unknown config keys: {', '.join(sorted(unknown))}")

    def pick(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        return file_cfg.get(key, default)

    return GaConfig(
        population_size=pick(args.pop, "population_size", 2000),
        mutation_rate=pick(args.mut_rate, "mutation_rate", 0.2),
        epsilon=(epsilon if epsilon is not None
                 else pick(getattr(args, "epsilon", None), "epsilon", 50)),
        master_seed=pick(args.seed, "master_seed", 0),
        max_generations=pick(getattr(args, "max_gens", None), "max_generations", None),
    )


def _emit(text: str, out_path: str | None):
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_optimize(args) -> int:
    dag = build_dag(_load_netlist(args.netlist))
    run = optimize(dag, _config_from_args(args))
    print(json.dumps(run.to_json_dict(dag), indent=2, sort_keys=True))
    if args.out:
        names = dag.sequence_to_names(run.best_sequence)
        Path(args.out).write_text(json.dumps(names, indent=2) + "\n", encoding="utf-8")
    if args.history:
        lines = ["generation,best_area,median_area"]
        lines += [
            f"{h.generation},{h.best_area},{h.median_area}"
            for h in run.fitness_history
        ]
        Path(args.history).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    dag = build_dag(_load_netlist(args.netlist))
    names = json.loads(Path(args.sequence).read_text(encoding="utf-8"))
    if not isinstance(names, list):
        raise SagaError("sequence file must hold a JSON array of gate names")
    seq = dag.sequence_from_names(names)
    result = footprint(dag, seq)
    print(
        json.dumps(
            {
                "area": result.area,
                "cycles": result.cycles,
                "efficiency": result.efficiency,
            },
            sort_keys=True,
        )
    )
    return EXIT_OK


def cmd_oracle(args) -> int:
    dag = build_dag(_load_netlist(args.netlist))
    result = enumerate_min(dag, vertex_limit=args.limit)
    print(
        json.dumps(
            {
                "min_area": result.min_area,
                "max_area": result.max_area,
                "order_count": result.order_count,
                "argmin_sequence": dag.sequence_to_names(result.argmin_sequence),
            },
            indent=2,
            sort_keys=True,
        )
    )
    return EXIT_OK


def cmd_bench(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        raise SagaError(f"'{directory}' is not a directory")
    circuits = []
    for path in sorted(directory.glob("*.blif")):
        try:
            circuits.append(parse_blif(path.read_text(encoding="utf-8")))
        except SagaError as exc:
            print(f"warning: skipping {path.name}: {exc}", file=sys.stderr)
    if not circuits:
        raise SagaError(f"no parseable .blif circuits in '{directory}'")

    epsilons = [int(tok) for tok in args.epsilons.split(",") if tok.strip()]
    baseline = None
    if args.baseline:
        baseline = json.loads(Path(args.baseline).read_text(encoding="utf-8"))

    cfg = _config_from_args(args, epsilon=max(epsilons))
    rows = run_suite(
        circuits, epsilons, cfg, baseline=baseline, nested=not args.independent
    )
    stats = summarize(rows, baseline) if baseline else None
    _emit(emit_report(rows, stats, format=args.format), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="saga", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_ga_options(p):
        p.add_argument("--pop", type=int, default=None,
                       help="population size (even, >= 2; default 2000)")
        p.add_argument("--mut-rate", type=float, default=None,
                       help="per-individual mutation probability (default 0.2)")
        p.add_argument("--seed", type=int, default=None,
                       help="master RNG seed (default 0)")
        p.add_argument("--config",
                       help="JSON file with population_size / mutation_rate / "
                            "epsilon / master_seed / max_generations; "
                            "explicit flags win")

    p_opt = sub.add_parser("optimize", help="evolve a minimal-footprint order")
    p_opt.add_argument("netlist")
    p_opt.add_argument("--epsilon", type=int, default=None,
                       help="stall budget in generations (default 50; "
                            "try 50, 500, 5000)")
    add_ga_options(p_opt)
    p_opt.add_argument("--max-gens", type=int, default=None,
                       help="hard generation cap")
    p_opt.add_argument("--out", help="write best sequence as a JSON name array")
    p_opt.add_argument("--history", help="write per-generation CSV")
    p_opt.set_defaults(func=cmd_optimize)

    p_eval = sub.add_parser("evaluate", help="footprint of a stored sequence")
    p_eval.add_argument("netlist")
    p_eval.add_argument("sequence", help="JSON array of gate output names")
    p_eval.set_defaults(func=cmd_evaluate)

    p_oracle = sub.add_parser("oracle", help="exact bounds by exhaustive search")
    p_oracle.add_argument("netlist")
    p_oracle.add_argument("--limit", type=int, default=DEFAULT_VERTEX_LIMIT,
                          help="maximum gate count to enumerate")
    p_oracle.set_defaults(func=cmd_oracle)

    p_bench = sub.add_parser("bench", help="sweep a directory of circuits")
    p_bench.add_argument("directory")
    p_bench.add_argument("--epsilons", default="50,500,5000",
                         help="comma-separated stall budgets")
    p_bench.add_argument("--baseline",
                         help="JSON table {benchmark: {cycles, area}} for "
                              "improvement percentages")
    add_ga_options(p_bench)
    p_bench.add_argument("--format", choices=("csv", "json", "md"), default="json")
    p_bench.add_argument("--independent", action="store_true",
                         help="run each epsilon separately instead of nested")
    p_bench.add_argument("--out", help="write the report to a file")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (SagaError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except Exception as exc:  # internal invariant violation
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
