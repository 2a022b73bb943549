"""Generational genetic search over topological orders.

Fitness is the footprint of a sequence (fewer cells is better). Each
generation keeps the fittest half, pairs adjacent survivors for ordered
crossover to refill the population, then gives every individual an
independent chance of one validity-preserving swap mutation. Evolution
stops once the best footprint ever seen has not improved for ``epsilon``
consecutive generations.

All randomness flows from a single engine RNG seeded with ``master_seed``
and is drawn in a fixed sequential order, so runs are bit-reproducible;
fitness evaluation is pure and may safely be reordered or parallelized.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass

from ._validation import as_rng
from .circuit import CircuitDag, Sequence, bfs_seed, random_topo_sort
from .memory import EvalResult, footprint


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 2000
    mutation_rate: float = 0.2
    epsilon: int = 50
    master_seed: int = 0
    max_generations: int | None = None

    def __post_init__(self):
        if self.population_size < 2 or self.population_size % 2 != 0:
            raise ValueError("population_size must be an even number >= 2")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must lie in [0, 1]")
        if self.epsilon < 1:
            raise ValueError("epsilon must be >= 1")
        if self.max_generations is not None and self.max_generations < 0:
            raise ValueError("max_generations must be >= 0")

    def to_json_dict(self) -> dict:
        return {
            "population_size": self.population_size,
            "mutation_rate": self.mutation_rate,
            "epsilon": self.epsilon,
            "master_seed": self.master_seed,
            "max_generations": self.max_generations,
        }


@dataclass(frozen=True)
class GenerationStats:
    generation: int
    best_area: int      # best ever observed up to this generation (monotone)
    median_area: float  # median of the current population


@dataclass(frozen=True)
class Checkpoint:
    """Best-so-far snapshot taken when a stall budget is first exhausted."""

    epsilon: int
    generation: int
    result: EvalResult
    sequence: Sequence


@dataclass
class GaRun:
    config: GaConfig
    best_sequence: Sequence
    best_result: EvalResult
    generations_run: int
    fitness_history: list[GenerationStats]
    stall_at: int  # generation at which the best last improved
    checkpoints: list[Checkpoint] | None = None

    def to_json_dict(self, dag: CircuitDag) -> dict:
        data = {
            "benchmark": dag.name,
            "config": self.config.to_json_dict(),
            "best_sequence": dag.sequence_to_names(self.best_sequence),
            "best": {
                "area": self.best_result.area,
                "cycles": self.best_result.cycles,
                "efficiency": self.best_result.efficiency,
            },
            "generations_run": self.generations_run,
            "stall_at": self.stall_at,
            "fitness_history": [
                [h.generation, h.best_area, h.median_area] for h in self.fitness_history
            ],
        }
        if self.checkpoints is not None:
            data["checkpoints"] = [
                {
                    "epsilon": c.epsilon,
                    "generation": c.generation,
                    "area": c.result.area,
                    "cycles": c.result.cycles,
                    "efficiency": c.result.efficiency,
                    "sequence": dag.sequence_to_names(c.sequence),
                }
                for c in self.checkpoints
            ]
        return data


def crossover(dag: CircuitDag, p1: Sequence, p2: Sequence, point: int) -> Sequence:
    """Single-point order-based crossover.

    The child copies ``p1`` up to ``point``, then appends the remaining
    gates in the relative order they hold in ``p2``. A prefix of a
    topological order is downward closed and the suffix preserves ``p2``'s
    internal order, so the child of two valid parents is always valid.
    """
    if not 0 <= point <= len(p1):
        raise ValueError(f"crossover point {point} outside 0..{len(p1)}")
    taken = set(p1[:point])
    return p1[:point] + tuple(g for g in p2 if g not in taken)


def _legal_swap_partners(dag: CircuitDag, seq: Sequence, i: int) -> list[int]:
    """Positions whose value may swap with position ``i`` and stay valid.

    The swapped pair must be incomparable, and no ancestor of the later
    value or descendant of the earlier value may sit strictly between the
    two positions (the reachability filter alone is necessary but not
    sufficient after a positional swap).
    """
    u = seq[i]
    ancestors = dag.ancestors
    descendants = dag.descendants
    desc_u = descendants[u]
    anc_u = ancestors[u]
    partners = []

    window = 0  # bitmask of vertices strictly between i and the probe
    for j in range(i + 1, len(seq)):
        v = seq[j]
        if (desc_u >> v) & 1:
            break  # comparable, and it would poison every window further right
        if window & ancestors[v] == 0:
            partners.append(j)
        window |= 1 << v

    window = 0
    for j in range(i - 1, -1, -1):
        v = seq[j]
        if (anc_u >> v) & 1:
            break
        if window & descendants[v] == 0:
            partners.append(j)
        window |= 1 << v

    return partners


def mutate(dag: CircuitDag, seq: Sequence, rng) -> Sequence:
    """Swap a random position with a random legal partner.

    Picks a point uniformly, then one of its validity-preserving partners
    uniformly; with no legal partner the sequence is returned unchanged.
    Output always differs from the input by at most one transposition and
    is always a valid order.
    """
    if len(seq) < 2:
        return seq
    rng = as_rng(rng)
    i = rng.randrange(len(seq))
    partners = _legal_swap_partners(dag, seq, i)
    if not partners:
        return seq
    j = partners[rng.randrange(len(partners))]
    out = list(seq)
    out[i], out[j] = out[j], out[i]
    return tuple(out)


def _area(dag, seq, cache) -> int:
    area = cache.get(seq)
    if area is None:
        area = footprint(dag, seq).area
        cache[seq] = area
    return area


def step_generation(
    dag: CircuitDag,
    population: list[Sequence],
    cfg: GaConfig,
    rng,
    cache: dict | None = None,
) -> list[Sequence]:
    """Advance one generation: select, recombine, refill, mutate.

    Survivor ranking is stable (ties keep the lower population index).
    Adjacent survivor pairs each contribute two children, one per parent
    ordering, with independently drawn crossover points; with an odd
    survivor count the last survivor is paired with the fittest one for a
    single extra child so the population size is restored exactly.
    """
    if cache is None:
        cache = {}
    rng = as_rng(rng)
    n = len(population)
    areas = [_area(dag, s, cache) for s in population]
    ranked = sorted(range(n), key=lambda k: (areas[k], k))
    survivors = [population[k] for k in ranked[: n // 2]]

    children: list[Sequence] = []
    for a, b in zip(survivors[0::2], survivors[1::2]):
        children.append(crossover(dag, a, b, rng.randint(0, len(a))))
        children.append(crossover(dag, b, a, rng.randint(0, len(b))))
    if len(survivors) % 2 == 1:
        last = survivors[-1]
        children.append(crossover(dag, last, survivors[0], rng.randint(0, len(last))))

    nxt = survivors + children
    return [
        mutate(dag, s, rng) if rng.random() < cfg.mutation_rate else s for s in nxt
    ]


def optimize(
    dag: CircuitDag,
    cfg: GaConfig,
    checkpoint_epsilons: list[int] | None = None,
) -> GaRun:
    """Run the full generational search until the stall budget is spent.

    Individual 0 of the initial population is the breadth-first seed order;
    the rest are random topological sorts with seeds derived from the
    master seed. The best individual ever evaluated is archived outside the
    population, so the reported best is monotone even though mutation may
    touch the population's copy.

    ``checkpoint_epsilons`` turns the run into a nested sweep: the run
    continues until the largest budget stalls out, snapshotting the best
    result the first time each smaller budget's stall condition is met.
    """
    rng = as_rng(cfg.master_seed)
    cache: dict[Sequence, int] = {}

    population: list[Sequence] = [bfs_seed(dag)]
    for _ in range(cfg.population_size - 1):
        population.append(random_topo_sort(dag, rng.getrandbits(64)))

    areas = [_area(dag, s, cache) for s in population]
    best_idx = min(range(len(population)), key=lambda k: (areas[k], k))
    best_seq = population[best_idx]
    best_area = areas[best_idx]
    history = [GenerationStats(0, best_area, statistics.median(areas))]

    pending = sorted(set(checkpoint_epsilons)) if checkpoint_epsilons else []
    stop_epsilon = pending[-1] if pending else cfg.epsilon
    checkpoints: list[Checkpoint] = []

    generation = 0
    stall_at = 0
    while generation - stall_at < stop_epsilon and (
        cfg.max_generations is None or generation < cfg.max_generations
    ):
        population = step_generation(dag, population, cfg, rng, cache)
        generation += 1
        areas = [_area(dag, s, cache) for s in population]
        gen_idx = min(range(len(population)), key=lambda k: (areas[k], k))
        if areas[gen_idx] < best_area:
            best_area = areas[gen_idx]
            best_seq = population[gen_idx]
            stall_at = generation
        history.append(GenerationStats(generation, best_area, statistics.median(areas)))
        while pending and generation - stall_at >= pending[0]:
            eps = pending.pop(0)
            checkpoints.append(
                Checkpoint(eps, generation, footprint(dag, best_seq), best_seq)
            )

    # A max_generations cap can end the run before every budget is reached;
    # those checkpoints carry the final best.
    for eps in pending:
        checkpoints.append(
            Checkpoint(eps, generation, footprint(dag, best_seq), best_seq)
        )

    return GaRun(
        config=cfg,
        best_sequence=best_seq,
        best_result=footprint(dag, best_seq),
        generations_run=generation,
        fitness_history=history,
        stall_at=stall_at,
        checkpoints=checkpoints if checkpoint_epsilons else None,
    )
