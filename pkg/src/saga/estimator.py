"""Scikit-learn style front end for the genetic sequence optimizer."""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import as_dag
from .evolve import GaConfig, optimize


class SequenceOptimizer(BaseEstimator):
    """Search for a gate execution order with minimal peak memory cells.

    The estimator wraps the generational genetic search: ``fit`` takes a
    parsed netlist (or a prebuilt circuit DAG) and evolves topological
    orders of its gates, minimizing the number of memory cells the
    schedule needs. Hyperparameters follow the scikit-learn convention,
    so the optimizer composes with ``get_params``/``set_params``,
    ``clone`` and grid search tooling.

    Parameters
    ----------
    population_size : int, default=2000
        Number of individuals per generation; must be even and >= 2.
    mutation_rate : float, default=0.2
        Per-individual probability of one validity-preserving swap per
        generation.
    epsilon : int, default=50
        Stall budget: generations without improvement of the best
        footprint before the search stops. Larger budgets search longer
        and never return a worse result.
    master_seed : int, default=0
        Seed for all randomness; identical seeds give identical runs.
    max_generations : int or None, default=None
        Optional hard cap on generations.

    Attributes
    ----------
    dag_ : CircuitDag
        The circuit the optimizer was fitted on.
    best_sequence_ : tuple of int
        Best execution order found, as DAG vertex ids.
    schedule_ : list of str
        The same order as gate output names, ready for serialization.
    best_area_ : int
        Peak cell count of the best order.
    best_result_ : EvalResult
        Area, cycles and efficiency of the best order.
    run_ : GaRun
        Full evolution trace (per-generation best/median history).
    n_generations_ : int
        Generations executed before the stall budget was exhausted.

    Examples
    --------
    >>> from saga import parse_blif, SequenceOptimizer
    >>> net = parse_blif(open("circuit.blif").read())  # doctest: +SKIP
    >>> opt = SequenceOptimizer(population_size=200, epsilon=50, master_seed=7)
    >>> opt.fit_predict(net)  # doctest: +SKIP
    ['n1', 'n2', 'n3', 'n4', 'y']
    """

    def __init__(
        self,
        population_size: int = 2000,
        mutation_rate: float = 0.2,
        epsilon: int = 50,
        master_seed: int = 0,
        max_generations: int | None = None,
    ):
        self.population_size = population_size
        self.mutation_rate = mutation_rate
        self.epsilon = epsilon
        self.master_seed = master_seed
        self.max_generations = max_generations

    def _config(self) -> GaConfig:
        return GaConfig(
            population_size=self.population_size,
            mutation_rate=self.mutation_rate,
            epsilon=self.epsilon,
            master_seed=self.master_seed,
            max_generations=self.max_generations,
        )

    def fit(self, X, y=None):
        """Optimize the execution order of the circuit ``X``.

        ``X`` is a :class:`~saga.blif.Netlist` or
        :class:`~saga.circuit.CircuitDag`; ``y`` is ignored and present
        only for API compatibility.
        """
        dag = as_dag(X)
        run = optimize(dag, self._config())
        self.dag_ = dag
        self.run_ = run
        self.best_sequence_ = run.best_sequence
        self.schedule_ = dag.sequence_to_names(run.best_sequence)
        self.best_result_ = run.best_result
        self.best_area_ = run.best_result.area
        self.n_generations_ = run.generations_run
        return self

    def fit_predict(self, X, y=None) -> list[str]:
        """Fit on ``X`` and return the optimized schedule as gate names."""
        return self.fit(X, y).schedule_

    def score(self, X=None, y=None) -> float:
        """Efficiency of the fitted schedule (greater is better)."""
        check_is_fitted(self, "best_result_")
        return self.best_result_.efficiency
