"""Input coercion helpers shared by the estimator, CLI and library entry points."""

from __future__ import annotations

import random


def as_rng(seed) -> random.Random:
    """Accept an int seed, an existing ``random.Random``, or None (OS entropy)."""
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def as_dag(X):
    """Coerce estimator input to a :class:`~saga.circuit.CircuitDag`."""
    from .blif import Netlist
    from .circuit import CircuitDag, build_dag

    if isinstance(X, CircuitDag):
        return X
    if isinstance(X, Netlist):
        return build_dag(X)
    raise TypeError(
        f"expected a Netlist or CircuitDag, got {type(X).__name__}; "
        "parse files with saga.parse_blif() first"
    )
