"""Benchmark objectives for engine experiments.

Minimal, standard set: a convex sphere, a multi-well two-basin function
whose many global optima defeat the compactness stopping rule (useful for
demonstrating exactly that), and match-count against a random bit target
for discrete runs.
"""

from __future__ import annotations

from .genospace import Chromosome

MAXIMIZE = "maximize"
MINIMIZE = "minimize"


def sphere(c: Chromosome) -> float:
    """Sum of squared genes; unique minimum at the origin."""
    return float(sum(g * g for g in c.genes))


def two_basin(c: Chromosome) -> float:
    """Sum of (g^2 - 1)^2 per gene: global minima at every +-1 corner."""
    return float(sum((g * g - 1.0) ** 2 for g in c.genes))


def onemax_against(target: Chromosome):
    """Count of loci matching the target chromosome (maximize)."""

    def matches(c: Chromosome) -> float:
        return float(sum(1 for g, t in zip(c.genes, target.genes) if g == t))

    return matches


#: name -> (objective, natural direction); "onemax" is built per run from
#: a target chromosome and appears here only as a registered name.
CONTINUOUS_OBJECTIVES = {
    "sphere": (sphere, MINIMIZE),
    "two-basin": (two_basin, MINIMIZE),
}

OBJECTIVE_NAMES = ("sphere", "two-basin", "onemax")
