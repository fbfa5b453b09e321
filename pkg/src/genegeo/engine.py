"""Generational GA loop: soft/hard selection, point crossover, mutation.

One generation admits each member to the parent pool by an independent
Bernoulli draw on its selection probability, pairs the admitted parents
uniformly at random, applies k-point crossover plus per-locus reset
mutation, and replaces the population with the offspring (topped up by
uniformly resampled parents when the pool was small).  There is no
elitism by default: near-optimal parents can crowd the optimum without
ever producing it, so hard pressure toward the incumbent best is kept
optional.

Stopping is schema-dependent.  On continuous (all-real) schemas runs end
when the bounding-box volume of the better half of the population has
stopped strictly decreasing for a configured number of generations; on
discrete schemas, where convergence in that sense is meaningless, runs
end at an evaluation budget of ceil(B^1.5 * ln B) for B total bits,
unless configured otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np

from .crossover import CrossoverMask, crossover
from .genospace import Chromosome, GeneKind, GenospaceError, Schema, distance_pow
from .selection import (
    MAXIMIZE,
    MINIMIZE,
    QuartileSummary,
    build_curve,
    quartiles,
    select_probability,
)


class EngineError(GenospaceError):
    """Invalid engine configuration or objective failure."""


class Member(NamedTuple):
    chromosome: Chromosome
    fitness: float


@dataclass(frozen=True)
class Population:
    """Evolving set of evaluated chromosomes."""

    members: tuple
    generation: int = 0

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise EngineError("population cannot be empty")
        schema = self.members[0].chromosome.schema
        for m in self.members:
            if m.chromosome.schema != schema:
                raise EngineError("population members must share one schema")
            if not math.isfinite(m.fitness):
                raise EngineError(f"non-finite fitness {m.fitness!r}")

    @property
    def schema(self) -> Schema:
        return self.members[0].chromosome.schema

    def fitnesses(self) -> list:
        return [m.fitness for m in self.members]


@dataclass(frozen=True)
class EngineConfig:
    population_size: int
    curve: str = "arctan"
    direction: str = MINIMIZE
    crossover_points: int = 1
    mutation_rate: float = 0.01
    max_generations: int = 200
    stall_generations: int = 10
    seed: int = 0
    elitism: bool = False
    hard_threshold: Optional[float] = None  # required for curve="hard"
    adaptive_average: str = "mean"  # for curve="adaptive-hard"
    eval_budget: Optional[int] = None  # discrete schemas; None = ceil(B^1.5 ln B)
    conservation_check: bool = True  # verify one offspring pair per generation

    def __post_init__(self):
        if self.population_size < 2:
            raise EngineError("population_size must be >= 2")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise EngineError("mutation_rate must lie in [0, 1]")
        if self.stall_generations < 1:
            raise EngineError("stall_generations must be >= 1")
        if self.max_generations < 1:
            raise EngineError("max_generations must be >= 1")
        if self.crossover_points < 1:
            raise EngineError("crossover_points must be >= 1")
        if self.direction not in (MAXIMIZE, MINIMIZE):
            raise EngineError(f"unknown direction {self.direction!r}")


@dataclass(frozen=True)
class GenerationStats:
    generation: int
    best_fitness: float
    median_fitness: float
    summary: QuartileSummary
    better_half_volume: Optional[float]
    evaluations_so_far: int

    def to_dict(self) -> dict:
        return {
            "generation": self.generation,
            "best_fitness": self.best_fitness,
            "median_fitness": self.median_fitness,
            "f_quarter": self.summary.f_quarter,
            "f_half": self.summary.f_half,
            "f_threequarter": self.summary.f_threequarter,
            "better_half_volume": self.better_half_volume,
            "evaluations_so_far": self.evaluations_so_far,
        }


@dataclass(frozen=True)
class RunResult:
    best: Chromosome
    best_fitness: float
    history: list = field(compare=False)
    stop_reason: str = "max-generations"

    def history_dicts(self) -> list:
        return [s.to_dict() for s in self.history]


STOP_STALL = "stall"
STOP_BUDGET = "budget"
STOP_MAX_GENERATIONS = "max-generations"


def _is_better(a: float, b: float, direction: str) -> bool:
    return a < b if direction == MINIMIZE else a > b


def _best_member(members, direction: str) -> Member:
    pick = min if direction == MINIMIZE else max
    return pick(members, key=lambda m: m.fitness)


def better_half_volume(pop: Population, direction: str) -> Optional[float]:
    """Bounding-box volume of the best half of the population.

    Product over real loci of (max - min) of the ceil(size/2) fittest
    members, with a floor of two members (a single-point box is always
    zero, which would make the statistic useless for tiny populations);
    any zero-extent dimension legitimately zeroes the volume.  Returns
    None for schemas with non-real loci, where the statistic does not
    apply.
    """
    schema = pop.schema
    if not schema.is_continuous:
        return None
    k = max(2, (len(pop.members) + 1) // 2)
    ranked = sorted(pop.members, key=lambda m: m.fitness, reverse=(direction == MAXIMIZE))
    half = ranked[:k]
    volume = 1.0
    for i in range(schema.length):
        values = [m.chromosome.genes[i] for m in half]
        volume *= max(values) - min(values)
    return volume


def uniform_chromosome(schema: Schema, rng) -> Chromosome:
    """Uniform random chromosome; real and integer loci need bounds."""
    genes = []
    for locus in schema.loci:
        if locus.kind is GeneKind.BIT:
            genes.append(int(rng.integers(0, 2)))
        elif locus.kind is GeneKind.INT:
            genes.append(int(rng.integers(locus.low, locus.high + 1)))
        else:
            if locus.low is None:
                raise EngineError("real loci need bounds for initialization")
            genes.append(float(rng.uniform(locus.low, locus.high)))
    return Chromosome(schema, tuple(genes))


def _mutate(c: Chromosome, rate: float, rng) -> Chromosome:
    if rate <= 0.0:
        return c
    hits = rng.random(len(c.genes)) < rate
    if not hits.any():
        return c
    genes = list(c.genes)
    for i in np.flatnonzero(hits):
        locus = c.schema.loci[i]
        if locus.kind is GeneKind.BIT:
            genes[i] = 1 - genes[i]
        elif locus.kind is GeneKind.INT:
            genes[i] = int(rng.integers(locus.low, locus.high + 1))
        else:
            if locus.low is None:
                raise EngineError("real loci need bounds for mutation")
            genes[i] = float(rng.uniform(locus.low, locus.high))
    return Chromosome(c.schema, tuple(genes))


def _generation_curve(cfg: EngineConfig, fitnesses):
    return build_curve(
        cfg.curve,
        fitnesses,
        direction=cfg.direction,
        n0=cfg.hard_threshold,
        average=cfg.adaptive_average,
    )


def select_parent_pool(members, curve, rng, direction: str) -> list:
    """Admit members to the parent pool by independent Bernoulli draws.

    Each member enters with probability curve(fitness).  Selection is
    probabilistic survival, not a cutoff: poor members keep a chance and
    good ones keep a risk.  If fewer than two members survive the draws,
    the best two are admitted so the generation can still reproduce.
    """
    draws = rng.random(len(members))
    pool = [m for m, u in zip(members, draws) if u < select_probability(curve, m.fitness)]
    if len(pool) < 2:
        ranked = sorted(members, key=lambda m: m.fitness, reverse=(direction == MAXIMIZE))
        pool = list(ranked[:2])
    return pool


def _check_conservation(p_a, p_b, o_a, o_b, reference) -> None:
    # sampled self-check: crossover output must conserve both the pair
    # distance and the power sums to an arbitrary reference
    for p in (1, 2):
        lhs = distance_pow(p_a, p_b, p)
        rhs = distance_pow(o_a, o_b, p)
        if not math.isclose(lhs, rhs, rel_tol=1e-9, abs_tol=1e-12):
            raise EngineError(f"pair distance not conserved: {lhs} != {rhs}")
        lhs = distance_pow(p_a, reference, p) + distance_pow(p_b, reference, p)
        rhs = distance_pow(o_a, reference, p) + distance_pow(o_b, reference, p)
        if not math.isclose(lhs, rhs, rel_tol=1e-9, abs_tol=1e-12):
            raise EngineError(f"reference sums not conserved: {lhs} != {rhs}")


def _population_stats(pop: Population, cfg: EngineConfig, evaluations: int) -> GenerationStats:
    fits = pop.fitnesses()
    summary = quartiles(fits)
    return GenerationStats(
        generation=pop.generation,
        best_fitness=_best_member(pop.members, cfg.direction).fitness,
        median_fitness=summary.f_half,
        summary=summary,
        better_half_volume=better_half_volume(pop, cfg.direction),
        evaluations_so_far=evaluations,
    )


def step(
    pop: Population,
    cfg: EngineConfig,
    objective: Callable[[Chromosome], float],
    rng,
    evaluations_so_far: int = 0,
    max_new_evaluations: Optional[int] = None,
):
    """Advance one generation; returns (next population, its stats).

    The parent pool is drawn by per-member Bernoulli trials on the current
    generation's selection curve (with a best-two fallback so the pool
    never collapses below a pair); admitted parents are shuffled and
    paired off; offspring are crossed over, mutated and evaluated; the
    next population is the offspring topped up with uniformly resampled
    parents, which keep their known fitness.
    """
    schema = pop.schema
    n = schema.length
    if cfg.crossover_points > n - 1:
        raise EngineError(f"{cfg.crossover_points}-point crossover impossible on {n} loci")
    fits = pop.fitnesses()
    curve = _generation_curve(cfg, fits)
    pool = select_parent_pool(pop.members, curve, rng, cfg.direction)

    order = rng.permutation(len(pool))
    offspring_chromosomes = []
    checked = False
    for i in range(0, len(pool) - 1, 2):
        p_a = pool[order[i]].chromosome
        p_b = pool[order[i + 1]].chromosome
        mask = CrossoverMask.random(n, rng, cfg.crossover_points)
        o_a, o_b = crossover(p_a, p_b, mask)
        if cfg.conservation_check and not checked:
            _check_conservation(
                p_a, p_b, o_a, o_b, _best_member(pop.members, cfg.direction).chromosome
            )
            checked = True
        offspring_chromosomes.append(_mutate(o_a, cfg.mutation_rate, rng))
        offspring_chromosomes.append(_mutate(o_b, cfg.mutation_rate, rng))

    offspring_chromosomes = offspring_chromosomes[: cfg.population_size]
    if max_new_evaluations is not None:
        offspring_chromosomes = offspring_chromosomes[:max_new_evaluations]
    offspring = [Member(c, float(objective(c))) for c in offspring_chromosomes]

    next_members = list(offspring)
    while len(next_members) < cfg.population_size:
        next_members.append(pool[int(rng.integers(len(pool)))])

    if cfg.elitism:
        incumbent = _best_member(pop.members, cfg.direction)
        champion = _best_member(next_members, cfg.direction)
        if _is_better(incumbent.fitness, champion.fitness, cfg.direction):
            worst_i = max(
                range(len(next_members)),
                key=lambda i: next_members[i].fitness
                if cfg.direction == MINIMIZE
                else -next_members[i].fitness,
            )
            next_members[worst_i] = incumbent

    nxt = Population(tuple(next_members), pop.generation + 1)
    stats = _population_stats(nxt, cfg, evaluations_so_far + len(offspring))
    return nxt, stats


def default_discrete_budget(schema: Schema) -> int:
    """ceil(B^1.5 * ln B) objective evaluations for B encoded bits."""
    bits = schema.bit_length()
    if bits < 2:
        raise EngineError("discrete budget needs at least 2 encoded bits")
    return math.ceil(bits**1.5 * math.log(bits))


def run(
    cfg: EngineConfig,
    objective: Callable[[Chromosome], float],
    schema: Schema,
    initializer: Optional[Callable[[Schema, object], Chromosome]] = None,
) -> RunResult:
    """Run the GA to one of its stopping rules.

    Continuous schemas stop when the better-half volume has not strictly
    decreased for cfg.stall_generations consecutive generations; discrete
    schemas stop at the evaluation budget.  cfg.max_generations always
    applies.  The returned best is the best chromosome ever evaluated.
    """
    if not (schema.is_continuous or schema.is_discrete):
        raise EngineError("mixed real/discrete schemas are not supported")
    unbounded = any(l.kind is GeneKind.REAL and l.low is None for l in schema.loci)
    if unbounded and (initializer is None or cfg.mutation_rate > 0):
        raise EngineError("real loci need bounds unless a custom initializer is used with zero mutation")
    rng = np.random.default_rng(cfg.seed)
    init = initializer or uniform_chromosome

    members = []
    for _ in range(cfg.population_size):
        c = init(schema, rng)
        members.append(Member(c, float(objective(c))))
    evaluations = cfg.population_size
    pop = Population(tuple(members), 0)
    best = _best_member(pop.members, cfg.direction)
    history = [_population_stats(pop, cfg, evaluations)]

    budget = None
    if schema.is_discrete:
        budget = cfg.eval_budget if cfg.eval_budget is not None else default_discrete_budget(schema)
        if evaluations >= budget:
            return RunResult(best.chromosome, best.fitness, history, STOP_BUDGET)

    stall = 0
    reason = STOP_MAX_GENERATIONS
    for _ in range(cfg.max_generations):
        cap = budget - evaluations if budget is not None else None
        pop, stats = step(
            pop, cfg, objective, rng, evaluations_so_far=evaluations, max_new_evaluations=cap
        )
        evaluations = stats.evaluations_so_far
        history.append(stats)
        candidate = _best_member(pop.members, cfg.direction)
        if _is_better(candidate.fitness, best.fitness, cfg.direction):
            best = candidate
        if budget is not None:
            if evaluations >= budget:
                reason = STOP_BUDGET
                break
        else:
            current = stats.better_half_volume
            previous = history[-2].better_half_volume
            if current is not None and previous is not None and current < previous:
                stall = 0
            else:
                stall += 1
            if stall >= cfg.stall_generations:
                reason = STOP_STALL
                break
    return RunResult(best.chromosome, best.fitness, history, reason)
