"""Genetic search over 512-bit Moore-neighborhood rule chromosomes.

Fitness is the Euclidean distance between a rule's concatenated behavior
measures and a target vector (the Game of Life's published measures by
default). Rules with nonzero stability in either measure are hard
constraint violations and never enter the emitted catalog. Every distinct
evaluated chromosome is archived with its record.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .catalog import CatalogRecord
from .measures import (
    GOL_TARGET,
    BehaviorVector,
    DynamicParams,
    MeasureError,
    correlation,
    distance,
    dynamic_measure,
    feature_vector,
    static_measure,
)
from .rules import MOORE_ARITY, TruthTable, encode_rule_number

CHROMOSOME_BITS = 1 << MOORE_ARITY


@dataclass
class Individual:
    chromosome: np.ndarray  # 512 uint8 bits
    me: BehaviorVector | None = None
    md: BehaviorVector | None = None
    fitness: float = math.inf
    stability_zero: bool = False
    generation_found: int = 0

    @property
    def key(self) -> bytes:
        return self.chromosome.tobytes()

    def truth_table(self) -> TruthTable:
        return TruthTable(MOORE_ARITY, tuple(int(b) for b in self.chromosome))


@dataclass(frozen=True)
class GAConfig:
    pop_size: int = 20
    generations: int = 5000
    mutation_prob: float = 0.01
    seed: int = 0
    elitism: int = 2
    tournament: int = 3
    dyn_runs: int = 10
    dyn_dims: tuple[int, int] = (100, 100)
    dyn_max_steps: int = 100
    dyn_density: float = 0.5
    cover_mode: str = "greedy"
    keep: int = 1000
    target: tuple[float, ...] = GOL_TARGET

    def __post_init__(self) -> None:
        if self.pop_size < 2:
            raise ValueError("population must hold at least 2 individuals")
        if not 0.0 <= self.mutation_prob <= 1.0:
            raise ValueError("mutation probability must lie in [0, 1]")
        if self.dyn_runs < 1:
            raise ValueError("dynamic sampling needs at least one run")
        if len(self.target) != 8:
            raise ValueError("target must be an 8-component feature vector")

    def dynamic_params(self, chromosome_seed: int) -> DynamicParams:
        return DynamicParams(
            runs=self.dyn_runs,
            dims=self.dyn_dims,
            max_steps=self.dyn_max_steps,
            density=self.dyn_density,
            seed=chromosome_seed,
        )


def _dynamic_seed(cfg: GAConfig, chromosome: np.ndarray) -> int:
    """Per-chromosome sampling seed: stable within a run, so re-evaluating
    the same individual reproduces the same dynamic measure."""
    digest = hashlib.sha256(
        cfg.seed.to_bytes(8, "little", signed=True) + chromosome.tobytes()
    ).digest()
    return int.from_bytes(digest[:8], "little")


def random_population(cfg: GAConfig, rng: np.random.Generator) -> list[Individual]:
    return [
        Individual(rng.integers(0, 2, size=CHROMOSOME_BITS, dtype=np.uint8))
        for _ in range(cfg.pop_size)
    ]


def evaluate(ind: Individual, cfg: GAConfig) -> Individual:
    """Fill in measures and fitness; stability violations get worst fitness."""
    tt = ind.truth_table()
    ind.me = static_measure(tt, cfg.cover_mode)
    if ind.me.stability > 0:
        ind.md = None
        ind.fitness = math.inf
        ind.stability_zero = False
        return ind
    ind.md = dynamic_measure(
        tt, cfg.dynamic_params(_dynamic_seed(cfg, ind.chromosome)), cfg.cover_mode
    )
    ind.stability_zero = ind.md.stability == 0
    if not ind.stability_zero:
        ind.fitness = math.inf
    else:
        ind.fitness = distance(feature_vector(ind.me, ind.md), cfg.target)
    return ind


def one_point_crossover(
    a: np.ndarray, b: np.ndarray, point: int
) -> tuple[np.ndarray, np.ndarray]:
    """Exchange prefixes of two chromosomes at bit index `point`."""
    if not 1 <= point <= CHROMOSOME_BITS - 1:
        raise ValueError(f"crossover point out of range: {point}")
    child1 = np.concatenate([a[:point], b[point:]])
    child2 = np.concatenate([b[:point], a[point:]])
    return child1, child2


def mutate(chromosome: np.ndarray, p: float, rng: np.random.Generator) -> np.ndarray:
    """Flip each bit independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("mutation probability must lie in [0, 1]")
    flips = rng.random(chromosome.shape) < p
    return np.where(flips, 1 - chromosome, chromosome).astype(np.uint8)


def _rank_key(ind: Individual) -> tuple[float, bytes]:
    return (ind.fitness, ind.key)


def _tournament(
    population: list[Individual], cfg: GAConfig, rng: np.random.Generator
) -> Individual:
    picks = rng.integers(0, len(population), size=cfg.tournament)
    return min((population[i] for i in picks), key=_rank_key)


def _record(ind: Individual, cfg: GAConfig) -> CatalogRecord:
    tt = ind.truth_table()
    rule = encode_rule_number(tt)
    corr: float | None
    try:
        corr = correlation(ind.me, ind.md) if ind.md is not None else None
    except MeasureError:
        corr = None
    return CatalogRecord(
        rule=str(rule.value),
        arity=MOORE_ARITY,
        me=list(ind.me.as_tuple()),
        md=list(ind.md.as_tuple()) if ind.md is not None else None,
        fitness=ind.fitness,
        correlation=corr,
        metadata={
            "seed": cfg.seed,
            "cover_mode": cfg.cover_mode,
            "generation_found": ind.generation_found,
            "dynamic": {
                "runs": cfg.dyn_runs,
                "dims": list(cfg.dyn_dims),
                "max_steps": cfg.dyn_max_steps,
                "density": cfg.dyn_density,
            },
        },
    )


def run_ga(cfg: GAConfig, progress=None) -> list[CatalogRecord]:
    """Generational GA; returns the archive of valid rules sorted by fitness.

    Selection is seeded tournament (with elitism), variation is one-point
    crossover plus per-bit mutation. The archive deduplicates evaluated
    chromosomes; records of stability violators are kept internally but
    excluded from the returned catalog.
    """
    rng = np.random.default_rng(cfg.seed)
    archive: dict[bytes, Individual] = {}
    population = random_population(cfg, rng)

    for generation in range(cfg.generations):
        for ind in population:
            cached = archive.get(ind.key)
            if cached is not None:
                ind.me, ind.md = cached.me, cached.md
                ind.fitness = cached.fitness
                ind.stability_zero = cached.stability_zero
                ind.generation_found = cached.generation_found
            else:
                ind.generation_found = generation
                evaluate(ind, cfg)
                archive[ind.key] = ind
        population.sort(key=_rank_key)
        if progress is not None:
            progress(generation, population[0])
        if generation == cfg.generations - 1:
            break
        next_population = [
            Individual(elite.chromosome.copy())
            for elite in population[: cfg.elitism]
        ]
        while len(next_population) < cfg.pop_size:
            parent_a = _tournament(population, cfg, rng)
            parent_b = _tournament(population, cfg, rng)
            point = int(rng.integers(1, CHROMOSOME_BITS))
            child_a, child_b = one_point_crossover(
                parent_a.chromosome, parent_b.chromosome, point
            )
            next_population.append(Individual(mutate(child_a, cfg.mutation_prob, rng)))
            if len(next_population) < cfg.pop_size:
                next_population.append(
                    Individual(mutate(child_b, cfg.mutation_prob, rng))
                )
        population = next_population

    valid = [ind for ind in archive.values() if ind.stability_zero]
    valid.sort(key=_rank_key)
    return [_record(ind, cfg) for ind in valid[: cfg.keep]]
