"""Static and dynamic behavior measures, distances, and correlation.

Both measures are percentage vectors (stability, decrease, growth,
chaoticity) summing to 100. The static measure counts behaviors over all
2^m rows of the rule's M-coded truth table; the dynamic measure averages
behavior occurrences over evolutions from random initial lattices,
excluding the initial configuration.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .heval import DEFAULT_TABLES, HTables, m_truth_table
from .rules import CHAOTIC_CODES, TruthTable, ELEMENTARY_ARITY
from .simulator import _mcode_lut, neighborhood_index_field, random_lattice

_SUM_TOLERANCE = 1e-9

#: Published behavior measures of the Game of Life, used as the default
#: search target: (chaoticity, decrease, growth, stability) for the static
#: then the dynamic measure.
GOL_TARGET = (67.96, 4.68, 27.34, 0.0, 13.38, 75.23, 11.37, 0.0)


class MeasureError(ValueError):
    pass


@dataclass(frozen=True)
class BehaviorVector:
    """Behavior percentages in (stability, decrease, growth, chaoticity) order."""

    stability: float
    decrease: float
    growth: float
    chaoticity: float

    def __post_init__(self) -> None:
        for name in ("stability", "decrease", "growth", "chaoticity"):
            object.__setattr__(self, name, float(getattr(self, name)))
        values = self.as_tuple()
        if any(v < 0 for v in values):
            raise MeasureError(f"negative component in {values}")
        if abs(sum(values) - 100.0) > _SUM_TOLERANCE:
            raise MeasureError(f"components must sum to 100, got {sum(values)}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.stability, self.decrease, self.growth, self.chaoticity)

    @classmethod
    def from_counts(cls, counts: np.ndarray | list[int]) -> "BehaviorVector":
        """From per-M-code occurrence counts (length 6)."""
        counts = np.asarray(counts, dtype=np.float64)
        total = counts.sum()
        if total <= 0:
            raise MeasureError("no samples to classify")
        stability = (counts[0] + counts[5]) / total * 100
        decrease = counts[1] / total * 100
        growth = counts[4] / total * 100
        chaoticity = (counts[2] + counts[3]) / total * 100
        return cls(stability, decrease, growth, chaoticity)


@dataclass(frozen=True)
class DynamicParams:
    """Sampling protocol for the dynamic measure."""

    runs: int = 30
    dims: int | tuple[int, int] = (100, 100)
    max_steps: int = 100
    density: float = 0.5
    seed: int = 0

    def __post_init__(self) -> None:
        if self.runs < 1:
            raise MeasureError("runs must be >= 1")
        if self.max_steps < 1:
            raise MeasureError("max_steps must be >= 1")
        if not 0.0 <= self.density <= 1.0:
            raise MeasureError("density must lie in [0, 1]")
        sizes = (self.dims,) if isinstance(self.dims, int) else self.dims
        if any(s < 3 for s in sizes):
            raise MeasureError("lattice dimensions must be >= 3")


def static_measure(
    tt: TruthTable, mode: str = "auto", tables: HTables = DEFAULT_TABLES
) -> BehaviorVector:
    """Behavior percentages over all rows of the M-coded truth table."""
    codes = m_truth_table(tt, mode, tables)
    counts = np.bincount(np.array(codes, dtype=np.uint8), minlength=6)
    return BehaviorVector.from_counts(counts)


def dynamic_measure(
    tt: TruthTable,
    params: DynamicParams,
    mode: str = "auto",
    tables: HTables = DEFAULT_TABLES,
) -> BehaviorVector:
    """Mean per-run behavior percentages over seeded random evolutions.

    Each run i draws a sampling step k_i uniformly from [1, max_steps],
    evolves a fresh random lattice, and classifies every cell at step k_i
    (the initial lattice is never sampled). Uniform k_i gives every time
    step 1..max_steps equal expected weight across runs. Each run derives
    an independent RNG stream from (seed, run index), so results do not
    depend on evaluation order.
    """
    if isinstance(params.dims, int) and tt.arity != ELEMENTARY_ARITY:
        raise MeasureError("1D dims require an elementary rule")
    lut = _mcode_lut(tt, mode, tables)
    state = tt.as_array()
    percentages = np.zeros((params.runs, 6), dtype=np.float64)
    for run in range(params.runs):
        rng = np.random.default_rng([params.seed, run])
        k = int(rng.integers(1, params.max_steps + 1))
        lattice = random_lattice(params.dims, params.density, rng)
        for _ in range(k - 1):
            lattice = state[neighborhood_index_field(lattice)]
        counts = np.bincount(
            lut[neighborhood_index_field(lattice)].ravel(), minlength=6
        )
        percentages[run] = counts / counts.sum() * 100
    mean = percentages.mean(axis=0)
    return BehaviorVector.from_counts(mean)


def feature_vector(
    me: BehaviorVector, md: BehaviorVector
) -> tuple[float, float, float, float, float, float, float, float]:
    """Concatenated (chaoticity, decrease, growth, stability) of both measures."""
    return (
        me.chaoticity,
        me.decrease,
        me.growth,
        me.stability,
        md.chaoticity,
        md.decrease,
        md.growth,
        md.stability,
    )


def distance(a, b) -> float:
    """Euclidean distance between two feature vectors."""
    return float(np.linalg.norm(np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)))


def correlation(me, md) -> float:
    """Pearson correlation between the four aligned behavior components.

    Accepts BehaviorVectors or plain 4-sequences (e.g. published vectors,
    whose rounded components need not sum exactly to 100).
    """
    x = np.asarray(me.as_tuple() if isinstance(me, BehaviorVector) else me, dtype=np.float64)
    y = np.asarray(md.as_tuple() if isinstance(md, BehaviorVector) else md, dtype=np.float64)
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise MeasureError("correlation undefined for a constant vector")
    return float(np.corrcoef(x, y)[0, 1])
