"""Lattice evolution, behavior fields, and image output.

Lattices are numpy uint8 arrays of 0/1 cells: 1D arrays for elementary
rules, 2D arrays for Moore-neighborhood rules. Boundaries are always
toroidal. The fast engine precomputes a 2^m lookup keyed by the packed
neighborhood index and applies it with vectorized rolls; a naive
pure-Python engine exists as a cross-check oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .heval import HTables, DEFAULT_TABLES, m_truth_table
from .rules import (
    ELEMENTARY_ARITY,
    MOORE_ARITY,
    TruthTable,
    index_to_cells,
    neighborhood_index,
)

#: Row-major offsets of the 2D Moore neighborhood, most significant first.
MOORE_OFFSETS = tuple(
    (di, dj) for di in (-1, 0, 1) for dj in (-1, 0, 1)
)

#: Pixel colors for M codes 0..5 in rendered fields.
M_PALETTE = (
    (255, 255, 255),  # 0 {0, stable}: white
    (255, 255, 0),    # 1 {0, decrease}: yellow
    (0, 255, 0),      # 2 {0, chaotic}: green
    (255, 0, 0),      # 3 {1, chaotic}: red
    (0, 0, 255),      # 4 {1, growth}: blue
    (0, 0, 0),        # 5 {1, stable}: black
)


class LatticeError(ValueError):
    """Lattice shape incompatible with the rule arity."""


def _check_dims(c: np.ndarray, tt: TruthTable) -> None:
    if tt.arity == ELEMENTARY_ARITY and c.ndim != 1:
        raise LatticeError("elementary rules evolve 1D lattices")
    if tt.arity == MOORE_ARITY and c.ndim != 2:
        raise LatticeError("Moore-neighborhood rules evolve 2D lattices")
    if c.ndim not in (1, 2):
        raise LatticeError(f"unsupported lattice rank {c.ndim}")


def random_lattice(
    dims: int | tuple[int, int], density: float, rng: np.random.Generator
) -> np.ndarray:
    """Random 0/1 lattice with i.i.d. live probability `density`."""
    return (rng.random(dims) < density).astype(np.uint8)


def neighborhood_index_field(c: np.ndarray) -> np.ndarray:
    """Packed neighborhood index of every cell, toroidal wrap."""
    if c.ndim == 1:
        left = np.roll(c, 1)
        right = np.roll(c, -1)
        return (left.astype(np.uint16) << 2) | (c.astype(np.uint16) << 1) | right
    idx = np.zeros(c.shape, dtype=np.uint16)
    for k, (di, dj) in enumerate(MOORE_OFFSETS):
        shifted = np.roll(np.roll(c, -di, axis=0), -dj, axis=1)
        idx = (idx << 1) | shifted
    return idx


@lru_cache(maxsize=64)
def _state_lut(tt: TruthTable) -> np.ndarray:
    return tt.as_array()


@lru_cache(maxsize=64)
def _mcode_lut(tt: TruthTable, mode: str, tables: HTables) -> np.ndarray:
    return np.array(m_truth_table(tt, mode, tables), dtype=np.uint8)


def step(c: np.ndarray, tt: TruthTable) -> np.ndarray:
    """Synchronous update of every cell on the torus."""
    _check_dims(c, tt)
    return _state_lut(tt)[neighborhood_index_field(c)]


def step_naive(c: np.ndarray, tt: TruthTable) -> np.ndarray:
    """Reference engine: per-cell Python loop, used as a test oracle."""
    _check_dims(c, tt)
    out = np.zeros_like(c)
    if c.ndim == 1:
        n = c.shape[0]
        for x in range(n):
            cells = (c[(x - 1) % n], c[x], c[(x + 1) % n])
            out[x] = tt.outputs[neighborhood_index(cells)]
        return out
    rows, cols = c.shape
    for i in range(rows):
        for j in range(cols):
            cells = [
                int(c[(i + di) % rows, (j + dj) % cols]) for di, dj in MOORE_OFFSETS
            ]
            out[i, j] = tt.outputs[neighborhood_index(cells)]
    return out


def m_field(
    c: np.ndarray,
    tt: TruthTable,
    mode: str = "auto",
    tables: HTables = DEFAULT_TABLES,
) -> np.ndarray:
    """M code of every cell's next step; state projection equals step(c, tt)."""
    _check_dims(c, tt)
    return _mcode_lut(tt, mode, tables)[neighborhood_index_field(c)]


@dataclass
class EvolutionHistory:
    """Frames C^0..C^T with optional aligned M fields D^1..D^T."""

    frames: list[np.ndarray]
    mfields: list[np.ndarray] | None = None


def evolve(
    c0: np.ndarray,
    tt: TruthTable,
    steps: int,
    with_mfields: bool = False,
    mode: str = "auto",
    tables: HTables = DEFAULT_TABLES,
) -> EvolutionHistory:
    if steps < 0:
        raise ValueError("step count must be non-negative")
    frames = [np.array(c0, dtype=np.uint8)]
    mfields: list[np.ndarray] | None = [] if with_mfields else None
    for _ in range(steps):
        if with_mfields:
            mfields.append(m_field(frames[-1], tt, mode, tables))
        frames.append(step(frames[-1], tt))
    return EvolutionHistory(frames, mfields)


def averaged_spacetime(history: EvolutionHistory) -> np.ndarray:
    """Row t = per-column mean state of frame t; time increases downward."""
    if history.frames[0].ndim != 2:
        raise LatticeError("averaged spacetime requires a 2D history")
    return np.stack([f.mean(axis=0) for f in history.frames])


def spacetime(history: EvolutionHistory) -> np.ndarray:
    """1D history stacked into a (time, space) binary matrix."""
    if history.frames[0].ndim != 1:
        raise LatticeError("raw spacetime requires a 1D history")
    return np.stack(history.frames)


# --- PPM output -------------------------------------------------------------

def ppm_bytes(array: np.ndarray, kind: str = "auto") -> bytes:
    """Binary PPM (P6) payload for a lattice, M field, or grayscale matrix.

    kind: "binary" (0 white / 1 black), "mfield" (6-color palette),
    "gray" (linear 0..1 -> 0..255), or "auto" (floats render gray,
    integer arrays with values above 1 render as M fields).
    """
    if array.ndim != 2:
        raise ValueError("PPM output requires a 2D array")
    if kind == "auto":
        if np.issubdtype(array.dtype, np.floating):
            kind = "gray"
        elif array.max(initial=0) > 1:
            kind = "mfield"
        else:
            kind = "binary"
    rows, cols = array.shape
    if kind == "gray":
        level = np.clip(np.rint(array * 255), 0, 255).astype(np.uint8)
        pixels = np.repeat(level[:, :, None], 3, axis=2)
    elif kind == "binary":
        level = np.where(array > 0, 0, 255).astype(np.uint8)
        pixels = np.repeat(level[:, :, None], 3, axis=2)
    elif kind == "mfield":
        palette = np.array(M_PALETTE, dtype=np.uint8)
        pixels = palette[array.astype(np.uint8)]
    else:
        raise ValueError(f"unknown render kind {kind!r}")
    header = f"P6\n{cols} {rows}\n255\n".encode()
    return header + pixels.tobytes()


def render_ppm(array: np.ndarray, path: str | Path, kind: str = "auto") -> None:
    Path(path).write_bytes(ppm_bytes(array, kind))


def load_pattern(path: str | Path) -> np.ndarray:
    """Read a plain-text 0/1 grid, rows newline-separated."""
    lines = [line for line in Path(path).read_text().splitlines() if line.strip()]
    if not lines:
        raise ValueError(f"empty pattern file {path}")
    widths = {len(line) for line in lines}
    if len(widths) != 1:
        raise ValueError(f"ragged pattern file {path}")
    if any(ch not in "01" for line in lines for ch in line):
        raise ValueError(f"pattern file {path} must contain only 0/1")
    return np.array([[int(ch) for ch in line] for line in lines], dtype=np.uint8)
