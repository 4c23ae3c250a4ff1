"""Six-valued operator tables and behavior-aware evaluation of rule trees.

Each cell of the truth table is re-evaluated over the M code (state bit
plus behavior label) instead of plain bits: leaves map 0 -> M=0 and
1 -> M=5, and every NOT/AND/OR/XOR node combines M codes through fixed
6-valued tables. The state bit of the result always projects back to the
plain Boolean value; the behavior axis carries the growth / decrease /
chaoticity bookkeeping.

The binary tables follow a severity order chaotic > decrease > stable on
state-0 results, and a destroyed live input (operand states differing
under AND) reads as decrease. n-ary nodes are folded left-associatively
over their canonically sorted children.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import boolmin
from .boolmin import BoolExpr, minimize_detailed
from .rules import (
    CHAOTIC_CODES,
    DECREASE_CODES,
    GROWTH_CODES,
    M_VALUES,
    TruthTable,
    elementary,
    state_of,
)

LEAF_CODES = (0, 5)  # bit 0 -> {0, stable}, bit 1 -> {1, stable}


def _severity(codes: Sequence[int]) -> int:
    """State-0 result code under chaotic > decrease > stable."""
    if any(c in CHAOTIC_CODES for c in codes):
        return 2
    if any(c in DECREASE_CODES for c in codes):
        return 1
    return 0


def _build_not() -> np.ndarray:
    # Involution flipping the state bit and preserving the behavior axis.
    return np.array([5 - a for a in M_VALUES], dtype=np.uint8)


def _build_and() -> np.ndarray:
    table = np.zeros((6, 6), dtype=np.uint8)
    for a in M_VALUES:
        for b in M_VALUES:
            sa, sb = state_of(a), state_of(b)
            if sa & sb:
                if a == b == 5:
                    out = 5
                elif 3 in (a, b):
                    out = 3
                else:
                    out = 4
            elif sa != sb:
                out = 1  # a live input was destroyed
            else:
                out = _severity((a, b))
            table[a, b] = out
    return table


def _build_or() -> np.ndarray:
    table = np.zeros((6, 6), dtype=np.uint8)
    for a in M_VALUES:
        for b in M_VALUES:
            if state_of(a) | state_of(b):
                table[a, b] = 5 if a == b == 5 else 4
            else:
                table[a, b] = _severity((a, b))
    return table


def _build_xor() -> np.ndarray:
    table = np.zeros((6, 6), dtype=np.uint8)
    for a in M_VALUES:
        for b in M_VALUES:
            sa, sb = state_of(a), state_of(b)
            if sa ^ sb:
                table[a, b] = 4
            elif sa and sb:
                table[a, b] = 2
            elif a in CHAOTIC_CODES or b in CHAOTIC_CODES:
                table[a, b] = 2
            else:
                table[a, b] = 0
    return table


@dataclass(frozen=True, eq=False)
class HTables:
    """Operator tables over the 6-valued M domain."""

    not_table: np.ndarray = field(default_factory=_build_not)
    and_table: np.ndarray = field(default_factory=_build_and)
    or_table: np.ndarray = field(default_factory=_build_or)
    xor_table: np.ndarray = field(default_factory=_build_xor)

    def replaced(self, op: str, a: int, b: int | None, value: int) -> "HTables":
        """Copy with one entry perturbed (for sensitivity checks)."""
        arrays = {
            "not": self.not_table.copy(),
            "and": self.and_table.copy(),
            "or": self.or_table.copy(),
            "xor": self.xor_table.copy(),
        }
        if op == "not":
            arrays[op][a] = value
        else:
            arrays[op][a, b] = value
            arrays[op][b, a] = value
        return HTables(arrays["not"], arrays["and"], arrays["or"], arrays["xor"])


DEFAULT_TABLES = HTables()


def h_not(a: int, tables: HTables = DEFAULT_TABLES) -> int:
    return int(tables.not_table[a])


def h_and(a: int, b: int, tables: HTables = DEFAULT_TABLES) -> int:
    return int(tables.and_table[a, b])


def h_or(a: int, b: int, tables: HTables = DEFAULT_TABLES) -> int:
    return int(tables.or_table[a, b])


def h_xor(a: int, b: int, tables: HTables = DEFAULT_TABLES) -> int:
    return int(tables.xor_table[a, b])


def _eval_vec(expr: BoolExpr, leaves: np.ndarray, tables: HTables) -> np.ndarray:
    """Evaluate over a batch: leaves has shape (n_assignments, arity)."""
    if isinstance(expr, boolmin.Var):
        return leaves[:, expr.index]
    if isinstance(expr, boolmin.Const):
        value = 0 if expr.bit == 0 else 5
        return np.full(leaves.shape[0], value, dtype=np.uint8)
    if isinstance(expr, boolmin.Not):
        return tables.not_table[_eval_vec(expr.child, leaves, tables)]
    table = {
        boolmin.And: tables.and_table,
        boolmin.Or: tables.or_table,
        boolmin.Xor: tables.xor_table,
    }[type(expr)]
    acc = _eval_vec(expr.children[0], leaves, tables)
    for child in expr.children[1:]:
        acc = table[acc, _eval_vec(child, leaves, tables)]
    return acc


def eval_g(
    expr: BoolExpr, input_bits: Sequence[int], tables: HTables = DEFAULT_TABLES
) -> int:
    """M code of one neighborhood under a minimized expression tree."""
    leaves = np.array([[LEAF_CODES[b] for b in input_bits]], dtype=np.uint8)
    if leaves.shape[1] == 0:
        leaves = leaves.reshape(1, 0)
    return int(_eval_vec(expr, leaves, tables)[0])


def eval_g_all(expr: BoolExpr, arity: int, tables: HTables = DEFAULT_TABLES) -> np.ndarray:
    """M codes for every assignment, indexed by neighborhood value."""
    n = 1 << arity
    indices = np.arange(n, dtype=np.uint32)
    leaves = np.zeros((n, arity), dtype=np.uint8)
    for j in range(arity):
        leaves[:, j] = ((indices >> (arity - 1 - j)) & 1) * 5
    return _eval_vec(expr, leaves, tables)


def m_truth_table(
    tt: TruthTable, mode: str = "auto", tables: HTables = DEFAULT_TABLES
) -> tuple[int, ...]:
    """The truth table re-coded over M, one code per neighborhood index."""
    expr = boolmin.minimize(tt, mode)
    return tuple(int(c) for c in eval_g_all(expr, tt.arity, tables))


def behavior_counts(codes: Sequence[int]) -> dict[str, int]:
    counts = {"stability": 0, "decrease": 0, "growth": 0, "chaoticity": 0}
    for c in codes:
        if c in CHAOTIC_CODES:
            counts["chaoticity"] += 1
        elif c in DECREASE_CODES:
            counts["decrease"] += 1
        elif c in GROWTH_CODES:
            counts["growth"] += 1
        else:
            counts["stability"] += 1
    return counts


# --- constraint suite -------------------------------------------------------

@dataclass(frozen=True)
class ConstraintResult:
    name: str
    passed: bool
    expected: str
    actual: str


def _fraction(tt: TruthTable, behavior: str, tables: HTables) -> float:
    codes = m_truth_table(tt, "exact", tables)
    return behavior_counts(codes)[behavior] / len(codes)


def validate_h(tables: HTables = DEFAULT_TABLES) -> list[ConstraintResult]:
    """Check every documented constraint on the operator tables.

    Covers the leaf mapping, the behavior fractions of the reference
    elementary rules, the full M-coded table of rule 94, and the
    intermediate values of its 101-input evaluation.
    """
    results: list[ConstraintResult] = []

    def check(name: str, expected, actual) -> None:
        results.append(
            ConstraintResult(name, expected == actual, repr(expected), repr(actual))
        )

    leaf0 = eval_g(boolmin.Var(0), (0,), tables)
    leaf1 = eval_g(boolmin.Var(0), (1,), tables)
    check("leaf mapping 0->M0, 1->M5", (0, 5), (leaf0, leaf1))

    fractions = [
        ("rule 150 chaoticity", "chaoticity", 150, 0.375),
        ("rule 90 chaoticity", "chaoticity", 90, 0.25),
        ("rule 204 chaoticity", "chaoticity", 204, 0.0),
        ("rule 204 decrease", "decrease", 204, 0.0),
        ("rule 128 decrease", "decrease", 128, 0.75),
        ("rule 160 decrease", "decrease", 160, 0.5),
        ("rule 254 growth", "growth", 254, 0.75),
        ("rule 250 growth", "growth", 250, 0.5),
    ]
    for name, behavior, rule, expected in fractions:
        check(name, expected, _fraction(elementary(rule), behavior, tables))

    check(
        "rule 94 M-coded table",
        (1, 4, 4, 4, 4, 2, 4, 2),
        m_truth_table(elementary(94), "exact", tables),
    )

    # Step-by-step values of the mixed expression (q & !p) | (p ^ r) on
    # input p=1, q=0, r=1.
    steps = (
        h_not(5, tables),
        h_and(0, h_not(5, tables), tables),
        h_xor(5, 5, tables),
        h_or(h_and(0, h_not(5, tables), tables), h_xor(5, 5, tables), tables),
    )
    check("mixed-node walkthrough on input 101", (0, 0, 2, 2), steps)

    return results
