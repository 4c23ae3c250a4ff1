"""JSONL catalogs of analyzed rules and the published-rules importer.

One JSON object per line. Rule numbers are decimal strings so that 512-bit
values survive any JSON consumer.
"""
from __future__ import annotations

import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable, TextIO

from .rules import RuleError, RuleNumber, decode_rule_number

_VECTOR_TOLERANCE = 1e-6


class CatalogError(ValueError):
    pass


def _check_vector(name: str, vec) -> list[float] | None:
    if vec is None:
        return None
    vec = [float(v) for v in vec]
    if len(vec) != 4:
        raise CatalogError(f"{name} must have 4 components, got {len(vec)}")
    if abs(sum(vec) - 100.0) > _VECTOR_TOLERANCE:
        raise CatalogError(f"{name} must sum to 100, got {sum(vec)}")
    return vec


@dataclass
class CatalogRecord:
    """One analyzed rule: its number, behavior measures, and search context."""

    rule: str
    arity: int
    me: list[float]
    md: list[float] | None = None
    fitness: float | None = None
    correlation: float | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        try:
            decode_rule_number(RuleNumber(int(self.rule), self.arity))
        except (ValueError, RuleError) as exc:
            raise CatalogError(f"invalid rule number for arity {self.arity}: {exc}")
        self.me = _check_vector("me", self.me)
        self.md = _check_vector("md", self.md)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "CatalogRecord":
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CatalogError(f"malformed JSON: {exc}")
        if not isinstance(data, dict):
            raise CatalogError("catalog line must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise CatalogError(f"unknown fields: {sorted(unknown)}")
        missing = {"rule", "arity", "me"} - set(data)
        if missing:
            raise CatalogError(f"missing fields: {sorted(missing)}")
        return cls(**data)


def write_catalog(records: Iterable[CatalogRecord], path: str | Path) -> None:
    with open(path, "w") as fh:
        for record in records:
            fh.write(record.to_json() + "\n")


def read_catalog(path: str | Path) -> list[CatalogRecord]:
    records = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                records.append(CatalogRecord.from_json(line))
            except CatalogError as exc:
                raise CatalogError(f"{path}:{lineno}: {exc}")
    return records


def import_published_rules(
    path: str | Path,
    bit_order: str = "lsb",
    arity: int = 9,
    dynamic_params=None,
    cover_mode: str = "greedy",
    diagnostics: TextIO = sys.stderr,
) -> list[CatalogRecord]:
    """Decode a plain-text file of decimal rule numbers, one per line.

    Each valid line becomes a record with its static measure; pass
    `dynamic_params` to also sample the dynamic measure (off by default —
    decoding hundreds of rules should not force hundreds of simulations).
    Malformed lines are reported to `diagnostics` with their line number
    and skipped; the remaining lines still produce records.
    """
    from .measures import (  # local import to avoid a cycle with measures
        MeasureError,
        correlation,
        dynamic_measure,
        static_measure,
    )

    records = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                number = RuleNumber(int(text), arity)
                tt = decode_rule_number(number, bit_order)
            except (ValueError, RuleError) as exc:
                print(f"{path}:{lineno}: skipped: {exc}", file=diagnostics)
                continue
            me = static_measure(tt, cover_mode)
            md = corr = None
            if dynamic_params is not None:
                md = dynamic_measure(tt, dynamic_params, cover_mode)
                try:
                    corr = correlation(me, md)
                except MeasureError:
                    corr = None
            records.append(
                CatalogRecord(
                    rule=str(number.value),
                    arity=arity,
                    me=list(me.as_tuple()),
                    md=list(md.as_tuple()) if md is not None else None,
                    correlation=corr,
                    metadata={
                        "source": str(path),
                        "bit_order": bit_order,
                        "cover_mode": cover_mode,
                    },
                )
            )
    return records
