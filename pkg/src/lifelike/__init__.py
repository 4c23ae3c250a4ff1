"""Behavior-based characterization and search of binary cellular automata.

Pipeline: decode a rule number into a truth table, minimize it into a
Boolean expression, re-evaluate the expression over a 6-valued
state/behavior code, and summarize the codes as static and dynamic
behavior measures. A genetic algorithm searches the 2D Moore-neighborhood
rule space for automata whose measures approach a target such as the
Game of Life's.
"""
from .boolmin import (
    CoverBudgetExceeded,
    format_expr,
    leaf_count,
    minimize,
    minimize_detailed,
)
from .catalog import CatalogError, CatalogRecord, import_published_rules, read_catalog, write_catalog
from .heval import DEFAULT_TABLES, HTables, eval_g, m_truth_table, validate_h
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
from .rules import (
    RuleError,
    RuleNumber,
    TruthTable,
    decode_rule_number,
    elementary,
    encode_rule_number,
    format_rule_spec,
    gol_truth_table,
    parse_rule_spec,
)
from .search import GAConfig, run_ga
from .simulator import (
    EvolutionHistory,
    LatticeError,
    averaged_spacetime,
    evolve,
    m_field,
    random_lattice,
    render_ppm,
    spacetime,
    step,
)

__all__ = [
    "BehaviorVector",
    "CatalogError",
    "CatalogRecord",
    "CoverBudgetExceeded",
    "DEFAULT_TABLES",
    "DynamicParams",
    "EvolutionHistory",
    "GAConfig",
    "GOL_TARGET",
    "HTables",
    "LatticeError",
    "MeasureError",
    "RuleError",
    "RuleNumber",
    "TruthTable",
    "averaged_spacetime",
    "correlation",
    "decode_rule_number",
    "distance",
    "dynamic_measure",
    "elementary",
    "encode_rule_number",
    "eval_g",
    "evolve",
    "feature_vector",
    "format_expr",
    "format_rule_spec",
    "gol_truth_table",
    "import_published_rules",
    "leaf_count",
    "m_field",
    "m_truth_table",
    "minimize",
    "minimize_detailed",
    "parse_rule_spec",
    "random_lattice",
    "read_catalog",
    "render_ppm",
    "run_ga",
    "spacetime",
    "static_measure",
    "step",
    "validate_h",
    "write_catalog",
]

__version__ = "0.1.0"
