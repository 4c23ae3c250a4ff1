"""`ca` command-line tool.

Machine-readable JSON on stdout, human diagnostics on stderr. Exit codes:
0 success, 1 domain errors (bad rule numbers, unattainable covers, ...),
2 usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import boolmin, catalog, heval, measures, rules, search, simulator


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _parse_size(text: str) -> tuple[int, int] | int:
    """RxC for 2D lattices, a bare integer for 1D."""
    if "x" in text:
        r, _, c = text.partition("x")
        try:
            return (int(r), int(c))
        except ValueError:
            raise rules.RuleError(f"bad lattice size {text!r}") from None
    try:
        return int(text)
    except ValueError:
        raise rules.RuleError(f"bad lattice size {text!r}") from None


def _rule_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("rule", help="elem:<n> | moore2d:<bigint> | table:<path>")
    parser.add_argument(
        "--bit-order",
        choices=rules.BIT_ORDERS,
        default="lsb",
        help="bit-significance convention for moore2d numbers",
    )


def _cover_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--cover-mode",
        choices=("exact", "greedy", "auto"),
        default="auto",
        help="prime-implicant cover strategy",
    )


def _dynamic_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--runs", type=int, default=30, help="random evolutions to average")
    parser.add_argument("--size", default="100x100", help="lattice size, RxC (or N for 1D)")
    parser.add_argument("--steps", type=int, default=100, help="maximum sampling step")
    parser.add_argument("--density", type=float, default=0.5, help="initial live-cell density")
    parser.add_argument("--seed", type=int, default=0, help="sampling seed")


def _dynamic_params(args) -> measures.DynamicParams:
    return measures.DynamicParams(
        runs=args.runs,
        dims=_parse_size(args.size),
        max_steps=args.steps,
        density=args.density,
        seed=args.seed,
    )


def _vector_json(v: measures.BehaviorVector) -> dict:
    return {
        "stability": v.stability,
        "decrease": v.decrease,
        "growth": v.growth,
        "chaoticity": v.chaoticity,
    }


# --- subcommands ------------------------------------------------------------

def _cmd_analyze(args) -> int:
    tt = rules.parse_rule_spec(args.rule, args.bit_order)
    expr, used_mode = boolmin.minimize_detailed(tt, args.cover_mode)
    payload = {
        "rule": rules.format_rule_spec(tt),
        "arity": tt.arity,
        "cover_mode": used_mode,
        "leaves": boolmin.leaf_count(expr),
        "static": _vector_json(measures.static_measure(tt, args.cover_mode)),
    }
    if args.emit_expr:
        payload["expression"] = boolmin.format_expr(expr, tt.arity)
    if args.emit_mtable:
        codes = heval.eval_g_all(expr, tt.arity)
        payload["mtable"] = [int(c) for c in codes]
    _emit(payload)
    if args.emit_mtable:
        for i, c in enumerate(codes):
            print(f"{i} -> {int(c)}", file=sys.stderr)
    return 0


def _cmd_static(args) -> int:
    tt = rules.parse_rule_spec(args.rule, args.bit_order)
    me = measures.static_measure(tt, args.cover_mode)
    _emit(
        {
            "rule": rules.format_rule_spec(tt),
            "cover_mode": args.cover_mode,
            "static": _vector_json(me),
        }
    )
    return 0


def _cmd_dynamic(args) -> int:
    tt = rules.parse_rule_spec(args.rule, args.bit_order)
    params = _dynamic_params(args)
    md = measures.dynamic_measure(tt, params, args.cover_mode)
    _emit(
        {
            "rule": rules.format_rule_spec(tt),
            "cover_mode": args.cover_mode,
            "params": {
                "runs": params.runs,
                "size": list(params.dims) if not isinstance(params.dims, int) else params.dims,
                "max_steps": params.max_steps,
                "density": params.density,
                "seed": params.seed,
            },
            "dynamic": _vector_json(md),
        }
    )
    return 0


def _cmd_distance(args) -> int:
    tt_a = rules.parse_rule_spec(args.rule, args.bit_order)
    tt_b = rules.parse_rule_spec(args.rule_b, args.bit_order)
    params = _dynamic_params(args)
    payload: dict = {
        "params": {
            "runs": params.runs,
            "max_steps": params.max_steps,
            "density": params.density,
            "seed": params.seed,
        },
        "cover_mode": args.cover_mode,
    }
    features = []
    for label, tt in (("a", tt_a), ("b", tt_b)):
        me = measures.static_measure(tt, args.cover_mode)
        md = measures.dynamic_measure(tt, params, args.cover_mode)
        try:
            corr = measures.correlation(me, md)
        except measures.MeasureError:
            corr = None
        payload[label] = {
            "rule": rules.format_rule_spec(tt),
            "static": _vector_json(me),
            "dynamic": _vector_json(md),
            "correlation": corr,
        }
        features.append(measures.feature_vector(me, md))
    payload["distance"] = measures.distance(features[0], features[1])
    _emit(payload)
    return 0


def _cmd_simulate(args) -> int:
    tt = rules.parse_rule_spec(args.rule, args.bit_order)
    rng = np.random.default_rng(args.seed)
    if args.seed_pattern is not None:
        lattice = simulator.load_pattern(args.seed_pattern)
        if tt.arity == rules.ELEMENTARY_ARITY:
            if lattice.shape[0] != 1:
                raise simulator.LatticeError(
                    "elementary rules need a single-row seed pattern"
                )
            lattice = lattice[0]
    else:
        lattice = simulator.random_lattice(
            _parse_size(args.size), args.density, rng
        )
    history = simulator.evolve(lattice, tt, args.steps, with_mfields=True)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if lattice.ndim == 1:
        path = out / "spacetime.ppm"
        simulator.render_ppm(simulator.spacetime(history), path, "binary")
        written.append(path.name)
    else:
        path = out / "spacetime.ppm"
        simulator.render_ppm(simulator.averaged_spacetime(history), path, "gray")
        written.append(path.name)
        for t, frame in enumerate(history.frames):
            name = f"frame-{t:04d}.ppm"
            simulator.render_ppm(frame, out / name, "binary")
            written.append(name)
        for t, field in enumerate(history.mfields, start=1):
            name = f"mfield-{t:04d}.ppm"
            simulator.render_ppm(field, out / name, "mfield")
            written.append(name)
    _emit(
        {
            "rule": rules.format_rule_spec(tt),
            "steps": args.steps,
            "seed": args.seed,
            "out": str(out),
            "files": written,
        }
    )
    return 0


def _cmd_search(args) -> int:
    target = measures.GOL_TARGET
    if args.target is not None:
        target = tuple(float(v) for v in json.loads(args.target))
    cfg = search.GAConfig(
        pop_size=args.pop,
        generations=args.gens,
        mutation_prob=args.mutation,
        seed=args.seed,
        dyn_runs=args.runs,
        dyn_dims=_parse_size(args.size),
        dyn_max_steps=args.steps,
        dyn_density=args.density,
        cover_mode=args.cover_mode if args.cover_mode != "auto" else "greedy",
        keep=args.keep,
        target=target,
    )

    def progress(generation: int, best: search.Individual) -> None:
        print(
            f"generation {generation}: best fitness {best.fitness:.4f}",
            file=sys.stderr,
        )

    records = search.run_ga(cfg, progress=progress if args.verbose else None)
    catalog.write_catalog(records, args.out)
    _emit(
        {
            "out": args.out,
            "records": len(records),
            "best_fitness": records[0].fitness if records else None,
            "seed": args.seed,
        }
    )
    return 0


def _cmd_validate_h(args) -> int:
    results = heval.validate_h()
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"[{status}] {r.name}: expected {r.expected}, got {r.actual}", file=sys.stderr)
    _emit(
        {
            "passed": all(r.passed for r in results),
            "results": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "expected": r.expected,
                    "actual": r.actual,
                }
                for r in results
            ],
        }
    )
    return 0 if all(r.passed for r in results) else 1


def _cmd_import(args) -> int:
    params = None
    if args.with_dynamic:
        params = _dynamic_params(args)
    records = catalog.import_published_rules(
        args.path,
        bit_order=args.bit_order,
        arity=args.arity,
        dynamic_params=params,
        cover_mode=args.cover_mode if args.cover_mode != "auto" else "greedy",
    )
    if args.out is not None:
        catalog.write_catalog(records, args.out)
        _emit({"out": args.out, "records": len(records)})
    else:
        for record in records:
            sys.stdout.write(record.to_json() + "\n")
    return 0


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ca",
        description="Analyze, measure, simulate, and search binary cellular automata.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="minimize a rule and report its behavior")
    _rule_args(p)
    _cover_arg(p)
    p.add_argument("--emit-expr", action="store_true", help="include the minimized expression")
    p.add_argument("--emit-mtable", action="store_true", help="include the M-coded table")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("static", help="behavior percentages over the truth table")
    _rule_args(p)
    _cover_arg(p)
    p.set_defaults(func=_cmd_static)

    p = sub.add_parser("dynamic", help="behavior percentages over random evolutions")
    _rule_args(p)
    _cover_arg(p)
    _dynamic_args(p)
    p.set_defaults(func=_cmd_dynamic)

    p = sub.add_parser("distance", help="feature distance between two rules")
    _rule_args(p)
    p.add_argument("rule_b", help="second rule spec")
    _cover_arg(p)
    _dynamic_args(p)
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("simulate", help="evolve a lattice and write PPM images")
    _rule_args(p)
    p.add_argument("--size", default="100x100", help="lattice size, RxC (or N for 1D)")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed-pattern", help="plain-text 0/1 grid used as the initial lattice")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("search", help="genetic search for rules near a target behavior")
    p.add_argument("--pop", type=int, default=20)
    p.add_argument("--gens", type=int, default=5000)
    p.add_argument("--mutation", type=float, default=0.01)
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--size", default="100x100")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--keep", type=int, default=1000)
    p.add_argument("--target", help="JSON array of 8 target components")
    p.add_argument("--out", required=True, help="catalog path (JSON lines)")
    p.add_argument("--verbose", action="store_true", help="per-generation progress on stderr")
    _cover_arg(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("validate-h", help="check the 6-valued operator tables")
    p.set_defaults(func=_cmd_validate_h)

    p = sub.add_parser("import", help="decode a file of decimal rule numbers")
    p.add_argument("path", help="one decimal rule number per line")
    p.add_argument("--bit-order", choices=rules.BIT_ORDERS, default="lsb")
    p.add_argument("--arity", type=int, default=rules.MOORE_ARITY)
    p.add_argument("--with-dynamic", action="store_true", help="also sample dynamic measures")
    p.add_argument("--out", help="catalog path; defaults to stdout")
    _cover_arg(p)
    _dynamic_args(p)
    p.set_defaults(func=_cmd_import)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        rules.RuleError,
        measures.MeasureError,
        catalog.CatalogError,
        simulator.LatticeError,
        boolmin.CoverBudgetExceeded,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
