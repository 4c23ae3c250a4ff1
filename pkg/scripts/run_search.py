#!/usr/bin/env python3
"""Run the genetic search for Game-of-Life-like Moore-neighborhood rules.

The full experiment (pop 20, 5000 generations, 10 dynamic runs per rule)
takes hours; the defaults here are a desk-scale run that finishes in a
few minutes. Results stream to a JSONL catalog sorted by fitness.
"""
import argparse
import sys
import time

from lifelike.catalog import write_catalog
from lifelike.search import GAConfig, run_ga


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pop", type=int, default=20)
    parser.add_argument("--gens", type=int, default=100)
    parser.add_argument("--mutation", type=float, default=0.01)
    parser.add_argument("--runs", type=int, default=10)
    parser.add_argument("--size", type=int, nargs=2, default=(100, 100))
    parser.add_argument("--steps", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--keep", type=int, default=1000)
    parser.add_argument("--out", default="catalog.jsonl")
    args = parser.parse_args()

    cfg = GAConfig(
        pop_size=args.pop,
        generations=args.gens,
        mutation_prob=args.mutation,
        seed=args.seed,
        dyn_runs=args.runs,
        dyn_dims=tuple(args.size),
        dyn_max_steps=args.steps,
        keep=args.keep,
    )

    start = time.time()

    def progress(generation, best):
        if generation % 10 == 0 or generation == cfg.generations - 1:
            print(
                f"gen {generation:5d}  best fitness {best.fitness:8.3f}  "
                f"elapsed {time.time() - start:6.1f}s",
                file=sys.stderr,
            )

    records = run_ga(cfg, progress=progress)
    write_catalog(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    if records:
        best = records[0]
        print(f"best rule {best.rule[:40]}... fitness {best.fitness:.3f}")


if __name__ == "__main__":
    main()
