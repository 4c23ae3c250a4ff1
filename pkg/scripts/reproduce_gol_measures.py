#!/usr/bin/env python3
"""Recompute the Game of Life's behavior measures and compare them with
the published reference values, then report feature distances and
measure correlations for the published found rules.
"""
import argparse
import json

from lifelike import (
    GOL_TARGET,
    DynamicParams,
    correlation,
    distance,
    dynamic_measure,
    feature_vector,
    gol_truth_table,
    static_measure,
)

# Published behavior vectors (stability, decrease, growth, chaoticity) of
# rules found by the genetic search, static then dynamic.
FOUND_RULES = {
    "found-1": ((0.0, 4.88, 33.01, 62.11), (0.0, 78.88, 9.06, 12.06)),
    "found-2": ((0.0, 2.54, 33.01, 64.45), (0.0, 84.80, 5.92, 9.28)),
    "found-3": ((0.0, 3.91, 30.47, 65.63), (0.0, 90.54, 4.00, 5.53)),
    "self-replicator": ((0.0, 3.32, 34.96, 61.72), (0.0, 90.63, 3.77, 5.61)),
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--runs", type=int, default=30)
    parser.add_argument("--size", type=int, nargs=2, default=(100, 100))
    parser.add_argument("--steps", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    tt = gol_truth_table()
    me = static_measure(tt, "exact")
    md = dynamic_measure(
        tt,
        DynamicParams(
            runs=args.runs,
            dims=tuple(args.size),
            max_steps=args.steps,
            seed=args.seed,
        ),
    )
    features = feature_vector(me, md)

    print("Game of Life")
    print(f"  static   {me.as_tuple()}")
    print(f"  dynamic  {md.as_tuple()}")
    print(f"  corr     {correlation(me, md):+.2f}")
    print(f"  reference target {GOL_TARGET}")
    print(f"  self-distance to target {distance(features, GOL_TARGET):.2f}")
    print()
    for name, (fme, fmd) in FOUND_RULES.items():
        fme_feat = (fme[3], fme[1], fme[2], fme[0])
        fmd_feat = (fmd[3], fmd[1], fmd[2], fmd[0])
        d = distance(fme_feat + fmd_feat, GOL_TARGET)
        c = correlation(fme, fmd)
        print(f"{name}: distance to GoL target {d:.2f}, corr {c:+.2f}")

    print()
    print(json.dumps({"static": me.as_tuple(), "dynamic": md.as_tuple()}))


if __name__ == "__main__":
    main()
