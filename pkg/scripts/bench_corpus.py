#!/usr/bin/env python3
"""Per-fixture wall time for the shipped corpus, as a plain table."""

import argparse
import time

from wittsig.harness import corpus_paths, load_fixture, run_fixture


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", help="fixture names (default: all)")
    args = ap.parse_args()
    total = 0.0
    print(f"{'fixture':32s} {'facets':>7s} {'seconds':>8s}  result")
    for p in corpus_paths():
        if args.names and p.stem not in args.names:
            continue
        t0 = time.perf_counter()
        fx = load_fixture(p)
        res = run_fixture(fx)
        dt = time.perf_counter() - t0
        total += dt
        facets = len(fx.space.complex.facets) if fx.space is not None else 0
        print(f"{fx.name:32s} {facets:7d} {dt:8.2f}  {'pass' if res['pass'] else 'FAIL'}")
    print(f"{'total':32s} {'':7s} {total:8.2f}")


if __name__ == "__main__":
    main()
