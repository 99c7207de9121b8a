"""Timing profile of the refinement pipeline.

Reports the cumulative wall time and final interval width after each
round, for both builtin pairs, plus the cost of one full-domain parity
computation at the base working precision.

Usage:
    python scripts/bench_refine.py --max-rounds 8
"""

from __future__ import annotations

import argparse
import time

from curvemeet import (
    Side,
    curved_pair,
    diagonal_pair,
    extend,
    function_parity,
    interval,
    refine_sequence,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-rounds", type=int, default=8)
    args = parser.parse_args()

    full = interval(-1, 2)
    for name, (phi, psi) in (
        ("diagonals", diagonal_pair()),
        ("curved", curved_pair()),
    ):
        f = extend(phi, Side.LOWER)
        g = extend(psi, Side.UPPER)
        start = time.perf_counter()
        parity = function_parity(f, g, full, full, n=5)
        base = time.perf_counter() - start
        print(f"{name}: base parity {parity} at n=5 in {base:.2f}s")
        print(f"{'rounds':>7} {'total s':>9} {'I width':>12}")
        for rounds in range(0, args.max_rounds + 1, 2):
            start = time.perf_counter()
            cert = refine_sequence(phi, psi, rounds)
            elapsed = time.perf_counter() - start
            width = float(cert.final.i.width())
            print(f"{rounds:>7} {elapsed:>9.2f} {width:>12.3e}")
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
