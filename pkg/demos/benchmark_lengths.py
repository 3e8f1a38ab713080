"""Cost scaling with crack length.

The iterative route works with a fixed set of kernel poles, so its
per-sweep cost should stay nearly flat as the crack grows, while the
Green's-function oracle assembles and solves a dense L x L system.
Usage: python benchmark_lengths.py [L1,L2,...] [out_dir]
"""

import os
import sys

from crackscatter.cli import ScenarioConfig, benchmark

CONFIG = {
    "frequency": {"k": 1.5707963267948966, "phi_in": 0.7853981633974483},
    "cracks": [[0, 10]],
}


def main(lengths, out_dir):
    rows = benchmark(ScenarioConfig.from_dict(CONFIG), lengths, out_dir)
    print(f"{'L':>4} {'iters':>6} {'ms/iter':>9} {'oracle ms':>10}")
    for r in rows:
        print(f"{r['L']:4d} {r['iters']:6d} {r['iter_time'] * 1e3:9.2f} "
              f"{r['oracle_time'] * 1e3:10.1f}")
    ts = [r["iter_time"] for r in rows]
    print(f"\nper-iteration spread: {max(ts) / min(ts):.2f}x; "
          f"rows also in {os.path.join(out_dir, 'benchmark.csv')}")


if __name__ == "__main__":
    lengths = [int(s) for s in sys.argv[1].split(",")] if len(sys.argv) > 1 else [10, 20, 40, 80]
    out = sys.argv[2] if len(sys.argv) > 2 else os.path.join(os.path.dirname(__file__), "out")
    main(lengths, out)
