"""Time decoding with the compiled and pure-Python kernels.

    python benchmarks/bench_backends.py --max-n 64
"""

import argparse
import sys

from lrscodec.bench import run_bench

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=64)
    ap.add_argument("--trials", type=int, default=3)
    args = ap.parse_args()
    sys.stdout.write(run_bench(args.max_n, args.trials))
