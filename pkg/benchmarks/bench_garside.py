"""Time the Garside normal-form kernel with and without numba.

    python3 benchmarks/bench_garside.py [--words 100] [--repeat 3]

Each backend runs in its own interpreter (the backend is fixed at import by
HTGROUPS_JIT), on the same seeded corpus, after one warm-up pass so compile
time is reported separately.
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from htgroups import _jit, _kernels, braid
from htgroups.rng import SplitMix64

words, repeat = int(sys.argv[1]), int(sys.argv[2])
rows = []
t0 = time.perf_counter()
_kernels.normal_form(np.array([1, -2], dtype=np.int64), 3)
warm = time.perf_counter() - t0
for strands, length in [(4, 20), (8, 40), (12, 120), (16, 300)]:
    rng = SplitMix64(strands * 1000 + length)
    corpus = [np.asarray(braid.random_word(rng, strands, length).letters, dtype=np.int64) for _ in range(words)]
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for letters in corpus:
            _kernels.normal_form(letters, strands)
        best = min(best, time.perf_counter() - start)
    rows.append({"strands": strands, "length": length, "seconds": best})
print(json.dumps({"backend": _jit.BACKEND, "warmup": warm, "rows": rows}))
"""


def run(flag, words, repeat):
    env = dict(os.environ, HTGROUPS_JIT=flag)
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(words), str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--words", type=int, default=100)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    fast = run("1", args.words, args.repeat)
    slow = run("0", args.words, args.repeat)
    print(f"{args.words} words per row, best of {args.repeat}")
    print(f"warm-up: {fast['backend']} {fast['warmup']:.3f}s, {slow['backend']} {slow['warmup']:.3f}s")
    print(f"{'strands':>7} {'length':>6} {fast['backend']:>10} {slow['backend']:>10} {'speedup':>8}")
    for a, b in zip(fast["rows"], slow["rows"]):
        ratio = b["seconds"] / a["seconds"] if a["seconds"] else float("inf")
        print(f"{a['strands']:>7} {a['length']:>6} {a['seconds']:>9.4f}s {b['seconds']:>9.4f}s {ratio:>7.1f}x")


if __name__ == "__main__":
    main()
