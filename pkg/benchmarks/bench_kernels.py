"""Compare the compiled and the pure-Python kernel paths.

Usage::

    python benchmarks/bench_kernels.py [--n 20000] [--repeat 5]

The JIT path runs in this process. The fallback path runs in a child
process with GRAVTIME_DISABLE_JIT=1, because the flag is read at import.
Both paths evaluate the same inputs; the maximum difference is printed
next to the timings.
"""
import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

_CHILD = r"""
import json, sys, time
import numpy as np
from gravtime.specfun import _kernels as k
from gravtime import _jit
n, repeat = int(sys.argv[1]), int(sys.argv[2])
out = {"jit": _jit.JIT_ENABLED}
x_airy = np.linspace(-200.0, 50.0, n)
x_bes = np.geomspace(1e-3, 1e3, n)
bufs = [np.empty(n) for _ in range(4)]
cases = {
    "airy": lambda: k.airy_array(x_airy, bufs[0], bufs[1]),
    "jy13": lambda: k.jy13_array(x_bes, *bufs),
    "ik13": lambda: k.ik13_array(x_bes, *bufs),
}
for name, fn in cases.items():
    fn()  # warm-up (compilation on the JIT path)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out[name] = {"seconds": best, "values": [b[: n : max(1, n // 50)].tolist() for b in bufs[:2]]}
print(json.dumps(out))
"""


def run(disable_jit, n, repeat):
    env = dict(os.environ)
    if disable_jit:
        env["GRAVTIME_DISABLE_JIT"] = "1"
    else:
        env.pop("GRAVTIME_DISABLE_JIT", None)
    res = subprocess.run(
        [sys.executable, "-c", _CHILD, str(n), str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(res.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    fast = run(False, args.n, args.repeat)
    slow = run(True, args.n, args.repeat)
    print(f"{'kernel':8s} {'jit [s]':>12s} {'python [s]':>12s} {'speedup':>9s} {'max |diff|':>11s}")
    for name in ("airy", "jy13", "ik13"):
        a, b = fast[name], slow[name]
        diff = max(
            float(np.max(np.abs(np.array(u) - np.array(v))))
            for u, v in zip(a["values"], b["values"])
        )
        print(f"{name:8s} {a['seconds']:12.4e} {b['seconds']:12.4e} "
              f"{b['seconds'] / a['seconds']:9.1f} {diff:11.2e}")
    if not fast["jit"]:
        print("note: numba unavailable, both columns ran the Python path")


if __name__ == "__main__":
    main()
