"""Compare the compiled kernels with the pure-Python reference.

    python benchmarks/bench_kernels.py [--repeat 3]

Prints one line per kernel: best wall time for each backend and the speedup.
Both backends are checked to return the same value before timing counts.
"""

from __future__ import annotations

import argparse
import time

from quadtors._kernels import _pykernels as pure

try:
    from quadtors._kernels import _ckernels as compiled
except ImportError:
    compiled = None

M9 = 2 * 3**9

CASES = {
    # name: (function name, args)
    "scan_progression l=-1 mod 2*3^9, l<10^9": ("scan_progression", (M9 - 1, M9, 10**9, 72262)),
    "reduced_ideals D=289048": ("reduced_ideals", (289048,)),
    "split_prime_states D=289048, 2000 primes": ("split_prime_states", None),
    "cf_unit_mod D=684244 mod 3^20": ("cf_unit_mod", (684244, 3**20)),
    "is_prime_u64 x 20000": ("is_prime_many", None),
}


def _args(name):
    fn, args = CASES[name]
    if fn == "split_prime_states":
        ells = pure.scan_progression(M9 + 1, M9, 10**9, 72262)[:2000]
        return fn, (289048, ells)
    return fn, args


def _is_prime_many(impl):
    return sum(1 for n in range(10**12, 10**12 + 20000) if impl.is_prime_u64(n))


def _plain(x):
    # compiled kernels may return tuples where the pure ones return lists
    if isinstance(x, (list, tuple)):
        return tuple(_plain(y) for y in x)
    return int(x)


def _call(impl, fn, args):
    if fn == "is_prime_many":
        return _is_prime_many(impl)
    return _plain(getattr(impl, fn)(*args))


def best_of(impl, fn, args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = _call(impl, fn, args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; only the pure backend is available")
    print(f"{'kernel':45s} {'pure s':>9s} {'compiled s':>11s} {'speedup':>8s}")
    for name in CASES:
        fn, fargs = _args(name)
        tp, rp = best_of(pure, fn, fargs, args.repeat)
        if compiled is None:
            print(f"{name:45s} {tp:9.4f} {'-':>11s} {'-':>8s}")
            continue
        tc, rc = best_of(compiled, fn, fargs, args.repeat)
        if rp != rc:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:45s} {tp:9.4f} {tc:11.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
