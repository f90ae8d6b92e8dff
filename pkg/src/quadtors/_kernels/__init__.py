"""Hot-loop kernels.  The compiled module is used when it imports, unless
QUADTORS_PURE=1 is set; the pure-Python module is the fallback."""

from __future__ import annotations

import os

from . import _pykernels as pure

compiled = None
if os.environ.get("QUADTORS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled = None

_impl = compiled if compiled is not None else pure
BACKEND = "compiled" if compiled is not None else "pure"

# values past this bound go to the pure version, which uses Python integers
_LIMIT = 1 << 62


def is_prime_u64(n: int) -> bool:
    if n >= 1 << 64:
        return pure.is_prime_u64(n)
    return bool(_impl.is_prime_u64(n))


def scan_progression(first: int, step: int, bound: int, m: int) -> list[int]:
    if bound + step >= _LIMIT or abs(m) >= _LIMIT:
        return pure.scan_progression(first, step, bound, m)
    return [int(x) for x in _impl.scan_progression(first, step, bound, m)]


def sqrt_mod_u64(a: int, p: int) -> int:
    if p >= _LIMIT:
        return pure.sqrt_mod_u64(a, p)
    return int(_impl.sqrt_mod_u64(a % p, p))


def reduce_state(P: int, Q: int, D: int) -> tuple[int, int]:
    if max(abs(P), abs(Q), D) >= 1 << 40:
        return pure.reduce_state(P, Q, D)
    return _impl.reduce_state(P, Q, D)


def reduced_ideals(D: int) -> list[tuple[int, int]]:
    return _impl.reduced_ideals(D)


def split_prime_states(D: int, ells: list[int]) -> list[tuple[int, int]]:
    if ells and (max(ells) >= 1 << 40 or D >= 1 << 40):
        return pure.split_prime_states(D, ells)
    return _impl.split_prime_states(D, list(ells))


def cf_unit_mod(D: int, M: int) -> tuple[int, int, int]:
    if D >= 1 << 40 or M >= _LIMIT:
        return pure.cf_unit_mod(D, M)
    return _impl.cf_unit_mod(D, M)


__all__ = [
    "BACKEND",
    "cf_unit_mod",
    "is_prime_u64",
    "reduce_state",
    "reduced_ideals",
    "scan_progression",
    "split_prime_states",
    "sqrt_mod_u64",
]
