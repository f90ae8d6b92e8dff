"""Solutions of N(x) = n in the ring of integers, up to units of norm +1."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import errors
from .arith import factorize, kronecker
from .classgroup import IdealRep, multiply_ideals, prime_power_ideal
from .qfield import QuadInt, QuadraticField
from .units import normalize_associate


@dataclass(frozen=True)
class _LocalChoice:
    content: int
    ideal: IdealRep | None  # primitive part, None for the unit ideal
    exponent: int  # signed multiple of the base prime's class
    prime: int
    primitive: bool


def _local_choices(field: QuadraticField, q: int, e: int, primitive_only: bool) -> list[_LocalChoice]:
    D = field.D
    kr = kronecker(D, q)
    if kr == -1:
        if e % 2:
            return []
        if primitive_only:
            return []
        return [_LocalChoice(q ** (e // 2), None, 0, q, False)]
    if kr == 0:
        if primitive_only and e > 1:
            return []
        ideal = prime_power_ideal(field, q, 1) if e % 2 else None
        return [_LocalChoice(q ** (e // 2), ideal, e % 2, q, e == 1)]
    base = prime_power_ideal(field, q, 1)
    side = base.b % (4 if q == 2 else q)
    other = (-base.b) % (4 if q == 2 else q)
    out = []
    for i in range(e + 1):
        # P^i P'^(e-i) = q^min * (P or P')^|2i - e|
        j = min(i, e - i)
        k = i - j if i >= e - i else (e - i) - j
        if primitive_only and j > 0:
            continue
        if k == 0:
            ideal = None
        else:
            ideal = prime_power_ideal(field, q, k, side if i >= e - i else other)
        out.append(_LocalChoice(q**j, ideal, 2 * i - e, q, j == 0))
    return out


def norm_solutions(field: QuadraticField, n: int, primitive_only: bool = False) -> list[QuadInt]:
    """Non-associate x with N(x) = n, each in canonical form.

    Two solutions are identified when they differ by a unit of norm +1; when
    the fundamental unit has norm -1 both signs of n have the same solutions
    up to units.
    """
    if n == 0:
        raise errors.InvalidArgument("norm must be nonzero")
    cg = field.class_group
    unit = field.unit
    try:
        fac = factorize(n)
    except Exception as exc:  # noqa: BLE001
        raise errors.CannotFactor(str(exc), n=n) from exc
    per_prime = []
    for q, e in sorted(fac.items()):
        choices = _local_choices(field, q, e, primitive_only)
        if not choices:
            return []
        per_prime.append(choices)
    # class of the split/ramified base primes, for a cheap principality test
    base_dlog = {}
    for choices in per_prime:
        q = choices[0].prime
        if kronecker(field.D, q) != -1:
            base_dlog[q] = cg.dlog(cg.class_of(prime_power_ideal(field, q, 1)))
    orders = cg.cyclic_orders
    out = set()
    for combo in product(*per_prime):
        vec = [0] * len(orders)
        for ch in combo:
            if ch.exponent:
                for i, v in enumerate(base_dlog[ch.prime]):
                    vec[i] += ch.exponent * v
        if any(v % d for v, d in zip(vec, orders)):
            continue
        content = 1
        ideal = IdealRep(1, field.D % 2, field.D)
        for ch in combo:
            content *= ch.content
            if ch.ideal is not None:
                d, ideal = multiply_ideals(ideal, ch.ideal)
                assert d == 1
        gen = cg.generator(ideal)
        if gen is None:
            raise AssertionError("class arithmetic and reduction disagree")
        x = gen * content
        if x.norm() != n:
            if unit.norm == -1:
                x = x * unit.eps
            else:
                continue
        out.add(normalize_associate(x, unit, keep_norm=True))
    return sorted(out, key=lambda x: (abs(x.b), x.b, x.a))


def has_solution(field: QuadraticField, n: int) -> bool:
    return bool(norm_solutions(field, n))
