"""Fundamental units, associate normalisation and p-units."""

from __future__ import annotations

from dataclasses import dataclass
from math import floor, isqrt

from . import errors
from .arith import divisors
from .qfield import QuadInt, QuadraticField, cf_step


@dataclass(frozen=True)
class UnitRecord:
    eps: QuadInt
    norm: int
    regulator: float
    period: int


@dataclass(frozen=True)
class PUnitRecord:
    """eta generates P^h0 where P is the prime above p on the first embedding."""

    eta: QuadInt
    h0: int
    p: int
    prime_side: int = 1


def fundamental_unit(field: QuadraticField) -> UnitRecord:
    """Fundamental unit > 1 from the period of (P0 + sqrt D)/2."""
    D = field.D
    s = isqrt(D)
    P0 = s if (s - D) % 2 == 0 else s - 1
    P, Q = P0, 2
    a1, a0, b1, b0 = 1, 0, 0, 1
    k = 0
    while True:
        q, P, Q = cf_step(P, Q, D, s)
        a1, a0 = q * a1 + a0, a1
        b1, b0 = q * b1 + b0, b1
        k += 1
        if P == P0 and Q == 2:
            break
    eps = QuadInt(2 * a1 - b1 * P0, b1, D)
    norm = eps.norm()
    if norm not in (1, -1):
        raise AssertionError(f"unit computation failed for D = {D}")
    return UnitRecord(eps, norm, eps.log_abs(), k)


def unit_inverse(rec: UnitRecord) -> QuadInt:
    return rec.eps.conj() * rec.norm


def unit_power(rec: UnitRecord, j: int) -> QuadInt:
    base = rec.eps if j >= 0 else unit_inverse(rec)
    return base ** abs(j)


def normalize_associate(x: QuadInt, rec: UnitRecord, keep_norm: bool = False) -> QuadInt:
    """The associate x*(+-u^j) that is positive with 1 <= |x/x'| < u^2.

    u is the fundamental unit, or its square when keep_norm is set and the
    fundamental unit has norm -1 (so the norm of x is preserved).
    """
    if x.a == 0 and x.b == 0:
        raise ValueError("zero has no canonical associate")
    u, R = rec.eps, rec.regulator
    u_inv = unit_inverse(rec)
    if keep_norm and rec.norm == -1:
        u, u_inv, R = u * u, u_inv * u_inv, 2 * R
    L = x.log_abs() - x.conj().log_abs()
    j = floor(L / (2 * R))
    if j:
        x = x * (u_inv ** j if j > 0 else u ** (-j))
    # guard against rounding at the window edges
    L = x.log_abs() - x.conj().log_abs()
    if L < -1e-9 * max(1.0, R):
        x = x * u
    elif L >= 2 * R * (1 + 1e-12):
        x = x * u_inv
    if x.sign() < 0:
        x = -x
    return x


def p_unit(field: QuadraticField, p: int) -> PUnitRecord:
    """Generator of P^h0, h0 the order of the class of the prime P above p (p split)."""
    from .classgroup import prime_power_ideal
    from .padic import split_embeddings

    if not field.is_split(p):
        raise errors.NotSplit(f"{p} does not split in Q(sqrt {field.m})", m=field.m, p=p)
    cg = field.class_group
    emb = split_embeddings(field, p, 1)
    root = emb.roots[0]
    for r in divisors(cg.h):
        ideal = prime_power_ideal(field, p, r, (-root) % p)
        gen = cg.generator(ideal)
        if gen is not None:
            return PUnitRecord(normalize_associate(gen, field.unit), r, p)
    raise errors.GeneratorSearchFailed(f"no power of the prime above {p} up to h is principal")
