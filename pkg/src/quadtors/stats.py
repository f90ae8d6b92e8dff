"""Chebotarev-style surveys over split primes l = +-1 mod p^(n+1)."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import _kernels as K
from . import errors
from .arith import is_prime, kronecker, p_part, valuation
from .classgroup import prime_power_ideal
from .normsolver import norm_solutions
from .padic import fermat_delta
from .qfield import QuadraticField, make_field
from .units import normalize_associate

DELTA_BUCKETS = 5  # labels 0..4 and ">=5"


@dataclass(frozen=True)
class ScanSpec:
    p: int
    n: int
    BL: int

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise errors.InvalidArgument("p must be an odd prime")
        if self.n < 0 or self.BL < 3:
            raise errors.InvalidArgument("need n >= 0 and BL >= 3")

    @property
    def modulus(self) -> int:
        return self.p ** (self.n + 1)


@dataclass
class SurveyHistogram:
    kind: str
    labels: list[str]
    counts: list[int]
    expected: list[float] | None
    extra: dict = dc_field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def proportions(self) -> list[float]:
        n = self.total
        return [c / n if n else 0.0 for c in self.counts]

    def rows(self) -> list[dict]:
        exp = self.expected or [None] * len(self.labels)
        return [
            {"label": lab, "count": c, "proportion": pr, "expected": e}
            for lab, c, pr, e in zip(self.labels, self.counts, self.proportions(), exp)
        ]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "total": self.total, "rows": self.rows(), **self.extra}


# split primes -----------------------------------------------------------


def _progression_chunks(spec: ScanSpec, chunk: int) -> list[tuple[int, int, int]]:
    """(first, step, bound) pieces covering l = -1 then l = +1 mod 2M below BL."""
    M2 = 2 * spec.modulus
    out = []
    for first in (M2 - 1, M2 + 1):
        start = first
        while start < spec.BL:
            stop = min(spec.BL, start + chunk * M2)
            out.append((start, M2, stop))
            start = stop + ((first - stop) % M2)
    return out


def split_prime_stream(field: QuadraticField, spec: ScanSpec, chunk: int = 1 << 16) -> Iterator[int]:
    """Primes l < BL with l = +-1 mod 2p^(n+1) that split in the field.

    The -1 class is listed first, then the +1 class, each ascending.
    """
    if spec.BL < 2 * spec.modulus:
        raise errors.InvalidArgument("BL must be at least 2p^(n+1)")
    for first, step, bound in _progression_chunks(spec, chunk):
        yield from K.scan_progression(first, step, bound, field.m)


def _run_chunks(worker, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(worker, tasks))


# order survey ------------------------------------------------------------


def expected_order_distribution(p: int, a: int) -> list[Fraction]:
    """Share of elements of order p^k in Z/p^a, for k = 0..a."""
    total = p**a
    return [Fraction(1, total)] + [Fraction(p**k - p ** (k - 1), total) for k in range(1, a + 1)]


def _orders_worker(task) -> dict[int, int]:
    m, p, (first, step, bound) = task
    field = make_field(m)
    cg = field.class_group
    ells = K.scan_progression(first, step, bound, m)
    counts: dict[int, int] = {}
    orders = cg.class_orders
    for st in K.split_prime_states(field.D, ells):
        o = p_part(orders[cg.class_of_state[st]], p)
        counts[o] = counts.get(o, 0) + 1
    return counts


def order_survey(field: QuadraticField, spec: ScanSpec, jobs: int = 1, chunk: int = 1 << 14) -> SurveyHistogram:
    """Distribution of the p-part of the class order of the primes above l."""
    p = spec.p
    cg = field.class_group
    ppart = [q for q in (p_part(d, p) for d in cg.cyclic_orders) if q > 1]
    tasks = [(field.m, p, c) for c in _progression_chunks(spec, chunk)]
    merged: dict[int, int] = {}
    for part in _run_chunks(_orders_worker, tasks, jobs):
        for k, v in part.items():
            merged[k] = merged.get(k, 0) + v
    extra = {}
    if len(ppart) <= 1:
        a = valuation(ppart[0], p) if ppart else 0
        keys = [p**k for k in range(a + 1)]
        expected = [float(x) for x in expected_order_distribution(p, a)]
    else:
        keys = sorted(merged)
        expected = None
        extra["note"] = errors.NonCyclicPPart.kind
    return SurveyHistogram("orders", [str(k) for k in keys], [merged.get(k, 0) for k in keys], expected, extra)


def expected_distribution(kind: str, p: int, a: int = 0, buckets: int = DELTA_BUCKETS) -> list[Fraction]:
    """Reference probabilities: kind "order" for a cyclic group of order p^a,
    kind "delta" for delta = 0..buckets-1 plus a tail bucket."""
    if kind == "order":
        return expected_order_distribution(p, a)
    if kind == "delta":
        return expected_delta_distribution(p, buckets)
    raise errors.InvalidArgument(f"unknown distribution {kind!r}")


# delta of l-units --------------------------------------------------------


def expected_delta_distribution(p: int, buckets: int = DELTA_BUCKETS) -> list[Fraction]:
    """P(delta = k) = (p-1)/p^(k+1) for k < buckets, and the tail P(delta >= buckets)."""
    return [Fraction(p - 1, p ** (k + 1)) for k in range(buckets)] + [Fraction(1, p**buckets)]


def _delta_worker(task) -> tuple[list[int], int, int]:
    m, p, r, M, (first, step, bound) = task
    field = make_field(m)
    cg = field.class_group
    unit = field.unit
    d_eps = fermat_delta(unit.eps, field, p).value
    ells = K.scan_progression(first, step, bound, m)
    counts = [0] * (DELTA_BUCKETS + 1)
    sensitive = 0
    for ell, st in zip(ells, K.split_prime_states(field.D, ells)):
        if cg.class_orders[cg.class_of_state[st]] != r:
            continue
        ideal = prime_power_ideal(field, ell, r)
        eta = cg.generator(ideal)
        eta = normalize_associate(eta, unit)
        assert abs(eta.norm()) == ell**r
        assert ell % M in (1, M - 1)
        d = fermat_delta(eta, field, p).value
        counts[min(d, DELTA_BUCKETS)] += 1
        sensitive += d >= d_eps
    return counts, sensitive, len(ells)


def ell_unit_delta_survey(
    field: QuadraticField, spec: ScanSpec, r: int, jobs: int = 1, chunk: int = 1 << 14
) -> SurveyHistogram:
    """Distribution of delta_p of generators of L^r over primes L whose class has order r."""
    if r < 1:
        raise errors.InvalidArgument("r must be positive")
    p = spec.p
    if not field.is_split(p):
        raise errors.NotSplit(f"{p} is not split in Q(sqrt {field.m})", m=field.m, p=p)
    tasks = [(field.m, p, r, spec.modulus, c) for c in _progression_chunks(spec, chunk)]
    counts = [0] * (DELTA_BUCKETS + 1)
    sensitive = 0
    for part, sens, _ in _run_chunks(_delta_worker, tasks, jobs):
        counts = [a + b for a, b in zip(counts, part)]
        sensitive += sens
    labels = [str(k) for k in range(DELTA_BUCKETS)] + [f">={DELTA_BUCKETS}"]
    expected = [float(x) for x in expected_delta_distribution(p)]
    d_eps = fermat_delta(field.unit.eps, field, p).value
    return SurveyHistogram(
        "ell_unit_delta", labels, counts, expected,
        {"delta_eps": d_eps, "representative_sensitive": sensitive},
    )


# random relations ----------------------------------------------------------


@dataclass
class RelationTally:
    trials: int = 0
    Nn: int = 0
    Npx: int = 0
    C0: int = 0
    C1: int = 0
    C2: int = 0

    def add(self, other: "RelationTally") -> None:
        for k in ("trials", "Nn", "Npx", "C0", "C1", "C2"):
            setattr(self, k, getattr(self, k) + getattr(other, k))


def validate_pool(field: QuadraticField, p: int, pool: list[int]) -> None:
    if not pool:
        raise errors.EmptyPool("the prime pool is empty")
    for ell in pool:
        if not is_prime(ell) or kronecker(field.D, ell) != 1 or ell % (2 * p * p) != 1:
            raise errors.InvalidArgument(
                f"{ell} must be a prime = 1 mod 2p^2 split in the field", ell=ell
            )


def relation_exponents(n_pool: int, trials: int, seed: int) -> np.ndarray:
    """Exponent vectors, uniform in {0, 1, 2}, from a PCG64 stream seeded by seed."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.integers(0, 3, size=(trials, n_pool), dtype=np.int64)


def _relations_worker(task) -> RelationTally:
    m, p, pool, rows = task
    field = make_field(m)
    tally = RelationTally()
    for exps in rows:
        tally.trials += 1
        N = 1
        for ell, e in zip(pool, exps):
            N *= ell ** int(e)
        if N == 1:
            continue  # only the trivial solution x = 1
        sols = norm_solutions(field, N)
        if not sols:
            tally.Npx += 1
            continue
        for x in sols:
            if x.content() != 1:
                continue
            d = fermat_delta(x, field, p).value
            tally.Nn += 1
            if d == 0:
                tally.C0 += 1
            elif d == 1:
                tally.C1 += 1
            else:
                tally.C2 += 1
    return tally


def relation_survey(
    field: QuadraticField,
    p: int,
    pool: list[int],
    trials: int,
    seed: int,
    jobs: int = 1,
    chunk: int = 50,
) -> tuple[RelationTally, SurveyHistogram]:
    """Random products of pool primes: how often they are norms, and delta of the solutions."""
    validate_pool(field, p, pool)
    exps = relation_exponents(len(pool), trials, seed).tolist()
    tasks = [(field.m, p, list(pool), exps[i : i + chunk]) for i in range(0, trials, chunk)]
    tally = RelationTally()
    for part in _run_chunks(_relations_worker, tasks, jobs):
        tally.add(part)
    expected = [(p - 1) / p, (p - 1) / p**2, 1 / p**2]
    hist = SurveyHistogram(
        "relations", ["0", "1", ">=2"], [tally.C0, tally.C1, tally.C2], expected,
        {"Nn": tally.Nn, "Npx": tally.Npx, "Npx_over_Nn": tally.Npx / tally.Nn if tally.Nn else None},
    )
    return tally, hist


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, int((time.perf_counter() - t0) * 1000)
