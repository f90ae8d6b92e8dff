"""p-adic embeddings of split fields and the Fermat-quotient valuation delta."""

from __future__ import annotations

from dataclasses import dataclass

from . import errors
from .arith import hensel_sqrt, sqrt_mod_prime, valuation
from .qfield import QuadInt, QuadraticField

DEFAULT_PRECISION = 9
MAX_PRECISION = 64


@dataclass(frozen=True)
class SplitEmbeddings:
    """The two embeddings into Z/p^t, sqrt D -> roots[0] and sqrt D -> roots[1].

    roots[0] reduces mod p to the smaller positive square root of D.
    """

    p: int
    t: int
    roots: tuple[int, int]

    @property
    def modulus(self) -> int:
        return self.p**self.t

    def phi(self, x: QuadInt, i: int) -> int:
        M = self.modulus
        return (x.a + x.b * self.roots[i]) * pow(2, -1, M) % M


def split_embeddings(field: QuadraticField, p: int, t: int) -> SplitEmbeddings:
    if p == 2:
        raise errors.InvalidArgument("p must be odd")
    if field.D % p == 0:
        raise errors.Ramified(f"{p} ramifies in Q(sqrt {field.m})", m=field.m, p=p)
    if not field.is_split(p):
        raise errors.NotSplit(f"{p} is inert in Q(sqrt {field.m})", m=field.m, p=p)
    r = sqrt_mod_prime(field.D, p)
    r = min(r, p - r)
    r1 = hensel_sqrt(field.D, p, t, root=r)
    return SplitEmbeddings(p, t, (r1, (-r1) % p**t))


@dataclass(frozen=True)
class Delta:
    value: int
    saturated: bool
    t: int


def delta_at(x: QuadInt, emb: SplitEmbeddings) -> Delta:
    """min over embeddings of v_p(phi(x)^(p-1) - 1) - 1, capped at t - 1."""
    p, t, M = emb.p, emb.t, emb.modulus
    best = t - 1
    for i in (0, 1):
        y = emb.phi(x, i)
        if y % p == 0:
            raise errors.NotCoprime(f"element is not coprime to {p}", p=p)
        z = (pow(y, p - 1, M) - 1) % M
        v = t if z == 0 else valuation(z, p)
        best = min(best, v - 1)
    return Delta(best, best >= t - 1, t)


def delta_single(x: QuadInt, emb: SplitEmbeddings, i: int) -> Delta:
    """Same as delta_at but for one embedding only."""
    p, t, M = emb.p, emb.t, emb.modulus
    y = emb.phi(x, i)
    if y % p == 0:
        raise errors.NotCoprime(f"element is not coprime to {p}", p=p)
    z = (pow(y, p - 1, M) - 1) % M
    v = min(t, valuation(z, p)) if z else t
    return Delta(v - 1, v >= t, t)


def fermat_delta(
    x: QuadInt,
    field: QuadraticField,
    p: int,
    t: int = DEFAULT_PRECISION,
    embedding: int | None = None,
    max_t: int = MAX_PRECISION,
    strict: bool = False,
) -> Delta:
    """delta_p(x), raising the precision on saturation up to max_t.

    embedding=None takes the minimum over both embeddings.  With strict=True a
    result still saturated at max_t raises PrecisionExhausted.
    """
    while True:
        emb = split_embeddings(field, p, t)
        d = delta_at(x, emb) if embedding is None else delta_single(x, emb, embedding)
        if not d.saturated or t >= max_t:
            break
        t = min(2 * t, max_t)
    if d.saturated and strict:
        raise errors.PrecisionExhausted(f"delta saturated at precision {t}", t=t)
    return d


def order_method_delta(x: QuadInt, emb: SplitEmbeddings, i: int) -> int:
    """Independent route to delta: t - 1 - log_p of the order of phi(x)^(p-1) mod p^t."""
    p, t, M = emb.p, emb.t, emb.modulus
    y = pow(emb.phi(x, i), p - 1, M)
    k = 0
    while y != 1:
        y = pow(y, p, M)
        k += 1
    return t - 1 - k


def fermat_quotient(field: QuadraticField, x: QuadInt, pair: SplitEmbeddings) -> Delta:
    """delta_p(x) at the precision of pair, minimum over both embeddings."""
    if x.norm() % pair.p == 0:
        raise errors.NotCoprime(f"norm of x is divisible by {pair.p}", p=pair.p)
    d = delta_at(x, pair)
    if abs(x.norm()) % pair.modulus in (1, pair.modulus - 1):
        d1, d2 = delta_single(x, pair, 0), delta_single(x, pair, 1)
        assert d1.value == d2.value, "embeddings disagree on a unit"
    return d


def fermat_quotient_counit(field: QuadraticField, pu, pair: SplitEmbeddings) -> Delta:
    """delta of a p-unit, read on the embedding where it is a unit."""
    side = 1 if pu.prime_side == 1 else 0
    return delta_single(pu.eta, pair, side)
