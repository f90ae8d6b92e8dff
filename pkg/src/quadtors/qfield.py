"""Real quadratic fields Q(sqrt m), their integers and continued fractions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import isqrt, log

from . import errors
from .arith import factorize, kronecker

# log of the golden ratio, the smallest possible regulator
_MIN_LOG_UNIT = log((1 + 5**0.5) / 2)


def fundamental_discriminant(m: int) -> int:
    return m if m % 4 == 1 else 4 * m


@dataclass(frozen=True, slots=True)
class QuadInt:
    """The integer (a + b*sqrt(D))/2 of the field with discriminant D."""

    a: int
    b: int
    D: int

    def __post_init__(self):
        if (self.a - self.b * self.D) % 2:
            raise ValueError(f"({self.a} + {self.b} sqrt {self.D})/2 is not integral")

    @classmethod
    def from_int(cls, n: int, D: int) -> "QuadInt":
        return cls(2 * n, 0, D)

    @classmethod
    def from_sqrt_m(cls, x: int, y: int, field: "QuadraticField", den: int = 1) -> "QuadInt":
        """(x + y sqrt m)/den, den in {1, 2}."""
        if field.D == field.m:
            a, b = 2 * x, 2 * y
        else:
            a, b = 2 * x, y  # sqrt(m) = sqrt(D)/2
        if a % den or b % den:
            raise ValueError("not integral")
        return cls(a // den, b // den, field.D)

    def _check(self, other: "QuadInt"):
        if other.D != self.D:
            raise errors.FieldMismatch(f"discriminants {self.D} and {other.D} differ")

    def __add__(self, other):
        if isinstance(other, int):
            return QuadInt(self.a + 2 * other, self.b, self.D)
        self._check(other)
        return QuadInt(self.a + other.a, self.b + other.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b, self.D)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadInt(self.a * other, self.b * other, self.D)
        self._check(other)
        a = (self.a * other.a + self.D * self.b * other.b) // 2
        b = (self.a * other.b + self.b * other.a) // 2
        return QuadInt(a, b, self.D)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of an algebraic integer")
        result = QuadInt(2, 0, self.D)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "QuadInt":
        return QuadInt(self.a, -self.b, self.D)

    def norm(self) -> int:
        return (self.a * self.a - self.D * self.b * self.b) // 4

    def trace(self) -> int:
        return self.a

    def divexact(self, k: int) -> "QuadInt":
        if self.a % k or self.b % k:
            raise ValueError(f"{self} is not divisible by {k}")
        return QuadInt(self.a // k, self.b // k, self.D)

    def divides_by(self, k: int) -> bool:
        return self.a % k == 0 and self.b % k == 0 and ((self.a // k - self.b // k * self.D) % 2 == 0)

    def content(self) -> int:
        """Largest rational integer n with self/n integral."""
        from math import gcd

        g = gcd(self.a, self.b)
        if g == 0:
            return 0
        # self/g has coordinates (a/g, b/g) which may fail the parity rule
        return g if (self.a // g - self.b // g * self.D) % 2 == 0 else g // 2

    def sign(self) -> int:
        """Sign of the real embedding with sqrt(D) > 0."""
        a, b = self.a, self.b
        if b == 0 or a == 0 or (a > 0) == (b > 0):
            return (a > 0) - (a < 0) if a else (b > 0) - (b < 0)
        return (1 if a > 0 else -1) if a * a > self.D * b * b else (1 if b > 0 else -1)

    def log_abs(self) -> float:
        """log|x| for the embedding sqrt(D) > 0, computed without cancellation."""
        a, b = abs(self.a), abs(self.b)
        if self.a == 0 or self.b == 0 or (self.a > 0) == (self.b > 0):
            return _log_int(a + isqrt(self.D * b * b)) - log(2) if b else _log_int(a) - log(2)
        # opposite signs: |x| = |N(x)| / |x'|
        other = QuadInt(a, b, self.D)
        return _log_int(abs(self.norm())) - other.log_abs()

    def coords_sqrt_m(self, m: int) -> tuple[int, int, int]:
        """(x, y, den) with self = (x + y sqrt m)/den and den in {1, 2}."""
        if self.D == m:
            if self.a % 2 == 0:
                return self.a // 2, self.b // 2, 1
            return self.a, self.b, 2
        # D = 4m, a even: (a + 2b sqrt m)/2
        return self.a // 2, self.b, 1

    def format(self, m: int) -> str:
        x, y, den = self.coords_sqrt_m(m)
        if y == 0:
            body = f"{x}"
        elif x == 0:
            body = f"{y}*sqrt({m})"
        else:
            body = f"{x}{'+' if y > 0 else '-'}{abs(y)}*sqrt({m})"
        return body if den == 1 else f"({body})/2"

    def __repr__(self):
        return f"QuadInt(({self.a} + {self.b}*sqrt({self.D}))/2)"


def _log_int(n: int) -> float:
    if n <= 0:
        raise ValueError("log of non-positive integer")
    k = n.bit_length()
    if k < 1000:
        return log(n)
    return log(n >> (k - 900)) + (k - 900) * log(2)


class QuadraticField:
    """Q(sqrt m) for squarefree m > 1.  Expensive data is computed on first use."""

    def __init__(self, m: int):
        if m < 2:
            raise errors.MTooSmall(f"m = {m} must be at least 2", m=m)
        if any(e > 1 for e in factorize(m).values()):
            raise errors.NotSquarefree(f"m = {m} is not squarefree", m=m)
        self.m = m
        self.D = fundamental_discriminant(m)
        self.sqrt_floor = isqrt(self.D)

    def __repr__(self):
        return f"QuadraticField(m={self.m})"

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.m == self.m

    def __hash__(self):
        return hash(("QuadraticField", self.m))

    def __reduce__(self):
        return (make_field, (self.m,))

    @property
    def half_basis(self) -> bool:
        """True when the ring of integers is Z[(1 + sqrt m)/2]."""
        return self.D == self.m

    def element(self, a: int, b: int) -> QuadInt:
        return QuadInt(a, b, self.D)

    def one(self) -> QuadInt:
        return QuadInt(2, 0, self.D)

    def decomposition(self, p: int) -> str:
        k = kronecker(self.D, p)
        return {1: "split", -1: "inert", 0: "ramified"}[k]

    def is_split(self, p: int) -> bool:
        return kronecker(self.D, p) == 1

    @cached_property
    def unit(self):
        from .units import fundamental_unit

        return fundamental_unit(self)

    @cached_property
    def class_group(self):
        from .classgroup import ClassGroup

        return ClassGroup(self)


def is_split(field: QuadraticField, p: int) -> bool:
    """Kronecker (D|p) = +1; a ramified p is an error rather than False."""
    if field.D % p == 0:
        raise errors.Ramified(f"{p} ramifies in Q(sqrt {field.m})", m=field.m, p=p)
    return field.is_split(p)


def elem_arith(x: QuadInt, y: QuadInt | None, op: str):
    """mul, conj, norm or trace, checked for a common field."""
    if y is not None and x.D != y.D:
        raise errors.FieldMismatch(f"discriminants {x.D} and {y.D} differ")
    if op == "mul":
        return x * y
    if op == "conj":
        return x.conj()
    if op == "norm":
        return x.norm()
    if op == "trace":
        return x.trace()
    raise errors.InvalidArgument(f"unknown operation {op!r}")


@lru_cache(maxsize=256)
def make_field(m: int) -> QuadraticField:
    return QuadraticField(m)


def field_from_discriminant(D: int) -> QuadraticField:
    if D % 4 == 1:
        m = D
    elif D % 4 == 0 and (D // 4) % 4 in (2, 3):
        m = D // 4
    else:
        raise errors.InvalidArgument(f"{D} is not a fundamental discriminant", D=D)
    field = make_field(m)
    if field.D != D:
        raise errors.InvalidArgument(f"{D} is not a fundamental discriminant", D=D)
    return field


def fundamental_discriminants(bD: int, BD: int) -> list[int]:
    """Fundamental discriminants D with bD <= D <= BD, ascending."""
    lo = max(bD, 5)
    if BD < lo:
        return []
    size = BD - lo + 1
    # mark D divisible by the square of an odd prime
    bad = bytearray(size)
    limit = isqrt(BD)
    sieve = bytearray([1]) * (limit + 1)
    for q in range(3, limit + 1, 2):
        if not sieve[q]:
            continue
        for j in range(q * q, limit + 1, q):
            sieve[j] = 0
        sq = q * q
        start = (-lo) % sq
        bad[start::sq] = b"\x01" * len(range(start, size, sq))
    out = []
    for i in range(size):
        if bad[i]:
            continue
        D = lo + i
        e = (D & -D).bit_length() - 1
        M = D >> e
        if e == 0 and M % 4 == 1:
            out.append(D)
        elif e == 2 and M % 4 == 3:
            out.append(D)
        elif e == 3:
            out.append(D)
    return out


@dataclass(frozen=True)
class CFExpansion:
    """Continued fraction of (P + sqrt D)/Q: preperiod and period of partial quotients."""

    D: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]


def cf_step(P: int, Q: int, D: int, s: int) -> tuple[int, int, int]:
    """One continued-fraction step on (P + sqrt D)/Q; returns (q, P', Q')."""
    if Q > 0:
        q = (P + s) // Q
    else:
        q = -((P + s) // -Q) - 1
    P2 = q * Q - P
    return q, P2, (D - P2 * P2) // Q


def continued_fraction(P: int, Q: int, D: int, max_terms: int = 10**7) -> CFExpansion:
    """Continued fraction of (P + sqrt D)/Q, requiring Q | D - P^2."""
    if Q == 0 or (D - P * P) % Q:
        raise ValueError("need Q dividing D - P^2")
    s = isqrt(D)
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    while (P, Q) not in seen:
        if len(terms) >= max_terms:
            raise errors.PrecisionExhausted("continued fraction period not found")
        seen[(P, Q)] = len(terms)
        q, P, Q = cf_step(P, Q, D, s)
        terms.append(q)
    start = seen[(P, Q)]
    return CFExpansion(D, tuple(terms[:start]), tuple(terms[start:]))
