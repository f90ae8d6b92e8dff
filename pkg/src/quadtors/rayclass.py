"""Ray class groups modulo p^t (no infinite places) and the torsion group T.

The group is presented by local generators of (O/p^t)^* and a basis of the
class group, with relations from the local orders, the global units and the
principal ideals q_i^(d_i) = (gamma_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import prod

from . import errors
from .arith import factorize, ilog, is_prime, kronecker, p_part, valuation
from .classgroup import prime_power_ideal
from .padic import split_embeddings
from .qfield import QuadInt, QuadraticField
from .snf import smith_normal_form

T_LADDER = (9, 16, 32)


def _padic_log_pair(u: int, v: int, D: int, p: int, t: int) -> tuple[int, int]:
    """log of u + v sqrt(D) = 1 mod p, in Z_p[sqrt D] / p^t, as a coordinate pair."""
    # terms z^k/k with k - v_p(k) >= t vanish mod p^t
    kmax = t + 2 * (ilog(t, p) + 2)
    extra = ilog(kmax, p) + 1
    M = p ** (t + extra)
    Mt = p**t
    zu, zv = (u - 1) % M, v % M
    if zu % p or zv % p:
        raise ValueError("log argument must be 1 mod p")
    su = sv = 0
    pu, pv = 1, 0
    for k in range(1, kmax + 1):
        pu, pv = (pu * zu + D * pv * zv) % M, (pu * zv + pv * zu) % M
        q = p ** valuation(k, p)
        inv = pow(k // q, -1, Mt)
        sign = 1 if k % 2 else -1
        su += sign * (pu // q) * inv
        sv += sign * (pv // q) * inv
    return su % Mt, sv % Mt


def _padic_log(u: int, p: int, t: int) -> int:
    return _padic_log_pair(u, 0, 0, p, t)[0]


class LocalUnits:
    """Coordinates on (O/p^t)^* for p unramified."""

    def __init__(self, field: QuadraticField, p: int, t: int):
        if field.D % p == 0:
            raise errors.Ramified(f"{p} ramifies in Q(sqrt {field.m})", m=field.m, p=p)
        self.field, self.p, self.t = field, p, t
        self.D = field.D
        self.mod = p**t
        self.split = field.is_split(p)
        if self.split:
            self.emb = split_embeddings(field, p, t)
            g = next(g for g in range(2, p + 1) if _is_generator_modp(g, p)) if p > 2 else 1
            self._dlog_p = {pow(g, i, p): i for i in range(p - 1)}
            self.orders = [p - 1, p ** (t - 1), p - 1, p ** (t - 1)]
            self.labels = ["tame_1", "wild_1", "tame_2", "wild_2"]
        else:
            self._dlog_p2 = _fp2_dlog_table(self.D, p)
            self.orders = [p * p - 1, p ** (t - 1), p ** (t - 1)]
            self.labels = ["tame", "wild_a", "wild_b"]

    @property
    def group_order(self) -> int:
        return prod(self.orders)

    def coords(self, x: QuadInt) -> list[int]:
        p, t, M = self.p, self.t, self.mod
        if self.split:
            out = []
            for i in (0, 1):
                y = self.emb.phi(x, i)
                if y % p == 0:
                    raise errors.NotCoprime(f"element not coprime to {p}", p=p)
                w = _padic_log(pow(y, p - 1, M), p, t)
                out += [self._dlog_p[y % p], (w // p) % p ** (t - 1)]
            return out
        inv2 = pow(2, -1, M)
        u, v = x.a * inv2 % M, x.b * inv2 % M
        key = (u % p, v % p)
        if key == (0, 0):
            raise errors.NotCoprime(f"element not coprime to {p}", p=p)
        uu, vv = _pow_pair(u, v, p * p - 1, self.D, M)
        la, lb = _padic_log_pair(uu, vv, self.D, p, t)
        return [self._dlog_p2[key], (la // p) % p ** (t - 1), (lb // p) % p ** (t - 1)]

    def reduce(self, x: QuadInt) -> tuple[int, int]:
        M = self.mod
        inv2 = pow(2, -1, M)
        return x.a * inv2 % M, x.b * inv2 % M

    def element_order(self, x: QuadInt) -> int:
        """Order of x in (O/p^t)^* by direct exponentiation."""
        u, v = self.reduce(x)
        n = self.group_order
        order = n
        for q in factorize(n):
            while order % q == 0 and _pow_pair(u, v, order // q, self.D, self.mod) == (1, 0):
                order //= q
        return order


def _is_generator_modp(g: int, p: int) -> bool:
    return all(pow(g, (p - 1) // q, p) != 1 for q in factorize(p - 1))


def _pow_pair(u: int, v: int, e: int, D: int, M: int) -> tuple[int, int]:
    ru, rv = 1, 0
    while e:
        if e & 1:
            ru, rv = (ru * u + D * rv * v) % M, (ru * v + rv * u) % M
        u, v = (u * u + D * v * v) % M, (2 * u * v) % M
        e >>= 1
    return ru, rv


def _fp2_dlog_table(D: int, p: int) -> dict[tuple[int, int], int]:
    n = p * p - 1
    qs = list(factorize(n))
    for a in range(p):
        for b in range(1, p):
            if all(_pow_pair(a, b, n // q, D, p) != (1, 0) for q in qs):
                table, x = {}, (1, 0)
                for i in range(n):
                    table[x] = i
                    x = ((x[0] * a + D * x[1] * b) % p, (x[0] * b + x[1] * a) % p)
                return table
    raise AssertionError("no generator of F_p^2 found")


@dataclass
class AbelianPresentation:
    labels: list[str]
    relations: list[list[int]]
    divisors: list[int]  # nontrivial invariant factors, largest first

    @property
    def order(self) -> int:
        return prod(self.divisors)


@dataclass(frozen=True)
class TorsionStructure:
    m: int
    D: int
    p: int
    t: int
    divisors: list[int]
    p_part_orders: list[int]
    saturated_at: int

    @property
    def rank(self) -> int:
        return len(self.p_part_orders)

    @property
    def order(self) -> int:
        return prod(self.p_part_orders)

    def to_dict(self) -> dict:
        return {
            "m": self.m, "D": self.D, "p": self.p, "t": self.t,
            "divisors": self.divisors, "rank": self.rank,
            "p_part": self.p_part_orders, "saturated_at": self.saturated_at,
        }


def class_relations(field: QuadraticField, p: int, max_prime: int = 10**6):
    """For each class-group basis element: (d_i, prime ideal q_i in the class, gamma_i with q_i^d_i = (gamma_i))."""
    cg = field.class_group
    basis, orders = cg.basis, cg.cyclic_orders
    found: dict[int, tuple[int, int | None]] = {}
    q = 2
    while len(found) < len(basis):
        q += 1
        if q > max_prime:
            raise errors.GeneratorSearchFailed("no prime found in some basis class")
        if q == p or not is_prime(q) or kronecker(field.D, q) != 1:
            continue
        ideal = prime_power_ideal(field, q, 1)
        side = ideal.b % q
        c = cg.class_of(ideal)
        for cls, sd in ((c, side), (cg.inverse(c), (-side) % q)):
            for i, b in enumerate(basis):
                if b == cls and i not in found:
                    found[i] = (q, sd)
    out = []
    for i, d in enumerate(orders):
        q, sd = found[i]
        ideal = prime_power_ideal(field, q, d, sd)
        gamma = cg.generator(ideal)
        if gamma is None:
            raise AssertionError("basis relation is not principal")
        out.append((d, q, gamma))
    return out


def ray_class_group(field: QuadraticField, p: int, t: int) -> AbelianPresentation:
    loc = LocalUnits(field, p, t)
    cg = field.class_group
    n_loc = len(loc.orders)
    orders = cg.cyclic_orders
    width = n_loc + len(orders)
    rows = []
    for i, o in enumerate(loc.orders):
        row = [0] * width
        row[i] = o
        rows.append(row)
    minus_one = QuadInt(-2, 0, field.D)
    for u in (minus_one, field.unit.eps):
        rows.append(loc.coords(u) + [0] * len(orders))
    for i, (d, _, gamma) in enumerate(class_relations(field, p)):
        row = [-c for c in loc.coords(gamma)] + [0] * len(orders)
        row[n_loc + i] = d
        rows.append(row)
    diag, _, _ = smith_normal_form(rows)
    divisors = sorted((d for d in diag if d != 1), reverse=True)
    labels = loc.labels + [f"class_{i}" for i in range(len(orders))]
    return AbelianPresentation(labels, rows, divisors)


ray_class_structure = ray_class_group


def expected_ray_order(field: QuadraticField, p: int, t: int) -> int:
    """h * #(O/p^t)^* / #<-1, eps>, from element orders only."""
    loc = LocalUnits(field, p, t)
    eps = field.unit.eps
    o = loc.element_order(eps)
    # is -1 a power of eps mod p^t?
    minus_in = o % 2 == 0 and _pow_pair(*loc.reduce(eps), o // 2, field.D, loc.mod) == (loc.mod - 1, 0)
    units = o if minus_in else 2 * o
    return field.class_group.h * loc.group_order // units


def _torsion_from_divisors(divisors: list[int], p: int) -> list[int]:
    return [q for q in (p_part(d, p) for d in divisors[1:]) if q > 1]


def torsion_structure(field: QuadraticField, p: int, ladder=T_LADDER) -> TorsionStructure:
    """Invariant factors of the p-torsion group T, from the ray class group mod p^t."""
    if field.D % p == 0:
        raise errors.Ramified(f"{p} ramifies in Q(sqrt {field.m})", m=field.m, p=p)
    for t in ladder:
        a = ray_class_group(field, p, t)
        b = ray_class_group(field, p, t + 1)
        ta, tb = _torsion_from_divisors(a.divisors, p), _torsion_from_divisors(b.divisors, p)
        if ta == tb and _free_part_grows(a.divisors, b.divisors, p):
            return TorsionStructure(field.m, field.D, p, t, a.divisors, ta, t)
    raise errors.NotSaturated(f"T not stable up to t = {ladder[-1]}", m=field.m, p=p)


def _free_part_grows(da: list[int], db: list[int], p: int) -> bool:
    # the Z_p-rank one part must be the largest factor and grow by p
    return bool(da) and bool(db) and valuation(db[0], p) == valuation(da[0], p) + 1


def torsion_order_check(ts: TorsionStructure) -> int:
    return reduce(lambda x, y: x * y, ts.p_part_orders, 1)
