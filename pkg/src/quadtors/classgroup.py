"""Ideal classes of real quadratic fields via reduced ideals and their cycles.

A primitive ideal [N, (b + sqrt D)/2] corresponds to the continued-fraction
state (P, Q) = (b, 2N).  Each continued-fraction step multiplies the ideal by
an element of negative norm, so the cycles of reduced states are exactly the
(wide) ideal classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import gcd, isqrt, lcm

from . import _kernels as K
from . import errors
from .arith import hensel_sqrt, is_prime, kronecker, sqrt_mod_2power, sqrt_mod_prime
from .qfield import QuadInt, QuadraticField, cf_step
from .snf import mat_inverse_unimodular, smith_normal_form

DEFAULT_MAX_D = 10**7


@dataclass(frozen=True)
class IdealRep:
    """The primitive ideal N*Z + (b + sqrt D)/2 * Z, with 4N | b^2 - D."""

    N: int
    b: int
    D: int

    def __post_init__(self):
        if self.N <= 0 or (self.b * self.b - self.D) % (4 * self.N):
            raise ValueError(f"[{self.N}, ({self.b} + sqrt {self.D})/2] is not an ideal")
        object.__setattr__(self, "b", self.b % (2 * self.N))

    @property
    def state(self) -> tuple[int, int]:
        return self.b, 2 * self.N

    def form(self) -> tuple[int, int, int]:
        return self.N, self.b, (self.b * self.b - self.D) // (4 * self.N)

    def conj(self) -> "IdealRep":
        return IdealRep(self.N, -self.b, self.D)

    def contains(self, x: QuadInt) -> bool:
        # x = u*N + v*(b + sqrt D)/2 with u, v integers, so v = x.b
        return (x.a - x.b * self.b) % (2 * self.N) == 0


def compose_forms(f1, f2) -> tuple[int, tuple[int, int, int]]:
    """Compose two primitive forms of the same discriminant.

    Returns (d, f3) where the ideal product equals d times the ideal of f3.
    """
    if f1[0] > f2[0]:
        f1, f2 = f2, f1
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        u, _, d = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        u, v, d1 = _xgcd(s, d)
        x2, y2 = u, -v
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    return d1, (a3, b3, c3)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return x0, y0, a


def multiply_ideals(I1: IdealRep, I2: IdealRep) -> tuple[int, IdealRep]:
    """I1*I2 = d * J with J primitive."""
    if gcd(I1.N, I2.N) == 1:
        b, _ = _crt_b(I1, I2)
        return 1, IdealRep(I1.N * I2.N, b, I1.D)
    d, (a3, b3, _) = compose_forms(I1.form(), I2.form())
    return d, IdealRep(a3, b3, I1.D)


def _crt_b(I1: IdealRep, I2: IdealRep) -> tuple[int, int]:
    from .arith import crt

    return crt([I1.b, I2.b], [2 * I1.N, 2 * I2.N])


def prime_power_ideal(field: QuadraticField, ell: int, k: int, side: int | None = None) -> IdealRep:
    """The primitive ideal L^k for a prime L above ell.

    For odd ell the prime is [ell, (b + sqrt D)/2] with b = side mod ell; for
    ell = 2 side is b mod 4.  side=None picks the smaller b in [0, 2 ell).
    """
    D = field.D
    if k == 0:
        return IdealRep(1, D % 2, D)
    kr = kronecker(D, ell)
    if kr == -1:
        raise errors.InvalidArgument(f"{ell} is inert", ell=ell)
    if kr == 0:
        if k != 1:
            raise errors.InvalidArgument("ramified prime powers beyond 1 are not primitive")
        if ell == 2:
            b = 0 if D % 8 == 0 else 2
        else:
            b = 0 if D % 2 == 0 else ell
        return IdealRep(ell, b, D)
    if ell == 2:
        roots = [x % (1 << (k + 1)) for x in sqrt_mod_2power(D, k + 2) if x % 2]
        if side is None:
            side = min(r for r in roots) % 4
        b = next(x for x in sorted(set(roots)) if x % 4 == side % 4)
        return IdealRep(1 << k, b, D)
    if side is None:
        r = sqrt_mod_prime(D, ell)
        b = r if (r - D) % 2 == 0 else r + ell
        side = min(b, 2 * ell - b) % ell
    if (side * side - D) % ell:
        raise errors.InvalidArgument(f"{side} is not a square root of D mod {ell}")
    mod = ell**k
    r = hensel_sqrt(D, ell, k, root=side)
    b = r if (r - D) % 2 == 0 else r + mod
    return IdealRep(mod, b, D)


def is_reduced(P: int, Q: int, s: int) -> bool:
    return Q > 0 and 0 < P <= s and s - P < Q <= s + P


@dataclass
class ClassGroupStructure:
    h: int
    cyclic_orders: list[int]
    generators: list[IdealRep] = dc_field(default_factory=list)

    def p_part(self, p: int) -> list[int]:
        from .arith import p_part

        return [q for q in (p_part(d, p) for d in self.cyclic_orders) if q > 1]


class ClassGroup:
    """Wide ideal class group of a real quadratic field."""

    def __init__(self, field: QuadraticField, max_D: int = DEFAULT_MAX_D):
        if field.D > max_D:
            raise errors.DiscriminantTooLarge(
                f"D = {field.D} exceeds the cap {max_D}", D=field.D, cap=max_D
            )
        self.field = field
        self.D = field.D
        self.s = isqrt(self.D)
        states = K.reduced_ideals(self.D)
        self.class_of_state: dict[tuple[int, int], int] = {}
        self.cycles: list[list[tuple[int, int]]] = []
        P0 = self.s if (self.s - self.D) % 2 == 0 else self.s - 1
        # the principal cycle gets id 0
        for start in [(P0, 2)] + states:
            if start in self.class_of_state:
                continue
            cid = len(self.cycles)
            cyc = []
            st = start
            while st not in self.class_of_state:
                self.class_of_state[st] = cid
                cyc.append(st)
                _, P, Q = cf_step(st[0], st[1], self.D, self.s)
                st = (P, Q)
            self.cycles.append(cyc)
        self.h = len(self.cycles)
        self._mul_cache: dict[tuple[int, int], int] = {}

    # class arithmetic -------------------------------------------------

    def representative(self, cid: int) -> IdealRep:
        P, Q = self.cycles[cid][0]
        return IdealRep(Q // 2, P, self.D)

    def class_of(self, ideal: IdealRep) -> int:
        st = K.reduce_state(ideal.b, 2 * ideal.N, self.D)
        return self.class_of_state[st]

    def mul(self, c1: int, c2: int) -> int:
        if c1 == 0:
            return c2
        if c2 == 0:
            return c1
        key = (c1, c2) if c1 <= c2 else (c2, c1)
        out = self._mul_cache.get(key)
        if out is None:
            _, J = multiply_ideals(self.representative(c1), self.representative(c2))
            out = self.class_of(J)
            self._mul_cache[key] = out
        return out

    def inverse(self, cid: int) -> int:
        return self.class_of(self.representative(cid).conj())

    def power(self, cid: int, e: int) -> int:
        if e < 0:
            cid, e = self.inverse(cid), -e
        out = 0
        base = cid
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    # structure ---------------------------------------------------------

    @cached_property
    def _presentation(self):
        """Generators (split or ramified small primes) and a triangular relation matrix."""
        elements = {0: ()}
        gen_classes: list[int] = []
        gen_ideals: list[IdealRep] = []
        rows: list[list[int]] = []
        q = 1
        while len(elements) < self.h:
            q += 1
            if not is_prime(q) or kronecker(self.D, q) == -1:
                continue
            if q > self.D:
                raise errors.GeneratorSearchFailed("class group generators not found")
            ideal = prime_power_ideal(self.field, q, 1)
            c = self.class_of(ideal)
            if c in elements:
                continue
            k, x = 1, c
            while x not in elements:
                x = self.mul(x, c)
                k += 1
            j = len(gen_classes)
            vec = list(elements[x]) + [0] * (j - len(elements[x]))
            row = [-v for v in vec] + [k]
            rows = [r + [0] for r in rows] + [row]
            new = {}
            for y, yv in elements.items():
                z = y
                yv = tuple(yv) + (0,) * (j - len(yv))
                for i in range(k):
                    new[z] = yv + (i,)
                    z = self.mul(z, c)
            elements = new
            gen_classes.append(c)
            gen_ideals.append(ideal)
        return gen_classes, gen_ideals, rows, elements

    @cached_property
    def _snf(self):
        gen_classes, gen_ideals, rows, elements = self._presentation
        if not rows:
            return [], [], {0: ()}
        diag, _, V = smith_normal_form(rows)
        Vinv = mat_inverse_unimodular(V)
        keep = [i for i, d in enumerate(diag) if d != 1]
        # class -> coordinates in the new basis, reduced mod d_i
        dlog = {}
        for cid, vec in elements.items():
            vec = list(vec) + [0] * (len(gen_classes) - len(vec))
            new = [sum(vec[a] * V[a][i] for a in range(len(vec))) for i in range(len(vec))]
            dlog[cid] = tuple(new[i] % diag[i] for i in keep)
        basis = []
        for i in keep:
            # e_i in the new basis is row i of V^{-1} in the old one
            cid = 0
            for a, e in enumerate(Vinv[i]):
                if e:
                    cid = self.mul(cid, self.power(gen_classes[a], e))
            basis.append(cid)
        orders = [diag[i] for i in keep]
        # present largest first
        order = sorted(range(len(orders)), key=lambda i: -orders[i])
        orders = [orders[i] for i in order]
        basis = [basis[i] for i in order]
        dlog = {c: tuple(v[i] for i in order) for c, v in dlog.items()}
        return orders, basis, dlog

    @property
    def cyclic_orders(self) -> list[int]:
        return list(self._snf[0])

    @property
    def basis(self) -> list[int]:
        return list(self._snf[1])

    def dlog(self, cid: int) -> tuple[int, ...]:
        return self._snf[2][cid]

    def order(self, cid: int) -> int:
        out = 1
        for v, d in zip(self.dlog(cid), self.cyclic_orders):
            out = lcm(out, d // gcd(v, d))
        return out

    @cached_property
    def class_orders(self) -> list[int]:
        return [self.order(c) for c in range(self.h)]

    def structure(self) -> ClassGroupStructure:
        return ClassGroupStructure(
            self.h, self.cyclic_orders, [self.representative(c) for c in self.basis]
        )

    # principal ideals ----------------------------------------------------

    @cached_property
    def principal_betas(self) -> dict[tuple[int, int], QuadInt]:
        """For each state of the principal cycle, a generator of its ideal."""
        D = self.D
        out = {}
        beta = QuadInt(2, 0, D)
        for i, (P, Q) in enumerate(self.cycles[0]):
            out[(P, Q)] = beta
            _, P2, _ = cf_step(P, Q, D, self.s)
            beta = (beta * QuadInt(2 * P2, 2, D)).divexact(Q)
        return out

    def is_principal(self, ideal: IdealRep) -> bool:
        return self.class_of(ideal) == 0

    def generator(self, ideal: IdealRep) -> QuadInt | None:
        """A generator of the ideal, or None if it is not principal."""
        D, s = self.D, self.s
        N0 = ideal.N
        P, Q = ideal.b, 2 * N0
        if self.class_of(ideal) != 0:
            return None
        w = QuadInt(2 * N0, 0, D)
        while not is_reduced(P, Q, s):
            _, P2, Q2 = cf_step(P, Q, D, s)
            w = (w * QuadInt(2 * P2, 2, D)).divexact(Q)
            P, Q = P2, Q2
        beta = self.principal_betas[(P, Q)]
        num = beta * w.conj() * N0
        gamma = num.divexact(w.norm())
        if abs(gamma.norm()) != N0:
            raise AssertionError("generator recovery failed")
        return gamma


def class_group_structure(field: QuadraticField, max_D: int = DEFAULT_MAX_D) -> ClassGroupStructure:
    if field.D > max_D:
        raise errors.DiscriminantTooLarge(f"D = {field.D} exceeds the cap {max_D}", D=field.D, cap=max_D)
    return field.class_group.structure()


def ideal_class_order(field: QuadraticField, ideal: IdealRep) -> int:
    cg = field.class_group
    return cg.order(cg.class_of(ideal))


def is_principal_with_generator(field: QuadraticField, ideal: IdealRep) -> QuadInt | None:
    """Canonical generator of the ideal, or None when its class is nontrivial."""
    from .units import normalize_associate

    gen = field.class_group.generator(ideal)
    if gen is None:
        return None
    return normalize_associate(gen, field.unit)
