"""Small integer helpers used throughout the package."""

from __future__ import annotations

from math import gcd, isqrt

import sympy

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# the first twelve prime bases are a proof of primality below this bound
_MR_DETERMINISTIC_LIMIT = 318665857834031151167461

_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % q for q in range(2, isqrt(p) + 1))]


def valuation(n: int, p: int) -> int:
    """Exponent of p in n.  The valuation of 0 is reported as a large sentinel."""
    if n == 0:
        return 10**9
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_part(n: int, p: int) -> int:
    return p ** valuation(n, p)


def _miller_rabin(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:12]:
        if n % p == 0:
            return n == p
    if n < _MR_DETERMINISTIC_LIMIT:
        return all(_miller_rabin(n, a) for a in _MR_BASES)
    return bool(sympy.isprime(n))


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of |n| as {prime: exponent}."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        if n < 1_000_000 or is_prime(n):
            out[n] = out.get(n, 0) + 1
        else:
            for q, e in sympy.factorint(n).items():
                out[int(q)] = out.get(int(q), 0) + int(e)
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for e in factorize(n).values())


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod_prime(a: int, p: int) -> int:
    """A square root of a modulo the prime p (Tonelli-Shanks)."""
    a %= p
    if p == 2 or a == 0:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        return pow(a, (p + 1) // 4, p)
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def hensel_sqrt(a: int, p: int, k: int, root: int | None = None) -> int:
    """Lift a square root of a mod p (p odd, p not dividing a) to mod p**k."""
    r = sqrt_mod_prime(a, p) if root is None else root % p
    mod = p
    for _ in range(1, k):
        mod *= p
        # Newton step for x^2 - a
        r = (r - (r * r - a) * pow(2 * r, -1, mod)) % mod
    return r % p**k


def sqrt_mod_2power(a: int, k: int) -> list[int]:
    """All square roots of a modulo 2**k, by lifting one bit at a time."""
    roots = [x for x in range(2) if (x * x - a) % 2 == 0]
    for j in range(2, k + 1):
        mod = 1 << j
        half = 1 << (j - 1)
        roots = sorted({x + e for x in roots for e in (0, half) if ((x + e) ** 2 - a) % mod == 0})
    return roots


def crt(residues: list[int], moduli: list[int]) -> tuple[int, int]:
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        g = gcd(m, n)
        if (r - x) % g:
            raise ValueError("incompatible congruences")
        l = m // g * n
        t = ((r - x) // g * pow(m // g, -1, n // g)) % (n // g)
        x = (x + m * t) % l
        m = l
    return x, m


def ilog(n: int, p: int) -> int:
    """Largest k with p**k <= n (n >= 1)."""
    k, q = 0, p
    while q <= n:
        q *= p
        k += 1
    return k


def multiplicative_order(x: int, mod: int, group_order: int) -> int:
    """Order of x in (Z/mod)^* given a multiple of it."""
    order = group_order
    for q in factorize(group_order):
        while order % q == 0 and pow(x, order // q, mod) == 1:
            order //= q
    return order


