"""Pure-Python implementations of the hot loops.

These are the reference versions; the compiled module must agree with them
on every input inside its 64-bit domain.
"""

from __future__ import annotations

from math import isqrt

_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime_u64(n: int) -> bool:
    if n < 2:
        return False
    for p in _BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    a %= n
    result = 1
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


def scan_progression(first: int, step: int, bound: int, m: int) -> list[int]:
    """Primes L = first + k*step < bound with (m/L) = 1."""
    out = []
    L = first
    while L < bound:
        if L > 2 and is_prime_u64(L) and jacobi(m, L) == 1:
            out.append(L)
        L += step
    return out


def sqrt_mod_u64(a: int, p: int) -> int:
    """Square root of a quadratic residue a modulo an odd prime p."""
    a %= p
    if a == 0:
        return 0
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


def is_reduced(P: int, Q: int, s: int) -> bool:
    return Q > 0 and 0 < P <= s and s - P < Q <= s + P


def reduce_state(P: int, Q: int, D: int) -> tuple[int, int]:
    """Run continued-fraction steps on (P + sqrt D)/Q until it is reduced."""
    s = isqrt(D)
    while not is_reduced(P, Q, s):
        if Q > 0:
            q = (P + s) // Q
        else:
            q = -((P + s) // -Q) - 1
        P = q * Q - P
        Q = (D - P * P) // Q
    return P, Q


def reduced_ideals(D: int) -> list[tuple[int, int]]:
    """All reduced states (P, Q) with Q = 2N and 4N | D - P^2."""
    s = isqrt(D)
    out = []
    for P in range(1 if D % 2 else 2, s + 1, 2):
        X = (D - P * P) // 4
        lo = (s - P) // 2 + 1
        hi = (s + P) // 2
        for N in range(lo, hi + 1):
            if X % N == 0:
                out.append((P, 2 * N))
    return out


def split_prime_states(D: int, ells: list[int]) -> list[tuple[int, int]]:
    """Reduced state in the class of [l, (b + sqrt D)/2] for odd split primes l, b the smaller root."""
    out = []
    for ell in ells:
        r = sqrt_mod_u64(D, ell)
        b = r if (r - D) % 2 == 0 else r + ell
        b = min(b, 2 * ell - b)
        out.append(reduce_state(b, 2 * ell, D))
    return out


def cf_unit_mod(D: int, M: int) -> tuple[int, int, int]:
    """Fundamental unit (a + b sqrt D)/2 reduced mod M, and the period length."""
    s = isqrt(D)
    P0 = s if (s - D) % 2 == 0 else s - 1
    P, Q = P0, 2
    a1, a0 = 1, 0
    b1, b0 = 0, 1
    k = 0
    while True:
        q = (P + s) // Q
        a1, a0 = (q * a1 + a0) % M, a1
        b1, b0 = (q * b1 + b0) % M, b1
        P = q * Q - P
        Q = (D - P * P) // Q
        k += 1
        if P == P0 and Q == 2:
            break
    return (2 * a1 - b1 * P0) % M, b1 % M, k
