# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops.  Same API as _pykernels, 64-bit inputs only."""

from libc.math cimport sqrt
from libc.stdint cimport uint64_t, int64_t

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"
    ctypedef long long i128 "__int128"

cdef uint64_t[12] BASES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


cdef inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) noexcept nogil:
    return <uint64_t>((<u128>a * b) % m)


cdef uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) noexcept nogil:
    cdef uint64_t r = 1 % m
    a %= m
    while e:
        if e & 1:
            r = mulmod(r, a, m)
        a = mulmod(a, a, m)
        e >>= 1
    return r


cdef bint c_is_prime(uint64_t n) noexcept nogil:
    cdef int i, j, s = 0
    cdef uint64_t d, x, a
    if n < 2:
        return False
    for i in range(12):
        if n % BASES[i] == 0:
            return n == BASES[i]
    d = n - 1
    while d % 2 == 0:
        d //= 2
        s += 1
    for i in range(12):
        a = BASES[i]
        x = powmod(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for j in range(s - 1):
            x = mulmod(x, x, n)
            if x == n - 1:
                break
        else:
            return False
    return True


cdef int c_jacobi(int64_t a0, uint64_t n) noexcept nogil:
    cdef int result = 1
    cdef uint64_t a, t
    cdef int64_t r = a0 % <int64_t>n
    if r < 0:
        r += n
    a = <uint64_t>r
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 == 3 or n % 8 == 5:
                result = -result
        t = a
        a = n
        n = t
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_prime_u64(uint64_t n):
    return c_is_prime(n)


def jacobi(int64_t a, uint64_t n):
    return c_jacobi(a, n)


def scan_progression(uint64_t first, uint64_t step, uint64_t bound, int64_t m):
    cdef list out = []
    cdef uint64_t L = first
    while L < bound:
        if L > 2 and c_is_prime(L) and c_jacobi(m, L) == 1:
            out.append(L)
        L += step
    return out


cdef uint64_t c_sqrt_mod(uint64_t a, uint64_t p) noexcept nogil:
    cdef uint64_t q, z, m, c, t, r, t2, b, i
    cdef int s = 0
    a %= p
    if a == 0:
        return 0
    q = p - 1
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        return powmod(a, (p + 1) // 4, p)
    z = 2
    while powmod(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m = s
    c = powmod(z, q, p)
    t = powmod(a, q, p)
    r = powmod(a, (q + 1) // 2, p)
    while t != 1:
        i = 0
        t2 = t
        while t2 != 1:
            t2 = mulmod(t2, t2, p)
            i += 1
        b = powmod(c, (<uint64_t>1) << (m - i - 1), p)
        m = i
        c = mulmod(b, b, p)
        t = mulmod(t, c, p)
        r = mulmod(r, b, p)
    return r


def sqrt_mod_u64(uint64_t a, uint64_t p):
    return c_sqrt_mod(a, p)


cdef inline int64_t isqrt64(int64_t n) noexcept nogil:
    cdef int64_t x = <int64_t>sqrt(<double>n)
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


cdef inline void c_reduce(int64_t *P, int64_t *Q, int64_t D, int64_t s) noexcept nogil:
    cdef int64_t p = P[0], qq = Q[0], a
    cdef i128 num
    while not (qq > 0 and 0 < p <= s and s - p < qq <= s + p):
        if qq > 0:
            num = <i128>p + s
            a = <int64_t>(num // qq) if num >= 0 else -<int64_t>((-num + qq - 1) // qq)
        else:
            num = <i128>p + s
            if num >= 0:
                a = -<int64_t>(num // (-qq)) - 1
            else:
                a = <int64_t>((-num + (-qq) - 1) // (-qq)) - 1
        p = <int64_t>(<i128>a * qq - p)
        qq = <int64_t>((<i128>D - <i128>p * p) / qq)
    P[0] = p
    Q[0] = qq


def reduce_state(int64_t P, int64_t Q, int64_t D):
    cdef int64_t s = isqrt64(D)
    c_reduce(&P, &Q, D, s)
    return P, Q


def reduced_ideals(int64_t D):
    cdef int64_t s = isqrt64(D)
    cdef int64_t P, X, N, lo, hi
    cdef list out = []
    P = 1 if D % 2 else 2
    while P <= s:
        X = (D - P * P) // 4
        lo = (s - P) // 2 + 1
        hi = (s + P) // 2
        N = lo
        while N <= hi:
            if X % N == 0:
                out.append((P, 2 * N))
            N += 1
        P += 2
    return out


def split_prime_states(int64_t D, list ells):
    cdef int64_t s = isqrt64(D)
    cdef int64_t b, r, ell, P, Q
    cdef list out = []
    cdef object e
    for e in ells:
        ell = e
        r = <int64_t>c_sqrt_mod(<uint64_t>(D % ell), <uint64_t>ell)
        b = r if (r - D) % 2 == 0 else r + ell
        if 2 * ell - b < b:
            b = 2 * ell - b
        P = b
        Q = 2 * ell
        c_reduce(&P, &Q, D, s)
        out.append((P, Q))
    return out


def cf_unit_mod(int64_t D, uint64_t M):
    cdef int64_t s = isqrt64(D)
    cdef int64_t P0 = s if (s - D) % 2 == 0 else s - 1
    cdef int64_t P = P0, Q = 2, q
    cdef uint64_t a1 = 1 % M, a0 = 0, b1 = 0, b0 = 1 % M, t
    cdef int64_t k = 0
    while True:
        q = (P + s) // Q
        t = a1
        a1 = (mulmod(<uint64_t>q % M, a1, M) + a0) % M
        a0 = t
        t = b1
        b1 = (mulmod(<uint64_t>q % M, b1, M) + b0) % M
        b0 = t
        P = q * Q - P
        Q = (D - P * P) // Q
        k += 1
        if P == P0 and Q == 2:
            break
    # (2*a1 - b1*P0) mod M without overflow
    t = (mulmod(2, a1, M) + M - mulmod(b1, <uint64_t>P0 % M, M)) % M
    return t, b1, k
