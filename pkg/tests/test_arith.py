import pytest
import sympy
from hypothesis import given, strategies as st

from quadtors import arith


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 561, 7919, 2**61 - 1, 3215031751, 10**18 + 9])
def test_is_prime_agrees_with_sympy(n):
    assert arith.is_prime(n) == sympy.isprime(n)


@given(st.integers(min_value=2, max_value=10**12))
def test_factorize_roundtrip(n):
    fac = arith.factorize(n)
    prod = 1
    for q, e in fac.items():
        assert sympy.isprime(q)
        prod *= q**e
    assert prod == n


@given(st.integers(min_value=-10**6, max_value=10**6), st.sampled_from([3, 5, 7, 11, 101, 7919]))
def test_kronecker_matches_sympy(a, p):
    assert arith.kronecker(a, p) == sympy.jacobi_symbol(a % p, p)


@pytest.mark.parametrize("p", [3, 5, 11, 13, 10007])
def test_sqrt_and_hensel(p):
    for a in range(1, 60):
        if sympy.jacobi_symbol(a, p) != 1:
            continue
        r = arith.sqrt_mod_prime(a, p)
        assert (r * r - a) % p == 0
        R = arith.hensel_sqrt(a, p, 7, root=r)
        assert (R * R - a) % p**7 == 0 and R % p == r


def test_sqrt_mod_2power_all_roots():
    for a in (1, 9, 17, 33, 41):
        roots = arith.sqrt_mod_2power(a, 7)
        brute = sorted(x for x in range(128) if (x * x - a) % 128 == 0)
        assert sorted(roots) == brute


def test_valuation_and_p_part():
    assert arith.valuation(3**5 * 7, 3) == 5
    assert arith.p_part(2 * 27 * 5, 3) == 27
    assert arith.is_squarefree(30) and not arith.is_squarefree(12)


def test_crt_and_order():
    x, m = arith.crt([2, 3], [5, 7])
    assert m == 35 and x % 5 == 2 and x % 7 == 3
    assert arith.multiplicative_order(2, 7, 6) == 3
    assert arith.multiplicative_order(10, 101, 100) == 4
    assert arith.ilog(80, 3) == 3 and arith.ilog(81, 3) == 4
