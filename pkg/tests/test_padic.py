import random

import pytest

from oracles import sqrt_mod_prime_power
from quadtors import errors
from quadtors.padic import (
    delta_at,
    fermat_delta,
    fermat_quotient,
    fermat_quotient_counit,
    split_embeddings,
)
from quadtors.qfield import QuadInt, make_field
from quadtors.units import p_unit


def _random_element(K, rng, size=10**6):
    b = rng.randrange(-size, size)
    a = 2 * rng.randrange(-size, size) + (b * K.D) % 2
    return QuadInt(a, b, K.D)


def test_embedding_67_mod_9():
    emb = split_embeddings(make_field(67), 3, 2)
    r1 = emb.roots[0]
    assert (r1 * r1 - 268) % 9 == 0 and r1 % 3 == 1
    assert r1 in sqrt_mod_prime_power(268, 3, 2)


def test_embeddings_are_homomorphisms():
    K = make_field(7249)
    emb = split_embeddings(K, 3, 9)
    M = emb.modulus
    rng = random.Random(7)
    for _ in range(100):
        x, y = _random_element(K, rng), _random_element(K, rng)
        assert emb.phi(x, 0) * emb.phi(x, 1) % M == x.norm() % M
        for i in (0, 1):
            assert emb.phi(x * y, i) == emb.phi(x, i) * emb.phi(y, i) % M
            assert emb.phi(x + y, i) == (emb.phi(x, i) + emb.phi(y, i)) % M


def test_not_split_and_ramified():
    with pytest.raises(errors.QuadTorsError) as exc:
        split_embeddings(make_field(5), 3, 2)
    assert exc.value.kind == "NotSplit"
    with pytest.raises(errors.QuadTorsError) as exc:
        split_embeddings(make_field(3), 3, 2)
    assert exc.value.kind == "Ramified"


@pytest.mark.parametrize("m,d", [(67, 2), (72262, 4), (10942, 6), (7249, 4), (26893, 3)])
def test_delta_of_eps(m, d):
    K = make_field(m)
    emb = split_embeddings(K, 3, 9)
    assert fermat_quotient(K, K.unit.eps, emb).value == d


def test_delta_of_two_is_zero():
    for m in (67, 7249, 72262):
        K = make_field(m)
        assert fermat_quotient(K, K.element(4, 0), split_embeddings(K, 3, 9)).value == 0


@pytest.mark.parametrize("m,d", [(67, 1), (7249, 0), (26893, 3), (171061, 4)])
def test_counit_delta(m, d):
    K = make_field(m)
    pu = p_unit(K, 3)
    assert fermat_quotient_counit(K, pu, split_embeddings(K, 3, 12)).value == d


def test_not_coprime():
    K = make_field(67)
    with pytest.raises(errors.QuadTorsError) as exc:
        fermat_quotient(K, K.element(6, 0), split_embeddings(K, 3, 9))
    assert exc.value.kind == "NotCoprime"


def test_unit_multiplication_invariance():
    K = make_field(67)
    u = K.unit
    rng = random.Random(3)
    emb = split_embeddings(K, 3, 12)
    n = 0
    while n < 200:
        x = _random_element(K, rng, 1000)
        if x.norm() % 3 == 0 or x.norm() == 0:
            continue
        d = delta_at(x, emb).value
        if d >= 2:  # delta(eps) = 2
            continue
        n += 1
        for j in range(-2, 3):
            y = x * (u.eps**j if j >= 0 else (u.eps.conj() * u.norm) ** (-j))
            assert delta_at(y, emb).value == d


def test_eps_is_one_mod_p_after_power():
    for m in (67, 72262, 26893):
        K = make_field(m)
        emb = split_embeddings(K, 3, 5)
        for i in (0, 1):
            assert pow(emb.phi(K.unit.eps, i), 2, 3) == 1


def test_precision_raise_keeps_value():
    K = make_field(10942)
    rng = random.Random(11)
    for _ in range(200):
        x = _random_element(K, rng)
        if x.norm() % 3 == 0:
            continue
        d9 = fermat_delta(x, K, 3, t=9, max_t=9)
        d12 = fermat_delta(x, K, 3, t=12, max_t=12)
        if not d9.saturated:
            assert d12.value == d9.value


def test_saturation_escalates_and_can_be_strict():
    K = make_field(10942)
    d = fermat_delta(K.unit.eps, K, 3, t=4)
    assert d.value == 6 and not d.saturated and d.t >= 8
    with pytest.raises(errors.QuadTorsError) as exc:
        fermat_delta(K.unit.eps, K, 3, t=4, max_t=5, strict=True)
    assert exc.value.kind == "PrecisionExhausted"
