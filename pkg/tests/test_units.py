import pytest

from quadtors import errors
from quadtors.classgroup import prime_power_ideal
from quadtors.padic import split_embeddings
from quadtors.qfield import QuadInt, make_field
from quadtors.units import fundamental_unit, normalize_associate, p_unit

PUBLISHED = {
    67: (48842, 5967, 1),
    6559: (6560, 81, 1),
    26893: (23359714011, 142445225, 2),
}


@pytest.mark.parametrize("m", sorted(PUBLISHED))
def test_published_units(m):
    x, y, den = PUBLISHED[m]
    K = make_field(m)
    assert fundamental_unit(K).eps == QuadInt.from_sqrt_m(x, y, K, den)


def test_unit_of_q_sqrt2():
    K = make_field(2)
    assert K.unit.eps == QuadInt.from_sqrt_m(1, 1, K)
    assert K.unit.norm == -1


@pytest.mark.parametrize("m,h0,absnorm", [(67, 1, 3), (6559, 9, 3**9), (10942, 3, 27), (7249, 3, 27)])
def test_p_unit(m, h0, absnorm):
    K = make_field(m)
    pu = p_unit(K, 3)
    assert pu.h0 == h0 and abs(pu.eta.norm()) == absnorm
    assert K.class_group.h % pu.h0 == 0
    # primitive: not divisible by 3
    assert pu.eta.content() % 3 != 0
    # lies in the prime of the first embedding only
    emb = split_embeddings(K, 3, 1)
    assert emb.phi(pu.eta, 0) == 0 and emb.phi(pu.eta, 1) != 0


def test_p_unit_eta_67_is_published_up_to_units_and_conjugation():
    K = make_field(67)
    eta = p_unit(K, 3).eta
    pub = QuadInt.from_sqrt_m(8, 1, K)
    # eta / y is a unit exactly when N(y) = -3 divides eta * conj(y)
    assert any((eta * y.conj()).divides_by(3) for y in (pub, pub.conj()))


def test_p_unit_rejects_inert():
    with pytest.raises(errors.QuadTorsError) as exc:
        p_unit(make_field(5), 3)
    assert exc.value.kind == "NotSplit"


@pytest.mark.parametrize("m", [2, 5, 67, 94, 26893])
def test_normalize_associate_window(m):
    K = make_field(m)
    u = K.unit
    x = prime_power_ideal(K, 7, 1) if K.is_split(7) else None
    base = K.element(K.D % 2 + 6, 1) if x is None else K.class_group.generator(x) or K.element(2 + K.D % 2, 2)
    c = normalize_associate(base, u)
    for j in range(-3, 4):
        for sgn in (1, -1):
            y = base * (u.eps**j if j >= 0 else (u.eps.conj() * u.norm) ** (-j)) * sgn
            assert normalize_associate(y, u) == c
    ratio = c.log_abs() - c.conj().log_abs()
    assert -1e-9 <= ratio < 2 * u.regulator + 1e-9
    assert c.sign() > 0
