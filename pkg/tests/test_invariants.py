import json

import pytest

from quadtors import errors
from quadtors.invariants import CSV_COLUMNS, ambiguous_class_number, analyze, check_report, scan
from quadtors.qfield import field_from_discriminant, fundamental_discriminants, make_field


def test_analyze_67():
    r = analyze(make_field(67), 3)
    assert (r.h, r.delta_eps, r.delta_eta) == (1, 2, 1)
    assert r.flag_normique and not r.flag_classes
    assert r.log_class_trivial is False


def test_analyze_7249():
    r = analyze(make_field(7249), 3)
    assert (r.h, r.v_p_h0, r.delta_eps, r.delta_eta) == (3, 1, 4, 0)
    assert r.sufficient_condition and not r.flag_classes and not r.flag_normique


def test_analyze_26893_both_flags():
    r = analyze(make_field(26893), 3)
    assert r.flag_classes and r.flag_normique


def test_torsion_order_72262():
    assert analyze(make_field(72262), 3).torsion_order == 3**6


def test_report_relations_on_many_fields():
    n = 0
    for D in fundamental_discriminants(5, 3000):
        K = field_from_discriminant(D)
        for p in (3, 5, 7):
            if K.D % p and K.is_split(p):
                check_report(analyze(K, p))
                n += 1
    assert n > 500


def test_analyze_not_split():
    with pytest.raises(errors.QuadTorsError) as exc:
        analyze(make_field(5), 3)
    assert exc.value.kind == "NotSplit"
    with pytest.raises(errors.QuadTorsError) as exc:
        analyze(make_field(3), 3)
    assert exc.value.kind == "Ramified"


def test_ambiguous_class_number():
    K = make_field(72262)
    assert ambiguous_class_number(K, 3, 0) == 9
    assert [ambiguous_class_number(K, 3, n) for n in range(4, 8)] == [729] * 4
    assert ambiguous_class_number(make_field(67), 3, 1) == 3
    vals = [ambiguous_class_number(K, 3, n) for n in range(8)]
    assert vals == sorted(vals)


def test_ambiguous_class_number_from_hasse_symbol_order():
    # Chevalley at the first step: h_p * p^n / (E : E cap N) with the norm
    # index read off the order p^(n - delta) of the symbol of eps
    K = make_field(67)
    for n in range(0, 5):
        index = 3 ** max(n - 2, 0)
        assert ambiguous_class_number(K, 3, n) == 1 * 3**n // index


def test_scan_matches_analyze():
    reps = list(scan(200, 2000, 3))
    assert [r.D for r in reps] == sorted(r.D for r in reps)
    for r in reps[:30]:
        assert r == analyze(field_from_discriminant(r.D), 3)
    want = [D for D in fundamental_discriminants(200, 2000) if field_from_discriminant(D).is_split(3)]
    assert [r.D for r in reps] == want


def test_scan_filters_and_empty():
    assert list(scan(16, 16, 3)) == []
    assert [r.m for r in scan(268, 268, 3)] == [67]
    hits = list(scan(2, 5000, 3, vh_min=1, zmax_exp=2))
    for r in hits:
        assert r.v_p_h >= 1 and r.delta_eps >= 2


def test_scan_parallel_equals_serial():
    a = list(scan(2, 6000, 5, jobs=1, chunk=300))
    b = list(scan(2, 6000, 5, jobs=3, chunk=300))
    assert a == b


def test_serialisation():
    r = analyze(make_field(67), 3)
    obj = json.loads(r.to_json())
    assert obj["delta_eps"] == 2 and obj["delta_eta"] == 1 and obj["pb_normique"] is True
    ext = json.loads(r.to_json(extended=True))
    assert ext["eps"] == "48842+5967*sqrt(67)"
    assert len(r.csv_row()) == len(CSV_COLUMNS)
    assert r.to_json() == analyze(make_field(67), 3).to_json()
