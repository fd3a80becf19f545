import json

import pytest

import dzv


def test_weight_two():
    r = dzv.Pipeline(2).dimension(2)
    assert (r.dimension, r.rank, r.relations) == (1, 0, 1)
    assert r.v == [(1, 1)]
    assert r.status == "ok"
    assert r.verified


def test_small_table_q2():
    rows = dzv.table(2, 2, 8)
    assert [r.dimension for r in rows] == [1, 2, 2, 3, 3, 3, 3]
    assert [r.zeta_like for r in rows] == [1, 1, 1, 0, 0, 2, 1]


def test_blank_fp_linear_at_odd_weight():
    rows = dzv.Pipeline(3).table(3, 6)
    assert [r.fp_linear for r in rows] == [None, 0, None, 0]
    csv = dzv.to_csv(rows).splitlines()
    assert csv[0] == "weight,dimension,fp_linear,zeta_like,V_size,rank,relations"
    assert csv[1] == "3,3,,1,1,1,0"


def test_json_round_trip():
    r = dzv.Pipeline(3).dimension(8)
    j = json.loads(r.to_json())
    assert j["dimension"] == 7
    assert j["fp_linear"] == 1
    assert "seconds" not in j


def test_point_and_v_set():
    pl = dzv.Pipeline(3)
    assert pl.v_set(6) == [(2, 4), (4, 2)]
    alpha, xi = pl.point(1, 2)
    assert alpha == "t^3 + 2*t"
    assert len(xi) == 3


def test_rejects_bad_verify_mode():
    with pytest.raises(ValueError):
        dzv.Pipeline(2, verify="sometimes")
