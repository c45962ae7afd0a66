import pytest

import ffec

E7 = "p = 2\na1 = 1\na3 = t\n"


def test_analyze_e7():
    r = ffec.analyze(E7)
    assert r["ok"]
    assert r["nprime_deg"] == 1
    assert r["conductor_deg"] == 4
    assert r["l"]["coeffs"] == [1]


def test_analyze_catalog_matches_text():
    a = ffec.analyze(E7)
    b = ffec.analyze(catalog="E7", p=2)
    assert a["l"] == b["l"]
    assert a["bad_places"] == b["bad_places"]


def test_l_coefficients_e8_f3():
    c = ffec.l_coefficients(catalog="E8", p=3)
    assert c[0] == 1
    n = len(c) - 1
    assert all(abs(c[n - i]) == 3 ** (n - 2 * i) * abs(c[i]) for i in range(n + 1) if n - 2 * i >= 0)


def test_tower_e7():
    r = ffec.tower(catalog="E7", p=2, d=3)
    assert r["ok"]


def test_points_gram():
    r = ffec.points(3)
    assert r["ok"]
    assert r["gram_rank"] == 2
    assert r["gram"][0] == ["3/2", "0", "-3/2", "0"]


def test_berger():
    r = ffec.berger("berger-a", p=7, param=3)
    assert r["ok"]
    assert (r["genus"], r["c1"], r["c2"], r["nprime_deg"]) == (1, 1, 2, 3)
    d = ffec.berger(data="f: 1@0 1@1 / 2@inf\ng: 2@0 / 1@1 1@inf\n")
    assert d["genus"] == 1 and d["c2"] == 0


def test_delta_genus():
    assert ffec.delta(4, 6) == 8
    assert ffec.genus("f: 1@0 1@1 / 2@inf\ng: 2@0 / 1@1 1@inf\n") == 1


def test_lemma():
    hyp, div = ffec.lemma_trials(2, 3, 10, seed=5)
    assert hyp == 10 and div == 10
    hyp, _ = ffec.lemma_trials(2, 2, 5)
    assert hyp == 0


def test_errors():
    with pytest.raises(ffec.FfecError):
        ffec.analyze("p = 2\na1 = 1\na3 = t+\n")
    with pytest.raises(ValueError):
        ffec.berger("nope", p=3)
    with pytest.raises(ValueError):
        ffec.points(3, iters=0)
    with pytest.raises(ValueError):
        ffec.points(2)
    assert "E7" in ffec.catalog_names()
