import json
import math

import numpy as np
import pytest

import ergocycle as ec


def test_convergents():
    rows = ec.convergents("sqrt2m1", 4)
    assert [(r[2], r[3]) for r in rows] == [("0", "1"), ("1", "2"), ("2", "5"), ("5", "12")]
    assert "3,2,5,12," in ec.convergents_csv("sqrt2m1", 4)


def test_select_mi_and_count_measure():
    assert ec.select_mi("sqrt2m1", 3) == ["2", "12", "70"]
    lo, hi = ec.count_measure("sqrt2m1", 2)
    t = math.sqrt(2) - 1
    assert lo == pytest.approx(1 - 2 * t, abs=1e-12)
    assert hi == pytest.approx(2 * t, abs=1e-12)


def test_clock_shift():
    for n in range(1, 6):
        u, v = ec.clock_shift(n)
        w = np.exp(2j * np.pi / n)
        assert np.allclose(v @ u @ v.conj().T, w * u, atol=1e-12)
        assert ec.commutant_dim([u, v], n) == 1
    assert ec.phi_relations_max_error(3) < 1e-10


def test_trivialize_periodic():
    rng = np.random.default_rng(0)
    ws = []
    for _ in range(3):
        q, r = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        ws.append(q * (np.diag(r) / abs(np.diag(r))))
    out = ec.trivialize_periodic(ws)
    assert out["ok"]
    z3 = np.linalg.matrix_power(out["z"], 3)
    assert np.allclose(z3, ws[0] @ ws[2] @ ws[1], atol=1e-10)


def test_equivalence():
    assert ec.decide_equiv0("5", "3") == 3
    assert ec.decide_equiv0("1/2") is None
    assert ec.decide_rotation_phases(("-1", "1"), ("0", "1"), ("0", "0"), ("0", "0"), 1) == "1"
    assert ec.decide_bernoulli_w({0}, {1}, 2, 2)
    with pytest.raises(ValueError):
        ec.decide_bernoulli_w({0}, {0}, 2, 2)
    assert json.loads(ec.equiv_decide("equiv0", '{"eta":{"p":"5","q":"3"}}')) == {"answer": "yes", "witness": {"m": 3}}


def test_singular_and_l1():
    assert ec.cover_bound("sqrt2m1", 30, 20) < 1e-3
    bits = [1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0]
    assert ec.digit_round_trip(bits) == bits
    frac, value = ec.harmonic_bound(50)
    assert value == pytest.approx(sum(1 / k for k in range(1, 51)), rel=1e-14)
    assert ec.harmonic_bound(3)[0] == "11/6"
    assert json.loads(ec.l1_demo("interval", "1/16", 3, 2))["holds"]


def test_ergodicity_run_small():
    text, csv, passed = ec.ergodicity_run("system: {type: circle}\nn: 2\nN: 3000\nsamples: 2\nseed: 5\n")
    report = json.loads(text)
    assert report["N"] == 3000
    assert csv.startswith("N,observable,deviation")
    assert text == ec.ergodicity_run("system: {type: circle}\nn: 2\nN: 3000\nsamples: 2\nseed: 5\n")[0]
