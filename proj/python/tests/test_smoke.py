import json
from pathlib import Path

import pytest

import cuspcobord as cc

CORPUS = Path(__file__).resolve().parents[2] / "corpus"


def load(name):
    return json.loads((CORPUS / name).read_text())


def test_invariant_and_cobordism():
    disk_plus_plus = load("disk_plus_plus.json")
    assert cc.validate_descriptor(disk_plus_plus) == []
    inv = cc.invariant(disk_plus_plus)
    assert inv["invariant"] == 1
    assert inv["group"] == "Z/2"
    assert cc.is_cobordant(disk_plus_plus, load("reverse_disk_plus_plus.json"))
    assert not cc.is_cobordant(disk_plus_plus, load("empty.json"))
    assert cc.reverse(cc.reverse(disk_plus_plus)) == disk_plus_plus
    assert cc.invariant(cc.disjoint_union(disk_plus_plus, disk_plus_plus))["invariant"] == 0


def test_generators():
    assert cc.invariant(cc.generator(2))["invariant"] == 1
    assert cc.invariant(cc.generator(3))["invariant"] == -1
    assert cc.invariant(cc.reverse(cc.generator(3)))["invariant"] == 1


def test_extendable():
    assert not cc.extendable(load("disk_plus_plus.json"))
    assert cc.extendable(load("d3_extendable.json"))


def test_patterns_and_moves():
    circle = load("circle_two_cusps_n3.json")
    assert cc.validate_pattern(circle) == []
    codes = {i["code"] for i in cc.validate_pattern(load("bad_circle_n3.json"))}
    assert "transition" in codes

    move = {"kind": "eliminate_matching_pair",
            "params": {"first": [0, 1], "second": [0, 3], "reconnection": "split"}}
    split = cc.apply_move(circle, move)
    assert len(split["components"]) == 2

    with pytest.raises(ValueError):
        cc.apply_move(load("two_odd_circles_n2.json"),
                      {"kind": "eliminate_matching_pair", "params": {"first": [0, 1], "second": [1, 1]}})


def test_normalize():
    result = cc.normalize(load("two_intervals_n3.json"))
    trace = result["trace"]
    assert cc.verify_trace(trace)
    assert all(cc.check_pattern(trace["final"])["conditions"])

    blocked = cc.normalize(load("all_plus_n3.json"))
    assert blocked["obstruction"]["kind"] == "sign_sum_nonzero"

    even = cc.normalize(load("interval_plus_odd_circle_n2.json"), chi_v=0)
    assert cc.verify_trace(even["trace"])


def test_normal_forms():
    assert cc.eval_map("fold", 2, [3.0, 2.0]) == pytest.approx((3.0, 4.0))
    assert cc.eval_map("swallowtail", 3, [2 / 3, 1.0, 0.0], t=1.0) == pytest.approx((2 / 3, 0.25))
    assert cc.swallow_tail_curve(1.0, 1.0) == pytest.approx((2 / 3, 1 / 12 - 1 / 2 + 2 / 3))
    with pytest.raises(ValueError):
        cc.eval_map("swallowtail", 3, [0.0, 0.0, 0.0], t=0.0)


def test_cli():
    code, out, err = cc.run_cli("trace", "swallowtail", "--t", "1")
    assert code == 0
    assert out.count('class="cusp"') == 2
    code, _, err = cc.run_cli("trace", "swallowtail", "--t", "0")
    assert code == 2
    assert err.startswith("error: ")
