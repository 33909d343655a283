import json

import pytest

from commgraph.verify import Budget, Check, THEOREMS, VerificationReport, overall_status, verify


def test_budget_presets_and_overrides():
    assert Budget.parse("full") == Budget()
    quick = Budget.parse("quick")
    assert quick.tropical_samples < Budget().tropical_samples
    b = Budget.parse("quick,tropical_pairs=300,max_connect_pairs=none")
    assert b.tropical_pairs == 300 and b.max_connect_pairs is None
    for bad in ("huge", "full,nothing=1", "full,tropical_pairs", "full,tropical_pairs=-1"):
        with pytest.raises(ValueError):
            Budget.parse(bad)


def test_overall_status():
    mk = lambda *s: [Check(str(i), x) for i, x in enumerate(s)]
    assert overall_status(mk("pass", "cross-reference", "informational")) == "pass"
    assert overall_status(mk("pass", "incomplete")) == "incomplete"
    assert overall_status(mk("incomplete", "fail")) == "fail"


def test_report_json_key_order():
    r = VerificationReport("x", "pass", [Check("c", "pass", {"a": 1}, {"m": "[0]"})], 5, 12)
    doc = json.loads(r.to_json())
    assert list(doc) == ["theorem", "status", "checks", "seed", "elapsed_ms"]
    assert list(doc["checks"][0]) == ["name", "status", "counters", "counterexample"]
    assert json.loads(r.to_json(timing=False))["elapsed_ms"] is None
    assert "counterexample" not in Check("c", "pass").to_dict()


def test_unknown_id():
    with pytest.raises(KeyError):
        verify("thm-9.9")


def test_jordan_centralizer_report():
    r = verify("lemma-2.1", Budget.quick())
    assert r.status == "pass"
    assert len(r.checks) == 8  # four semiring/size pairs, J and its transpose


def test_boolean_diameter_report():
    r = verify("thm-2.2", Budget.quick())
    assert r.status == "pass"
    by_name = {c.name: c for c in r.checks}
    assert by_name["diameter-n3"].counters["diameter"] == 4
    assert by_name["certificate-n4"].counters["scanned"] == 65536
    assert by_name["distance-to-all-units-n3"].counters["max_distance"] <= 2


def test_small_budget_is_incomplete_not_pass():
    r = verify("cor-2.3", Budget.quick())
    assert r.status == "incomplete"
    by_name = {c.name: c for c in r.checks}
    assert by_name["supp-functoriality-chain3-n2"].status == "pass"
    assert by_name["diameter-chain3-n3"].status == "incomplete"
    assert by_name["diameter-chain3-n2"].status == "informational"
    sampled = verify("thm-4.2", Budget.parse("quick,max_connect_pairs=500"))
    assert sampled.status == "incomplete"


def test_tropical_reports_are_seeded():
    b = Budget.parse("quick,tropical_samples=60,tropical_pairs=60,branch_min=5")
    r1 = verify("lemma-3.1", b, seed=11)
    r2 = verify("lemma-3.1", b, seed=11)
    assert r1.to_json(timing=False) == r2.to_json(timing=False)
    assert r1.status == "pass" and r1.seed == 11
    paths = verify("thm-3.2", b, seed=3)
    assert paths.status == "pass"
    assert paths.checks[1].status == "cross-reference"
    starved = verify("thm-3.2", Budget.parse("quick,tropical_pairs=6,branch_min=50"))
    assert starved.status == "incomplete"


def test_cheap_reports_pass():
    for tid in ("prop-4.1", "intro-example"):
        assert verify(tid, Budget.quick()).status == "pass"


def test_all_returns_one_report_per_id(monkeypatch):
    calls = []
    for tid in list(THEOREMS):
        monkeypatch.setitem(THEOREMS, tid, lambda b, s, tid=tid: calls.append(tid) or [Check("c", "pass")])
    reports = verify("all", Budget.quick())
    assert [r.theorem for r in reports] == calls == list(THEOREMS)
