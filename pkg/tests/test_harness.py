import json

import pytest

from grickart import classifier as C
from grickart import harness as H
from grickart.hom import end_ring, is_isomorphic
from grickart.module import all_submodules
from grickart.syntax import parse_spec

STATUSES = {"PASS", "FAIL", "SKIPPED", "PARTIAL"}


def test_cyclics_only_over_z4():
    fam = H.InstanceFamily("Z4c", "ring zmod 4", max_summands=1, subquotients=False)
    inst = H.generate_family(fam)
    assert sorted(m.order for m in inst) == [1, 2, 4]


def test_integer_invariants_up_to_twelve():
    fam = H.InstanceFamily("Zs", None, subquotients=False, z_invariants=(2, 3, 4), max_order=12)
    inst = H.generate_family(fam)
    got = {tuple(int(x) for x in m.spec.split()[2:]) for m in inst}
    for want in [(2,), (3,), (4,), (2, 2), (2, 3), (2, 4), (3, 4)]:
        assert want in got
    assert all(m.order <= 12 for m in inst)
    assert inst.manifest["truncated"]["order_cap"] > 0  # e.g. 4 4 and 2 2 4 are over the cap


def test_empty_recipes():
    assert list(H.generate_family(H.InstanceFamily("none", None))) == []
    assert list(H.generate_family(H.InstanceFamily("none", "ring zmod 4", cyclics=False))) == []


def test_generation_is_deterministic_and_deduplicated(catalogs):
    for name, inst in catalogs.items():
        again = H.generate_family(H.family_by_name(name))
        assert [m.spec for m in again] == [m.spec for m in inst]
        for i, a in enumerate(inst):
            for b in list(inst)[i + 1:]:
                if a.order == b.order and a.order <= 16:
                    assert not is_isomorphic(a, b)


def test_instance_cap_recorded():
    fam = H.InstanceFamily("Z8", "ring zmod 8", max_instances=5)
    inst = H.generate_family(fam)
    assert len(inst) == 5 and inst.manifest["truncated"]["instance_cap"] > 0


def test_specs_rebuild_the_instances(catalogs):
    for inst in catalogs.values():
        for m in list(inst)[:6]:
            assert is_isomorphic(parse_spec(m.spec), m)


def test_registry_complete_and_unique():
    ids = list(H.REGISTRY_IDS)
    assert len(ids) == len(set(ids))
    for th in H.REGISTRY:
        assert th.mode in ("check", "partial", "skip")
        assert th.kind in ("implication", "equivalence", "construction", "identity")
        if th.mode == "skip":
            assert th.reason


def test_report_statuses(theorem_report):
    checks = theorem_report["checks"]
    assert list(checks) == list(H.REGISTRY_IDS)
    assert all(c["status"] in STATUSES for c in checks.values())
    assert all(c["version"] == H.REPORT_VERSION for c in theorem_report["records"])
    assert theorem_report["code"] == 0


def test_report_named_examples(theorem_report):
    checks = theorem_report["checks"]
    assert checks["decomposition"]["status"] == "PASS" and "Z4" in checks["decomposition"]["families"]
    assert checks["z4-example"]["status"] == "PASS" and checks["z4-example"]["applicable"] == 1
    assert checks["sigma-t-extending"]["status"] == "PARTIAL" and "Z6" in checks["sigma-t-extending"]["families"]
    assert checks["injective-hull"]["status"] == "SKIPPED"
    assert checks["injective-hull"]["notes"] == ["injective hulls out of scope"]


def test_checks_are_not_vacuous(theorem_report):
    for c in theorem_report["checks"].values():
        if c["status"] != "SKIPPED":
            assert c["checked"] > 0, c["id"]


def test_failures_carry_witness(monkeypatch):
    # a broken predicate must surface as FAIL with a serialized instance
    fam = H.InstanceFamily("Z4", "ring zmod 4", max_summands=1)
    monkeypatch.setattr(H.C, "is_goldie_rickart", lambda m: False)
    checks, _ = H.run_theorems([fam])
    bad = [c for c in checks if c.status == "FAIL"]
    assert bad
    for c in bad:
        assert c.witness and "family" in c.witness
        assert H.FAIL_NOTE in c.notes
    inst = [c for c in bad if "instance" in c.witness]
    assert inst and parse_spec(inst[0].witness["instance"]) is not None


def test_search_examples():
    z = [H.family_by_name("Z")]
    rec = H.search_counterexample("goldie_rickart&!rickart", z)
    assert rec["found"] and rec["instance"] == "module zabelian 4"
    rec = H.search_counterexample("goldie_rickart&!rickart", [])
    assert not rec["found"] and rec["status"] == "exhausted" and rec["checked"] == 0
    semisimple = [H.family_by_name("Z6"), H.family_by_name("M2F2")]
    rec = H.search_counterexample("!goldie_rickart", semisimple)
    assert not rec["found"] and rec["message"] == "no witness found within catalog"


def test_search_target_errors():
    with pytest.raises(ValueError):
        H.parse_target("bogus")
    with pytest.raises(ValueError):
        H.parse_target("rickart&left_rickart")
    assert H.parse_target("goldie_rickart&!rickart") == [("goldie_rickart", True), ("rickart", False)]


def test_ring_asymmetry_search():
    rec = H.search_counterexample("right_goldie_rickart&!left_goldie_rickart", [])
    assert rec["checked"] == len(H.TRIANGULAR_RINGS)
    assert rec["found"] is False


def test_crosschecks_small_cases():
    z4 = [H.family_by_name("Z4")]
    rows = H.oracle_crosschecks(z4)
    assert rows and all(r["agree"] for r in rows)
    zero = [H.InstanceFamily("zero", None, z_invariants=(2,), max_summands=0, subquotients=False)]
    rows = H.oracle_crosschecks(zero)
    assert rows and all(r["agree"] for r in rows)


def test_f2_squared_idempotents_match_summand_pairs():
    v = parse_spec("module sum (module regular (ring zmod 2)) (module regular (ring zmod 2))")
    lat = all_submodules(v)
    assert len(lat) == 5
    pairs = [(a, b) for a in lat.masks for b in lat.masks if a & b == 1 and a.bit_count() * b.bit_count() == v.order]
    assert len(pairs) == len(end_ring(v).idempotent_indices) == 8
    assert len(C.summand_masks(v)) == 5


def test_parallel_merge_matches_serial():
    fams = [H.family_by_name("Z4"), H.family_by_name("F2"), H.family_by_name("Z6")]
    a, ma = H.run_theorems(fams, jobs=1)
    b, mb = H.run_theorems(fams, jobs=3)
    assert json.dumps([c.to_dict() for c in a]) == json.dumps([c.to_dict() for c in b]) and ma == mb
