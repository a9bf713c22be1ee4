"""Acceptance criteria 1-9, one test each.

Under pytest a summary line per criterion is printed at the end of the run;
``python3 tests/test_acceptance.py`` prints the same lines directly.
"""
import sys
import time
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import reports  # noqa: E402
from grickart import classifier as C  # noqa: E402
from grickart import harness as H  # noqa: E402
from grickart.hom import end_ring, is_projective_module  # noqa: E402
from grickart.module import all_submodules, restrict  # noqa: E402
from grickart.syntax import Builder, parse_term  # noqa: E402
from grickart.torsion import goldie_torsion, t_operator  # noqa: E402

CATALOG_NAMES = ("Z4", "Z8", "Z6", "F2", "T2F2", "M2F2", "Z2xZ4")
TEN_MINUTES = 600


def _families(names):
    return [H.family_by_name(n) for n in names]


def _passed(report, tid):
    c = report["checks"][tid]
    assert c["status"] == "PASS", (tid, c.get("witness"))
    return c


def test_criterion_1_z4_example():
    start = time.time()
    m = Builder().build(parse_term("module zabelian 4"))
    rep = C.classify(m)
    elapsed = time.time() - start
    assert rep.verdicts["goldie_rickart"] is True and rep.verdicts["rickart"] is False
    w = rep.witnesses["rickart"]
    assert w["table"] == [0, 2, 0, 2] and w["kernel"] == [0, 2]
    prof = goldie_torsion(m)
    assert prof.z.mask == prof.z2.mask == m.full_mask
    assert elapsed < 1.0, elapsed


def test_criterion_2_decomposition_replay():
    report = reports.theorem_report()
    c = _passed(report, "decomposition")
    assert set(CATALOG_NAMES) <= set(c["families"])
    assert c["checked"] == sum(m["instances"] for m in report["records"] if m["record"] == "manifest")
    assert report["elapsed"] < TEN_MINUTES


def _summand(m, mask):
    return all_submodules(m).complement_mask(mask) is not None


def test_criterion_3_finite_subsets():
    report = reports.theorem_report()
    _passed(report, "finite-subsets")
    # independent replay: t_M(I) built from endomorphism tables, not preimage masks
    discrepancies = 0
    for fam in _families(CATALOG_NAMES + ("Z",)):
        for m in H.generate_family(fam):
            t = end_ring(m).tables
            reps = {}
            for f in t:
                reps.setdefault(t_operator(m, [f]).mask, f)
            fs = list(reps.values())
            ok = True
            for k in (1, 2, 3):
                for combo in combinations(fs, min(k, len(fs))):
                    ok = ok and _summand(m, t_operator(m, combo).mask)
            if len(t) <= 64:
                ok = ok and _summand(m, t_operator(m, t).mask)
                for k in range(4, len(fs) + 1):
                    for combo in combinations(fs, k):
                        ok = ok and _summand(m, t_operator(m, combo).mask)
                        if not ok:
                            break
            discrepancies += ok != C.is_goldie_rickart(m)
    assert discrepancies == 0


def test_criterion_4_implication_lattice():
    report = reports.theorem_report()
    for tid in ("t-baer", "t-extending", "sip-over-z2", "summand-closure", "rickart-versus"):
        c = _passed(report, tid)
        assert c["applicable"] > 0, tid


def test_criterion_5_semisimple_sweep():
    for name in ("Z6", "M2F2"):
        for m in H.generate_family(H.family_by_name(name)):
            z2 = restrict(m, goldie_torsion(m).z2)
            assert C.is_goldie_rickart(m) and is_projective_module(z2), m.spec
    first = None
    for m in H.generate_family(H.family_by_name("Z4")):
        z2 = restrict(m, goldie_torsion(m).z2)
        if not (C.is_goldie_rickart(m) and is_projective_module(z2)):
            first = m
            break
    assert first is not None and first.order == 2
    assert first.spec == "module quotient (module regular (ring zmod 4)) gens 2"
    assert goldie_torsion(first).z2.mask == first.full_mask
    assert not is_projective_module(first)
    c = reports.theorem_report()["checks"]["semisimple-ring"]
    assert c["status"] == "PARTIAL"
    assert any("converse witness module quotient (module regular (ring zmod 4)) gens 2" in n for n in c["notes"])


def test_criterion_6_relative_suite():
    report = reports.theorem_report()
    for tid in ("relative-restriction", "relative-factors", "c2-sums", "relative-injective-sums",
                "relative-injective-corollary"):
        c = _passed(report, tid)
        assert c["applicable"] > 0, tid
    notes = report["checks"]["c2-sums"]["notes"]
    three = sum(int(n.split(" and ")[1].split()[0]) for n in notes if "three-factor" in n)
    assert three > 0
    assert report["elapsed"] < TEN_MINUTES


def test_criterion_7_oracle_agreement():
    rows = H.oracle_crosschecks(_families(CATALOG_NAMES + ("Z",)))
    by = {r["check"]: r for r in rows}
    for name in ("summand_complement_vs_idempotent", "hom_enumeration_vs_scan", "principal_vs_all_ideal_essential",
                 "singular_principal_vs_all_ideal", "t_operator_vs_intersection", "z2_hereditary"):
        assert by[name]["checked"] > 0 and by[name]["agree"], (name, by[name]["witness"])
    assert all(r["agree"] for r in rows)


def test_criterion_8_determinism():
    first = reports.theorem_report()
    code, raw, _ = reports.cli_theorems(jobs=2)
    assert code == first["code"] == 0
    assert raw == first["raw"]


def test_criterion_9_search_contract():
    rec = H.search_counterexample("goldie_rickart&!rickart", _families(["Z"]))
    assert rec["found"] and rec["instance"] == "module zabelian 4"
    rec = H.search_counterexample("rickart&!goldie_rickart", list(H.DEFAULT_FAMILIES))
    assert rec["found"] is False and rec["status"] == "exhausted"
    assert rec["message"] == "no witness found within catalog" and rec["checked"] > 0


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        try:
            fn()
            status = "PASS"
        except AssertionError as exc:
            status, failed = f"FAIL {exc}", failed + 1
        print(f"criterion {name.split('_')[2]}: {status}  ({name})", flush=True)
    sys.exit(1 if failed else 0)
