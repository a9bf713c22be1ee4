import io
import json

import pytest

from grickart import cli
from grickart.harness import REPORT_VERSION


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_z4(capsys):
    code, out, _ = run(capsys, "classify", "module zabelian 4")
    rec = json.loads(out)
    assert code == 0 and rec["version"] == REPORT_VERSION
    assert rec["verdicts"]["goldie_rickart"] is True and rec["verdicts"]["rickart"] is False
    assert "witnesses" not in rec


def test_classify_witnesses(capsys):
    code, out, _ = run(capsys, "classify", "module zabelian 4", "--witnesses")
    rec = json.loads(out)
    assert rec["witnesses"]["rickart"]["table"] == [0, 2, 0, 2]
    assert set(rec["witnesses"]) == {k for k, v in rec["verdicts"].items() if not v and k in rec["witnesses"]}
    assert all(not rec["verdicts"][k] for k in rec["witnesses"])


def test_classify_zero_module_all_true(capsys):
    code, out, _ = run(capsys, "classify", "module zabelian")
    assert code == 0 and all(json.loads(out)["verdicts"].values())


def test_classify_ring_reports_ring_predicates(capsys):
    code, out, _ = run(capsys, "classify", "ring zmod 4")
    rec = json.loads(out)
    assert rec["ring_predicates"]["right_goldie_rickart"] and not rec["ring_predicates"]["right_rickart"]


def test_classify_file_and_stdin(capsys, tmp_path, monkeypatch):
    f = tmp_path / "m.txt"
    f.write_bytes(b"# Z4 over itself\r\nmodule regular\r\n  (ring zmod 4)\r\n")
    code, out, _ = run(capsys, "classify", str(f))
    assert code == 0 and json.loads(out)["instance"] == "module regular (ring zmod 4)"
    monkeypatch.setattr("sys.stdin", io.StringIO("module zabelian 2 2\n"))
    code, out, _ = run(capsys, "classify", "-")
    assert code == 0 and json.loads(out)["order"] == 4


@pytest.mark.parametrize("argv,code", [
    (["classify", "ring zmod"], 2),
    (["classify", "module sub (module zabelian 4) gens 7"], 2),
    (["classify", "module zabelian 8 8 8 8"], 3),
    (["search", "bogus"], 2),
    (["search", "rickart", "--family", "nope"], 2),
    (["theorems", "--config", "/nonexistent.json"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code and err


def test_search_records(capsys):
    code, out, _ = run(capsys, "search", "goldie_rickart&!rickart", "--family", "Z")
    rec = json.loads(out)
    assert code == 0 and rec["found"] and rec["instance"] == "module zabelian 4" and rec["version"] == REPORT_VERSION


def test_theorems_jsonl_with_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"families": ["F2", {"name": "Z4small", "ring": "ring zmod 4", "max_summands": 1}],
                               "max_order": 16}))
    out = tmp_path / "r.jsonl"
    code, _, err = run(capsys, "theorems", "--config", str(cfg), "--jobs", "1", "--out", str(out))
    records = [json.loads(x) for x in out.read_text().splitlines()]
    assert code == 0 and "theorems:" in err
    assert all("version" in r for r in records)
    kinds = [r["record"] for r in records]
    assert kinds[:2] == ["manifest", "manifest"] and kinds[-1] == "summary"
    assert records[-1]["families"] == ["F2", "Z4small"]
    assert "FAIL" not in records[-1]["status_counts"]


def test_max_order_flag_overrides_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_order": 64}))
    code, out, _ = run(capsys, "families", "--config", str(cfg), "--max-order", "8", "--family", "Z4")
    assert json.loads(out)["max_order"] == 8


def test_crosscheck_command(capsys):
    code, out, _ = run(capsys, "crosscheck", "--family", "F2", "--jobs", "1")
    rows = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and rows and all(r["agree"] for r in rows)
