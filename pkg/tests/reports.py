"""Full-suite runs shared by several test modules (each costs tens of seconds)."""
import json
import tempfile
import time
from functools import cache
from pathlib import Path

from grickart import cli


def cli_theorems(jobs=1):
    """Run the default theorem suite through the CLI; returns (exit code, raw bytes, seconds)."""
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "theorems.jsonl"
        start = time.time()
        code = cli.main(["theorems", "--jobs", str(jobs), "--out", str(out)])
        return code, out.read_bytes(), time.time() - start


@cache
def theorem_report():
    code, raw, elapsed = cli_theorems()
    records = [json.loads(line) for line in raw.decode().splitlines()]
    return {"code": code, "raw": raw, "records": records, "elapsed": elapsed,
            "checks": {r["id"]: r for r in records if r["record"] == "theorem"}}
