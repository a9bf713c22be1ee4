"""Command-line driver: classify one instance, replay the theorem registry, search, cross-check.

Reports go to stdout (or --out) as JSON or JSON lines; progress goes to stderr.
Exit codes: 0 success, 1 a theorem FAIL or oracle disagreement, 2 input error,
3 a size bound was hit.
"""
import argparse
import json
import os
import sys
import time
from dataclasses import fields

from . import harness as H
from .classifier import classify, ring_predicates
from .errors import SizeError, ValidationError
from .module import regular_module
from .ring import RingTable
from .syntax import ParseError, parse_spec
from .torsion import goldie_torsion

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_spec(value):
    if value == "-":
        return sys.stdin.read()
    if os.path.isfile(value):
        with open(value, encoding="utf-8") as fh:
            return fh.read()
    return value


def _dump(records, out, lines):
    text = "\n".join(json.dumps(r, sort_keys=False) for r in records) + "\n" if lines else json.dumps(records[0], indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_config(path):
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise InputError("config must be a JSON object")
    return cfg


_FAMILY_FIELDS = {f.name for f in fields(H.InstanceFamily)}


def _family(entry):
    if isinstance(entry, str):
        try:
            return H.family_by_name(entry)
        except KeyError as exc:
            raise InputError(str(exc)) from exc
    if isinstance(entry, dict):
        unknown = set(entry) - _FAMILY_FIELDS
        if unknown or "name" not in entry:
            raise InputError(f"bad family entry {entry!r}")
        entry = dict(entry)
        if "z_invariants" in entry:
            entry["z_invariants"] = tuple(entry["z_invariants"])
        return H.InstanceFamily(**entry)
    raise InputError(f"bad family entry {entry!r}")


def resolve_families(args):
    cfg = _load_config(getattr(args, "config", None))
    names = args.family or cfg.get("families")
    if names is None:
        fams = list(H.DEFAULT_FAMILIES)
    elif names == ["all"]:
        fams = list(H.DEFAULT_FAMILIES + H.EXTRA_FAMILIES)
    else:
        fams = [_family(e) for e in names]
    caps = {k: cfg.get(k) for k in ("max_order", "max_end", "max_instances")}
    if args.max_order is not None:
        caps["max_order"] = args.max_order
    return [H.with_caps(f, **caps) for f in fams]


def _jobs(args):
    return args.jobs if args.jobs else (os.cpu_count() or 1)


def cmd_classify(args):
    obj = parse_spec(_read_spec(args.spec))
    rec = {"version": H.REPORT_VERSION}
    if isinstance(obj, RingTable):
        rec["ring"] = obj.spec
        rec["ring_predicates"] = ring_predicates(obj).__dict__
        m = regular_module(obj)
    else:
        m = obj
    report = classify(m, instance=getattr(m, "spec", None) or obj.spec)
    prof = goldie_torsion(m)
    rec.update(report.to_dict(witnesses=args.witnesses))
    rec["order"] = m.order
    rec["z"] = prof.z.elements.tolist()
    rec["z2"] = prof.z2.elements.tolist()
    _dump([rec], args.out, lines=False)
    return EXIT_OK


def cmd_theorems(args):
    fams = resolve_families(args)
    start = time.time()
    checks, manifests = H.run_theorems(fams, jobs=_jobs(args))
    records = [dict({"version": H.REPORT_VERSION, "record": "manifest"}, **m) for m in manifests]
    records += [dict({"record": "theorem"}, **c.to_dict()) for c in checks]
    counts = {}
    for c in checks:
        counts[c.status] = counts.get(c.status, 0) + 1
    records.append({"version": H.REPORT_VERSION, "record": "summary", "families": [f.name for f in fams], "status_counts": counts,
                    "note": H.FAIL_NOTE})
    _dump(records, args.out, lines=True)
    print(f"theorems: {counts} in {time.time() - start:.1f}s", file=sys.stderr)
    return EXIT_FAIL if counts.get("FAIL") else EXIT_OK


def cmd_search(args):
    fams = resolve_families(args)
    try:
        rec = H.search_counterexample(args.target, fams)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _dump([dict(rec, record="search")], args.out, lines=True)
    return EXIT_OK


def cmd_crosscheck(args):
    fams = resolve_families(args)
    rows = H.oracle_crosschecks(fams, jobs=_jobs(args))
    _dump([dict(r, record="crosscheck") for r in rows], args.out, lines=True)
    return EXIT_OK if all(r["agree"] for r in rows) else EXIT_FAIL


def cmd_families(args):
    fams = resolve_families(args)
    _dump([dict({"version": H.REPORT_VERSION, "record": "family"}, **f.to_dict()) for f in fams], args.out, lines=True)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="grickart", description="Goldie torsion and Rickart-type predicates over finite rings.")
    sub = p.add_subparsers(dest="command", required=True)

    def suite_flags(sp):
        sp.add_argument("--family", action="append", help="family name (repeatable; 'all' adds the extra catalog)")
        sp.add_argument("--jobs", type=int, default=None, help="worker processes (default: number of processors)")
        sp.add_argument("--max-order", type=int, default=None, help="module order cap")
        sp.add_argument("--config", help="JSON config with caps and families")
        sp.add_argument("--out", help="write the report here instead of stdout")

    c = sub.add_parser("classify", help="classify one ring or module")
    c.add_argument("spec", help="instance text, a file path, or - for stdin")
    c.add_argument("--witnesses", action="store_true", help="include the first witness of each false verdict")
    c.add_argument("--out")
    c.set_defaults(func=cmd_classify)

    t = sub.add_parser("theorems", help="replay the theorem registry over instance families")
    suite_flags(t)
    t.set_defaults(func=cmd_theorems)

    s = sub.add_parser("search", help="first instance satisfying a conjunction such as 'goldie_rickart&!rickart'")
    s.add_argument("target")
    suite_flags(s)
    s.set_defaults(func=cmd_search)

    x = sub.add_parser("crosscheck", help="compare against independent oracles")
    suite_flags(x)
    x.set_defaults(func=cmd_crosscheck)

    f = sub.add_parser("families", help="list the selected families and their recipes")
    suite_flags(f)
    f.set_defaults(func=cmd_families)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError, InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeError as exc:
        print(f"size bound: {exc}", file=sys.stderr)
        return EXIT_SIZE
