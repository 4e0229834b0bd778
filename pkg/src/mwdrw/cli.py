"""Command-line front end: ``mwdrw <subcommand> --job job.json``.

Exit status is 0 when every case passes, 1 when any case fails and 2 when
the job cannot be parsed.  Report bodies are deterministic; wall-clock
timing is added only with ``--timing``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .errors import JobParseError
from .suites import Report, parse_job, run

REPORT_DIR_ENV = "MWDRW_REPORT_DIR"

TOOLS = {
    "homotopy-check": "homotopy-check",
    "tf-map": "tf-map",
    "overconv-profile": "overconv-profile",
    "cohomology": "cohomology",
}


def emit(report: Report, fmt: str = "json", *, timing: bool = False) -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_json(timing=timing), indent=2, sort_keys=True) + "\n").encode()
    if fmt == "text":
        return (format_text(report.to_json(timing=timing)) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def _compact(value):
    return json.dumps(value, sort_keys=True, separators=(", ", ": "))


def _text_block(doc, lines, indent=""):
    job = doc["job"]
    params = " ".join(f"{k}={job[k]}" for k in ("p", "N", "seed", "cases") if k in job)
    s = doc["summary"]
    lines.append(f"{indent}suite {doc['suite']}  {params}")
    lines.append(f"{indent}status {doc['status']}  passed {s['passed']}/{s['total']}")
    if "timing_seconds" in doc:
        lines.append(f"{indent}time {doc['timing_seconds']} s")
    for child in doc.get("suites", []):
        lines.append("")
        _text_block(child, lines, indent + "  ")
    for section in ("cases", "fixtures"):
        entries = doc.get(section, [])
        if not entries:
            continue
        lines.append(f"{indent}{section}:")
        for c in entries:
            prec = f"p^{c['precision']}" if "precision" in c else "-"
            lines.append(f"{indent}  {c['id']:<34} {c['status']:<4}  {prec:<5} {c['check']}")
            for key, val in sorted(c.get("details", {}).items()):
                lines.append(f"{indent}      {key}: {val if isinstance(val, str) else _compact(val)}")
    tables = doc.get("tables", {})
    coh = tables.get("cohomology")
    if coh:
        lines.append(f"{indent}elementary divisors (variables {','.join(coh['variables'])}):")
        for b in coh["blocks"]:
            lines.append(
                f"{indent}  H^{b['degree']} {str(b['multidegree']):<10} "
                f"{' '.join(b['elementary_divisors']):<12} {'; '.join(b['generators'])}"
            )
    if "H1_orders" in tables:
        lines.append(f"{indent}H^1 block orders: " + " ".join(f"{m}:{o}" for m, o in tables["H1_orders"]))
    for row in tables.get("profiles", []):
        prof = " ".join(f"{i}:{d}/{b}" for i, d, b in row["profile"])
        lines.append(f"{indent}  profile {row['a']}  {prof}")


def format_text(doc) -> str:
    lines = []
    _text_block(doc, lines)
    return "\n".join(lines)


def _load_job(args, tool=None):
    try:
        text = Path(args.job).read_text() if args.job != "-" else sys.stdin.read()
    except OSError as exc:
        raise JobParseError(f"cannot read job file: {exc}") from None
    job = parse_job(text, tool=tool)
    if args.seed is not None:
        job.seed = args.seed
    return job


def _destination(args, job):
    if args.out:
        return Path(args.out)
    base = os.environ.get(REPORT_DIR_ENV)
    if base:
        ext = "json" if args.format == "json" else "txt"
        return Path(base) / f"{job.suite}-seed{job.seed}.{ext}"
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mwdrw", description="Finite-level Witt vector and de Rham verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "run": "run a verification suite (job field 'suite')",
        "homotopy-check": "certify psi2^* - psi1^* = dH + Hd for an explicit pair",
        "tf-map": "evaluate s_f and t_f with precision ledgers",
        "overconv-profile": "degree profile of t_f against deg(a) p^i",
        "cohomology": "elementary divisors, exactness witnesses, lift independence",
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--job", required=True, help="path to a JSON job file, or - for stdin")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--seed", type=int, default=None, help="override the job seed")
        sp.add_argument("--out", default=None, help=f"output path (default: ${REPORT_DIR_ENV} or stdout)")
        sp.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = _load_job(args, TOOLS.get(args.command))
    except JobParseError as exc:
        print(f"JobParseError: {exc}", file=sys.stderr)
        return 2
    report = run(job, clock=time.perf_counter if args.timing else None)
    data = emit(report, args.format, timing=args.timing)
    dest = _destination(args, job)
    if dest is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_bytes(data)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
