"""Command line entry point: ``cetkit run JOB`` and ``cetkit validate JOB``.

Exit codes: 0 when every stanza produced its expected verdict, 1 when at
least one did not (including errors), 2 for unreadable or invalid job files.
"""

from __future__ import annotations

import argparse
import json
import sys

from .jobs import JobError, load_job, run_job


def _text(result: dict) -> str:
    lines = []
    for r in result["reports"]:
        mark = "ok " if not r["unexpected"] else "!! "
        lines.append(f"{mark}{r['index']:3d} {r['name']:<40} {r['verdict']:<20} {r.get('timing_ms', 0):9.1f} ms")
    lines.append(f"backend={result['backend']} seed={result['seed']} unexpected={result['unexpected']}")
    lines.append(f"determinism_hash={result['determinism_hash']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cetkit", description="Exact commutative algebra checks driven by JSON job files.")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run every check stanza of a job file")
    r.add_argument("job")
    r.add_argument("--jobs", type=int, default=1, help="worker threads (results keep stanza order)")
    r.add_argument("--seed", type=int, default=None, help="override the job seed")
    r.add_argument("--timeout", type=float, default=None, help="per-stanza time limit in seconds")
    r.add_argument("--report", default=None, help="write the JSON report to this path")
    r.add_argument("--format", choices=("json", "text", "both"), default="text")
    v = sub.add_parser("validate", help="parse and validate a job file without computing")
    v.add_argument("job")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = load_job(args.job)
    except (OSError, JobError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.command == "validate":
        print(f"{args.job}: {len(job.checks)} stanzas, {len(job.rings)} rings, seed {job.seed}: valid")
        return 0
    result = run_job(job, jobs=max(1, args.jobs), seed=args.seed, timeout=args.timeout)
    blob = json.dumps(result, indent=2, sort_keys=True)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(blob + "\n")
    if args.format in ("json", "both"):
        print(blob)
    if args.format in ("text", "both"):
        print(_text(result))
    return 1 if result["unexpected"] else 0


if __name__ == "__main__":
    sys.exit(main())
