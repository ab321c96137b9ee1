"""Command-line front end: ``netkat-safety check <specfile>``.

Exit codes: 0 safe, 2 unsafe, 1 parse/validation/IO error, 3 word budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from .errors import NetKATError, WordBudgetExceeded
from .explain import check_safety, explanation_traces
from .parser import load_network_spec, render_policy
from .rewrite import star_eliminate, unfold_power
from .semantics import enumerate_loopfree_paths, is_semantically_empty

EXIT_SAFE, EXIT_ERROR, EXIT_UNSAFE, EXIT_BUDGET = 0, 1, 2, 3
SCHEMA_VERSION = 1
DEFAULT_MAX_WORDS = 1_000_000


@dataclass
class Report:
    verdict: str  # "SAFE" or "UNSAFE"
    n: int
    explanations: list  # of {"word": str, "hops": [int|None, ...]}
    oracle: dict | None = None  # {"agrees": bool, "paths": [[int, ...], ...]}
    timing_ms: int = 0

    def __post_init__(self):
        if (self.verdict == "SAFE") == bool(self.explanations):
            raise ValueError("explanations must be empty iff the verdict is SAFE")

    def to_dict(self) -> dict:
        d = {"schema": SCHEMA_VERSION, "verdict": self.verdict, "n": self.n,
             "explanations": [{"word": e["word"], "hops": list(e["hops"])} for e in self.explanations]}
        if self.oracle is not None:
            d["oracle"] = {"agrees": self.oracle["agrees"],
                           "paths": [list(p) for p in self.oracle["paths"]]}
        d["timing_ms"] = self.timing_ms
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(d["verdict"], d["n"], d["explanations"], d.get("oracle"), d["timing_ms"])


def build_report(spec, minimize=True, oracle=False, max_words=DEFAULT_MAX_WORDS) -> Report:
    t0 = time.perf_counter()
    verdict = check_safety(spec, minimize=minimize, budget=max_words)
    expls = [{"word": str(e.word), "hops": list(e.hops)} for e in verdict.explanations]
    orc = None
    if oracle:
        empty = is_semantically_empty(spec.end_to_end(), spec.domains)
        paths = sorted(list(p) for p in enumerate_loopfree_paths(spec))
        orc = {"agrees": empty == verdict.safe, "paths": paths}
    ms = int((time.perf_counter() - t0) * 1000)
    return Report(verdict.label, verdict.n_used, expls, orc, ms)


def _fmt_hops(hops) -> str:
    return "[" + ",".join("?" if h is None else str(h) for h in hops) + "]"


def emit_report(r: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(r.to_dict(), indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    if r.verdict == "SAFE":
        lines = ["SAFE"]
    else:
        k = len(r.explanations)
        lines = [f"UNSAFE ({k} explanation{'s' if k != 1 else ''}, n={r.n})"]
        lines += [f"{e['word']}  {_fmt_hops(e['hops'])}" for e in r.explanations]
    if r.oracle is not None:
        status = "agrees" if r.oracle["agrees"] else "DISAGREES"
        lines.append(f"oracle: {status}; loop-free paths: "
                     + (" ".join(_fmt_hops(p) for p in r.oracle["paths"]) or "none"))
    return "\n".join(lines) + "\n"


def trace_lines(spec, explanations, max_words=None) -> list:
    e2e = render_policy(spec.end_to_end())
    eliminated = star_eliminate(spec)
    lines = [f"STAR-ELIM\troot\t{e2e}\t{render_policy(eliminated)}",
             f"POWER-UNFOLD\troot\t{render_policy(eliminated)}\t{render_policy(unfold_power(spec))}"]
    for i, (raw, trace) in enumerate(explanation_traces(spec, explanations, max_words)):
        lines.append(f"KA-SEQ-DIST-L/R\tword{i}\t-\t{raw}")
        lines.extend(trace.lines(prefix=f"word{i}@"))
    return lines


def run_check(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = argparse.ArgumentParser(prog="netkat-safety",
                                 description="In-out safety checking and failure explanations for NetKAT networks.")
    sub = ap.add_subparsers(dest="command", required=True)
    chk = sub.add_parser("check", help="check a network spec file")
    chk.add_argument("specfile")
    chk.add_argument("--format", choices=("text", "json"), default="text")
    chk.add_argument("--no-minimize", action="store_true",
                     help="report every loop-free explanation, including ones with detours")
    chk.add_argument("--oracle", action="store_true",
                     help="cross-check against brute-force semantic evaluation")
    chk.add_argument("--trace", metavar="FILE", help="write rewrite steps, one per line")
    chk.add_argument("--max-words", type=int, default=DEFAULT_MAX_WORDS, metavar="N")
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_SAFE

    try:
        spec = load_network_spec(args.specfile)
        report = build_report(spec, minimize=not args.no_minimize, oracle=args.oracle,
                              max_words=args.max_words)
        if args.trace:
            shown = check_safety(spec, minimize=not args.no_minimize, budget=args.max_words)
            with open(args.trace, "w", encoding="utf-8") as fh:
                fh.writelines(line + "\n" for line in trace_lines(spec, shown.explanations, args.max_words))
    except WordBudgetExceeded as e:
        print(f"error: {e}", file=stderr)
        return EXIT_BUDGET
    except NetKATError as e:
        print(f"error: {args.specfile}: {e}", file=stderr)
        return EXIT_ERROR
    except OSError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_ERROR

    stdout.write(emit_report(report, args.format))
    return EXIT_SAFE if report.verdict == "SAFE" else EXIT_UNSAFE


def main():
    sys.exit(run_check())


if __name__ == "__main__":
    main()
