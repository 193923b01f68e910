"""Command-line driver: type-check, evaluate lower bounds, sample, compare.

    python -m rmlsem check PROGRAM
    python -m rmlsem eval PROGRAM --query mass|prob|expect|event A B --fuel K [--json]
    python -m rmlsem sample PROGRAM --n N --seed S [--json]
    python -m rmlsem compare PROGRAM --query mass|prob|event A B --fuel K --n N --seed S

Exit codes: 0 ok, 1 I/O error, 2 parse/type/query error, 3 compare verdict FAIL.
"""

from __future__ import annotations

import argparse
import gc
import json
import math
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Optional

from .giry import point_observable
from .measure import ONE_OBS, identity_observable, indicator, open_from_ros
from .rational import fmt_q, parse_q, to_float
from .realopen import ros_interval
from .rml.denote import program_lub
from .rml.parser import RmlSyntaxError, parse
from .rml.sampler import sample
from .rml.syntax import B, N, R, RmlType, show_type
from .rml.types import RmlTypeError, check_program

QUERY_KINDS = ("mass", "prob", "expect", "event")


class QueryError(Exception):
    """The query does not fit the program's result type."""


@dataclass
class QuerySpec:
    path: str
    kind: str = "mass"
    fuel: int = 6
    event: Optional[tuple] = None
    fmt: str = "text"
    stop_at: Optional[object] = None

    def __post_init__(self):
        if self.kind not in QUERY_KINDS:
            raise QueryError(f"unknown query {self.kind!r}")
        if self.fuel < 0:
            raise QueryError("fuel must be >= 0")
        if self.kind == "event":
            if self.event is None:
                raise QueryError("event query needs endpoints a b")
            a, b = parse_q(str(self.event[0])), parse_q(str(self.event[1]))
            if not a < b:
                raise QueryError("event endpoints must satisfy a < b")
            self.event = (a, b)

    def to_json(self) -> dict:
        d = {"program": self.path, "kind": self.kind, "fuel": self.fuel}
        if self.event is not None:
            d["event"] = [fmt_q(self.event[0]), fmt_q(self.event[1])]
        return d


@dataclass
class Report:
    query: dict
    rows: list = field(default_factory=list)  # (fuel, lower_bound, seconds)
    sampler: Optional[dict] = None
    verdict: Optional[str] = None
    type: Optional[str] = None

    @property
    def final(self):
        return self.rows[-1][1] if self.rows else None

    def to_json(self, timing: bool = False) -> str:
        rows = [{"fuel": k, "lower_bound": fmt_q(v),
                 "ms": round(t * 1000, 3) if timing else None} for k, v, t in self.rows]
        out = {"query": self.query, "rows": rows, "sampler": self.sampler}
        if self.type is not None:
            out["type"] = self.type
        if self.verdict is not None:
            out["verdict"] = self.verdict
        return json.dumps(out, indent=2)

    def to_text(self, timing: bool = False) -> str:
        lines = []
        if self.rows:
            lines.append("fuel  lower_bound" + ("  ms" if timing else ""))
            for k, v, t in self.rows:
                row = f"{k:>4}  {fmt_q(v)}  (~{to_float(v):.6f})"
                if timing:
                    row += f"  {t * 1000:.1f}"
                lines.append(row)
        if self.sampler is not None:
            for key, val in self.sampler.items():
                lines.append(f"{key}: {val}")
        if self.verdict is not None:
            lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


@contextmanager
def relaxed_gc(threshold: int = 100_000):
    """Evaluation allocates millions of short-lived closures and memo tables;
    the default collector thresholds make that several times slower."""
    old = gc.get_threshold()
    gc.set_threshold(threshold, old[1], old[2])
    try:
        yield
    finally:
        gc.set_threshold(*old)


def load_program(path: str) -> tuple:
    """Parse and type a program file; returns (type, core term)."""
    with open(path, encoding="utf-8") as fh:
        src = fh.read()
    return check_program(parse(src))


def observable_for(q: QuerySpec, ty: RmlType):
    if q.kind == "mass":
        return ONE_OBS
    if q.kind == "prob":
        if ty != B:
            raise QueryError(f"prob needs a B-valued program, got {show_type(ty)}")
        return point_observable(True)
    if ty != R:
        raise QueryError(f"{q.kind} needs an R-valued program, got {show_type(ty)}")
    if q.kind == "expect":
        return identity_observable()
    return indicator(open_from_ros(ros_interval(*q.event)))


def cmd_check(path: str) -> RmlType:
    return load_program(path)[0]


def cmd_eval(q: QuerySpec) -> Report:
    """Lower bounds on the queried quantity at fuels 0..q.fuel (fewer rows if
    q.stop_at is reached first)."""
    ty, core = load_program(q.path)
    obs = observable_for(q, ty)
    value = program_lub(core).integrate(obs)
    stop = parse_q(str(q.stop_at)) if q.stop_at is not None else None
    report = Report(query=q.to_json(), type=show_type(ty))
    with relaxed_gc():
        for k in range(q.fuel + 1):
            t0 = time.perf_counter()
            v = value.approx(k)
            report.rows.append((k, v, time.perf_counter() - t0))
            if stop is not None and v >= stop:
                break
    return report


def _event_hit(q: QuerySpec, v) -> bool:
    if v is None:
        return False
    if q.kind == "mass":
        return True
    if q.kind == "prob":
        return v is True
    if q.kind == "event":
        a, b = q.event
        return a < v < b
    raise QueryError("compare needs a boolean-event query (mass, prob or event)")


def cmd_sample(path: str, n: int, seed: int, max_steps: int = 100_000) -> Report:
    ty, core = load_program(path)
    results = [sample(core, s, max_steps) for s in range(seed, seed + n)]
    done = [v for v in results if v is not None]
    summary: dict = {"n": n, "seed": seed, "type": show_type(ty),
                     "terminated": len(done), "termination_fraction": len(done) / n if n else 0.0}
    if done and ty == B:
        p = sum(1 for v in done if v) / len(done)
        summary["frequency_true"] = p
        summary["three_sigma"] = 3 * math.sqrt(p * (1 - p) / len(done))
    elif done and ty in (R, N):
        xs = [float(v) for v in done]
        mean = sum(xs) / len(xs)
        var = sum((x - mean) ** 2 for x in xs) / max(len(xs) - 1, 1)
        summary["mean"] = mean
        summary["three_sigma"] = 3 * math.sqrt(var / len(xs))
    if done:
        summary["all_equal"] = all(v == done[0] for v in done)
    return Report(query={"program": path, "kind": "sample"}, sampler=summary, type=show_type(ty))


def cmd_compare(q: QuerySpec, n: int, seed: int, max_steps: int = 100_000) -> Report:
    """PASS iff the Monte-Carlo frequency of the event is at least the
    denotational lower bound minus three binomial standard errors."""
    if q.kind == "expect":
        raise QueryError("compare needs a boolean-event query (mass, prob or event)")
    report = cmd_eval(q)
    _, core = load_program(q.path)
    hits = sum(_event_hit(q, sample(core, s, max_steps)) for s in range(seed, seed + n))
    p = hits / n
    sigma = math.sqrt(p * (1 - p) / n)
    bound = report.final
    ok = p >= to_float(bound) - 3 * sigma
    report.sampler = {"n": n, "seed": seed, "frequency": p, "three_sigma": 3 * sigma,
                      "lower_bound": fmt_q(bound)}
    report.verdict = "PASS" if ok else "FAIL"
    return report


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rmlsem", description="Check, evaluate and sample Rml programs.")
    ap.add_argument("command", choices=["check", "eval", "sample", "compare"])
    ap.add_argument("program", help="path to an .rml file")
    ap.add_argument("--query", nargs="+", default=["mass"], metavar="KIND",
                    help="mass | prob | expect | event A B (expect integrates max(x, 0))")
    ap.add_argument("--fuel", type=int, default=6)
    ap.add_argument("--n", type=int, default=10_000, help="number of samples")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-steps", type=int, default=100_000)
    ap.add_argument("--stop-at", default=None, metavar="Q",
                    help="end the table once the lower bound reaches Q")
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--timing", action="store_true", help="report wall time per row")
    return ap


def _query_from_args(args) -> QuerySpec:
    kind, *rest = args.query
    event = None
    if kind == "event":
        if len(rest) != 2:
            raise QueryError("usage: --query event A B")
        event = tuple(rest)
    elif rest:
        raise QueryError(f"query {kind} takes no arguments")
    return QuerySpec(args.program, kind, args.fuel, event,
                     "json" if args.json else "text", args.stop_at)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "check":
            ty = cmd_check(args.program)
            if args.json:
                print(json.dumps({"program": args.program, "type": show_type(ty)}))
            else:
                print(show_type(ty))
            return 0
        if args.command == "sample":
            report = cmd_sample(args.program, args.n, args.seed, args.max_steps)
        elif args.command == "eval":
            report = cmd_eval(_query_from_args(args))
        else:
            report = cmd_compare(_query_from_args(args), args.n, args.seed, args.max_steps)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (RmlSyntaxError, RmlTypeError) as e:
        print(f"{args.program}:{e}", file=sys.stderr)
        return 2
    except (QueryError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(report.to_json(args.timing) if args.json else report.to_text(args.timing))
    if report.verdict == "FAIL":
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
