"""Command-line interface.

Every subcommand emits line-delimited JSON records (or a CSV projection)
with the stable shape

    {"command": ..., "input": {...}, "status": ..., "payload": {...},
     "elapsed_ms": ...}

where status is one of ok, not-polynomial, negative-found,
identity-violation.  Coefficient values are decimal strings; they routinely
exceed 64 bits.  Exit codes: 0 for success (including not-polynomial, which
is an answer, not an error), 1 for usage errors, 2 when a negative
coefficient was found, 3 on an internal identity violation.

Output is deterministic; `--no-timing` drops the elapsed_ms field so two
runs can be compared byte for byte.  `--out DIR` persists the run as one
JSON file keyed by a hash of the command and its parameters, and a later
identical invocation replays the stored records instead of recomputing.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .errors import Degenerate, IdentityViolation, NotPolynomial
from .identities import (
    b_poly_direct,
    b_poly_recurrence,
    borwein_sum,
    chu_vandermonde_check,
    e_main_check,
    positivity_report,
    q_binomial_theorem_check,
    r_poly,
    super_catalan_q_direct,
    super_catalan_q_recurrence,
    von_szily_classical,
    von_szily_q,
)
from .landau import canonicalize, enumerate_tuples, landau_check
from .polyring import IntPoly
from .qfactor import TupleSpec, classical_ratio, d_polynomial, d_n_sweep, q_binomial

MAX_SUM_BOUND = 64
MAX_IDENTITY_N = 16

_STATUS_EXIT = {"ok": 0, "not-polynomial": 0, "negative-found": 2, "identity-violation": 3}


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on bad usage; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("entries must be positive integers")
    return values


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    common.add_argument("--out", metavar="DIR", help="persist/reuse results under DIR")
    common.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1)
    common.add_argument("--no-timing", action="store_true", help="omit elapsed_ms")
    common.add_argument("--full", action="store_true", help="include coefficient lists")
    common.add_argument("--raw", action="store_true", help="skip tuple canonicalization")

    parser = _Parser(prog="qpos", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("landau", parents=[common], help="decide the floor-sum criterion")
    p.add_argument("--a", type=_int_list, required=True)
    p.add_argument("--b", type=_int_list, required=True)

    p = sub.add_parser("dpoly", parents=[common], help="one factorial-ratio polynomial")
    p.add_argument("--a", type=_int_list, required=True)
    p.add_argument("--b", type=_int_list, required=True)
    p.add_argument("--n", type=_positive, required=True)

    p = sub.add_parser("sweep", parents=[common], help="D_n for n = 1..n-max")
    p.add_argument("--a", type=_int_list, required=True)
    p.add_argument("--b", type=_int_list, required=True)
    p.add_argument("--n-max", type=_positive, required=True)

    p = sub.add_parser("enumerate", parents=[common], help="tuple families, optional sweep")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--s", type=_positive, required=True)
    p.add_argument("--sum-bound", type=_positive, required=True)
    p.add_argument("--balanced", action="store_true")
    p.add_argument("--sweep-n", type=_positive)

    p = sub.add_parser("identities", parents=[common], help="cross-check every identity")
    p.add_argument("--max-n", type=_non_negative, required=True)

    p = sub.add_parser("borwein", parents=[common], help="Borwein-type sums for n = 0..n-max")
    p.add_argument("--n-max", type=_positive, required=True)

    p = sub.add_parser("rpoly", parents=[common], help="the factored alternating sum R")
    p.add_argument("--n", type=_non_negative, required=True)
    p.add_argument("--m", type=_non_negative, required=True)
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--s", type=_positive, required=True)

    return parser


# --- record helpers --------------------------------------------------------


def _poly_stats(poly: IntPoly, full: bool) -> dict:
    report = positivity_report(poly)
    stats = {
        "degree": report.degree,
        "num_terms": sum(1 for c in poly.coeffs if c),
        "min_coeff": str(min(poly.coeffs, default=0)),
        "is_positive": report.is_positive,
        "is_symmetric": report.is_symmetric,
        "is_unimodal": report.is_unimodal,
        "negative_positions": list(report.negative_positions),
    }
    if full:
        stats["coefficients"] = [str(c) for c in poly.coeffs]
    return stats


def _record(command: str, input_echo: dict, status: str, payload: dict, started: float) -> dict:
    return {
        "command": command,
        "input": input_echo,
        "status": status,
        "payload": payload,
        "elapsed_ms": int((time.perf_counter() - started) * 1000),
    }


def _resolve_spec(a, b, raw: bool):
    """(spec, canonicalization info) honoring --raw; Degenerate means D = 1."""
    given = TupleSpec(tuple(a), tuple(b))
    if raw:
        return given, {"canonical_a": list(given.a), "canonical_b": list(given.b)}
    try:
        canon = canonicalize(given)
    except Degenerate as exc:
        spec = exc.canonical
        return spec, {
            "canonical_a": list(spec.a),
            "canonical_b": list(spec.b),
            "degenerate": True,
        }
    return canon.spec, {
        "canonical_a": list(canon.spec.a),
        "canonical_b": list(canon.spec.b),
        "primitive": canon.primitive,
    }


# --- subcommands -----------------------------------------------------------


def _cmd_landau(args) -> list[dict]:
    started = time.perf_counter()
    echo = {"a": list(args.a), "b": list(args.b), "raw": args.raw}
    spec, info = _resolve_spec(args.a, args.b, args.raw)
    verdict = landau_check(spec)
    payload = dict(info)
    payload.update(
        holds=verdict.holds,
        witness=str(verdict.witness) if verdict.witness is not None else None,
        min_value=verdict.min_value,
    )
    # a failing criterion means some scaling yields a non-polynomial ratio
    status = "ok" if verdict.holds else "not-polynomial"
    return [_record("landau", echo, status, payload, started)]


def _cmd_dpoly(args) -> list[dict]:
    started = time.perf_counter()
    echo = {"a": list(args.a), "b": list(args.b), "n": args.n, "raw": args.raw}
    spec, info = _resolve_spec(args.a, args.b, args.raw)
    try:
        poly = d_polynomial(spec.scaled(args.n))
    except NotPolynomial as exc:
        payload = dict(info, n=args.n, reason=str(exc), smallest_failing_ell=exc.ell)
        return [_record("dpoly", echo, "not-polynomial", payload, started)]
    stats = _poly_stats(poly, full=True)
    value_at_1 = poly.evaluate(1)
    classical = classical_ratio(spec.scaled(args.n))
    payload = dict(info, n=args.n, **stats)
    payload.update(
        value_at_1=str(value_at_1),
        classical_ratio=str(classical),
        q1_agrees=Fraction(value_at_1) == classical,
    )
    status = "ok" if stats["is_positive"] else "negative-found"
    return [_record("dpoly", echo, status, payload, started)]


def _sweep_payload(task: tuple) -> dict:
    a, b, n, full = task
    started = time.perf_counter()
    poly = d_polynomial(TupleSpec(a, b).scaled(n))
    payload = dict(n=n, **_poly_stats(poly, full))
    payload["elapsed_ms"] = int((time.perf_counter() - started) * 1000)
    return payload


def _sweep_records(command: str, echo: dict, spec: TupleSpec, n_max: int, full: bool, jobs: int) -> list[dict]:
    if jobs > 1:
        tasks = [(spec.a, spec.b, n, full) for n in range(1, n_max + 1)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            payloads = list(pool.map(_sweep_payload, tasks))
    else:
        started = time.perf_counter()
        payloads = []
        for n, poly in enumerate(d_n_sweep(spec, n_max), start=1):
            payload = dict(n=n, **_poly_stats(poly, full))
            now = time.perf_counter()
            payload["elapsed_ms"] = int((now - started) * 1000)
            started = now
            payloads.append(payload)
    records = []
    for payload in payloads:
        elapsed = payload.pop("elapsed_ms")
        status = "ok" if payload["is_positive"] else "negative-found"
        records.append(
            {
                "command": command,
                "input": dict(echo, n=payload["n"]),
                "status": status,
                "payload": payload,
                "elapsed_ms": elapsed,
            }
        )
    return records


def _cmd_sweep(args) -> list[dict]:
    started = time.perf_counter()
    echo = {"a": list(args.a), "b": list(args.b), "n_max": args.n_max, "raw": args.raw}
    spec, info = _resolve_spec(args.a, args.b, args.raw)
    verdict = landau_check(spec)
    if not verdict.holds:
        payload = dict(
            info,
            reason="tuple fails the floor-sum criterion",
            witness=str(verdict.witness),
            min_value=verdict.min_value,
        )
        return [_record("sweep", echo, "not-polynomial", payload, started)]
    return _sweep_records("sweep", echo, spec, args.n_max, args.full, args.jobs)


def _tuple_sweep_payload(task: tuple) -> dict:
    a, b, n_max, full = task
    started = time.perf_counter()
    spec = TupleSpec(a, b)
    per_n = []
    negative_ns = []
    for n, poly in enumerate(d_n_sweep(spec, n_max), start=1):
        stats = _poly_stats(poly, full)
        stats["n"] = n
        per_n.append(stats)
        if not stats["is_positive"]:
            negative_ns.append(n)
    payload = {
        "a": list(a),
        "b": list(b),
        "sweep_n": n_max,
        "all_positive": not negative_ns,
        "negative_ns": negative_ns,
        "per_n": per_n,
        "elapsed_ms": int((time.perf_counter() - started) * 1000),
    }
    return payload


def _cmd_enumerate(args) -> list[dict]:
    if args.sum_bound > MAX_SUM_BOUND:
        raise _UsageError(f"--sum-bound is capped at {MAX_SUM_BOUND}")
    echo = {
        "r": args.r,
        "s": args.s,
        "sum_bound": args.sum_bound,
        "balanced": args.balanced,
        "sweep_n": args.sweep_n,
    }
    started = time.perf_counter()
    tuples = enumerate_tuples(args.r, args.s, args.sum_bound, balanced_only=args.balanced)
    if args.sweep_n is None:
        records = []
        for t in tuples:
            payload = {"a": list(t.a), "b": list(t.b)}
            records.append(_record("enumerate", dict(echo), "ok", payload, started))
            started = time.perf_counter()
        return records
    tasks = [(t.a, t.b, args.sweep_n, args.full) for t in tuples]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            payloads = list(pool.map(_tuple_sweep_payload, tasks))
    else:
        payloads = [_tuple_sweep_payload(task) for task in tasks]
    records = []
    for payload in payloads:
        elapsed = payload.pop("elapsed_ms")
        status = "ok" if payload["all_positive"] else "negative-found"
        records.append(
            {
                "command": "enumerate",
                "input": dict(echo),
                "status": status,
                "payload": payload,
                "elapsed_ms": elapsed,
            }
        )
    return records


def _identity_record(echo: dict, name: str, failures: list, cases: int, started: float) -> dict:
    status = "ok" if not failures else "identity-violation"
    payload = {"identity": name, "cases": cases, "failures": failures}
    return _record("identities", dict(echo, identity=name), status, payload, started)


def _cmd_identities(args) -> list[dict]:
    if args.max_n > MAX_IDENTITY_N:
        raise _UsageError(f"--max-n is capped at {MAX_IDENTITY_N}")
    top = args.max_n
    echo = {"max_n": top}
    records = []

    started = time.perf_counter()
    failures, cases = [], 0
    for n in range(top + 1):
        for m in range(top + 1):
            cases += 1
            direct = super_catalan_q_direct(n, m)
            ok = True
            try:
                ok = (
                    direct == super_catalan_q_recurrence(n, m) == von_szily_q(n, m)
                    and direct == super_catalan_q_direct(m, n)
                    and direct.evaluate(1) == von_szily_classical(n, m)
                )
            except IdentityViolation:
                ok = False
            if not ok:
                failures.append({"n": n, "m": m})
    records.append(_identity_record(echo, "super-catalan-three-way", failures, cases, started))

    started = time.perf_counter()
    failures, cases = [], 0
    for n in range(top + 1):
        for m in range(n + 1):
            cases += 1
            if b_poly_direct(n, m) != b_poly_recurrence(n, m):
                failures.append({"n": n, "m": m})
    records.append(_identity_record(echo, "b-recurrence", failures, cases, started))

    started = time.perf_counter()
    failures, cases = [], 0
    for a in range(top + 1):
        for b in range(top + 1):
            for c in range(top + 1):
                cases += 1
                if not chu_vandermonde_check(a, b, c):
                    failures.append({"a": a, "b": b, "c": c})
    records.append(_identity_record(echo, "chu-vandermonde", failures, cases, started))

    started = time.perf_counter()
    failures, cases = [], 0
    for n in range(top + 1):
        for p in range(top + 1):
            cases += 1
            if not e_main_check(n, p):
                failures.append({"n": n, "p": p})
    records.append(_identity_record(echo, "double-chu-vandermonde", failures, cases, started))

    started = time.perf_counter()
    failures, cases = [], 0
    for n in range(top + 1):
        cases += 1
        if not q_binomial_theorem_check(n):
            failures.append({"n": n})
    records.append(_identity_record(echo, "q-binomial-theorem", failures, cases, started))

    started = time.perf_counter()
    failures, cases = [], 0
    for n in range(top + 1):
        for m in range(top + 1):
            cases += 1
            try:
                ok = r_poly(n, m, 1, 1) == IntPoly.monomial(n * m)
            except IdentityViolation:
                ok = False
            if not ok:
                failures.append({"n": n, "m": m})
    records.append(_identity_record(echo, "r-unit-shift", failures, cases, started))

    return records


def _cmd_borwein(args) -> list[dict]:
    echo = {"n_max": args.n_max}
    records = []
    for n in range(args.n_max + 1):
        started = time.perf_counter()
        payload = dict(n=n, **_poly_stats(borwein_sum(n), args.full))
        status = "ok" if payload["is_positive"] else "negative-found"
        records.append(_record("borwein", dict(echo, n=n), status, payload, started))
    return records


def _cmd_rpoly(args) -> list[dict]:
    started = time.perf_counter()
    echo = {"n": args.n, "m": args.m, "r": args.r, "s": args.s}
    try:
        poly = r_poly(args.n, args.m, args.r, args.s)
    except IdentityViolation as exc:
        payload = dict(echo, reason=str(exc))
        return [_record("rpoly", echo, "identity-violation", payload, started)]
    payload = dict(echo, **_poly_stats(poly, full=True))
    status = "ok" if payload["is_positive"] else "negative-found"
    return [_record("rpoly", echo, status, payload, started)]


_DISPATCH = {
    "landau": _cmd_landau,
    "dpoly": _cmd_dpoly,
    "sweep": _cmd_sweep,
    "enumerate": _cmd_enumerate,
    "identities": _cmd_identities,
    "borwein": _cmd_borwein,
    "rpoly": _cmd_rpoly,
}


class _UsageError(Exception):
    pass


# --- output ----------------------------------------------------------------

_CSV_FIELDS = ("n", "degree", "num_terms", "min_coeff", "is_positive")


def _exit_code(records: list[dict]) -> int:
    return max((_STATUS_EXIT[rec["status"]] for rec in records), default=0)


def _csv_rows(records: list[dict]):
    """Per-polynomial projection; records without coefficient stats are skipped."""
    for rec in records:
        payload = rec["payload"]
        if "per_n" in payload:
            yield from ({k: row.get(k) for k in _CSV_FIELDS} for row in payload["per_n"])
        elif "degree" in payload:
            yield {k: payload.get(k) for k in _CSV_FIELDS}


def _emit(records: list[dict], fmt: str, no_timing: bool) -> None:
    if fmt == "csv":
        writer = csv.DictWriter(sys.stdout, fieldnames=_CSV_FIELDS)
        writer.writeheader()
        for row in _csv_rows(records):
            writer.writerow(row)
        return
    for rec in records:
        if no_timing:
            rec = {k: v for k, v in rec.items() if k != "elapsed_ms"}
        print(json.dumps(rec, sort_keys=True))


def _cache_key(command: str, args) -> dict:
    keys = {
        "landau": ("a", "b", "raw"),
        "dpoly": ("a", "b", "n", "raw"),
        "sweep": ("a", "b", "n_max", "raw", "full"),
        "enumerate": ("r", "s", "sum_bound", "balanced", "sweep_n", "full"),
        "identities": ("max_n",),
        "borwein": ("n_max", "full"),
        "rpoly": ("n", "m", "r", "s"),
    }[command]
    params = {}
    for key in keys:
        value = getattr(args, key)
        params[key] = list(value) if isinstance(value, tuple) else value
    return params


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    out_path = None
    if args.out:
        params = _cache_key(args.command, args)
        digest = hashlib.sha256(
            json.dumps({"command": args.command, "params": params}, sort_keys=True).encode()
        ).hexdigest()[:16]
        os.makedirs(args.out, exist_ok=True)
        out_path = os.path.join(args.out, f"{args.command}-{digest}.json")
        if os.path.exists(out_path):
            with open(out_path, encoding="utf-8") as handle:
                records = json.load(handle)["records"]
            _emit(records, args.format, args.no_timing)
            return _exit_code(records)
    try:
        records = _DISPATCH[args.command](args)
    except _UsageError as exc:
        print(f"qpos {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"qpos {args.command}: error: {exc}", file=sys.stderr)
        return 1
    if out_path is not None:
        blob = {"command": args.command, "params": _cache_key(args.command, args), "records": records}
        with open(out_path, "w", encoding="utf-8") as handle:
            json.dump(blob, handle, sort_keys=True)
            handle.write("\n")
    _emit(records, args.format, args.no_timing)
    return _exit_code(records)


if __name__ == "__main__":
    sys.exit(main())
