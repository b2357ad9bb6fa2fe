"""Command-line interface: counts, verify, sweep, exhaustive, exponents."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import kernels, sumprod, verify
from .distcount import PlaneSet, distance_histogram, plane_counts
from .errors import BisectorLabError, ModulusMismatch, ParseError
from .field import make_modulus
from .gen import GenSpec, enumerate_residue_subsets, enumerate_subsets, generate
from .sumprod import PopularData, ResidueSet

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
JSON_SAFE_INT = 2**53

SWEEP_PLANE_COLUMNS = (
    "p", "family", "seed", "n", "delta", "t", "rect", "q", "para",
    "ratio_bisector_energy", "ratio_isosceles", "ratio_distance_chain", "log_delta_over_log_n",
)
SWEEP_RESIDUE_COLUMNS = (
    "p", "family", "seed", "n", "diff", "sq_minus", "diff_sq_minus", "e4", "chi",
    "ratio_e4", "ratio_chi_bound", "ratio_diff_sq_growth", "log_target_over_log_n",
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: int | None = None
    input: str | None = None
    gen: str | None = None
    kind: str | None = None
    trials: int = 1
    seed: int | None = None
    threads: int = 1
    out: str | None = None
    format: str = "json"
    suite: str = "all"
    k: int | None = None


# -- input -------------------------------------------------------------------


def read_set(path: str, p: int, kind: str | None = None) -> PlaneSet | ResidueSet:
    """Read a point file ("x y" per line) or residue file (one per line)."""
    m = make_modulus(p)
    rows: list[tuple[int, list[int]]] = []
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                text = line.split("#", 1)[0].strip()
                if not text:
                    continue
                try:
                    rows.append((lineno, [int(tok) for tok in text.split()]))
                except ValueError:
                    raise ParseError(f"{path}:{lineno}: not an integer row: {text!r}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    if kind is None:
        kind = "residue" if rows and len(rows[0][1]) == 1 else "plane"
    width = 2 if kind == "plane" else 1
    for lineno, vals in rows:
        if len(vals) != width:
            raise ParseError(f"{path}:{lineno}: expected {width} value(s), got {len(vals)}")
    if kind == "plane":
        return PlaneSet.from_points((tuple(v) for _, v in rows), m)
    return ResidueSet.from_values((v[0] for _, v in rows), m)


def load_input(cfg: RunConfig) -> tuple[PlaneSet | ResidueSet, dict]:
    if cfg.gen:
        spec = GenSpec.parse(cfg.gen)
        if cfg.seed is not None:
            spec = spec.with_seed(cfg.seed)
        if cfg.p is not None and cfg.p != spec.p:
            raise ModulusMismatch(f"--p {cfg.p} disagrees with the generator's p = {spec.p}")
        return generate(spec), {"generator": str(spec), "seed": spec.seed}
    if cfg.input is None:
        raise ParseError("one of --input or --gen is required")
    if cfg.p is None:
        raise ParseError("--p is required with --input")
    return read_set(cfg.input, cfg.p, cfg.kind), {"input": os.path.basename(cfg.input)}


# -- output ------------------------------------------------------------------


def jsonable(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > JSON_SAFE_INT else value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return jsonable(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


def dump_json(obj) -> str:
    return json.dumps(jsonable(obj), indent=2) + "\n"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (dict, list)):
        return json.dumps(jsonable(v), separators=(",", ":"))
    return str(v)


def dump_csv(columns: Sequence[str], rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def ordered_map(fn: Callable, items: Sequence, threads: int) -> list:
    """Apply fn to each item on a worker pool; results come back in input order."""
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# -- counts ------------------------------------------------------------------


def plane_count_record(E: PlaneSet, threads: int = 1) -> dict:
    c = plane_counts(E, threads)
    hist = distance_histogram(E, threads)
    nonzero = [v for t, v in hist.items() if t != 0]
    return {
        "kind": "plane",
        "p": E.p,
        "n": c.n,
        "delta_size": c.delta_size,
        "nonzero_delta_size": len(nonzero),
        "nu_zero": hist.get(0, 0),
        "nu_max_nonzero": max(nonzero, default=0),
        "nu_sum": sum(hist.values()),
        "second_moment": c.second_moment,
        "t_count": c.t_count,
        "rect_count": c.rect_count,
        "q_count": c.q_count,
        "para_count": c.para_count,
    }


def residue_count_record(A: ResidueSet) -> dict:
    n = len(A)
    if n == 0:
        return {"kind": "residue", "p": A.m.p, "n": 0, "diff_size": 0, "sq_size": 0, "sq_minus_size": 0,
                "diff_sq_minus_size": 0, "diff_sq_plus_size": 0, "M": 0, "K": 0, "e4": 0,
                "popular_size": 0, "chi": 0}
    data = PopularData.of(A)
    prof = sumprod.mk_profile(A)
    sets = sumprod.dist_like_sets(A)
    return {
        "kind": "residue",
        "p": A.m.p,
        "n": n,
        "diff_size": len(sumprod.difference_set(A, A)),
        "sq_size": len(sumprod.square_set(A)),
        "sq_minus_size": len(sets.sq_minus),
        "diff_sq_minus_size": len(sets.diff_sq_minus),
        "diff_sq_plus_size": len(sets.diff_sq_plus),
        "M": prof.M,
        "K": prof.K,
        "e4": sumprod.e4_energy(A),
        "popular_size": len(data.P),
        "chi": sumprod.chi(A, data),
    }


def cmd_counts(cfg: RunConfig) -> int:
    S, meta = load_input(cfg)
    rec = plane_count_record(S, cfg.threads) if isinstance(S, PlaneSet) else residue_count_record(S)
    rec.update(meta)
    if cfg.format == "csv":
        emit(dump_csv(list(rec), [rec]), cfg.out)
    else:
        emit(dump_json(rec), cfg.out)
    return EXIT_OK


# -- verify ------------------------------------------------------------------

REPORT_COLUMNS = ("name", "mode", "status", "relation", "lhs", "rhs", "ratio", "context", "detail")


def run_checks(S, context: dict, suite: str, threads: int = 1) -> list[verify.CheckReport]:
    if isinstance(S, PlaneSet):
        return verify.plane_suite(S, suite, context, threads)
    if len(S) == 0:
        return []
    return verify.report_sumprod_suite(S, context, suite)


def _emit_rows(rows: list[verify.CheckReport], cfg: RunConfig, summary: dict) -> None:
    if cfg.format == "csv":
        emit(dump_csv(REPORT_COLUMNS, (r.to_dict() for r in rows)), cfg.out)
    else:
        emit(dump_json({"summary": summary, "checks": [r.to_dict() for r in rows]}), cfg.out)


def _summary(rows: list[verify.CheckReport]) -> dict:
    asserts = [r for r in rows if r.mode == verify.ASSERT]
    return {
        "asserts": len(asserts),
        "passed": sum(1 for r in asserts if r.passed and not r.skipped),
        "failed": len(verify.failures(rows)),
        "skipped": sum(1 for r in rows if r.skipped),
        "reports": sum(1 for r in rows if r.mode == verify.REPORT and not r.skipped),
    }


def cmd_verify(cfg: RunConfig) -> int:
    S, meta = load_input(cfg)
    rows = verify.sort_rows(run_checks(S, meta, cfg.suite, cfg.threads))
    summary = _summary(rows)
    _emit_rows(rows, cfg, summary)
    return EXIT_FAIL if summary["failed"] else EXIT_OK


# -- exhaustive --------------------------------------------------------------


def cmd_exhaustive(cfg: RunConfig) -> int:
    p = cfg.p if cfg.p is not None else 3
    m = make_modulus(p)
    if cfg.kind == "residue":
        if cfg.k is None:
            raise ParseError("exhaustive residue enumeration needs --k")
        sets = list(enumerate_residue_subsets(m, cfg.k))
    else:
        sets = list(enumerate_subsets(m, cfg.k))
    suite = "exact" if cfg.suite == "all" else cfg.suite

    def work(S):
        return run_checks(S, {}, suite)

    results = ordered_map(work, sets, cfg.threads)
    per_check: dict[str, dict[str, int]] = {}
    failing: list[dict] = []
    for S, rows in zip(sets, results):
        for r in rows:
            tally = per_check.setdefault(r.name, {"PASS": 0, "FAIL": 0, "SKIPPED": 0})
            tally[r.status] += 1
            if r.status == "FAIL" and len(failing) < 20:
                members = [list(x) for x in S.points] if isinstance(S, PlaneSet) else list(S.elems)
                failing.append({"check": r.name, "set": members, "lhs": r.lhs, "rhs": r.rhs})
    failed = sum(t["FAIL"] for t in per_check.values())
    report = {
        "p": p,
        "kind": cfg.kind or "plane",
        "k": cfg.k,
        "sets": len(sets),
        "failed": failed,
        "checks": {k: per_check[k] for k in sorted(per_check)},
        "failures": failing,
    }
    if cfg.format == "csv":
        rows = [{"check": k, **v} for k, v in report["checks"].items()]
        emit(dump_csv(("check", "PASS", "FAIL", "SKIPPED"), rows), cfg.out)
    else:
        emit(dump_json(report), cfg.out)
    return EXIT_FAIL if failed else EXIT_OK


# -- sweep -------------------------------------------------------------------


def _plane_sweep_row(E: PlaneSet, spec: GenSpec) -> dict:
    c = plane_counts(E, 1)
    iso = verify.report_isosceles_bound(E, counts=c).ratio if c.n >= 2 else None
    aniso = E.m.anisotropic
    chain = verify.report_distance_chain(E, counts=c).ratio if c.n >= 2 and aniso else None
    return {
        "p": E.p, "family": spec.family, "seed": spec.seed, "n": c.n, "delta": c.delta_size,
        "t": c.t_count, "rect": c.rect_count, "q": c.q_count, "para": c.para_count,
        "ratio_bisector_energy": verify.ratio_bisector_energy(c) if aniso else None,
        "ratio_isosceles": iso,
        "ratio_distance_chain": chain,
        "log_delta_over_log_n": math.log(c.delta_size) / math.log(c.n) if c.n >= 2 else None,
    }


def _residue_sweep_row(A: ResidueSet, spec: GenSpec) -> dict:
    n = len(A)
    row = {"p": A.m.p, "family": spec.family, "seed": spec.seed, "n": n}
    if n == 0:
        return row
    rows = {r.name: r for r in verify.report_sumprod_suite(A, suite="dashboards")}
    sets = sumprod.dist_like_sets(A)
    target = len(sets.diff_sq_minus)
    row.update({
        "diff": len(sumprod.difference_set(A, A)),
        "sq_minus": len(sets.sq_minus),
        "diff_sq_minus": target,
        "e4": rows["sumprod.e4"].lhs,
        "chi": rows["sumprod.chi_bound"].lhs,
        "ratio_e4": rows["sumprod.e4"].ratio,
        "ratio_chi_bound": rows["sumprod.chi_bound"].ratio,
        "ratio_diff_sq_growth": rows["sumprod.diff_sq_growth"].ratio,
        "log_target_over_log_n": math.log(target) / math.log(n) if n >= 2 else None,
    })
    return row


def cmd_sweep(cfg: RunConfig) -> int:
    if not cfg.gen:
        raise ParseError("sweep needs --gen family:p:size:seed[:k=v,...]")
    base = GenSpec.parse(cfg.gen)
    if cfg.p is not None and cfg.p != base.p:
        raise ModulusMismatch(f"--p {cfg.p} disagrees with the generator's p = {base.p}")
    start = cfg.seed if cfg.seed is not None else base.seed
    specs = [base.with_seed(start + i) for i in range(cfg.trials)]

    def work(spec: GenSpec) -> dict:
        S = generate(spec)
        return _plane_sweep_row(S, spec) if base.is_plane else _residue_sweep_row(S, spec)

    rows = ordered_map(work, specs, cfg.threads)
    columns = SWEEP_PLANE_COLUMNS if base.is_plane else SWEEP_RESIDUE_COLUMNS
    if cfg.format == "json":
        emit(dump_json([{c: r.get(c) for c in columns} for r in rows]), cfg.out)
    else:
        emit(dump_csv(columns, rows), cfg.out)
    return EXIT_OK


# -- exponents ---------------------------------------------------------------


def cmd_exponents(cfg: RunConfig) -> int:
    from .exponents import exponent_table

    rows = [{"name": k, "value": str(v), "decimal": float(v)} for k, v in exponent_table()]
    if cfg.format == "csv":
        emit(dump_csv(("name", "value", "decimal"), rows), cfg.out)
    else:
        emit(dump_json(rows), cfg.out)
    return EXIT_OK


COMMANDS = {
    "counts": cmd_counts,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "exhaustive": cmd_exhaustive,
    "exponents": cmd_exponents,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bisector-lab", description=__doc__)
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--p", type=int)
    parser.add_argument("--input")
    parser.add_argument("--gen", help="family:p:size:seed[:k=v,...]")
    parser.add_argument("--kind", choices=("plane", "residue"))
    parser.add_argument("--trials", type=int, default=1)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--out")
    parser.add_argument("--format", choices=("json", "csv"), default=None)
    parser.add_argument("--suite", choices=("exact", "dashboards", "all"), default="all")
    parser.add_argument("--k", type=int, help="subset size for exhaustive enumeration")
    return parser


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    threads = ns.threads if ns.threads is not None else kernels.default_threads()
    if threads < 1:
        raise ParseError("--threads must be at least 1")
    if ns.trials < 1:
        raise ParseError("--trials must be at least 1")
    fmt = ns.format or ("csv" if ns.command == "sweep" else "json")
    return RunConfig(ns.command, ns.p, ns.input, ns.gen, ns.kind, ns.trials, ns.seed, threads,
                     ns.out, fmt, ns.suite, ns.k)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
        return COMMANDS[cfg.command](cfg)
    except BisectorLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
