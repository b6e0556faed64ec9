"""Command line front end.

Subcommands: ``compare`` builds an outcome matrix from patient data,
``analyze`` runs the closed-form engines, ``oracle`` runs the
brute-force estimators, ``bench`` compares closed-form against Monte
Carlo. Exit codes: 0 success, 2 input error, 3 enumeration guard error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import io
from .boot import bootstrap_moments
from .errors import GuardError, InputError, RatioUndefinedError
from .graph import ArmAssignment, GraphSummary, summarize
from .oracle import (
    GUARD_LIMIT,
    McConfig,
    enumerate_bootstrap_moments,
    enumerate_permutation_moments,
    mc_bootstrap,
    mc_permutation,
)
from .outcome import OutcomeMatrix, build_outcome_matrix
from .perm import FsResult, fs_test, permutation_moments
from .ratio import WinRatioResult, win_ratio
from .results import WinMoments

SCHEMA_VERSION = 1


@dataclass(frozen=True, slots=True)
class AnalysisReport:
    """Everything one analysis run produced, ready for JSON."""

    method: str
    input: dict
    results: dict
    timing_ms: dict

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "method": self.method,
            "input": self.input,
            "results": self.results,
            "timing_ms": self.timing_ms,
        }


def _num(x) -> Optional[float]:
    """JSON-safe number: None for missing or NaN."""
    if x is None:
        return None
    x = float(x)
    return None if math.isnan(x) else x


def _digest(summary: GraphSummary) -> dict:
    return {
        "n_patients": summary.n_patients,
        "m": summary.m,
        "n": summary.n,
        "total_edges": summary.total_edges,
        "observed_t_wins": summary.observed_t_wins,
        "observed_c_wins": summary.observed_c_wins,
    }


def _moments_payload(wm: WinMoments, case_counts=None) -> dict:
    as_float = wm.as_float()
    payload = {
        "method": wm.method.value,
        "exp_t": _num(as_float.exp_t),
        "exp_c": _num(as_float.exp_c),
        "cov": [[_num(v) for v in row] for row in np.asarray(as_float.cov)],
        "exp_diff": _num(as_float.exp_diff),
        "var_diff": _num(as_float.var_diff),
    }
    if wm.exact:
        payload["exp_t_exact"] = str(wm.exp_t)
        payload["exp_c_exact"] = str(wm.exp_c)
        payload["cov_exact"] = [[str(v) for v in row] for row in wm.cov]
        payload["exp_diff_exact"] = str(wm.exp_diff)
        payload["var_diff_exact"] = str(wm.var_diff)
    if case_counts is not None:
        payload["case_counts"] = dataclasses.asdict(case_counts)
    return payload


def _fs_payload(fs: FsResult, exact: bool) -> dict:
    payload = {
        "scores": [int(s) for s in fs.scores],
        "fs": fs.fs,
        "variance": _num(float(fs.variance)),
        "z": _num(fs.z),
        "p_two_sided": _num(fs.p_two_sided),
    }
    if exact:
        payload["variance_exact"] = str(fs.variance)
    return payload


def _ratio_payload(r: WinRatioResult) -> dict:
    return {
        "r_w": _num(r.r_w),
        "log_rw": _num(r.log_rw),
        "se_pocock": _num(r.se_pocock),
        "se_delta": _num(r.se_delta),
        "ci_level": r.ci_level,
        "ci_pocock": None if r.ci_pocock is None else [_num(v) for v in r.ci_pocock],
        "ci_delta": None if r.ci_delta is None else [_num(v) for v in r.ci_delta],
    }


def _emit(report: AnalysisReport, json_path: Optional[str]) -> None:
    text = json.dumps(report.to_dict(), indent=2, allow_nan=False) + "\n"
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_inputs(matrix_path: str, arms_path: str) -> tuple[OutcomeMatrix, ArmAssignment, GraphSummary]:
    u = io.read_matrix(matrix_path)
    arms = io.read_arms(arms_path)
    return u, arms, summarize(u, arms)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_compare(args: argparse.Namespace) -> int:
    hierarchy = io.read_hierarchy(args.hierarchy)
    records = io.read_records(args.data, hierarchy)
    u = build_outcome_matrix(records, hierarchy)
    io.write_matrix(args.out, u)
    if args.arms_out:
        io.write_arms(args.arms_out, ArmAssignment([r.arm for r in records]))
    print(f"N={u.n_patients} E={int((u.entries == 1).sum())}")
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    u, arms, summary = _load_inputs(args.matrix, args.arms)
    exact = args.exact
    results: dict = {}
    timing: dict = {}

    def timed(name, fn):
        t0 = time.perf_counter()
        out = fn()
        timing[name] = (time.perf_counter() - t0) * 1e3
        return out

    fs = None
    boot = None
    if args.method in ("permutation", "all"):
        moments, counts = timed("permutation", lambda: permutation_moments(summary, summary.m, summary.n, exact=exact))
        results["permutation"] = _moments_payload(moments, counts)
    if args.method in ("bootstrap", "winratio", "all"):
        boot, counts = timed("bootstrap", lambda: bootstrap_moments(summary, summary.m, summary.n, exact=exact))
        results["bootstrap"] = _moments_payload(boot, counts)
    if args.method in ("fs", "winratio", "all"):
        fs = timed("fs", lambda: fs_test(u, arms, exact=exact))
        results["fs"] = _fs_payload(fs, exact)
    if args.method in ("winratio", "all"):
        try:
            ratio = timed("win_ratio", lambda: win_ratio(summary, fs, boot, ci_level=args.ci))
            results["win_ratio"] = _ratio_payload(ratio)
        except RatioUndefinedError as exc:
            # with method=all the rest of the report is still useful
            if args.method == "winratio":
                raise
            results["win_ratio"] = {"undefined": str(exc)}

    report = AnalysisReport(args.method, _digest(summary), results, timing)
    _emit(report, args.json)
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    u, arms, summary = _load_inputs(args.matrix, args.arms)
    results: dict = {}
    timing: dict = {}
    t0 = time.perf_counter()
    if args.method == "permutation":
        moments = enumerate_permutation_moments(u, arms.m, arms.n, exact=args.exact, limit=args.limit)
    elif args.method == "bootstrap":
        moments = enumerate_bootstrap_moments(u, arms, exact=args.exact, limit=args.limit)
    else:
        if args.reps is None or args.seed is None:
            raise InputError(f"method {args.method} requires --reps and --seed")
        cfg = McConfig(args.reps, args.seed)
        if args.method == "mc-permutation":
            moments = mc_permutation(u, arms, cfg)
        else:
            moments = mc_bootstrap(u, arms, cfg)
    timing[args.method] = (time.perf_counter() - t0) * 1e3
    results[args.method.replace("-", "_")] = _moments_payload(moments)
    report = AnalysisReport(args.method, _digest(summary), results, timing)
    _emit(report, args.json)
    return 0


def _closed_form_values(summary: GraphSummary) -> dict[str, np.ndarray]:
    perm, _ = permutation_moments(summary, summary.m, summary.n)
    boot, _ = bootstrap_moments(summary, summary.m, summary.n)
    out = {}
    for name, wm in (("permutation", perm), ("bootstrap", boot)):
        out[name] = np.array([wm.exp_t, wm.exp_c, wm.cov[0, 0], wm.cov[0, 1], wm.cov[1, 1]])
    return out


def bench_data(u: OutcomeMatrix, arms: ArmAssignment, reps_list: list[int], seed: int) -> dict:
    """Closed-form vs Monte Carlo timing and worst moment error per reps."""
    summary = summarize(u, arms)

    def best_of(fn, tries=3):
        times = []
        for _ in range(tries):
            t0 = time.perf_counter()
            fn()
            times.append(time.perf_counter() - t0)
        return min(times) * 1e3

    closed_perm_ms = best_of(lambda: permutation_moments(summarize(u, arms), arms.m, arms.n))
    closed_boot_ms = best_of(lambda: bootstrap_moments(summarize(u, arms), arms.m, arms.n))
    exact_vals = _closed_form_values(summary)

    rows = []
    for i, reps in enumerate(reps_list):
        row = {"reps": reps}
        for k, (name, runner) in enumerate((("perm", mc_permutation), ("boot", mc_bootstrap))):
            cfg = McConfig(reps, seed + 2 * i + k)
            t0 = time.perf_counter()
            mc = runner(u, arms, cfg)
            elapsed_ms = (time.perf_counter() - t0) * 1e3
            got = np.array([mc.exp_t, mc.exp_c, mc.cov[0, 0], mc.cov[0, 1], mc.cov[1, 1]])
            want = exact_vals["permutation" if name == "perm" else "bootstrap"]
            err = float(np.nanmax(np.abs(got - want)))
            row[f"mc_{name}_ms"] = elapsed_ms
            row[f"mc_{name}_maxerr"] = err
        rows.append(row)
    return {
        "closed_perm_ms": closed_perm_ms,
        "closed_boot_ms": closed_boot_ms,
        "rows": rows,
    }


def _cmd_bench(args: argparse.Namespace) -> int:
    u, arms, _ = _load_inputs(args.matrix, args.arms)
    reps_list = [int(tok) for tok in args.reps.split(",") if tok.strip()] if args.reps else []
    for reps in reps_list:
        if reps < 1:
            raise InputError(f"reps values must be positive, got {reps}")
    data = bench_data(u, arms, reps_list, args.seed)
    print(f"closed-form: permutation {data['closed_perm_ms']:.3f} ms, bootstrap {data['closed_boot_ms']:.3f} ms")
    header = f"{'reps':>10}  {'mc_perm_ms':>12}  {'mc_perm_maxerr':>14}  {'mc_boot_ms':>12}  {'mc_boot_maxerr':>14}"
    print(header)
    for row in data["rows"]:
        print(
            f"{row['reps']:>10}  {row['mc_perm_ms']:>12.3f}  {row['mc_perm_maxerr']:>14.6f}  "
            f"{row['mc_boot_ms']:>12.3f}  {row['mc_boot_maxerr']:>14.6f}"
        )
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="winmoments",
        description="Exact win-count moments for hierarchical pairwise comparison trials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="build an outcome matrix from patient data")
    p.add_argument("--data", required=True, help="patient CSV file")
    p.add_argument("--hierarchy", required=True, help="hierarchy JSON file")
    p.add_argument("--out", required=True, help="output matrix file")
    p.add_argument("--arms-out", help="also write the arm assignment file from the CSV")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("analyze", help="closed-form moments, score test, win ratio")
    p.add_argument("--matrix", required=True)
    p.add_argument("--arms", required=True)
    p.add_argument("--method", choices=["permutation", "bootstrap", "fs", "winratio", "all"], default="all")
    p.add_argument("--exact", action="store_true", help="also report exact rationals")
    p.add_argument("--ci", type=float, default=0.95, help="confidence level (default 0.95)")
    p.add_argument("--json", help="write the JSON report here instead of stdout")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("oracle", help="brute-force or Monte Carlo estimates of the same moments")
    p.add_argument("--matrix", required=True)
    p.add_argument("--arms", required=True)
    p.add_argument("--method", choices=["permutation", "bootstrap", "mc-permutation", "mc-bootstrap"], required=True)
    p.add_argument("--exact", action="store_true", help="report exact rationals (enumeration methods)")
    p.add_argument("--limit", type=int, default=GUARD_LIMIT, help="enumeration size guard")
    p.add_argument("--reps", type=int, help="Monte Carlo repetitions (mc-* methods)")
    p.add_argument("--seed", type=int, help="Monte Carlo seed (mc-* methods)")
    p.add_argument("--json", help="write the JSON report here instead of stdout")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("bench", help="closed form vs Monte Carlo: time and worst error")
    p.add_argument("--matrix", required=True)
    p.add_argument("--arms", required=True)
    p.add_argument("--reps", default="", help="comma-separated Monte Carlo repetition counts")
    p.add_argument("--seed", type=int, required=True, help="base seed for the Monte Carlo runs")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (InputError, RatioUndefinedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
