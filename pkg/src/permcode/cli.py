"""Command-line front end: exact reports, sweeps, sampling, verification
suites, and bound checks, emitted as table, CSV, or JSON.

Output is deterministic for a fixed command line and seed (no timestamps).
The environment variable PERMCODE_CAP overrides the exact-enumeration cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from collections import Counter
from fractions import Fraction

import numpy as np

from . import __version__
from .asymptotics import (
    HARDY_RAMANUJAN_C,
    CRITICAL_RATIO,
    erdos_bound_check,
    kerov_bound_check,
    kerov_row_bound_check,
    pmax_estimate_plancherel,
    pmax_estimate_schur_weyl,
    threshold_sweep,
)
from .coding import CodingInstance, classical_success, info_bound, quantum_pmax_exact
from .qsim import (
    InternalQsimError,
    all_perms,
    build_gamma,
    build_n3_example,
    classical_channel_mc,
    orthogonality_check_n3,
    pgm_success,
    success_probability,
    symmetrize_elements,
    symmetrize_povm,
)
from .young import (
    CapacityError,
    DEFAULT_ENUMERATION_CAP,
    InternalInvariantError,
    sample_plancherel,
    sample_schur_weyl,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INTERNAL = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1 on usage errors
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def dec_str(x) -> str:
    return f"{float(x):.12g}"


def _meta(args: argparse.Namespace, cap: int, extra: dict | None = None) -> dict:
    meta = {"version": __version__, "command": args.command, "cap": cap}
    if getattr(args, "seed", None) is not None:
        meta["seed"] = args.seed
    if extra:
        meta.update(extra)
    return meta


def _emit(args: argparse.Namespace, meta: dict, rows: list[dict], text_lines: list[str]) -> None:
    """Write output as table (text_lines), csv (rows), or json (meta + rows)."""
    out = io.StringIO()
    if args.format == "json":
        json.dump({"meta": meta, "rows": rows}, out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        for k, v in meta.items():
            out.write(f"# {k}={v}\n")
        if rows:
            writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
    else:
        for k, v in meta.items():
            out.write(f"# {k}={v}\n")
        for line in text_lines:
            out.write(line + "\n")
    payload = out.getvalue()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _resolve_cap(args: argparse.Namespace) -> int:
    if getattr(args, "cap", None) is not None:
        return args.cap
    env = os.environ.get("PERMCODE_CAP")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"PERMCODE_CAP must be an integer, got {env!r}")
    return DEFAULT_ENUMERATION_CAP


def cmd_pmax(args: argparse.Namespace) -> None:
    cap = _resolve_cap(args)
    inst = CodingInstance(args.n, args.d)
    method = args.method
    if method == "auto":
        method = "exact" if args.n <= cap else (
            "plancherel" if inst.ratio > CRITICAL_RATIO else "schur-weyl"
        )
    if method == "exact":
        rep = quantum_pmax_exact(inst, cap=cap)
        p = rep.p_quantum
        row = {
            "n": args.n, "d": args.d, "method": rep.method,
            "p_quantum": dec_str(p), "p_quantum_exact": frac_str(p), "stderr": "",
            "p_classical": dec_str(rep.p_classical),
            "p_classical_exact": frac_str(rep.p_classical),
            "info_bound": dec_str(rep.p_info_bound),
            "info_bound_exact": frac_str(rep.p_info_bound),
            "dim_w": rep.dim_w,
        }
        lines = [
            f"p_quantum = {frac_str(p)} ({dec_str(p)})",
            f"p_classical = {frac_str(rep.p_classical)} ({dec_str(rep.p_classical)})",
            f"info_bound = {frac_str(rep.p_info_bound)} ({dec_str(rep.p_info_bound)})",
            f"dim_w = {rep.dim_w}",
            f"min_side_counts = {rep.min_side_counts}",
        ]
    else:
        fn = pmax_estimate_plancherel if method == "plancherel" else pmax_estimate_schur_weyl
        est = fn(args.n, args.d, args.samples, args.seed)
        row = {
            "n": args.n, "d": args.d, "method": est.method,
            "p_quantum": dec_str(est.estimate), "p_quantum_exact": "",
            "stderr": dec_str(est.stderr),
            "p_classical": dec_str(classical_success(inst)),
            "p_classical_exact": frac_str(classical_success(inst)),
            "info_bound": dec_str(info_bound(inst)),
            "info_bound_exact": frac_str(info_bound(inst)),
            "dim_w": "",
        }
        lines = [
            f"p_quantum = {dec_str(est.estimate)} +/- {dec_str(est.stderr)} ({est.method})",
            f"sampled_mean = {dec_str(est.ratio)} +/- {dec_str(est.ratio_stderr)}",
        ]
    _emit(args, _meta(args, cap, {"method": row["method"]}), [row], lines)


def cmd_classical(args: argparse.Namespace) -> None:
    cap = _resolve_cap(args)
    p = classical_success(CodingInstance(args.n, args.d))
    row = {"n": args.n, "d": args.d, "p_classical": dec_str(p), "p_classical_exact": frac_str(p)}
    _emit(args, _meta(args, cap), [row], [f"p_classical = {frac_str(p)} ({dec_str(p)})"])


def cmd_sweep(args: argparse.Namespace) -> None:
    cap = _resolve_cap(args)
    n_list = [int(x) for x in args.n_list.split(",") if x]
    rows_out = []
    lines = []
    for r in threshold_sweep(args.r, n_list, seed=args.seed, sample_count=args.samples, cap=cap):
        rows_out.append(
            {
                "n": r.n_boxes, "d": r.n_colors, "r": dec_str(r.ratio), "method": r.method,
                "p_quantum": dec_str(r.p_quantum),
                "p_quantum_exact": frac_str(r.p_quantum_exact) if r.p_quantum_exact is not None else "",
                "stderr": dec_str(r.stderr) if r.stderr is not None else "",
                "p_classical": dec_str(r.p_classical),
                "p_classical_exact": frac_str(r.p_classical),
                "info_bound": dec_str(r.info_bound),
                "info_bound_exact": frac_str(r.info_bound),
                "ratio_to_bound": dec_str(r.ratio_to_bound),
            }
        )
        lines.append(
            f"N={r.n_boxes} d={r.n_colors} p_quantum={dec_str(r.p_quantum)} "
            f"({r.method}) ratio_to_bound={dec_str(r.ratio_to_bound)}"
        )
    _emit(args, _meta(args, cap, {"r": args.r, "samples": args.samples}), rows_out, lines)


def cmd_sample(args: argparse.Namespace) -> None:
    cap = _resolve_cap(args)
    shapes: Counter = Counter()
    for i in range(args.count):
        if args.measure == "plancherel":
            diag = sample_plancherel(args.n, args.seed + i)
        else:
            diag = sample_schur_weyl(args.n, args.d, args.seed + i)
        shapes[diag.rows] += 1
    rows = [
        {"shape": " ".join(map(str, rows_)), "count": c, "frequency": dec_str(c / args.count)}
        for rows_, c in sorted(shapes.items(), reverse=True)
    ]
    lines = [f"{r['shape']}: {r['count']} ({r['frequency']})" for r in rows]
    _emit(args, _meta(args, cap, {"measure": args.measure, "count": args.count}), rows, lines)


def _verify_n3_checks() -> list[dict]:
    checks = []
    signal, povm = build_n3_example()
    psi = signal.amplitudes
    overlap_resid = max(
        abs(abs(psi.conj() @ build_gamma(p, 3, 2).matrix @ psi) - 0.2)
        for p in all_perms(3) if p != (0, 1, 2)
    )
    checks.append({"check_name": "overlap-one-fifth", "max_residual": overlap_resid, "tolerance": 1e-12})
    total = sum(povm.elements().values()) + povm.completion
    checks.append({
        "check_name": "povm-completeness",
        "max_residual": float(np.abs(total - np.eye(8)).max()),
        "tolerance": 1e-10,
    })
    checks.append({
        "check_name": "success-five-sixths",
        "max_residual": abs(success_probability(signal, povm) - 5 / 6),
        "tolerance": 1e-10,
    })
    checks.append({
        "check_name": "pgm-matches-povm",
        "max_residual": abs(pgm_success(signal, 3, 2) - success_probability(signal, povm)),
        "tolerance": 1e-8,
    })
    orth = orthogonality_check_n3()
    checks.append({
        "check_name": "orthogonality-relations",
        "max_residual": max(
            orth["cross_irrep_residual"], orth["same_irrep_residual"], orth["alignment_residual"]
        ),
        "tolerance": orth["tolerance"],
    })
    checks.append({
        "check_name": "phi-copy-projections",
        "max_residual": max(
            abs(v - orth["phi_projection_target"]) for v in orth["phi_projection_sq_norms"].values()
        ),
        "tolerance": orth["tolerance"],
    })
    return checks


def _verify_symmetrize_checks(seed: int, count: int = 20) -> list[dict]:
    rng = np.random.default_rng(seed)
    n, d = 3, 2
    dim = d**n
    perms = all_perms(n)
    max_cov = 0.0
    max_success_shift = 0.0
    for _ in range(count):
        # random POVM: normalized conjugated random PSD matrices
        raws = []
        for _ in perms:
            m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            raws.append(m @ m.conj().T)
        total = sum(raws)
        evals, evecs = np.linalg.eigh(total)
        inv_sqrt = (evecs * (1.0 / np.sqrt(evals))) @ evecs.conj().T
        raw = {p: inv_sqrt @ e @ inv_sqrt for p, e in zip(perms, raws)}
        cov = symmetrize_povm(raw, n, d)
        averaged = symmetrize_elements(raw, n, d)
        for p in perms:
            g = build_gamma(p, n, d).matrix
            max_cov = max(
                max_cov,
                float(np.abs(averaged[p] - g @ cov.seed_operator @ g.conj().T).max()),
            )
        signal, _ = build_n3_example()
        psi = signal.amplitudes
        nfact = len(perms)
        raw_success = sum(
            np.real(
                (build_gamma(p, n, d).matrix @ psi).conj()
                @ raw[p]
                @ (build_gamma(p, n, d).matrix @ psi)
            )
            for p in perms
        ) / nfact
        max_success_shift = max(
            max_success_shift, abs(success_probability(signal, cov) - raw_success)
        )
    return [
        {"check_name": "symmetrized-covariance", "max_residual": max_cov, "tolerance": 1e-12},
        {"check_name": "symmetrized-success-preserved", "max_residual": max_success_shift, "tolerance": 1e-12},
    ]


def _verify_classical_checks(seed: int) -> list[dict]:
    checks = []
    for n, d, target in ((3, 2, 0.5), (4, 2, 0.25)):
        p_hat, stderr = classical_channel_mc(n, d, 100_000, seed)
        sigma = max(stderr, 1e-12)
        checks.append({
            "check_name": f"classical-channel-{n}-{d}",
            "max_residual": abs(p_hat - target) / sigma,
            "tolerance": 4.0,
        })
    return checks


def cmd_verify(args: argparse.Namespace) -> None:
    cap = _resolve_cap(args)
    checks: list[dict] = []
    if args.suite in ("n3", "all"):
        checks.extend(_verify_n3_checks())
    if args.suite in ("symmetrize", "all"):
        checks.extend(_verify_symmetrize_checks(args.seed))
    if args.suite in ("classical", "all"):
        checks.extend(_verify_classical_checks(args.seed))
    for c in checks:
        c["pass"] = bool(c["max_residual"] <= c["tolerance"])
        c["max_residual"] = float(c["max_residual"])
    lines = [
        f"{'PASS' if c['pass'] else 'FAIL'} {c['check_name']}: "
        f"residual {c['max_residual']:.3e} (tol {c['tolerance']:.0e})"
        for c in checks
    ]
    if args.format == "table":
        args.format = "json"  # verification reports are JSON by default
    _emit(args, _meta(args, cap, {"suite": args.suite}), checks, lines)
    if not all(c["pass"] for c in checks):
        raise InternalQsimError("verification suite reported failures")


def cmd_bounds(args: argparse.Namespace) -> None:
    cap = _resolve_cap(args)
    reports = []
    for n in range(1, args.kerov_n + 1):
        reports.append(kerov_bound_check(n, cap=cap))
    row_rep = kerov_row_bound_check(args.kerov_row_n, args.kerov_row_d, cap=cap)
    erdos = erdos_bound_check(args.erdos_n, args.c)
    kerov_viol = sum(r.violations for r in reports)
    kerov_max = max(r.max_slack for r in reports)
    rows = [
        {
            "check": "plancherel-column-tail", "range": f"n<=%d" % args.kerov_n,
            "violations": kerov_viol, "max_slack": dec_str(kerov_max),
        },
        {
            "check": "schur-weyl-row-tail",
            "range": f"n={args.kerov_row_n},d={args.kerov_row_d}",
            "violations": row_rep.violations, "max_slack": dec_str(row_rep.max_slack),
        },
        {
            "check": "partition-count-growth", "range": f"n<={args.erdos_n}",
            "violations": erdos.violations, "max_slack": dec_str(erdos.max_slack),
        },
    ]
    lines = [
        f"{r['check']} ({r['range']}): violations={r['violations']} max_slack={r['max_slack']}"
        for r in rows
    ]
    _emit(args, _meta(args, cap, {"c": args.c}), rows, lines)


def build_parser() -> _Parser:
    parser = _Parser(prog="permcode", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")
        p.add_argument("--output", default=None, help="write to a file instead of stdout")
        p.add_argument("--cap", type=int, default=None, help="exact-enumeration cap override")

    p = sub.add_parser("pmax", help="optimal quantum success probability")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--method", choices=("auto", "exact", "plancherel", "schur-weyl"), default="auto")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(fn=cmd_pmax)

    p = sub.add_parser("classical", help="optimal classical success probability")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_classical)

    p = sub.add_parser("sweep", help="success probability along N at fixed color ratio")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--n-list", dest="n_list", required=True, help="comma-separated N values")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("sample", help="draw random Young diagrams")
    p.add_argument("--measure", choices=("plancherel", "schur-weyl"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("verify", help="matrix-level verification suites")
    p.add_argument("--suite", choices=("n3", "symmetrize", "classical", "all"), default="all")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bounds", help="tail and growth bound checks")
    p.add_argument("--kerov-n", type=int, default=40)
    p.add_argument("--kerov-row-n", type=int, default=25)
    p.add_argument("--kerov-row-d", type=int, default=5)
    p.add_argument("--erdos-n", type=int, default=500)
    p.add_argument("--c", type=float, default=HARDY_RAMANUJAN_C)
    common(p)
    p.set_defaults(fn=cmd_bounds)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.fn(args)
        return EXIT_OK
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    except (CapacityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InternalInvariantError, InternalQsimError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
