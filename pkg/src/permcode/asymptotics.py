"""Empirical checks of the asymptotic machinery: short-column/short-row scans,
Plancherel and Schur-Weyl tail bounds, the partition-count growth bound, and
Monte Carlo estimation of the optimal success probability beyond the exact
enumeration cap.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .coding import CodingInstance, classical_success, info_bound, quantum_pmax_exact
from .young import (
    DEFAULT_ENUMERATION_CAP,
    _partitions_revlex,
    enumerate_partitions,
    log_dim_irrep,
    log_multiplicity,
    partition_count,
    rsk_shape,
)

#: Hardy-Ramanujan exponent; default constant for the partition-growth bound.
HARDY_RAMANUJAN_C = math.pi * math.sqrt(2.0 / 3.0)

#: Color ratio d/N separating the two asymptotic regimes.
CRITICAL_RATIO = 1.0 / math.e


@dataclass
class DominanceScanReport:
    """Exhaustive short-vs-long diagram scan at one (n, d, A)."""

    n: int
    d: int
    a_threshold: float
    cutoff: float  # A * sqrt(n)
    short_count: int = 0
    long_count: int = 0
    violations: int = 0
    ties: int = 0
    zero_mult_excluded: int = 0


@dataclass
class BoundCheckReport:
    """Result of verifying a per-diagram (or per-n) inequality exhaustively."""

    name: str
    checked: int
    violations: int
    vacuous: int
    max_slack: float  # max over non-vacuous cases of lhs - rhs in log domain
    params: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0


@dataclass
class McEstimate:
    """Monte Carlo estimate of the optimal success probability."""

    n: int
    d: int
    samples: int
    seed: int
    method: str
    estimate: float
    stderr: float
    # the raw sampled mean before any rescaling by the counting bound
    ratio: float
    ratio_stderr: float


@dataclass
class SweepRow:
    n_boxes: int
    n_colors: int
    ratio: float
    method: str
    p_quantum: float
    p_quantum_exact: Fraction | None
    stderr: float | None
    p_classical: Fraction
    info_bound: Fraction
    ratio_to_bound: float


@lru_cache(maxsize=65536)
def _log_dim_mult(rows: tuple[int, ...], d: int) -> tuple[float, float]:
    return log_dim_irrep(rows), log_multiplicity(rows, d)


def column_dominance_scan(
    n: int, d: int, a_threshold: float, cap: int | None = None
) -> DominanceScanReport:
    """Count diagrams of n with first column shorter than A*sqrt(n) that fail
    to satisfy D < m (the short-column claim for d above the critical ratio).

    Diagnostic only: the claim is asymptotic.  Ties (D == m) are counted
    separately; diagrams with zero multiplicity never enter the optimal
    subspace and are excluded from the scan.
    """
    report = DominanceScanReport(n=n, d=d, a_threshold=a_threshold, cutoff=a_threshold * math.sqrt(n))
    nfact = math.factorial(n)
    for diag in enumerate_partitions(n, cap=cap):
        rows = diag.rows
        log_dim, log_mult = _log_dim_mult(rows, d)
        if log_mult == float("-inf"):
            report.zero_mult_excluded += 1
            continue
        if len(rows) >= report.cutoff:
            report.long_count += 1
            continue
        report.short_count += 1
        # exact comparison: ln is monotone, but decide ties exactly
        if abs(log_dim - log_mult) < 1e-9:
            from .young import dim_irrep, multiplicity

            dim, mult = dim_irrep(diag), multiplicity(diag, d)
            if dim == mult:
                report.ties += 1
            elif dim > mult:
                report.violations += 1
        elif log_dim > log_mult:
            report.violations += 1
    return report


def row_dominance_scan(
    n: int, d: int, a_threshold: float, cap: int | None = None
) -> DominanceScanReport:
    """Mirror scan: diagrams with first row shorter than A*sqrt(n) should have
    m < D (the short-row claim for d below the critical ratio)."""
    report = DominanceScanReport(n=n, d=d, a_threshold=a_threshold, cutoff=a_threshold * math.sqrt(n))
    for diag in enumerate_partitions(n, cap=cap):
        rows = diag.rows
        log_dim, log_mult = _log_dim_mult(rows, d)
        if rows[0] >= report.cutoff:
            report.long_count += 1
            continue
        report.short_count += 1
        if log_mult == float("-inf"):
            continue  # m = 0 < D, satisfies the claim
        if abs(log_dim - log_mult) < 1e-9:
            from .young import dim_irrep, multiplicity

            dim, mult = dim_irrep(diag), multiplicity(diag, d)
            if dim == mult:
                report.ties += 1
            elif mult > dim:
                report.violations += 1
        elif log_mult > log_dim:
            report.violations += 1
    return report


def kerov_bound_check(n: int, cap: int | None = None) -> BoundCheckReport:
    """Verify, for every diagram of n, the Plancherel tail bound
    mu(rho) <= exp(-2 * c1 * (ln(c1/sqrt(n)) - 1)) with c1 the first-column
    length.  The bound is vacuous when the right side is >= 1."""
    lg_nfact = math.lgamma(n + 1)
    sqrt_n = math.sqrt(n)
    report = BoundCheckReport(
        name="plancherel-column-tail", checked=0, violations=0, vacuous=0,
        max_slack=float("-inf"), params={"n": n},
    )
    for diag in enumerate_partitions(n, cap=cap):
        rows = diag.rows
        report.checked += 1
        col1 = len(rows)
        rhs = -2.0 * col1 * (math.log(col1 / sqrt_n) - 1.0)
        if rhs >= 0.0:
            report.vacuous += 1
            continue
        lhs = 2.0 * log_dim_irrep(rows) - lg_nfact  # ln mu(rho)
        slack = lhs - rhs
        report.max_slack = max(report.max_slack, slack)
        if slack > 1e-12:
            report.violations += 1
    return report


def kerov_row_bound_check(n: int, d: int, cap: int | None = None) -> BoundCheckReport:
    """Per-diagram check of the Schur-Weyl tail bound
    mu(rho) <= exp(-r1 * (2 * (ln(r1/sqrt(n)) - 1) - 1/(2r))) with r1 the
    first-row length and r = d/n.  Stated asymptotically, so violations are
    reported, not asserted."""
    r = d / n
    sqrt_n = math.sqrt(n)
    log_dn = n * math.log(d)
    report = BoundCheckReport(
        name="schur-weyl-row-tail", checked=0, violations=0, vacuous=0,
        max_slack=float("-inf"), params={"n": n, "d": d, "r": r},
    )
    for diag in enumerate_partitions(n, cap=cap):
        rows = diag.rows
        report.checked += 1
        row1 = rows[0]
        rhs = -row1 * (2.0 * (math.log(row1 / sqrt_n) - 1.0) - 1.0 / (2.0 * r))
        if rhs >= 0.0:
            report.vacuous += 1
            continue
        log_dim, log_mult = _log_dim_mult(rows, d)
        if log_mult == float("-inf"):
            continue  # weight 0, trivially below any bound
        lhs = log_dim + log_mult - log_dn  # ln of the Schur-Weyl weight
        slack = lhs - rhs
        report.max_slack = max(report.max_slack, slack)
        if slack > 1e-12:
            report.violations += 1
    return report


def erdos_bound_check(n_max: int, erdos_c: float = HARDY_RAMANUJAN_C) -> BoundCheckReport:
    """Check p(n) < exp(C * sqrt(n)) for every n up to n_max, with exact p(n)."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    report = BoundCheckReport(
        name="partition-count-growth", checked=0, violations=0, vacuous=0,
        max_slack=float("-inf"), params={"n_max": n_max, "c": erdos_c},
    )
    for n in range(1, n_max + 1):
        report.checked += 1
        slack = math.log(partition_count(n)) - erdos_c * math.sqrt(n)
        report.max_slack = max(report.max_slack, slack)
        if slack >= 0.0:
            report.violations += 1
    return report


def _mean_stderr(values_sum: float, values_sumsq: float, k: int) -> tuple[float, float]:
    mean = values_sum / k
    if k < 2:
        return mean, 0.0
    var = max(0.0, (values_sumsq - k * mean * mean) / (k - 1))
    return mean, math.sqrt(var / k)


def pmax_estimate_plancherel(n: int, d: int, sample_count: int, seed: int) -> McEstimate:
    """Estimate the optimal success probability as the Plancherel-measure mean
    of min(1, m/D), sampled via RSK shapes of uniform random permutations.

    Deterministic given the seed; draws are accumulated in stream order.
    Low variance when d/n is above the critical ratio (min is usually 1).
    """
    if n < 1 or d < 1 or sample_count < 1:
        raise ValueError(f"need n, d, sample_count >= 1, got ({n}, {d}, {sample_count})")
    rng = random.Random(seed)
    base = list(range(1, n + 1))
    total = 0.0
    total_sq = 0.0
    for _ in range(sample_count):
        rng.shuffle(base)
        rows = rsk_shape(base).rows
        log_dim, log_mult = _log_dim_mult(rows, d)
        if log_mult == float("-inf"):
            v = 0.0
        else:
            v = math.exp(min(0.0, log_mult - log_dim))
        total += v
        total_sq += v * v
    mean, stderr = _mean_stderr(total, total_sq, sample_count)
    return McEstimate(
        n=n, d=d, samples=sample_count, seed=seed, method="plancherel-mc",
        estimate=mean, stderr=stderr, ratio=mean, ratio_stderr=stderr,
    )


def pmax_estimate_schur_weyl(n: int, d: int, sample_count: int, seed: int) -> McEstimate:
    """Estimate the ratio of the optimal success probability to the counting
    bound d^n/n! as the Schur-Weyl-measure mean of min(1, D/m), sampled via
    RSK shapes of uniform random words.

    The returned estimate is the ratio rescaled by d^n/n! (in log domain, so
    the rescaling is usable even where d^n/n! underflows a float).  Preferred
    estimator when d/n is below the critical ratio, where the ratio tends to 1.
    """
    if n < 1 or d < 1 or sample_count < 1:
        raise ValueError(f"need n, d, sample_count >= 1, got ({n}, {d}, {sample_count})")
    rng = random.Random(seed)
    total = 0.0
    total_sq = 0.0
    for _ in range(sample_count):
        word = [rng.randint(1, d) for _ in range(n)]
        rows = rsk_shape(word).rows
        log_dim, log_mult = _log_dim_mult(rows, d)
        # a shape produced by a word over d letters has at most d rows
        v = math.exp(min(0.0, log_dim - log_mult))
        total += v
        total_sq += v * v
    ratio, ratio_stderr = _mean_stderr(total, total_sq, sample_count)
    # scale by the raw state-count ratio d^n/n!, which may exceed 1
    scale = math.exp(n * math.log(d) - math.lgamma(n + 1))
    return McEstimate(
        n=n, d=d, samples=sample_count, seed=seed, method="schur-weyl-mc",
        estimate=ratio * scale, stderr=ratio_stderr * scale,
        ratio=ratio, ratio_stderr=ratio_stderr,
    )


def choose_estimator(ratio: float):
    """Estimator selection rule: Plancherel above the critical ratio, Schur-Weyl below."""
    return pmax_estimate_plancherel if ratio > CRITICAL_RATIO else pmax_estimate_schur_weyl


def threshold_sweep(
    ratio: float,
    n_list: list[int],
    seed: int = 0,
    sample_count: int = 10_000,
    cap: int | None = None,
) -> list[SweepRow]:
    """For each N in n_list, set d = max(1, floor(ratio * N)) and compute the
    quantum success probability: exactly below the enumeration cap, by the
    regime-appropriate Monte Carlo estimator above it."""
    cap_val = DEFAULT_ENUMERATION_CAP if cap is None else cap
    out: list[SweepRow] = []
    for i, n in enumerate(n_list):
        if n < 1:
            raise ValueError(f"n_list entries must be positive, got {n}")
        d = max(1, math.floor(ratio * n))
        inst = CodingInstance(n, d)
        bound = info_bound(inst)
        if n <= cap_val:
            rep = quantum_pmax_exact(inst, cap=cap_val)
            p_exact = rep.p_quantum
            assert isinstance(p_exact, Fraction)
            out.append(
                SweepRow(
                    n_boxes=n, n_colors=d, ratio=d / n, method=rep.method,
                    p_quantum=float(p_exact), p_quantum_exact=p_exact, stderr=None,
                    p_classical=rep.p_classical, info_bound=bound,
                    ratio_to_bound=float(p_exact / bound),
                )
            )
        else:
            est = choose_estimator(ratio)(n, d, sample_count, seed + i)
            log_bound = min(0.0, n * math.log(d) - math.lgamma(n + 1))
            rtb = est.estimate / math.exp(log_bound)
            out.append(
                SweepRow(
                    n_boxes=n, n_colors=d, ratio=d / n, method=est.method,
                    p_quantum=est.estimate, p_quantum_exact=None, stderr=est.stderr,
                    p_classical=classical_success(inst), info_bound=bound,
                    ratio_to_bound=rtb,
                )
            )
    return out
