"""Exact success probabilities for color-coding N boxes with d colors:
the quantum optimum, the classical optimum, the counting bound, and the
per-diagram measure tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .young import (
    CapacityError,
    DEFAULT_ENUMERATION_CAP,
    IrrepStats,
    _content_product,
    _hook_product,
    _partitions_revlex,
    enumerate_partitions,
    irrep_stats,
)


@dataclass(frozen=True)
class CodingInstance:
    """One (N, d) problem: N boxes labeled with d-state systems."""

    n_boxes: int
    n_colors: int

    def __post_init__(self) -> None:
        if self.n_boxes < 1 or self.n_colors < 1:
            raise ValueError(
                f"need n_boxes >= 1 and n_colors >= 1, got ({self.n_boxes}, {self.n_colors})"
            )

    @property
    def ratio(self) -> float:
        return self.n_colors / self.n_boxes


@dataclass
class CodingReport:
    """Computed probabilities for one instance, with the method recorded."""

    instance: CodingInstance
    p_quantum: Fraction | tuple[float, float]  # exact, or (estimate, stderr)
    p_classical: Fraction
    p_info_bound: Fraction
    method: str  # "exact-enumeration" | "plancherel-mc" | "schur-weyl-mc"
    dim_w: int | None = None
    # per-diagram min(m, D) outcome counts: which side of the min wins
    min_side_counts: dict[str, int] = field(default_factory=dict)

    @property
    def p_quantum_float(self) -> float:
        if isinstance(self.p_quantum, Fraction):
            return float(self.p_quantum)
        return self.p_quantum[0]


def quantum_pmax_exact(instance: CodingInstance, cap: int | None = None) -> CodingReport:
    """Optimal quantum success probability (1/N!) * sum over diagrams of
    min(m, D) * D, computed exactly by full partition enumeration."""
    n, d = instance.n_boxes, instance.n_colors
    cap = DEFAULT_ENUMERATION_CAP if cap is None else cap
    if n > cap:
        raise CapacityError(
            f"N={n} exceeds the enumeration cap {cap}; "
            "use the Monte Carlo estimators in permcode.asymptotics"
        )
    nfact = math.factorial(n)
    dim_w = 0
    counts = {"dim_wins": 0, "mult_wins": 0, "ties": 0, "zero_mult": 0}
    for rows in _partitions_revlex(n):
        if len(rows) > d:
            counts["zero_mult"] += 1
            continue
        hooks = _hook_product(rows)
        dim = nfact // hooks
        mult = _content_product(rows, d) // hooks
        if dim < mult:
            counts["dim_wins"] += 1
        elif mult < dim:
            counts["mult_wins"] += 1
        else:
            counts["ties"] += 1
        dim_w += min(dim, mult) * dim
    return CodingReport(
        instance=instance,
        p_quantum=Fraction(dim_w, nfact),
        p_classical=classical_success(instance),
        p_info_bound=info_bound(instance),
        method="exact-enumeration",
        dim_w=dim_w,
        min_side_counts=counts,
    )


def balanced_color_classes(n: int, d: int) -> list[int]:
    """Class sizes of the optimal classical coloring: as equal as possible."""
    if d >= n:
        return [1] * n
    q, r = divmod(n, d)
    return [q + 1] * r + [q] * (d - r)


def classical_success(instance: CodingInstance) -> Fraction:
    """Optimal classical success probability 1 / prod(class size factorials)."""
    sizes = balanced_color_classes(instance.n_boxes, instance.n_colors)
    denom = 1
    for s in sizes:
        denom *= math.factorial(s)
    return Fraction(1, denom)


def info_bound(instance: CodingInstance) -> Fraction:
    """Counting bound min(1, d^N / N!): channel states over message states.

    Always dominates the quantum optimum, since min(m, D) * D <= m * D
    summed over diagrams gives d^N.
    """
    n, d = instance.n_boxes, instance.n_colors
    return min(Fraction(1), Fraction(d**n, math.factorial(n)))


def measure_tables(instance: CodingInstance, cap: int | None = None) -> list[IrrepStats]:
    """Per-diagram stats for all partitions of N, in enumeration order.

    Plancherel weights sum to 1 exactly; Schur-Weyl weights sum to 1 exactly.
    """
    n, d = instance.n_boxes, instance.n_colors
    return [irrep_stats(diag, d) for diag in enumerate_partitions(n, cap=cap)]
