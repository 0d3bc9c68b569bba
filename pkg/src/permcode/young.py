"""Exact combinatorics of Young diagrams: enumeration, hook lengths, irrep
dimensions and multiplicities, characters, and RSK-based random sampling.

All counting is done with arbitrary-precision integers; probabilities are
exact ``fractions.Fraction`` values.  Log-domain variants (``log_dim_irrep``,
``log_multiplicity``) are provided for sizes where the exact integers are
too large to be useful as floats.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

DEFAULT_ENUMERATION_CAP = 66
CHARACTER_SIZE_CAP = 12


class CapacityError(ValueError):
    """Raised when an exact-enumeration request exceeds the configured cap."""


class InternalInvariantError(AssertionError):
    """A combinatorial identity that must hold exactly failed to hold."""


@dataclass(frozen=True)
class YoungDiagram:
    """A partition of n, stored as weakly decreasing row lengths."""

    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        for i, r in enumerate(rows):
            if r < 1:
                raise ValueError(f"row lengths must be positive, got {rows}")
            if i > 0 and rows[i - 1] < r:
                raise ValueError(f"rows must be weakly decreasing, got {rows}")

    @property
    def n(self) -> int:
        return sum(self.rows)

    @property
    def first_row(self) -> int:
        """Length of the first row."""
        return self.rows[0] if self.rows else 0

    @property
    def first_column(self) -> int:
        """Length of the first column, i.e. the number of rows."""
        return len(self.rows)

    def conjugate(self) -> "YoungDiagram":
        return YoungDiagram(_conjugate(self.rows))

    def __iter__(self) -> Iterator[int]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class IrrepStats:
    """Dimension, multiplicity and measure weights of one diagram at a given d."""

    diagram: YoungDiagram
    dim_irrep: int
    multiplicity: int
    log_dim: float
    log_mult: float
    plancherel: Fraction
    schur_weyl: Fraction


def _conjugate(rows: Sequence[int]) -> tuple[int, ...]:
    if not rows:
        return ()
    cols = [0] * rows[0]
    for r in rows:
        for j in range(r):
            cols[j] += 1
    return tuple(cols)


def _hook_product(rows: Sequence[int]) -> int:
    """Product over all cells of (arm + leg + 1)."""
    conj = _conjugate(rows)
    prod = 1
    for i, r in enumerate(rows):
        for j in range(r):
            prod *= r - j + conj[j] - i - 1
    return prod


def _content_product(rows: Sequence[int], d: int) -> int:
    """Product over cells (i, j) of (d - i + j), zero-indexed."""
    prod = 1
    for i, r in enumerate(rows):
        for j in range(r):
            prod *= d - i + j
    return prod


def enumerate_partitions(n: int, cap: int | None = None) -> Iterator[YoungDiagram]:
    """Yield every partition of n exactly once, in reverse-lexicographic order.

    [n] comes first and [1, ..., 1] last.  Streaming: partitions are produced
    one at a time.
    """
    cap = DEFAULT_ENUMERATION_CAP if cap is None else cap
    if n < 1:
        raise CapacityError(f"enumeration requires n >= 1, got {n}")
    if n > cap:
        raise CapacityError(
            f"n={n} exceeds the enumeration cap {cap}; use the sampling paths instead"
        )
    for rows in _partitions_revlex(n):
        yield YoungDiagram(rows)


def _partitions_revlex(n: int) -> Iterator[tuple[int, ...]]:
    """Raw partition generator in reverse-lexicographic order on row tuples."""
    part = [n]
    while True:
        yield tuple(part)
        # find rightmost entry > 1 to decrement
        k = len(part) - 1
        ones = 0
        while k >= 0 and part[k] == 1:
            ones += 1
            k -= 1
        if k < 0:
            return
        part[k] -= 1
        rem = ones + 1
        cap_val = part[k]
        del part[k + 1 :]
        while rem > 0:
            take = min(cap_val, rem)
            part.append(take)
            rem -= take


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) via Euler's pentagonal-number recurrence, exact."""
    if n < 0:
        raise ValueError(f"partition_count requires n >= 0, got {n}")
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 == 1 else -1
        total += sign * partition_count(n - g1)
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def dim_irrep(diagram: YoungDiagram) -> int:
    """Dimension of the S_n irrep labeled by the diagram (hook-length formula)."""
    rows = diagram.rows
    n = sum(rows)
    hooks = _hook_product(rows)
    nfact = math.factorial(n)
    q, r = divmod(nfact, hooks)
    if r != 0:
        raise InternalInvariantError(
            f"hook product {hooks} does not divide {n}! for diagram {rows}"
        )
    return q


def multiplicity(diagram: YoungDiagram, d: int) -> int:
    """Multiplicity of the irrep inside (C^d)^(tensor n): semistandard tableau count."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    rows = diagram.rows
    if len(rows) > d:
        return 0
    content = _content_product(rows, d)
    hooks = _hook_product(rows)
    q, r = divmod(content, hooks)
    if r != 0:
        raise InternalInvariantError(
            f"hook product {hooks} does not divide content product {content} "
            f"for diagram {rows}, d={d}"
        )
    return q


def dim_mult_ratio(diagram: YoungDiagram, d: int) -> Fraction:
    """The exact ratio dim/multiplicity = n! / prod(d - i + j) over cells."""
    rows = diagram.rows
    if len(rows) > d:
        raise ValueError(
            f"ratio undefined: diagram with {len(rows)} rows has zero multiplicity at d={d}"
        )
    n = sum(rows)
    return Fraction(math.factorial(n), _content_product(rows, d))


def log_dim_irrep(rows: Sequence[int]) -> float:
    """ln of the irrep dimension, computed as a sum of log hook terms."""
    n = sum(rows)
    conj = _conjugate(rows)
    s = math.lgamma(n + 1)
    for i, r in enumerate(rows):
        for j in range(r):
            s -= math.log(r - j + conj[j] - i - 1)
    return s


def log_multiplicity(rows: Sequence[int], d: int) -> float:
    """ln of the multiplicity at d; -inf when the diagram has more than d rows."""
    if len(rows) > d:
        return float("-inf")
    conj = _conjugate(rows)
    s = 0.0
    for i, r in enumerate(rows):
        for j in range(r):
            s += math.log(d - i + j) - math.log(r - j + conj[j] - i - 1)
    return s


def irrep_stats(diagram: YoungDiagram, d: int) -> IrrepStats:
    """Bundle of exact and log-domain statistics for one diagram at a given d."""
    n = diagram.n
    dim = dim_irrep(diagram)
    mult = multiplicity(diagram, d)
    return IrrepStats(
        diagram=diagram,
        dim_irrep=dim,
        multiplicity=mult,
        log_dim=log_dim_irrep(diagram.rows),
        log_mult=log_multiplicity(diagram.rows, d),
        plancherel=Fraction(dim * dim, math.factorial(n)),
        schur_weyl=Fraction(mult * dim, d**n),
    )


@lru_cache(maxsize=None)
def _character(lam: tuple[int, ...], rho: tuple[int, ...]) -> int:
    """Murnaghan-Nakayama recursion on row tuples."""
    if not lam:
        return 1
    if not rho:
        raise InternalInvariantError("cycle type exhausted before diagram")
    size = rho[0]
    rest = rho[1:]
    total = 0
    nrows = len(lam)
    # border strips of length `size` are indexed by their last (deepest) row
    for start in range(nrows):
        # greedily peel a border strip beginning in row `start`
        strip = [0] * nrows
        remaining = size
        row = start
        while remaining > 0 and row < nrows:
            if row + 1 < nrows:
                avail = lam[row] - lam[row + 1] + 1
            else:
                avail = lam[row]
            take = min(avail, remaining)
            strip[row] = take
            remaining -= take
            row += 1
        if remaining > 0:
            continue
        new_rows = [lam[i] - strip[i] for i in range(nrows)]
        # the strip must leave a valid (weakly decreasing, nonnegative) shape
        ok = all(
            new_rows[i] >= (new_rows[i + 1] if i + 1 < nrows else 0)
            for i in range(nrows)
        ) and all(r >= 0 for r in new_rows)
        if not ok:
            continue
        height = sum(1 for s in strip if s > 0) - 1
        sign = -1 if height % 2 else 1
        new_lam = tuple(r for r in new_rows if r > 0)
        total += sign * _character(new_lam, rest)
    return total


def character(diagram: YoungDiagram, cycle_type: YoungDiagram) -> int:
    """Irreducible character chi_diagram(cycle_type) via the Murnaghan-Nakayama rule."""
    n = diagram.n
    if cycle_type.n != n:
        raise ValueError(
            f"diagram of {n} boxes but cycle type of {cycle_type.n}; sizes must match"
        )
    if n > CHARACTER_SIZE_CAP:
        raise CapacityError(
            f"character computation capped at n <= {CHARACTER_SIZE_CAP}, got {n}"
        )
    return _character(diagram.rows, cycle_type.rows)


def rsk_shape(word: Sequence[int]) -> YoungDiagram:
    """Shape of the insertion tableau of the word under RSK row insertion."""
    if len(word) == 0:
        raise ValueError("rsk_shape requires a non-empty word")
    tableau_rows: list[list[int]] = []
    for x in word:
        for row in tableau_rows:
            pos = bisect_right(row, x)
            if pos == len(row):
                row.append(x)
                break
            x, row[pos] = row[pos], x
        else:
            tableau_rows.append([x])
    return YoungDiagram(tuple(len(row) for row in tableau_rows))


def sample_plancherel(n: int, rng_seed: int) -> YoungDiagram:
    """One Plancherel-distributed diagram: RSK shape of a uniform permutation."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = random.Random(rng_seed)
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return rsk_shape(perm)


def sample_schur_weyl(n: int, d: int, rng_seed: int) -> YoungDiagram:
    """One Schur-Weyl-distributed diagram: RSK shape of a uniform word in {1..d}^n."""
    if n < 1 or d < 1:
        raise ValueError(f"n and d must be >= 1, got n={n}, d={d}")
    rng = random.Random(rng_seed)
    word = [rng.randint(1, d) for _ in range(n)]
    return rsk_shape(word)
