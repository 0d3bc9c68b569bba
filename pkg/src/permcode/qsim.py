"""Dense-matrix verification of the covariant-POVM machinery at small N and d:
permutation operators on (C^d)^(tensor N), the three-box two-color example,
POVM symmetrization, pretty-good-measurement success probabilities, matrix
orthogonality relations, and a classical-channel Monte Carlo.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .coding import balanced_color_classes
from .young import CapacityError, YoungDiagram, character, dim_irrep, enumerate_partitions, multiplicity

DIMENSION_CAP = 4096  # largest d**n for dense operators
PGM_GROUP_CAP = 5040  # largest n! for Gram-matrix work

PSD_CLIP = 1e-12
COMPLETENESS_TOL = 1e-10
COVARIANCE_TOL = 1e-12

Perm = tuple[int, ...]


def all_perms(n: int) -> list[Perm]:
    """All permutations of {0..n-1} in a fixed (lexicographic) order."""
    return list(itertools.permutations(range(n)))

def compose(p: Perm, q: Perm) -> Perm:
    """(p o q)(i) = p(q(i)): apply q first."""
    return tuple(p[q[i]] for i in range(len(p)))

def invert(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi] = i
    return tuple(inv)

def cycle_type(p: Perm) -> YoungDiagram:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        lengths.append(length)
    return YoungDiagram(tuple(sorted(lengths, reverse=True)))


@dataclass
class PermutationOperator:
    perm: Perm
    n: int
    d: int
    matrix: np.ndarray


@dataclass
class SignalState:
    """A (sub)normalized vector on the d^n-dimensional tensor space."""

    amplitudes: np.ndarray
    n: int
    d: int

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass
class CovariantPovm:
    """POVM generated from a seed operator by conjugation with all Gamma(sigma),
    plus a completion operator on the subspace the elements do not span."""

    seed_operator: np.ndarray
    completion: np.ndarray
    n: int
    d: int

    @property
    def group_order(self) -> int:
        return math.factorial(self.n)

    def element(self, perm: Perm) -> np.ndarray:
        g = build_gamma(perm, self.n, self.d).matrix
        return g @ self.seed_operator @ g.conj().T

    def elements(self) -> dict[Perm, np.ndarray]:
        return {p: self.element(p) for p in all_perms(self.n)}


def _basis_index(digits: tuple[int, ...], d: int) -> int:
    idx = 0
    for x in digits:
        idx = idx * d + x
    return idx


@lru_cache(maxsize=1024)
def build_gamma(perm: Perm, n: int, d: int) -> PermutationOperator:
    """The unitary permuting the n tensor factors: the state of box i moves to
    box perm(i), so Gamma(p)Gamma(q) = Gamma(p o q)."""
    dim = d**n
    if dim > DIMENSION_CAP:
        raise CapacityError(f"d^n = {dim} exceeds the dense-operator cap {DIMENSION_CAP}")
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {perm}")
    mat = np.zeros((dim, dim))
    for digits in itertools.product(range(d), repeat=n):
        out = [0] * n
        for i, x in enumerate(digits):
            out[perm[i]] = x
        mat[_basis_index(tuple(out), d), _basis_index(digits, d)] = 1.0
    return PermutationOperator(perm=perm, n=n, d=d, matrix=mat)


def _ket(bits: str) -> np.ndarray:
    """Computational basis vector of (C^2)^(tensor len(bits)); '0' is up."""
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def n3_irrep_basis() -> dict[str, np.ndarray]:
    """Orthonormal basis of (C^2)^(tensor 3) adapted to the S_3 action: four
    symmetric one-dimensional spans plus two aligned two-dimensional copies.

    The second copy's basis is the spin-flip of the first's; since the global
    spin flip commutes with every Gamma(sigma), the two copies automatically
    carry identical matrix elements.
    """
    w = np.exp(2j * np.pi / 3)
    s3 = 1 / np.sqrt(3)
    basis = {
        "sym0": _ket("000"),
        "sym1": s3 * (_ket("001") + _ket("010") + _ket("100")),
        "sym2": s3 * (_ket("011") + _ket("101") + _ket("110")),
        "sym3": _ket("111"),
        # first two-dimensional copy
        "1,1": s3 * (_ket("011") + w * _ket("101") + np.conj(w) * _ket("110")),
        "1,2": s3 * (_ket("011") + np.conj(w) * _ket("101") + w * _ket("110")),
        # second copy: all spins flipped
        "2,1": s3 * (_ket("100") + w * _ket("010") + np.conj(w) * _ket("001")),
        "2,2": s3 * (_ket("100") + np.conj(w) * _ket("010") + w * _ket("001")),
    }
    return basis


def build_n3_example() -> tuple[SignalState, CovariantPovm]:
    """The three-box, two-color example: signal state with equal overlap 1/5
    under every non-identity permutation, and the covariant POVM built from it."""
    b = n3_irrep_basis()
    psi = np.sqrt(1 / 5) * b["sym0"] + np.sqrt(2 / 5) * b["1,1"] + np.sqrt(2 / 5) * b["2,2"]
    signal = SignalState(amplitudes=psi, n=3, d=2)
    # dim W = 5: one symmetric copy plus both two-dimensional copies
    seed = (5 / 6) * np.outer(psi, psi.conj())
    povm = _complete_covariant(seed, n=3, d=2)
    return signal, povm


def _complete_covariant(seed: np.ndarray, n: int, d: int) -> CovariantPovm:
    total = sum(
        build_gamma(p, n, d).matrix @ seed @ build_gamma(p, n, d).matrix.conj().T
        for p in all_perms(n)
    )
    completion = np.eye(d**n) - total
    # completion must be a PSD projector-like remainder; validate completeness
    evals = np.linalg.eigvalsh((completion + completion.conj().T) / 2)
    if evals.min() < -COMPLETENESS_TOL:
        raise InternalQsimError(
            f"covariant completion not PSD: min eigenvalue {evals.min():.3e}"
        )
    resid = np.abs(total + completion - np.eye(d**n)).max()
    if resid > COMPLETENESS_TOL:
        raise InternalQsimError(f"completeness residual {resid:.3e}")
    return CovariantPovm(seed_operator=seed, completion=completion, n=n, d=d)


class InternalQsimError(AssertionError):
    """A constructed object violated a constraint that signals a convention bug."""


def symmetrize_elements(
    raw_elements: dict[Perm, np.ndarray], n: int, d: int
) -> dict[Perm, np.ndarray]:
    """Group-averaged measurement operators, one per outcome:
    E'_t = (1/n!) sum over s of Gamma(s)^dagger E_{s o t} Gamma(s)."""
    perms = all_perms(n)
    nfact = math.factorial(n)
    out = {}
    for t in perms:
        acc = np.zeros_like(next(iter(raw_elements.values())), dtype=complex)
        for s in perms:
            g = build_gamma(s, n, d).matrix
            acc += g.conj().T @ raw_elements[compose(s, t)] @ g
        out[t] = acc / nfact
    return out


def symmetrize_povm(raw_elements: dict[Perm, np.ndarray], n: int, d: int) -> CovariantPovm:
    """Group-average a POVM indexed by permutations into a covariant one.

    The averaged POVM gives the same success probability on the covariant
    ensemble and satisfies element(p) = Gamma(p) seed Gamma(p)^dagger.
    """
    dim = d**n
    perms = all_perms(n)
    if set(raw_elements) != set(perms):
        raise ValueError("raw POVM must have exactly one element per permutation")
    total = sum(raw_elements.values())
    if np.abs(total - np.eye(dim)).max() > COMPLETENESS_TOL:
        raise ValueError("raw POVM elements do not sum to the identity")
    for p, e in raw_elements.items():
        if np.linalg.eigvalsh((e + e.conj().T) / 2).min() < -1e-9:
            raise ValueError(f"raw POVM element for {p} is not PSD")
    nfact = math.factorial(n)
    seed = np.zeros((dim, dim), dtype=complex)
    for p in perms:
        g = build_gamma(p, n, d).matrix
        seed += g.conj().T @ raw_elements[p] @ g
    seed /= nfact
    return _complete_covariant(seed, n, d)


def success_probability(signal: SignalState, povm: CovariantPovm) -> float:
    """Average probability of identifying a uniformly random permutation:
    (1/n!) sum over sigma of <psi| Gamma(sigma)^dagger E_sigma Gamma(sigma) |psi>."""
    if signal.n != povm.n or signal.d != povm.d:
        raise ValueError("signal and POVM dimensions do not match")
    psi = signal.amplitudes
    total = 0.0 + 0.0j
    for p in all_perms(signal.n):
        g = build_gamma(p, signal.n, signal.d).matrix
        gpsi = g @ psi
        total += gpsi.conj() @ povm.element(p) @ gpsi
    total /= math.factorial(signal.n)
    if abs(total.imag) > 1e-12:
        raise InternalQsimError(f"success probability has imaginary part {total.imag:.3e}")
    return float(total.real)


def pgm_success(signal: SignalState, n: int, d: int) -> float:
    """Pretty-good-measurement success probability on the equal-prior ensemble
    {Gamma(sigma)|psi>}, from the Gram matrix: (1/n!) sum of squared diagonal
    entries of its PSD square root."""
    nfact = math.factorial(n)
    if nfact > PGM_GROUP_CAP:
        raise CapacityError(f"n! = {nfact} exceeds the Gram-matrix cap {PGM_GROUP_CAP}")
    psi = signal.amplitudes
    perms = all_perms(n)
    states = np.stack([build_gamma(p, n, d).matrix @ psi for p in perms])
    gram = states.conj() @ states.T
    herm_resid = np.abs(gram - gram.conj().T).max()
    if herm_resid > 1e-10:
        raise InternalQsimError(f"Gram matrix not Hermitian: residual {herm_resid:.3e}")
    evals, evecs = np.linalg.eigh((gram + gram.conj().T) / 2)
    if evals.min() < -1e-10:
        raise InternalQsimError(f"Gram matrix not PSD: min eigenvalue {evals.min():.3e}")
    clipped = np.where(evals < PSD_CLIP, 0.0, evals)
    sqrt_gram = (evecs * np.sqrt(clipped)) @ evecs.conj().T
    diag = np.real(np.diag(sqrt_gram))
    return float(np.sum(diag**2) / nfact)


def _isotypic_projector(diagram: YoungDiagram, n: int, d: int) -> np.ndarray:
    dim = dim_irrep(diagram)
    nfact = math.factorial(n)
    proj = np.zeros((d**n, d**n))
    for p in all_perms(n):
        proj += character(diagram, cycle_type(p)) * build_gamma(p, n, d).matrix
    return (dim / nfact) * proj


def build_optimal_signal(n: int, d: int, rng_seed: int = 7) -> SignalState:
    """Numerically construct a signal state achieving the optimal covariant-POVM
    success probability (sum of min(m, D) * D over N!).

    Within each isotypic component, aligned copies are extracted from the
    eigenspaces of a generic Hermitian element of the group algebra; the state
    puts weight sqrt(D/n!) on basis vectors with pairwise distinct internal
    indices across copies, as the completeness constraint requires.
    """
    dim_v = d**n
    if dim_v > 1024 or n > 6:
        raise CapacityError(f"optimal-state construction capped at d^n <= 1024, n <= 6")
    rng = np.random.default_rng(rng_seed)
    perms = all_perms(n)
    gammas = {p: build_gamma(p, n, d).matrix for p in perms}
    # generic Hermitian elements of the group algebra (act as M_D x Id_m)
    coeffs_a = rng.normal(size=len(perms))
    coeffs_b = rng.normal(size=len(perms)) + 1j * rng.normal(size=len(perms))
    alg_a = sum(c * gammas[p] for c, p in zip(coeffs_a, perms))
    alg_a = alg_a + alg_a.conj().T
    alg_b = sum(c * gammas[p] for c, p in zip(coeffs_b, perms))
    nfact = math.factorial(n)
    phi = np.zeros(dim_v, dtype=complex)
    for diagram in enumerate_partitions(n):
        dim_rho = dim_irrep(diagram)
        mult_rho = multiplicity(diagram, d)
        if mult_rho == 0:
            continue
        proj = _isotypic_projector(diagram, n, d)
        evals, evecs = np.linalg.eigh(proj)
        iso = evecs[:, evals > 0.5]  # columns: orthonormal basis of the component
        assert iso.shape[1] == dim_rho * mult_rho
        a_block = iso.conj().T @ alg_a @ iso
        a_evals, a_evecs = np.linalg.eigh(a_block)
        # eigenvalues come in dim_rho clusters of size mult_rho each
        clusters = [a_evecs[:, i * mult_rho : (i + 1) * mult_rho] for i in range(dim_rho)]
        spread = max(
            a_evals[i * mult_rho + mult_rho - 1] - a_evals[i * mult_rho]
            for i in range(dim_rho)
        )
        if spread > 1e-8:
            raise InternalQsimError(f"eigenvalue clusters not degenerate: spread {spread:.3e}")
        b_block = iso.conj().T @ alg_b @ iso
        k = min(mult_rho, dim_rho)
        # copy b occupies internal index a = b; map cluster 0 into cluster a
        for b_idx in range(k):
            src = clusters[0][:, b_idx]
            if b_idx == 0:
                vec = src
            else:
                vec = clusters[b_idx].conj().T @ b_block @ src
                vec = clusters[b_idx] @ vec
                vec = vec / np.linalg.norm(vec)
            phi += math.sqrt(dim_rho / nfact) * (iso @ vec)
    return SignalState(amplitudes=phi / np.linalg.norm(phi), n=n, d=d)


def orthogonality_check_n3() -> dict:
    """Verify the matrix-element orthogonality relations on the adapted basis
    for n=3, d=2, and the squared norms D/n! of the optimal state's projections
    onto the two equivalent two-dimensional copies."""
    basis = n3_irrep_basis()
    perms = all_perms(3)
    copies = {
        ("triv", 0): ["sym0"],
        ("triv", 1): ["sym1"],
        ("triv", 2): ["sym2"],
        ("triv", 3): ["sym3"],
        ("std", 0): ["1,1", "1,2"],
        ("std", 1): ["2,1", "2,2"],
    }
    mats: dict[tuple, dict[Perm, np.ndarray]] = {}
    for key, names in copies.items():
        block = np.stack([basis[nm] for nm in names]).T  # columns
        mats[key] = {
            p: block.conj().T @ build_gamma(p, 3, 2).matrix @ block for p in perms
        }
    cross_resid = 0.0
    same_resid = 0.0
    aligned_resid = 0.0
    for (rho, b), mb in mats.items():
        for (rho2, b2), mb2 in mats.items():
            dim = len(copies[(rho, b)])
            dim2 = len(copies[(rho2, b2)])
            acc = np.zeros((dim, dim, dim2, dim2), dtype=complex)
            for p in perms:
                acc += np.einsum("ab,cd->abcd", mb[p].conj(), mb2[p])
            if rho != rho2:
                cross_resid = max(cross_resid, np.abs(acc).max())
            else:
                expected = np.einsum(
                    "ca,bd->abcd", np.eye(dim), np.eye(dim)
                ) * (len(perms) / dim)
                same_resid = max(same_resid, np.abs(acc - expected).max())
    # basis alignment: equivalent copies must carry identical matrix elements
    for p in perms:
        aligned_resid = max(
            aligned_resid, np.abs(mats[("std", 0)][p] - mats[("std", 1)][p]).max()
        )
    signal, _ = build_n3_example()
    phi = math.sqrt(5 / 6) * signal.amplitudes
    proj_norms = {}
    for b_idx in (0, 1):
        block = np.stack([basis[nm] for nm in copies[("std", b_idx)]]).T
        comp = block.conj().T @ phi
        proj_norms[b_idx] = float(np.real(comp.conj() @ comp))
    tol = 1e-12
    return {
        "cross_irrep_residual": float(cross_resid),
        "same_irrep_residual": float(same_resid),
        "alignment_residual": float(aligned_resid),
        "basis_adjusted": False,
        "phi_projection_sq_norms": proj_norms,
        "phi_projection_target": 2 / 6,
        "tolerance": tol,
        "pass": bool(
            cross_resid <= tol
            and same_resid <= tol
            and aligned_resid <= tol
            and all(abs(v - 2 / 6) <= tol for v in proj_norms.values())
        ),
    }


def classical_channel_mc(n: int, d: int, trials: int, seed: int) -> tuple[float, float]:
    """Simulate the classical protocol: balanced coloring, uniformly random
    channel permutation, and a decoder guessing uniformly among the
    permutations consistent with the received coloring."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = random.Random(seed)
    sizes = balanced_color_classes(n, d)
    coloring = []
    classes = []
    pos = 0
    for c, s in enumerate(sizes):
        coloring.extend([c] * s)
        classes.append(list(range(pos, pos + s)))
        pos += s
    wins = 0
    boxes = list(range(n))
    for _ in range(trials):
        sigma = boxes[:]
        rng.shuffle(sigma)
        # Bob's guess: sigma composed with a uniform coloring-preserving map
        correct = True
        for cls in classes:
            shuffled = cls[:]
            rng.shuffle(shuffled)
            if shuffled != cls:
                correct = False
        wins += correct
    p_hat = wins / trials
    stderr = math.sqrt(max(p_hat * (1 - p_hat), 0.0) / trials)
    return p_hat, stderr
