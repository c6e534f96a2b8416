"""Dense linear-algebra cross-check path for entangling power.

Everything here works on explicit d^2 x d^2 matrices and 4-qudit state
vectors, independently of the combinatorial rectangle formula, so the two
routes can validate each other.  A unitary U on the bipartite space maps
to the 4-party state with amplitudes

    <k i l m | U> = (1/d) <k l| U |i m>      (parties ordered 1,2,3,4),

and the entangling power is

    eps(U) = d/(d+1) * [S_L(|U>) + S_L(|US>) - 1]

with S_L the linear entropy across the 12|34 cut.  Dense paths are capped
at d <= 12 (d^4 amplitudes); they validate, they are not the production
route.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    InsufficientSamples,
    NotUnitary,
    ParameterOrderViolation,
    UnnormalizedState,
)
from .perm_core import BiPerm

COMPARISON_TOL = 1e-10  # value comparisons (formula vs oracle, entropies)
STRUCTURE_TOL = 1e-12   # structural checks (unitarity, norms, hermiticity)

ORACLE_MAX_D = 12

_CUT_NAMES = {
    "12|34": (0, 1),
    "13|24": (0, 2),
    "14|23": (0, 3),
    "1|234": (0,),
    "2|134": (1,),
    "3|124": (2,),
    "4|123": (3,),
}


class Unitary:
    """A unitary on the d x d bipartite space, stored as a dense matrix."""

    __slots__ = ("d", "matrix")

    def __init__(self, d: int, matrix: np.ndarray):
        if d > ORACLE_MAX_D:
            raise BudgetExceeded(f"dense oracle capped at d <= {ORACLE_MAX_D}")
        matrix = np.asarray(matrix, dtype=complex)
        n = d * d
        if matrix.shape != (n, n):
            raise NotUnitary(f"shape {matrix.shape}, expected ({n}, {n})")
        dev = np.max(np.abs(matrix.conj().T @ matrix - np.eye(n)))
        if dev > STRUCTURE_TOL:
            raise NotUnitary(f"U^dag U deviates from identity by {dev:.2e}")
        self.d = d
        self.matrix = matrix.copy()
        self.matrix.setflags(write=False)


class PureState:
    """State vector over listed local dimensions, unit norm enforced."""

    __slots__ = ("parts", "amplitudes")

    def __init__(self, parts: Sequence[int], amplitudes: np.ndarray):
        parts = tuple(int(p) for p in parts)
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if amplitudes.size != int(np.prod(parts)):
            raise UnnormalizedState(
                f"{amplitudes.size} amplitudes for parts {parts}"
            )
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > STRUCTURE_TOL:
            raise UnnormalizedState(f"norm {norm} deviates from 1")
        self.parts = parts
        self.amplitudes = amplitudes.copy()
        self.amplitudes.setflags(write=False)


class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix."""

    __slots__ = ("dim", "entries")

    def __init__(self, entries: np.ndarray):
        entries = np.asarray(entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError("density matrix must be square")
        if np.max(np.abs(entries - entries.conj().T)) > STRUCTURE_TOL:
            raise ValueError("not Hermitian within tolerance")
        if abs(np.trace(entries).real - 1.0) > STRUCTURE_TOL:
            raise ValueError("trace deviates from 1")
        if np.linalg.eigvalsh(entries).min() < -1e-10:
            raise ValueError("negative eigenvalue beyond tolerance")
        self.dim = entries.shape[0]
        self.entries = entries.copy()
        self.entries.setflags(write=False)

    def purity(self) -> float:
        return float(np.sum(np.abs(self.entries) ** 2).real)


def unitary_of(perm: BiPerm) -> Unitary:
    """Permutation matrix of a grid permutation (column = input cell)."""
    d = perm.d
    n = d * d
    m = np.zeros((n, n))
    for i in range(d):
        for j in range(d):
            m[(perm.k[i][j] - 1) * d + (perm.l[i][j] - 1), i * d + j] = 1.0
    return Unitary(d, m)


def swap_unitary(d: int) -> Unitary:
    """The factor-exchange matrix |ij> -> |ji>."""
    n = d * d
    m = np.zeros((n, n))
    for i in range(d):
        for j in range(d):
            m[j * d + i, i * d + j] = 1.0
    return Unitary(d, m)


def state_of_unitary(u: Unitary) -> PureState:
    """4-party state of an operator: amp(k,i,l,m) = <kl|U|im> / d."""
    d = u.d
    amp = u.matrix.reshape(d, d, d, d).transpose(0, 2, 1, 3) / d
    return PureState((d, d, d, d), amp.reshape(-1))


def partial_trace(psi: PureState, keep: Sequence[int]) -> DensityMatrix:
    """Reduced density matrix on the 1-based subsystems in `keep`."""
    keep0 = [k - 1 for k in keep]
    nparts = len(psi.parts)
    rest = [a for a in range(nparts) if a not in keep0]
    tensor = psi.amplitudes.reshape(psi.parts)
    mat = tensor.transpose(*keep0, *rest).reshape(
        int(np.prod([psi.parts[a] for a in keep0])), -1
    )
    return DensityMatrix(mat @ mat.conj().T)


def linear_entropy(psi: PureState, cut: Sequence[int]) -> float:
    """Linear entropy across the bipartition (`cut` | complement).

    Normalized by D/(D-1) with D the smaller side's dimension: 0 for
    product states, 1 for maximally entangled ones.
    """
    norm = float(np.linalg.norm(psi.amplitudes))
    if abs(norm - 1.0) > STRUCTURE_TOL:
        raise UnnormalizedState(f"norm {norm} deviates from 1")
    keep0 = [c - 1 for c in cut]
    nparts = len(psi.parts)
    rest = [a for a in range(nparts) if a not in keep0]
    tensor = psi.amplitudes.reshape(psi.parts)
    mat = tensor.transpose(*keep0, *rest).reshape(
        int(np.prod([psi.parts[a] for a in keep0])), -1
    )
    gram = mat @ mat.conj().T
    purity = float(np.sum(np.abs(gram) ** 2).real)
    dim = min(mat.shape)
    return dim / (dim - 1) * (1.0 - purity)


def oracle_power(u: Unitary) -> float:
    """Entangling power from the two state entropies (dense route)."""
    d = u.d
    s_u = linear_entropy(state_of_unitary(u), (1, 2))
    us = Unitary(d, u.matrix @ swap_unitary(d).matrix)
    s_us = linear_entropy(state_of_unitary(us), (1, 2))
    return d / (d + 1) * (s_u + s_us - 1.0)


def split_entropies(u: Unitary) -> dict[str, float]:
    """Linear entropy of |U> across all seven bipartitions of the 4 parties."""
    psi = state_of_unitary(u)
    return {
        name: linear_entropy(psi, tuple(a + 1 for a in axes))
        for name, axes in _CUT_NAMES.items()
    }


def mc_power(
    u: Unitary,
    samples: int,
    seed: int,
    chunk: int = 20_000,
) -> tuple[float, float]:
    """Monte Carlo estimate of the entangling power from its definition.

    Draws Haar-uniform product inputs (normalized complex Gaussians on
    each factor), applies U, and averages the linear entropy across the
    two factors.  Returns (mean, standard error); deterministic per seed.
    """
    if samples < 2:
        raise InsufficientSamples("need at least 2 samples for a standard error")
    d = u.d
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        b = min(chunk, samples - done)
        psi1 = rng.standard_normal((b, d)) + 1j * rng.standard_normal((b, d))
        psi2 = rng.standard_normal((b, d)) + 1j * rng.standard_normal((b, d))
        psi1 /= np.linalg.norm(psi1, axis=1, keepdims=True)
        psi2 /= np.linalg.norm(psi2, axis=1, keepdims=True)
        prod = np.einsum("bi,bj->bij", psi1, psi2).reshape(b, d * d)
        out = (prod @ u.matrix.T).reshape(b, d, d)
        gram = np.einsum("bim,bjm->bij", out, out.conj())
        purity = np.sum(np.abs(gram) ** 2, axis=(1, 2)).real
        ent = d / (d - 1) * (1.0 - purity)
        total += float(ent.sum())
        total_sq += float((ent**2).sum())
        done += b
    mean = total / samples
    var = max(0.0, (total_sq - total * total / samples) / (samples - 1))
    return mean, float(np.sqrt(var / samples))


def rezakhani_power(c1: float, c2: float, c3: float) -> float:
    """Two-qubit entangling power from the canonical interaction angles.

    Valid on the canonical chamber |c3| <= c2 <= c1 <= pi/4:
    1/3 - (1/9) [cos4c1 cos4c2 + cos4c1 cos4c3 + cos4c2 cos4c3].
    """
    if not (abs(c3) <= c2 + 1e-15 and c2 <= c1 + 1e-15 and c1 <= np.pi / 4 + 1e-15):
        raise ParameterOrderViolation(
            f"need |c3| <= c2 <= c1 <= pi/4, got ({c1}, {c2}, {c3})"
        )
    f1, f2, f3 = np.cos(4 * c1), np.cos(4 * c2), np.cos(4 * c3)
    return 1.0 / 3.0 - (f1 * f2 + f1 * f3 + f2 * f3) / 9.0
