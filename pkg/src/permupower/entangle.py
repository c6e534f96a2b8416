"""Exact entangling power of grid permutations.

The central quantity is the rectangle count

    Q_P = sum_{i,j,m,n} a_ijm a_ijn b_imn b_jmn,
    a_ijm = [l_im == l_jm],   b_imn = [k_im == k_in],

the number of (ordered, possibly degenerate) rectangles in the grid that P
maps to rectangles with unchanged orientation.  The entangling power is
then the exact rational

    eps(P) = (d^4 + d^2 - Q_P - Q_PS) / (d (d-1) (d+1)^2),

where PS is P composed with the factor exchange.  Q values are integers
with d^2 <= Q <= d^4 and Q == d^2 (mod 2), so eps is carried as a
`fractions.Fraction` and never touches floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateDimension, DimensionTooLarge, IndexOutOfRange
from .perm_core import BiPerm, compose_with_swap

# Largest d with d^4 < 2^31: the vectorized path accumulates rectangle
# counts in int32.
MAX_DIMENSION = 215


def _check_dimension(d: int) -> None:
    if d > MAX_DIMENSION:
        raise DimensionTooLarge(f"d = {d} exceeds the supported cap {MAX_DIMENSION}")


def q_of(perm: BiPerm) -> int:
    """Preserved-rectangle count Q_P, via an O(d^3) regrouping.

    For each row pair (i, j), columns are grouped by the key
    (k_im, k_jm); within a group, columns m with l_im == l_jm contribute
    pairwise, so the group adds (count)^2.  Summing group squares over all
    row pairs equals the naive quadruple sum.
    """
    _check_dimension(perm.d)
    d, k, l = perm.d, perm.k, perm.l
    q = 0
    for i in range(d):
        ki, li = k[i], l[i]
        for j in range(d):
            kj, lj = k[j], l[j]
            counts: dict[int, int] = {}
            for m in range(d):
                if li[m] == lj[m]:
                    key = ki[m] * (d + 1) + kj[m]
                    counts[key] = counts.get(key, 0) + 1
            q += sum(c * c for c in counts.values())
    return q


def q_of_naive(perm: BiPerm) -> int:
    """Reference O(d^4) evaluation of the quadruple sum."""
    _check_dimension(perm.d)
    d, k, l = perm.d, perm.k, perm.l
    q = 0
    for i in range(d):
        for j in range(d):
            for m in range(d):
                for n in range(d):
                    q += (
                        l[i][m] == l[j][m]
                        and l[i][n] == l[j][n]
                        and k[i][m] == k[i][n]
                        and k[j][m] == k[j][n]
                    )
    return q


def q_batch(k: np.ndarray, l: np.ndarray) -> np.ndarray:
    """Q values for a batch of permutations.

    k, l: integer arrays of shape (B, d, d) holding the two matrices of
    each permutation (any consistent labeling; only equality is used).
    Returns an int64 array of length B.  Memory scales with B * d^5, so
    callers chunk B.
    """
    a = (l[:, :, None, :] == l[:, None, :, :]).astype(np.int32)  # (B,i,j,m)
    b = (k[:, :, :, None] == k[:, :, None, :]).astype(np.int32)  # (B,i,m,n)
    return np.einsum("bijm,bijn,bimn,bjmn->b", a, a, b, b, optimize=True).astype(
        np.int64
    )


def q_totals_batch(flat: np.ndarray, d: int) -> np.ndarray:
    """Q_P + Q_PS for a batch of flat permutations.

    flat: (B, d*d) array of 0-based images, row-major cell order.
    """
    _check_dimension(d)
    nb = flat.shape[0]
    k = (flat // d).reshape(nb, d, d)
    l = (flat % d).reshape(nb, d, d)
    return q_batch(k, l) + q_batch(k.transpose(0, 2, 1), l.transpose(0, 2, 1))


def epsilon_from_q(d: int, q_p: int, q_ps: int) -> Fraction:
    """Entangling power from the two rectangle counts."""
    if d < 2:
        raise DegenerateDimension("entangling power needs d >= 2")
    return Fraction(d**4 + d**2 - q_p - q_ps, d * (d - 1) * (d + 1) ** 2)


@dataclass(frozen=True)
class PowerReport:
    """Entangling power of one permutation, with its rectangle counts."""

    d: int
    q_p: int
    q_ps: int
    epsilon: Fraction

    def __post_init__(self):
        d = self.d
        for q in (self.q_p, self.q_ps):
            if not d * d <= q <= d**4:
                raise ValueError(f"q = {q} outside [d^2, d^4] = [{d * d}, {d**4}]")
            if q % 2 != (d * d) % 2:
                raise ValueError(f"q = {q} has wrong parity for d = {d}")
        if self.epsilon != epsilon_from_q(d, self.q_p, self.q_ps):
            raise ValueError("epsilon inconsistent with q_p, q_ps")
        if not 0 <= self.epsilon <= Fraction(d, d + 1):
            raise ValueError(f"epsilon {self.epsilon} outside [0, d/(d+1)]")

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "q_p": self.q_p,
            "q_ps": self.q_ps,
            "epsilon": {
                "num": self.epsilon.numerator,
                "den": self.epsilon.denominator,
            },
            "epsilon_float": float(self.epsilon),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def entangling_power(perm: BiPerm) -> PowerReport:
    """Exact entangling power of a grid permutation."""
    if perm.d < 2:
        raise DegenerateDimension("entangling power needs d >= 2")
    q_p = q_of(perm)
    q_ps = q_of(compose_with_swap(perm))
    return PowerReport(perm.d, q_p, q_ps, epsilon_from_q(perm.d, q_p, q_ps))


@dataclass(frozen=True)
class RectangleFlags:
    """Agreement bits for the rectangle spanned by rows i,j and columns m,n."""

    i: int
    j: int
    m: int
    n: int
    a_ijm: int
    a_ijn: int
    b_imn: int
    b_jmn: int
    r_ijmn: int


def rectangle_flags(perm: BiPerm, i: int, j: int, m: int, n: int) -> RectangleFlags:
    """Evaluate the four agreement bits and their product for one rectangle."""
    d = perm.d
    for name, v in (("i", i), ("j", j), ("m", m), ("n", n)):
        if not 1 <= v <= d:
            raise IndexOutOfRange(f"{name} = {v} outside [1, {d}]")
    k, l = perm.k, perm.l
    a_ijm = int(l[i - 1][m - 1] == l[j - 1][m - 1])
    a_ijn = int(l[i - 1][n - 1] == l[j - 1][n - 1])
    b_imn = int(k[i - 1][m - 1] == k[i - 1][n - 1])
    b_jmn = int(k[j - 1][m - 1] == k[j - 1][n - 1])
    return RectangleFlags(
        i, j, m, n, a_ijm, a_ijn, b_imn, b_jmn, a_ijm * a_ijn * b_imn * b_jmn
    )


@dataclass(frozen=True)
class BlockConditions:
    """The four block-structure conditions on the d^2 x d^2 matrix of P.

    Viewing the matrix as d x d blocks of size d x d:
      one_per_block    every block has exactly one nonzero entry;
      blocks_distinct  no two blocks are equal as 0/1 matrices;
      row_subcolumns   nonzeros in a block-row occupy distinct sub-columns;
      col_subrows      nonzeros in a block-column occupy distinct sub-rows.

    All four hold exactly when the entangling power reaches d/(d+1).
    """

    one_per_block: bool
    blocks_distinct: bool
    row_subcolumns: bool
    col_subrows: bool

    def all(self) -> bool:
        return (
            self.one_per_block
            and self.blocks_distinct
            and self.row_subcolumns
            and self.col_subrows
        )


def check_block_conditions(perm: BiPerm) -> BlockConditions:
    """Evaluate the four block conditions without forming the big matrix.

    Input cell (i, j) contributes a 1 at matrix position (row (k_ij, l_ij),
    column (i, j)); block indices are (k_ij, i), in-block position
    (l_ij, j).
    """
    d, k, l = perm.d, perm.k, perm.l
    blocks: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i in range(d):
        for j in range(d):
            blocks.setdefault((k[i][j], i), []).append((l[i][j], j))

    one_per_block = len(blocks) == d * d and all(
        len(v) == 1 for v in blocks.values()
    )
    signatures = {key: tuple(sorted(v)) for key, v in blocks.items()}
    blocks_distinct = (
        len(blocks) == d * d and len(set(signatures.values())) == d * d
    )

    row_subcolumns = True
    for kk in range(1, d + 1):
        cols = [pos[1] for (bk, _), v in blocks.items() if bk == kk for pos in v]
        if len(set(cols)) != len(cols):
            row_subcolumns = False
            break
    col_subrows = True
    for ii in range(d):
        rows = [pos[0] for (_, bi), v in blocks.items() if bi == ii for pos in v]
        if len(set(rows)) != len(rows):
            col_subrows = False
            break
    return BlockConditions(one_per_block, blocks_distinct, row_subcolumns, col_subrows)
