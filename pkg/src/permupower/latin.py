"""Latin squares, orthogonal pairs, and the permutations they induce.

Superimposing an orthogonal pair (K, L) of side d gives a grid permutation
(i, j) -> (k_ij, l_ij) whose entangling power is exactly d/(d+1), the
maximum any unitary of that size can reach.  Orthogonal pairs exist for
every side except 2 and 6; side 6 instead gets an explicit embedded
permutation that is optimal among permutations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

from .errors import BudgetExceeded, NotOrthogonal, ParseError, UnsupportedOrder
from .perm_core import BiPerm

# Latin square enumeration is row-by-row backtracking; side 5 already has
# 161280 squares.
ENUMERATION_MAX_SIDE = 5
PAIR_COUNT_MAX_SIDE = 4


class LatinSquare:
    """d x d array over [d] whose rows and columns are all permutations."""

    __slots__ = ("d", "cells")

    def __init__(self, cells: Sequence[Sequence[int]]):
        cells = tuple(tuple(int(v) for v in row) for row in cells)
        if not is_latin(cells):
            raise ValueError("not a Latin square")
        self.d = len(cells)
        self.cells = cells

    @classmethod
    def _trusted(cls, cells: tuple) -> "LatinSquare":
        obj = object.__new__(cls)
        obj.d = len(cells)
        obj.cells = cells
        return obj

    def __eq__(self, other) -> bool:
        return isinstance(other, LatinSquare) and self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def __repr__(self) -> str:
        return f"LatinSquare({[list(r) for r in self.cells]})"


def is_latin(cells: Sequence[Sequence[int]]) -> bool:
    """True when every row and every column is a permutation of [d]."""
    d = len(cells)
    if any(len(row) != d for row in cells):
        return False
    full = frozenset(range(1, d + 1))
    if any(set(row) != full for row in cells):
        return False
    return all({cells[i][j] for i in range(d)} == full for j in range(d))


def are_orthogonal(
    a: LatinSquare | Sequence[Sequence[int]],
    b: LatinSquare | Sequence[Sequence[int]],
) -> bool:
    """True when superimposing yields all d^2 ordered pairs exactly once."""
    ca = a.cells if isinstance(a, LatinSquare) else a
    cb = b.cells if isinstance(b, LatinSquare) else b
    d = len(ca)
    if len(cb) != d:
        return False
    pairs = {(ca[i][j], cb[i][j]) for i in range(d) for j in range(d)}
    return len(pairs) == d * d


@dataclass(frozen=True)
class OrthogonalPair:
    """A validated orthogonal pair of Latin squares of the same side."""

    first: LatinSquare
    second: LatinSquare

    def __post_init__(self):
        if self.first.d != self.second.d:
            raise NotOrthogonal("sides differ")
        if not are_orthogonal(self.first, self.second):
            raise NotOrthogonal(
                f"superimposed cells repeat; squares of side {self.first.d} "
                "are not orthogonal"
            )

    @property
    def d(self) -> int:
        return self.first.d


def superimpose(
    pair: OrthogonalPair | tuple[LatinSquare, LatinSquare],
) -> BiPerm:
    """Grid permutation (i, j) -> (first_ij, second_ij) of an orthogonal pair."""
    if not isinstance(pair, OrthogonalPair):
        pair = OrthogonalPair(*pair)
    return BiPerm._trusted(pair.d, pair.first.cells, pair.second.cells)


# --- constructions -----------------------------------------------------------

# Irreducible polynomials over GF(p), low-order coefficients first, one per
# prime power order up to 16.
_IRREDUCIBLE = {
    4: (2, (1, 1, 1)),        # x^2 + x + 1 over GF(2)
    8: (2, (1, 1, 0, 1)),     # x^3 + x + 1
    9: (3, (1, 0, 1)),        # x^2 + 1 over GF(3)
    16: (2, (1, 1, 0, 0, 1)), # x^4 + x + 1
}


def _gf_tables(q: int) -> tuple[list[list[int]], list[list[int]]]:
    """Addition and multiplication tables for GF(q), elements 0..q-1.

    Elements are base-p digit strings of polynomial coefficients; products
    are reduced modulo the shipped irreducible polynomial.
    """
    p, poly = _IRREDUCIBLE[q]
    k = len(poly) - 1

    def digits(a: int) -> list[int]:
        return [(a // p**i) % p for i in range(k)]

    def undigits(ds: Sequence[int]) -> int:
        return sum(int(c) % p * p**i for i, c in enumerate(ds))

    add = [
        [undigits([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q)]
        for a in range(q)
    ]
    mul = [[0] * q for _ in range(q)]
    for a in range(q):
        for b in range(q):
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(digits(a)):
                for j, y in enumerate(digits(b)):
                    prod[i + j] = (prod[i + j] + x * y) % p
            for top in range(2 * k - 2, k - 1, -1):
                c = prod[top]
                if c:
                    prod[top] = 0
                    for i in range(k):
                        prod[top - k + i] = (prod[top - k + i] - c * poly[i]) % p
            mul[a][b] = undigits(prod[:k])
    return add, mul


def _cyclic_pair(d: int) -> tuple[LatinSquare, LatinSquare]:
    """Odd d: rows i+j and i+2j modulo d (0-based), shifted to [d]."""
    a = tuple(tuple((i + j) % d + 1 for j in range(d)) for i in range(d))
    b = tuple(tuple((i + 2 * j) % d + 1 for j in range(d)) for i in range(d))
    return LatinSquare._trusted(a), LatinSquare._trusted(b)


def _field_pair(q: int) -> tuple[LatinSquare, LatinSquare]:
    """Prime power q: rows a*i + j over GF(q) with multipliers a = 1, 2."""
    add, mul = _gf_tables(q)
    # any two distinct nonzero multipliers give an orthogonal pair
    m1, m2 = 1, 2

    def square(m: int) -> LatinSquare:
        cells = tuple(
            tuple(add[mul[m][i]][j] + 1 for j in range(q)) for i in range(q)
        )
        return LatinSquare._trusted(cells)

    return square(m1), square(m2)


def _product_pair(
    a1: LatinSquare, b1: LatinSquare, a2: LatinSquare, b2: LatinSquare
) -> tuple[LatinSquare, LatinSquare]:
    """Direct product of orthogonal pairs of sides m and n, side m*n result.

    Cells combine in (m, n) mixed radix: ((x1-1)*n + (x2-1)) + 1.
    """
    m, n = a1.d, a2.d

    def combine(first: LatinSquare, second: LatinSquare) -> LatinSquare:
        cells = tuple(
            tuple(
                (first.cells[i1][j1] - 1) * n + second.cells[i2][j2]
                for j1 in range(m)
                for j2 in range(n)
            )
            for i1 in range(m)
            for i2 in range(n)
        )
        return LatinSquare._trusted(cells)

    return combine(a1, a2), combine(b1, b2)


def _is_prime_power(d: int) -> bool:
    for p in range(2, d + 1):
        if d % p == 0:
            while d % p == 0:
                d //= p
            return d == 1
    return False


def mols_supported(d: int) -> bool:
    """True when construct_mols can build a pair for side d."""
    if d < 3 or d == 6:
        return False
    if d % 2 == 1:
        return True
    if _is_prime_power(d):
        return d in _IRREDUCIBLE
    # composite even d: need a factorization with both factors supported
    return any(
        d % m == 0 and mols_supported(m) and mols_supported(d // m)
        for m in range(3, int(math.isqrt(d)) + 1)
    )


def construct_mols(d: int, table_file: str | Path | None = None) -> OrthogonalPair:
    """Build an orthogonal pair of side d.

    Strategy: odd d uses the cyclic rows i+j and i+2j; even prime powers
    use two multiplier squares over GF(d); other composites use the direct
    product of supported factors.  Sides 2 and 6 have no orthogonal pair at
    all; other sides congruent to 2 mod 4 exist but need the
    Bose-Shrikhande-Parker construction, which this module does not build.
    For those, a pair file (see `parse_pair_file`) can be supplied and is
    validated before use.
    """
    if table_file is not None:
        pair = parse_pair_file(Path(table_file).read_text())
        if pair.d != d:
            raise UnsupportedOrder(f"pair file has side {pair.d}, requested {d}")
        return pair
    if d == 2:
        raise UnsupportedOrder("no orthogonal Latin squares of side 2 exist")
    if d == 6:
        raise UnsupportedOrder(
            "no orthogonal Latin squares of side 6 exist (the Euler order, "
            "settled by Tarry)"
        )
    if d < 3:
        raise UnsupportedOrder(f"side {d} too small")
    if d % 2 == 1:
        first, second = _cyclic_pair(d)
    elif _is_prime_power(d):
        if d not in _IRREDUCIBLE:
            raise UnsupportedOrder(
                f"no shipped irreducible polynomial for GF({d}); supported even "
                f"prime powers: {sorted(q for q in _IRREDUCIBLE if q % 2 == 0)}"
            )
        first, second = _field_pair(d)
    else:
        for m in range(3, int(math.isqrt(d)) + 1):
            if d % m == 0 and mols_supported(m) and mols_supported(d // m):
                p1 = construct_mols(m)
                p2 = construct_mols(d // m)
                first, second = _product_pair(p1.first, p1.second, p2.first, p2.second)
                break
        else:
            raise UnsupportedOrder(
                f"side {d} is 2 mod 4: pairs exist (Bose-Shrikhande-Parker) but "
                "are not constructed here; supply a validated pair file"
            )
    return OrthogonalPair(first, second)


# --- the side-6 extremum ------------------------------------------------------

# The 36-cell array below is a bijection of [6] x [6]; cell (i, j) holds
# (k_ij, l_ij).  Its K component is a Latin square; L is Latin in rows but
# has symbol 3 twice in column 3 and symbol 4 twice in column 4, the two
# unavoidable defects for side 6.  It attains Q_P = 40, Q_PS = 36, the
# permutation optimum eps = 628/735.
_D6_CELLS = (
    (11, 22, 33, 44, 55, 66),
    (24, 13, 46, 35, 62, 51),
    (56, 65, 12, 21, 43, 34),
    (63, 54, 25, 16, 31, 42),
    (45, 36, 61, 52, 14, 23),
    (32, 41, 53, 64, 26, 15),
)

# The two side-6 Latin squares that come as close to orthogonality as
# possible; superimposing them repeats the pairs 33 and 44, so they do NOT
# induce a permutation.  Kept for inspection and tests.
D6_NEAR_ORTHOGONAL = (
    (
        (1, 2, 3, 4, 5, 6),
        (2, 1, 4, 3, 6, 5),
        (3, 4, 6, 5, 1, 2),
        (4, 3, 5, 6, 2, 1),
        (5, 6, 2, 1, 4, 3),
        (6, 5, 1, 2, 3, 4),
    ),
    (
        (1, 2, 3, 4, 5, 6),
        (3, 4, 5, 6, 1, 2),
        (2, 1, 4, 3, 6, 5),
        (6, 5, 1, 2, 4, 3),
        (4, 3, 6, 5, 2, 1),
        (5, 6, 2, 1, 3, 4),
    ),
)


def special_d6_perm() -> BiPerm:
    """The embedded side-6 permutation with maximal entangling power."""
    k = tuple(tuple(c // 10 for c in row) for row in _D6_CELLS)
    l = tuple(tuple(c % 10 for c in row) for row in _D6_CELLS)
    return BiPerm(k, l)


# --- enumeration and counting -------------------------------------------------


def enumerate_latin_squares(d: int) -> Iterator[LatinSquare]:
    """All Latin squares of side d, lexicographic by rows (backtracking)."""
    if d > ENUMERATION_MAX_SIDE:
        raise BudgetExceeded(
            f"side {d} enumeration not budgeted (max {ENUMERATION_MAX_SIDE})"
        )
    rows = list(itertools.permutations(range(1, d + 1)))

    def extend(stack: list[tuple[int, ...]]) -> Iterator[LatinSquare]:
        if len(stack) == d:
            yield LatinSquare._trusted(tuple(stack))
            return
        for row in rows:
            if all(row[c] != prev[c] for prev in stack for c in range(d)):
                stack.append(row)
                yield from extend(stack)
                stack.pop()

    yield from extend([])


def count_orthogonal_pairs(d: int) -> int:
    """Number of unordered orthogonal pairs among all Latin squares of side d.

    Exhaustive: enumerates the squares, then checks every unordered pair.
    Twice this count is the number of maximum-entangling grid permutations.
    """
    if d > PAIR_COUNT_MAX_SIDE:
        raise BudgetExceeded(
            f"pair counting enumerates all side-{d} squares; max side "
            f"{PAIR_COUNT_MAX_SIDE}"
        )
    flats = [
        tuple(v for row in sq.cells for v in row) for sq in enumerate_latin_squares(d)
    ]
    n = d * d
    count = 0
    for a, b in itertools.combinations(flats, 2):
        seen = set()
        for x, y in zip(a, b):
            seen.add(x * d + y)
        if len(seen) == n:
            count += 1
    return count


# --- text serialization -------------------------------------------------------
#
# A square is d lines of d space-separated integers; a pair file holds two
# squares separated by a blank line.


def format_latin_square(sq: LatinSquare) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in sq.cells) + "\n"


def format_pair(pair: OrthogonalPair) -> str:
    return format_latin_square(pair.first) + "\n" + format_latin_square(pair.second)


def parse_latin_square(text: str) -> LatinSquare:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    return _parse_square_lines(lines, offset=0)


def _parse_square_lines(lines: list[str], offset: int) -> LatinSquare:
    if not lines:
        raise ParseError(f"line {offset + 1}: expected a square, found nothing")
    d = len(lines[0].split())
    if len(lines) < d:
        raise ParseError(f"line {offset + 1}: square of side {d} needs {d} lines")
    cells = []
    for r in range(d):
        toks = lines[r].split()
        if len(toks) != d:
            raise ParseError(
                f"line {offset + r + 1}: expected {d} values, got {len(toks)}"
            )
        row = []
        for c, tok in enumerate(toks, start=1):
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(
                    f"line {offset + r + 1}, token {c}: {tok!r} is not an integer"
                ) from None
            if not 1 <= v <= d:
                raise ParseError(
                    f"line {offset + r + 1}, token {c}: value {v} outside [1, {d}]"
                )
            row.append(v)
        cells.append(tuple(row))
    if not is_latin(cells):
        raise ParseError(f"line {offset + 1}: block is not a Latin square")
    return LatinSquare._trusted(tuple(cells))


def parse_pair_file(text: str) -> OrthogonalPair:
    """Parse two blank-line separated squares and validate orthogonality."""
    chunks: list[list[str]] = [[]]
    for ln in text.splitlines():
        if ln.strip():
            chunks[-1].append(ln)
        elif chunks[-1]:
            chunks.append([])
    chunks = [c for c in chunks if c]
    if len(chunks) != 2:
        raise ParseError(f"expected 2 squares separated by a blank line, got {len(chunks)}")
    first = _parse_square_lines(chunks[0], offset=0)
    second = _parse_square_lines(chunks[1], offset=len(chunks[0]) + 1)
    return OrthogonalPair(first, second)
