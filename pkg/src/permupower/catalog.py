"""Named permutations exposed by the command line and the test suite.

The explicit gate data is embedded rather than derived, so user-facing
names cannot drift; tests validate each entry against its known power.
"""

from __future__ import annotations

from .errors import ParseError
from .latin import construct_mols, special_d6_perm, superimpose
from .perm_core import BiPerm, biperm_from_flat, identity_perm, swap_perm
from .classify import min_nonzero_perm

# d=2 controlled-not: |i j> -> |i, j + i - 1 mod 2>, flat one-line form.
_CNOT_FLAT = (1, 2, 4, 3)

# d=2 companion gate with the same (maximal) power 4/9: CNOT composed with
# the factor exchange.
_M_FLAT = (1, 4, 2, 3)

# d=3 maximum-power permutation from the classic orthogonal pair of side 3.
_R9_K = ((1, 2, 3), (2, 3, 1), (3, 1, 2))
_R9_L = ((1, 3, 2), (2, 1, 3), (3, 2, 1))

BUILTIN_NAMES = ("identity", "swap", "cnot", "m", "r9", "d6hat", "min:<d>", "mols:<d>")


def cnot_perm() -> BiPerm:
    return biperm_from_flat(_CNOT_FLAT, 2)


def m_perm() -> BiPerm:
    return biperm_from_flat(_M_FLAT, 2)


def r9_perm() -> BiPerm:
    return BiPerm(_R9_K, _R9_L)


def builtin_perm(name: str, d: int | None = None) -> BiPerm:
    """Resolve a builtin permutation name.

    `identity` and `swap` require d; `min:<d>` and `mols:<d>` carry their
    own dimension; `cnot`, `m` (d=2), `r9` (d=3) and `d6hat` (d=6) are
    fixed instances.
    """
    name = name.strip().lower()
    if name in ("identity", "swap"):
        if d is None:
            raise ParseError(f"builtin {name!r} needs an explicit dimension")
        return identity_perm(d) if name == "identity" else swap_perm(d)
    if name == "cnot":
        return cnot_perm()
    if name == "m":
        return m_perm()
    if name == "r9":
        return r9_perm()
    if name == "d6hat":
        return special_d6_perm()
    if name.startswith("min:"):
        return min_nonzero_perm(_parse_dim(name))
    if name.startswith("mols:"):
        return superimpose(construct_mols(_parse_dim(name)))
    raise ParseError(
        f"unknown builtin {name!r}; available: {', '.join(BUILTIN_NAMES)}"
    )


def _parse_dim(name: str) -> int:
    _, _, tail = name.partition(":")
    try:
        d = int(tail)
    except ValueError:
        raise ParseError(f"builtin {name!r}: {tail!r} is not an integer") from None
    if d < 1:
        raise ParseError(f"builtin {name!r}: dimension must be positive")
    return d
