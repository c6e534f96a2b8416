"""Grid permutation representation, enumeration, and structure detection."""

import itertools
import math

import numpy as np
import pytest

from permupower import (
    BiPerm,
    BudgetExceeded,
    DimensionMismatch,
    FlatPerm,
    NotBijection,
    ParseError,
    WitnessKind,
    biperm_from_flat,
    biperm_to_flat,
    compose_with_swap,
    detect_non_entangling,
    enumerate_perms,
    format_biperm,
    identity_perm,
    parse_biperm,
    random_perm,
    swap_perm,
)
from permupower.perm_core import next_flat_inplace, unrank_flat

from conftest import random_biperms


class TestBiPermFromFlat:
    def test_identity_d2(self):
        p = biperm_from_flat((1, 2, 3, 4), 2)
        assert p.k == ((1, 1), (2, 2))
        assert p.l == ((1, 2), (1, 2))

    def test_cnot_d2(self):
        p = biperm_from_flat((1, 2, 4, 3), 2)
        assert p.k == ((1, 1), (2, 2))
        assert p.l == ((1, 2), (2, 1))

    def test_swap_as_flat(self):
        p = biperm_from_flat((1, 3, 2, 4), 2)
        assert p.k == ((1, 2), (1, 2))
        assert p.l == ((1, 1), (2, 2))
        assert p == swap_perm(2)

    def test_wrong_length(self):
        with pytest.raises(DimensionMismatch):
            biperm_from_flat((1, 2, 3, 4), 3)

    def test_repeats_rejected(self):
        with pytest.raises(NotBijection):
            biperm_from_flat((1, 1, 3, 4), 2)
        with pytest.raises(NotBijection):
            FlatPerm((1, 2, 2, 4))

    def test_biperm_validation(self):
        with pytest.raises(NotBijection):
            BiPerm(((1, 1), (1, 2)), ((1, 1), (2, 2)))  # image (1,1) repeats
        with pytest.raises(NotBijection):
            BiPerm(((1, 1), (2, 5)), ((1, 2), (1, 2)))  # value out of range

    def test_roundtrip_exhaustive_small(self):
        for d in (1, 2):
            for p in itertools.permutations(range(1, d * d + 1)):
                assert biperm_to_flat(biperm_from_flat(p, d)).image == p

    def test_roundtrip_exhaustive_d3(self):
        for p in itertools.permutations(range(1, 10)):
            assert biperm_to_flat(biperm_from_flat(p, 3)).image == p

    def test_roundtrip_random_to_d8(self, rng):
        for d in range(2, 9):
            for _ in range(20):
                image = tuple(int(v) + 1 for v in rng.permutation(d * d))
                assert biperm_to_flat(biperm_from_flat(image, d)).image == image


class TestBasicPerms:
    def test_identity(self):
        p = identity_perm(2)
        assert p.k == ((1, 1), (2, 2))
        assert p.l == ((1, 2), (1, 2))

    def test_swap(self):
        p = swap_perm(2)
        assert p.k == ((1, 2), (1, 2))
        assert p.l == ((1, 1), (2, 2))
        assert swap_perm(3).k[0] == (1, 2, 3)

    def test_apply(self):
        assert swap_perm(3).apply(1, 3) == (3, 1)
        assert identity_perm(4).apply(2, 3) == (2, 3)


class TestComposeWithSwap:
    def test_identity_becomes_swap(self):
        for d in (2, 3, 5):
            assert compose_with_swap(identity_perm(d)) == swap_perm(d)
            assert compose_with_swap(swap_perm(d)) == identity_perm(d)

    def test_cnot(self):
        ps = compose_with_swap(biperm_from_flat((1, 2, 4, 3), 2))
        assert ps.k == ((1, 2), (1, 2))
        assert ps.l == ((1, 2), (2, 1))

    def test_involution(self):
        for perm in random_biperms(3, 4, 25):
            assert compose_with_swap(compose_with_swap(perm)) == perm

    def test_pointwise_relation(self, rng):
        perm = random_perm(5, rng)
        ps = compose_with_swap(perm)
        for i in range(1, 6):
            for j in range(1, 6):
                assert ps.apply(i, j) == perm.apply(j, i)


class TestDetectNonEntangling:
    def test_identity_witness(self):
        w = detect_non_entangling(identity_perm(3))
        assert w.kind is WitnessKind.IDENTITY_LIKE
        assert w.p_a.image == (1, 2, 3)
        assert w.p_b.image == (1, 2, 3)

    def test_swap_witness(self):
        w = detect_non_entangling(swap_perm(3))
        assert w.kind is WitnessKind.SWAP_LIKE
        assert w.p_a.image == (1, 2, 3)
        assert w.p_b.image == (1, 2, 3)

    def test_cnot_entangles(self):
        assert detect_non_entangling(biperm_from_flat((1, 2, 4, 3), 2)) is None

    def test_witness_reconstructs(self, rng):
        # build non-entangling permutations from random local pairs
        for d in (2, 3, 5):
            for _ in range(10):
                pa = [int(v) + 1 for v in rng.permutation(d)]
                pb = [int(v) + 1 for v in rng.permutation(d)]
                ident_like = BiPerm(
                    [[pa[i]] * d for i in range(d)],
                    [pb for _ in range(d)],
                )
                w = detect_non_entangling(ident_like)
                assert w is not None
                assert w.reconstruct(d) == ident_like
                swap_like = BiPerm(
                    [pa for _ in range(d)],
                    [[pb[i]] * d for i in range(d)],
                )
                w = detect_non_entangling(swap_like)
                assert w is not None and w.kind is WitnessKind.SWAP_LIKE
                assert w.reconstruct(d) == swap_like

    def test_count_over_all_d2(self):
        hits = sum(
            1 for p in enumerate_perms(2) if detect_non_entangling(p) is not None
        )
        assert hits == 2 * math.factorial(2) ** 2  # 8


class TestEnumeration:
    def test_d2_count_and_order(self):
        perms = list(enumerate_perms(2))
        assert len(perms) == 24
        assert perms[0] == identity_perm(2)
        flats = [biperm_to_flat(p).image for p in perms]
        assert flats == sorted(flats)

    def test_d3_count(self):
        assert sum(1 for _ in enumerate_perms(3)) == math.factorial(9)

    def test_budget_guard(self):
        with pytest.raises(BudgetExceeded):
            next(enumerate_perms(4))
        first = next(enumerate_perms(4, allow_large=True))
        assert first == identity_perm(4)

    def test_range_split(self):
        whole = list(enumerate_perms(2))
        parts = list(enumerate_perms(2, 0, 8)) + list(enumerate_perms(2, 8, 24))
        assert parts == whole
        mid = list(enumerate_perms(2, 5, 9))
        assert mid == whole[5:9]

    def test_unrank_matches_iteration(self):
        seq = list(itertools.permutations(range(1, 5)))
        for r in (0, 1, 7, 23):
            assert unrank_flat(4, r) == seq[r]

    def test_next_flat(self):
        image = [1, 2, 3]
        seen = [tuple(image)]
        while next_flat_inplace(image):
            seen.append(tuple(image))
        assert seen == list(itertools.permutations((1, 2, 3)))


class TestRandomPerm:
    def test_deterministic(self):
        a = random_perm(4, np.random.default_rng(99))
        b = random_perm(4, np.random.default_rng(99))
        assert a == b

    def test_always_valid(self, rng):
        for d in (2, 3, 6):
            p = random_perm(d, rng)
            # reconstruct through the validating constructor
            assert BiPerm(p.k, p.l) == p

    def test_uniform_d2(self):
        # 1e5 draws over the 24 permutations; every count within 5 SE
        n = 100_000
        gen = np.random.default_rng(42)
        counts = {}
        for _ in range(n):
            key = biperm_to_flat(random_perm(2, gen)).image
            counts[key] = counts.get(key, 0) + 1
        assert len(counts) == 24
        expected = n / 24
        se = math.sqrt(n * (1 / 24) * (23 / 24))
        worst = max(abs(c - expected) for c in counts.values())
        assert worst <= 5 * se


class TestSerialization:
    def test_roundtrip(self, rng):
        for d in (1, 2, 3, 7):
            p = random_perm(d, rng)
            assert parse_biperm(format_biperm(p)) == p

    def test_format_shape(self):
        text = format_biperm(identity_perm(2))
        assert text == "d=2\n1 2 3 4\n"

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("", "expected 2 non-empty lines"),
            ("d=2\n", "expected 2 non-empty lines"),
            ("x=2\n1 2 3 4", "line 1"),
            ("d=two\n1 2 3 4", "line 1"),
            ("d=0\n1", "positive"),
            ("d=2\n1 2 3", "expected 4 values"),
            ("d=2\n1 2 3 five", "token 4"),
            ("d=2\n1 2 3 9", "token 4"),
            ("d=2\n1 2 2 3", "duplicate"),
        ],
    )
    def test_parse_errors(self, text, fragment):
        with pytest.raises(ParseError, match=fragment.replace("(", "\\(")):
            parse_biperm(text)
