"""Rectangle counting and the exact power formula."""

import json
from fractions import Fraction

import numpy as np
import pytest

from permupower import (
    DegenerateDimension,
    DimensionTooLarge,
    IndexOutOfRange,
    biperm_to_flat,
    check_block_conditions,
    compose_with_swap,
    construct_mols,
    detect_non_entangling,
    entangling_power,
    enumerate_perms,
    identity_perm,
    min_nonzero_perm,
    q_of,
    q_of_naive,
    rectangle_flags,
    superimpose,
    swap_perm,
    WitnessKind,
)
from permupower.catalog import cnot_perm, r9_perm
from permupower.entangle import q_totals_batch

from conftest import random_biperms


class TestQOf:
    def test_identity_is_maximal(self):
        for d in (2, 3, 4, 5):
            assert q_of(identity_perm(d)) == d**4

    def test_swap_is_minimal(self):
        for d in (2, 3, 4, 5):
            assert q_of(swap_perm(d)) == d * d

    def test_cnot_values(self):
        cnot = cnot_perm()
        assert q_of(cnot) == 8
        assert q_of(compose_with_swap(cnot)) == 4

    def test_fast_equals_naive(self):
        for d in range(2, 7):
            for perm in random_biperms(100 + d, d, 200):
                assert q_of(perm) == q_of_naive(perm)

    def test_batch_equals_scalar(self):
        for d in (2, 3, 4):
            perms = random_biperms(17 + d, d, 50)
            flat = np.array(
                [[v - 1 for v in biperm_to_flat(perm).image] for perm in perms],
                dtype=np.int16,
            )
            totals = q_totals_batch(flat, d)
            expected = [
                q_of(perm) + q_of(compose_with_swap(perm)) for perm in perms
            ]
            assert totals.tolist() == expected

    def test_parity_and_range(self):
        for d in range(2, 7):
            for perm in random_biperms(900 + d, d, 50):
                q = q_of(perm)
                assert d * d <= q <= d**4
                assert q % 2 == (d * d) % 2

    def test_maximal_iff_identity_like(self):
        for perm in enumerate_perms(2):
            w = detect_non_entangling(perm)
            is_id_like = w is not None and w.kind is WitnessKind.IDENTITY_LIKE
            assert (q_of(perm) == 16) == is_id_like
        for perm in random_biperms(55, 3, 200):
            w = detect_non_entangling(perm)
            is_id_like = w is not None and w.kind is WitnessKind.IDENTITY_LIKE
            assert (q_of(perm) == 81) == is_id_like

    def test_minimal_iff_latin_conditions(self):
        # q = d^2 exactly when K has Latin rows and L has Latin columns
        d3_perms = random_biperms(56, 3, 200) + [
            superimpose(construct_mols(3)),
            identity_perm(3),
            swap_perm(3),
        ]
        for d, perms in ((2, list(enumerate_perms(2))), (3, d3_perms)):
            full = set(range(1, d + 1))
            for perm in perms:
                rows_ok = all(set(row) == full for row in perm.k)
                cols_ok = all(
                    {perm.l[i][j] for i in range(d)} == full for j in range(d)
                )
                assert (q_of(perm) == d * d) == (rows_ok and cols_ok)

    def test_dimension_cap(self):
        with pytest.raises(DimensionTooLarge):
            q_of(identity_perm(216))


class TestEntanglingPower:
    def test_identity_and_swap_are_zero(self):
        for d in range(2, 9):
            assert entangling_power(identity_perm(d)).epsilon == 0
            assert entangling_power(swap_perm(d)).epsilon == 0

    def test_r9(self):
        report = entangling_power(r9_perm())
        assert (report.q_p, report.q_ps) == (9, 9)
        assert report.epsilon == Fraction(3, 4)

    def test_min_nonzero_d3(self):
        report = entangling_power(min_nonzero_perm(3))
        assert (report.q_p, report.q_ps) == (49, 9)
        assert report.epsilon == Fraction(1, 3)

    def test_swap_composition_exchanges_qs(self):
        for perm in random_biperms(11, 3, 30):
            a = entangling_power(perm)
            b = entangling_power(compose_with_swap(perm))
            assert (a.q_p, a.q_ps) == (b.q_ps, b.q_p)
            assert a.epsilon == b.epsilon

    def test_range(self):
        for d in (2, 3, 4):
            top = Fraction(d, d + 1)
            for perm in random_biperms(500 + d, d, 50):
                assert 0 <= entangling_power(perm).epsilon <= top

    def test_degenerate_dimension(self):
        with pytest.raises(DegenerateDimension):
            entangling_power(identity_perm(1))

    def test_report_json(self):
        payload = json.loads(entangling_power(cnot_perm()).to_json())
        assert payload == {
            "d": 2,
            "q_p": 8,
            "q_ps": 4,
            "epsilon": {"num": 4, "den": 9},
            "epsilon_float": 4 / 9,
        }


class TestRectangleFlags:
    def test_identity_all_ones(self):
        perm = identity_perm(3)
        for quad in ((1, 2, 1, 3), (2, 2, 2, 2), (1, 3, 2, 3)):
            flags = rectangle_flags(perm, *quad)
            assert (flags.a_ijm, flags.a_ijn, flags.b_imn, flags.b_jmn) == (1, 1, 1, 1)
            assert flags.r_ijmn == 1

    def test_swap_proper_rectangles_vanish(self):
        perm = swap_perm(3)
        assert rectangle_flags(perm, 1, 2, 1, 3).r_ijmn == 0

    def test_degenerate_cell_always_one(self):
        for perm in random_biperms(7, 3, 10):
            assert rectangle_flags(perm, 2, 2, 3, 3).r_ijmn == 1

    def test_sum_matches_q(self):
        for d in (2, 3):
            for perm in random_biperms(70 + d, d, 10):
                total = sum(
                    rectangle_flags(perm, i, j, m, n).r_ijmn
                    for i in range(1, d + 1)
                    for j in range(1, d + 1)
                    for m in range(1, d + 1)
                    for n in range(1, d + 1)
                )
                assert total == q_of(perm)

    def test_symmetries(self):
        for perm in random_biperms(77, 3, 10):
            for i, j, m, n in ((1, 2, 1, 3), (1, 3, 2, 3), (2, 3, 1, 2)):
                r = rectangle_flags(perm, i, j, m, n).r_ijmn
                assert r == rectangle_flags(perm, j, i, m, n).r_ijmn
                assert r == rectangle_flags(perm, i, j, n, m).r_ijmn
                assert r == rectangle_flags(perm, j, i, n, m).r_ijmn

    def test_index_check(self):
        with pytest.raises(IndexOutOfRange):
            rectangle_flags(identity_perm(3), 1, 2, 0, 3)
        with pytest.raises(IndexOutOfRange):
            rectangle_flags(identity_perm(3), 1, 2, 1, 4)


class TestBlockConditions:
    def test_r9_all_true(self):
        assert check_block_conditions(r9_perm()).all()

    def test_identity(self):
        cond = check_block_conditions(identity_perm(3))
        assert not cond.one_per_block
        assert not cond.blocks_distinct
        assert cond.row_subcolumns and cond.col_subrows

    def test_swap(self):
        cond = check_block_conditions(swap_perm(3))
        assert cond.one_per_block and cond.blocks_distinct
        assert not cond.row_subcolumns
        assert not cond.col_subrows

    def test_equivalence_with_maximum_d2(self):
        # no d=2 permutation reaches 2/3, so all-four never holds
        for perm in enumerate_perms(2):
            assert not check_block_conditions(perm).all()

    def test_equivalence_on_constructions(self):
        for d in (3, 4, 5, 7):
            perm = superimpose(construct_mols(d))
            assert entangling_power(perm).epsilon == Fraction(d, d + 1)
            assert check_block_conditions(perm).all()

    def test_random_perms_match_threshold(self):
        for d in (3, 4):
            top = Fraction(d, d + 1)
            for perm in random_biperms(30 + d, d, 40):
                reaches = entangling_power(perm).epsilon == top
                assert check_block_conditions(perm).all() == reaches
