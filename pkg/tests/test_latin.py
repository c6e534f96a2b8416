"""Latin squares, orthogonal pairs, and induced permutations."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from permupower import (
    BudgetExceeded,
    LatinSquare,
    NotOrthogonal,
    OrthogonalPair,
    ParseError,
    UnsupportedOrder,
    are_orthogonal,
    check_block_conditions,
    construct_mols,
    count_orthogonal_pairs,
    entangling_power,
    enumerate_latin_squares,
    is_latin,
    special_d6_perm,
    superimpose,
)
from permupower.latin import (
    D6_NEAR_ORTHOGONAL,
    format_latin_square,
    format_pair,
    mols_supported,
    parse_latin_square,
    parse_pair_file,
)

R9_K = ((1, 2, 3), (2, 3, 1), (3, 1, 2))
R9_L = ((1, 3, 2), (2, 1, 3), (3, 2, 1))

SUPPORTED_UP_TO_12 = (3, 4, 5, 7, 8, 9, 11, 12)


class TestPredicates:
    def test_r9_squares_orthogonal(self):
        assert is_latin(R9_K) and is_latin(R9_L)
        assert are_orthogonal(R9_K, R9_L)

    def test_square_not_self_orthogonal(self):
        assert not are_orthogonal(R9_K, R9_K)

    def test_near_orthogonal_side6(self):
        a, b = D6_NEAR_ORTHOGONAL
        assert is_latin(a) and is_latin(b)
        assert not are_orthogonal(a, b)

    def test_not_latin(self):
        assert not is_latin(((1, 2), (1, 2)))
        assert not is_latin(((1, 2), (2, 2)))
        assert not is_latin(((1, 2, 3), (2, 3, 1)))

    def test_latin_square_type(self):
        sq = LatinSquare(R9_K)
        assert sq.d == 3
        with pytest.raises(ValueError):
            LatinSquare(((1, 2), (1, 2)))


class TestSuperimpose:
    def test_r9(self):
        perm = superimpose(OrthogonalPair(LatinSquare(R9_K), LatinSquare(R9_L)))
        report = entangling_power(perm)
        assert report.epsilon == Fraction(3, 4)

    def test_cyclic_d5(self):
        report = entangling_power(superimpose(construct_mols(5)))
        assert report.epsilon == Fraction(5, 6)

    def test_non_orthogonal_rejected(self):
        with pytest.raises(NotOrthogonal):
            OrthogonalPair(LatinSquare(R9_K), LatinSquare(R9_K))
        with pytest.raises(NotOrthogonal):
            superimpose((LatinSquare(R9_L), LatinSquare(R9_L)))


class TestConstructMols:
    def test_d3_matches_classic_pair(self):
        pair = construct_mols(3)
        assert pair.first.cells == R9_K
        assert pair.second.cells == R9_L

    @pytest.mark.parametrize("d", [2, 6])
    def test_nonexistent_orders(self, d):
        with pytest.raises(UnsupportedOrder):
            construct_mols(d)

    def test_d10_not_constructed(self):
        with pytest.raises(UnsupportedOrder, match="Bose-Shrikhande-Parker"):
            construct_mols(10)

    def test_d4_field_pair(self):
        report = entangling_power(superimpose(construct_mols(4)))
        assert report.epsilon == Fraction(4, 5)

    @pytest.mark.parametrize("d", SUPPORTED_UP_TO_12)
    def test_supported_sweep(self, d):
        assert mols_supported(d)
        pair = construct_mols(d)
        assert is_latin(pair.first.cells) and is_latin(pair.second.cells)
        assert are_orthogonal(pair.first, pair.second)
        perm = superimpose(pair)
        assert entangling_power(perm).epsilon == Fraction(d, d + 1)
        assert check_block_conditions(perm).all()

    @pytest.mark.parametrize("d", [2, 6, 10])
    def test_unsupported_set(self, d):
        assert not mols_supported(d)

    def test_table_file_load(self, tmp_path):
        path = tmp_path / "pair7.txt"
        path.write_text(format_pair(construct_mols(7)))
        pair = construct_mols(7, table_file=path)
        assert are_orthogonal(pair.first, pair.second)
        wrong = tmp_path / "bad.txt"
        wrong.write_text(format_pair(construct_mols(5)))
        with pytest.raises(UnsupportedOrder):
            construct_mols(7, table_file=wrong)

    def test_table_file_validated(self, tmp_path):
        path = tmp_path / "notorth.txt"
        sq = format_latin_square(LatinSquare(R9_K))
        path.write_text(sq + "\n" + sq)
        with pytest.raises(NotOrthogonal):
            construct_mols(3, table_file=path)


class TestSpecialD6:
    def test_valid_biperm_and_power(self):
        perm = special_d6_perm()
        report = entangling_power(perm)
        assert (report.q_p, report.q_ps) == (40, 36)
        assert report.epsilon == Fraction(628, 735)

    def test_defect_structure(self):
        # K is fully Latin; L is Latin in rows; the only defects are one
        # repeated symbol in each of L's columns 3 and 4
        perm = special_d6_perm()
        assert is_latin(perm.k)
        full = set(range(1, 7))
        assert all(set(row) == full for row in perm.l)
        defects = []
        for col in range(6):
            column = [perm.l[row][col] for row in range(6)]
            for sym in full:
                if column.count(sym) == 2:
                    defects.append((col + 1, sym))
        assert defects == [(3, 3), (4, 4)]


class TestEnumeration:
    @pytest.mark.parametrize("d,count", [(1, 1), (2, 2), (3, 12), (4, 576)])
    def test_counts(self, d, count):
        assert sum(1 for _ in enumerate_latin_squares(d)) == count

    def test_first_square_is_cyclic(self):
        first = next(enumerate_latin_squares(3))
        assert first.cells == R9_K

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            next(enumerate_latin_squares(6))

    def test_all_valid_and_distinct(self):
        squares = list(enumerate_latin_squares(3))
        assert len(set(squares)) == 12
        assert all(is_latin(sq.cells) for sq in squares)


class TestPairCounting:
    def test_counts(self):
        assert count_orthogonal_pairs(2) == 0
        assert count_orthogonal_pairs(3) == 36

    def test_count_d4(self):
        assert count_orthogonal_pairs(4) == 3456

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            count_orthogonal_pairs(5)


class TestConverseAtD3:
    def test_maximum_class_is_exactly_the_orthogonal_pairs(self):
        # over all 9! grid permutations: power is 3/4 exactly when both
        # component matrices are Latin squares (orthogonality is then
        # automatic); that class has 72 = 2 * 36 members
        perms = np.array(
            list(itertools.permutations(range(9))), dtype=np.int8
        )
        k = (perms // 3).reshape(-1, 3, 3)
        l = (perms % 3).reshape(-1, 3, 3)
        ref = np.arange(3, dtype=np.int8)
        k_latin = (
            (np.sort(k, axis=2) == ref).all(axis=(1, 2))
            & (np.sort(k, axis=1) == ref[:, None]).all(axis=(1, 2))
        )
        l_latin = (
            (np.sort(l, axis=2) == ref).all(axis=(1, 2))
            & (np.sort(l, axis=1) == ref[:, None]).all(axis=(1, 2))
        )
        both = k_latin & l_latin

        from permupower.entangle import q_totals_batch

        totals = np.concatenate(
            [
                q_totals_batch(perms[lo : lo + 60480], 3)
                for lo in range(0, len(perms), 60480)
            ]
        )
        is_max = totals == 18  # q_p = q_ps = 9
        assert int(both.sum()) == 72
        assert np.array_equal(both, is_max)
        assert 72 == 2 * count_orthogonal_pairs(3)


class TestSerialization:
    def test_square_roundtrip(self):
        sq = LatinSquare(R9_L)
        assert parse_latin_square(format_latin_square(sq)) == sq

    def test_pair_roundtrip(self):
        pair = construct_mols(4)
        parsed = parse_pair_file(format_pair(pair))
        assert parsed.first == pair.first
        assert parsed.second == pair.second

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("", "expected 2 squares"),
            ("1 2\n2 1", "expected 2 squares"),
            ("1 2\n2 1\n\n1 2\n2 x", "token 2"),
            ("1 2\n2 1\n\n1 3\n3 1", "outside"),
            ("1 2\n2 2\n\n1 2\n2 1", "not a Latin square"),
        ],
    )
    def test_pair_parse_errors(self, text, fragment):
        with pytest.raises(ParseError, match=fragment):
            parse_pair_file(text)

    def test_square_parse_short(self):
        with pytest.raises(ParseError, match="needs 3 lines"):
            parse_latin_square("1 2 3\n2 3 1")
