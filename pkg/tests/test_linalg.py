import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superport import (
    Matrix,
    NonSquareMatrix,
    SingularBlock,
    SingularMatrix,
    rat,
    rat_str,
    solve_linear_system,
)

from conftest import rationals


def square(entries):
    return Matrix(entries)


class TestRat:
    def test_integers_and_fractions(self):
        assert rat(3) == Fraction(3)
        assert rat(Fraction(2, 7)) == Fraction(2, 7)

    def test_strings(self):
        assert rat("3/4") == Fraction(3, 4)
        assert rat("-5") == Fraction(-5)
        assert rat("+2/9") == Fraction(2, 9)

    @pytest.mark.parametrize("bad", ["1/0", "1.5", "a", "1/-2", "", "2/"])
    def test_bad_strings(self, bad):
        with pytest.raises(ValueError):
            rat(bad)

    @pytest.mark.parametrize("bad", [1.5, None, True, [1]])
    def test_bad_types(self, bad):
        with pytest.raises(TypeError):
            rat(bad)

    def test_round_trip(self):
        for value in (Fraction(3, 4), Fraction(-2), Fraction(0)):
            assert rat(rat_str(value)) == value


class TestMatrixBasics:
    def test_default_unlabeled(self):
        m = Matrix([[1, 2], [3, 4]])
        assert m.shape == (2, 2)
        assert m.row_labels is None
        assert m.entry(1, 2) == 2  # positional fallback

    def test_labels(self):
        m = Matrix([[1, 2], [3, 4]], labels=(2, 5))
        assert m.entry(5, 2) == 3
        assert m.row_pos(5) == 1

    def test_label_count_mismatch(self):
        with pytest.raises(ValueError):
            Matrix([[1, 2]], row_labels=(1,), col_labels=(1, 2, 3))

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            Matrix([[1, 2], [3]])

    def test_take_orders_labels(self):
        m = Matrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]], labels=(1, 2, 3))
        t = m.take((3, 1), (2,))
        assert t.entries == ((Fraction(8),), (Fraction(2),))
        assert t.row_labels == (3, 1)

    def test_arithmetic(self):
        a = Matrix([[1, 2], [3, 4]])
        b = Matrix([[0, 1], [1, 0]])
        assert (a + b).entries == ((Fraction(1), Fraction(3)), (Fraction(4), Fraction(4)))
        assert (a - a).entries == ((Fraction(0),) * 2,) * 2
        assert (a * b).entries == ((Fraction(2), Fraction(1)), (Fraction(4), Fraction(3)))
        assert (a * Fraction(1, 2)).entries[0][0] == Fraction(1, 2)

    def test_transpose_swaps_labels(self):
        m = Matrix([[1, 2]], row_labels=(7,), col_labels=(1, 2))
        t = m.transpose()
        assert t.shape == (2, 1)
        assert t.row_labels == (1, 2)
        assert t.col_labels == (7,)

    def test_symmetry_and_row_sums(self):
        m = Matrix([[2, -1], [-1, 2]])
        assert m.is_symmetric()
        assert m.row_sums() == (Fraction(1), Fraction(1))


class TestDeterminant:
    def test_empty_matrix_det_is_one(self):
        assert Matrix(()).det() == 1

    def test_known_values(self):
        assert Matrix([[Fraction(1, 2)]]).det() == Fraction(1, 2)
        assert Matrix([[1, 2], [3, 4]]).det() == -2
        assert Matrix([[0, 1], [1, 0]]).det() == -1

    def test_singular(self):
        assert Matrix([[1, 2], [2, 4]]).det() == 0

    def test_non_square(self):
        with pytest.raises(NonSquareMatrix):
            Matrix([[1, 2]]).det()

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3))
    def test_det_by_permutation_expansion(self, rows):
        m = Matrix(rows)
        expect = Fraction(0)
        for perm in itertools.permutations(range(3)):
            sign = 1
            for i in range(3):
                for j in range(i + 1, 3):
                    if perm[i] > perm[j]:
                        sign = -sign
            term = Fraction(1)
            for i in range(3):
                term *= rows[i][perm[i]]
            expect += sign * term
        assert m.det() == expect


class TestInverse:
    def test_identity_round_trip(self):
        m = Matrix([[2, 1], [1, 1]])
        assert m * m.invert() == Matrix.identity(2)

    def test_label_swap(self):
        m = Matrix([[2]], row_labels=(4,), col_labels=(9,))
        inv = m.invert()
        assert inv.row_labels == (9,)
        assert inv.col_labels == (4,)

    def test_empty(self):
        assert Matrix(()).invert().shape == (0, 0)

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            Matrix([[1, 1], [1, 1]]).invert()

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3))
    def test_inverse_property(self, rows):
        m = Matrix(rows, labels=(1, 2, 3))
        if m.det() == 0:
            with pytest.raises(SingularMatrix):
                m.invert()
            return
        assert m * m.invert() == Matrix.identity(3, labels=(1, 2, 3))

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=4, max_size=4))
    def test_jacobi_minor_identity(self, rows):
        # det of a k-minor of the inverse against the complementary minor
        m = Matrix(rows, labels=(1, 2, 3, 4))
        d = m.det()
        if d == 0:
            return
        inv = m.invert()
        for I, J in (((1, 2), (1, 3)), ((2, 4), (1, 2)), ((1,), (4,))):
            comp_i = tuple(v for v in (1, 2, 3, 4) if v not in I)
            comp_j = tuple(v for v in (1, 2, 3, 4) if v not in J)
            sign = (-1) ** (sum(I) + sum(J))
            assert inv.take(I, J).det() == sign * m.take(comp_j, comp_i).det() / d


class TestSchur:
    def test_2x2_block(self):
        m = Matrix([[4, 1], [1, 2]])
        s = m.schur_complement([0])
        assert s.entries == ((Fraction(4) - Fraction(1, 2),),)

    def test_keep_all(self):
        m = Matrix([[1, 2], [3, 4]])
        assert m.schur_complement([0, 1]) is m

    def test_singular_block(self):
        m = Matrix([[1, 1], [1, 0]])
        with pytest.raises(SingularBlock):
            m.schur_complement([0])

    def test_sequential_elimination_agrees(self):
        m = Matrix(
            [[5, 1, 2], [1, 6, 1], [2, 1, 7]],
            labels=(1, 2, 3),
        )
        once = m.schur_complement([0])
        steps = m.schur_complement([0, 1]).schur_complement([0])
        assert once == steps


class TestSolve:
    def test_simple(self):
        rows = [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(4)]]
        assert solve_linear_system(rows, [Fraction(2), Fraction(2)]) == [
            Fraction(1),
            Fraction(1, 2),
        ]

    def test_empty(self):
        assert solve_linear_system([], []) == []

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            solve_linear_system([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]],
                                [Fraction(1), Fraction(2)])

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3),
        st.lists(rationals, min_size=3, max_size=3),
    )
    def test_residual_vanishes(self, rows, rhs):
        if Matrix(rows).det() == 0:
            return
        x = solve_linear_system(rows, rhs)
        for i in range(3):
            assert sum(rows[i][j] * x[j] for j in range(3)) == rhs[i]
