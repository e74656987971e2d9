"""Polynomial matrices and the all-lambda rank decision."""

from fractions import Fraction as F

import pytest

from daeforms import (Mat, Poly, full_rank_all_finite, minor_gcd, normal_rank,
                      pencil)
from daeforms.pencils import PolyMat, determinant
from golden import QPFF_E, QPFF_A, QPFF_B, QPFF_SIZES
from randgen import make_rng, rand_mat, rand_invertible


class TestPoly:
    def test_trailing_zeros_stripped(self):
        assert Poly((1, 2, 0, 0)) == Poly((1, 2))
        assert Poly((0,)).is_zero()

    def test_arithmetic(self):
        p = Poly((1, 1))     # 1 + s
        q = Poly((-1, 1))    # -1 + s
        assert p * q == Poly((-1, 0, 1))
        assert p + q == Poly((0, 2))
        assert (p * q - p * q).is_zero()

    def test_divmod_exact(self):
        p = Poly((-1, 0, 1))
        q, r = divmod(p, Poly((1, 1)))
        assert q == Poly((-1, 1)) and r.is_zero()

    def test_gcd_is_monic(self):
        a = Poly((0, 2))          # 2s
        b = Poly((0, 0, 6))       # 6s^2
        assert Poly.gcd(a, b) == Poly((0, 1))

    def test_eval(self):
        assert Poly((1, 2, 3)).eval(F(1, 2)) == F(1) + F(1) + F(3, 4)


class TestPencil:
    def test_simple_pencils(self):
        p = pencil(Mat.identity(1), Mat.zeros(1, 1))
        assert p[0, 0] == Poly((0, 1))
        q = pencil(Mat.zeros(1, 1), Mat.identity(1))
        assert q[0, 0] == Poly((-1,))

    def test_shift_template_row(self):
        # top row of the 2-chain selectors: s * [0, 1] - [1, 0] = [-1, s]
        e = Mat.from_rows([[0, 1]])
        a = Mat.from_rows([[1, 0]])
        p = pencil(e, a)
        assert p[0, 0] == Poly((-1,)) and p[0, 1] == Poly((0, 1))

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            pencil(Mat.zeros(2, 2), Mat.zeros(2, 3))


class TestNormalRank:
    def test_scalar(self):
        assert normal_rank(pencil(Mat.identity(1), Mat.zeros(1, 1))) == 1

    def test_rank_deficient(self):
        p = PolyMat(2, 2, [[Poly((0, 1)), Poly.ZERO], [Poly.ZERO, Poly.ZERO]])
        assert normal_rank(p) == 1

    def test_golden_trailing_block(self):
        # third diagonal block of the golden quasi PD form: E = 0, A invertible
        e33 = Mat.zeros(2, 2)
        a33 = Mat.from_rows([[F(13, 2), F(1, 2)], [-8, 0]])
        assert normal_rank(pencil(e33, a33)) == 2

    def test_matches_sampling(self):
        rng = make_rng(20)
        for _ in range(40):
            rows, cols = rng.randint(1, 4), rng.randint(1, 4)
            p = pencil(rand_mat(rng, rows, cols), rand_mat(rng, rows, cols))
            best = max(p.eval_at(x).rank() for x in range(-(rows * cols), rows * cols + 1))
            assert normal_rank(p) == best

    def test_degenerate_shapes(self):
        assert normal_rank(PolyMat(0, 3, [])) == 0
        assert normal_rank(PolyMat(3, 0, [(), (), ()])) == 0


class TestDeterminant:
    def test_two_by_two(self):
        p = pencil(Mat.identity(2), Mat.from_rows([[0, 1], [1, 0]]))
        # det(sI - A) = s^2 - 1
        assert determinant(p) == Poly((-1, 0, 1))

    def test_matches_cofactor_oracle(self):
        rng = make_rng(21)

        def cofactor_det(p: PolyMat) -> Poly:
            if p.rows == 0:
                return Poly.ONE
            if p.rows == 1:
                return p[0, 0]
            total = Poly.ZERO
            rest_rows = list(range(1, p.rows))
            for j in range(p.cols):
                rest_cols = [c for c in range(p.cols) if c != j]
                term = p[0, j] * cofactor_det(p.submatrix(rest_rows, rest_cols))
                total = total + term if j % 2 == 0 else total - term
            return total

        for _ in range(15):
            k = rng.randint(1, 4)
            p = pencil(rand_mat(rng, k, k), rand_mat(rng, k, k))
            assert determinant(p) == cofactor_det(p)


class TestFullRankAllFinite:
    def test_drop_at_zero(self):
        p = PolyMat(1, 1, [[Poly((0, 1))]])
        assert not full_rank_all_finite(p, 1)

    def test_constant_minor_wins(self):
        p = PolyMat(1, 2, [[Poly((0, 1)), Poly((-1,))]])
        assert full_rank_all_finite(p, 1, "row")

    def test_golden_leading_block(self):
        z = QPFF_SIZES
        e11 = QPFF_E.sub(0, z.l1, 0, z.n1)
        a11 = QPFF_A.sub(0, z.l1, 0, z.n1)
        b11 = QPFF_B.sub(0, z.l1, 0, z.m1)
        aug = pencil(Mat.hstack(e11, Mat.zeros(z.l1, z.m1)), Mat.hstack(a11, b11))
        assert full_rank_all_finite(aug, z.l1, "row")

    def test_invertible_e_always_fails(self):
        # a square pencil with invertible E always has finite eigenvalues
        rng = make_rng(22)
        for _ in range(15):
            k = rng.randint(1, 4)
            e = rand_invertible(rng, k)
            a = rand_mat(rng, k, k)
            assert not full_rank_all_finite(pencil(e, a), k, "row")

    def test_sampling_agrees_with_gcd_route(self):
        rng = make_rng(23)
        for _ in range(40):
            rows, cols = rng.randint(1, 3), rng.randint(1, 3)
            target = min(rows, cols)
            p = pencil(rand_mat(rng, rows, cols), rand_mat(rng, rows, cols))
            got = full_rank_all_finite(p, target)
            # sampling oracle at more points than the minor degrees allow roots
            bound = target + 2
            sampled = all(p.eval_at(x).rank() == target for x in range(-bound, bound + 1))
            if got:
                assert sampled
            if not sampled:
                assert not got

    def test_orientation_validation(self):
        p = pencil(Mat.identity(2), Mat.zeros(2, 2))
        with pytest.raises(ValueError):
            full_rank_all_finite(p, 1, "row")
        with pytest.raises(ValueError):
            full_rank_all_finite(p, 3)

    def test_zero_target_degenerate(self):
        assert full_rank_all_finite(PolyMat(3, 0, [(), (), ()]), 0)
        assert full_rank_all_finite(PolyMat(0, 3, []), 0)
        assert not full_rank_all_finite(pencil(Mat.identity(1), Mat.zeros(1, 1)), 0)


class TestMinorGcd:
    def test_common_root_detected(self):
        # both 1x1 minors vanish at s = 0
        p = PolyMat(1, 2, [[Poly((0, 1)), Poly((0, 2))]])
        g = minor_gcd(p, 1)
        assert g == Poly((0, 1))

    def test_all_zero(self):
        p = PolyMat(2, 2, [[Poly.ZERO] * 2] * 2)
        assert minor_gcd(p, 1).is_zero()

    def test_empty_selection(self):
        p = PolyMat(2, 2, [[Poly.ONE, Poly.ZERO], [Poly.ZERO, Poly.ONE]])
        assert minor_gcd(p, 0) == Poly.ONE
