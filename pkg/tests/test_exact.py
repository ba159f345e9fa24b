"""Exact arithmetic: forms, gcd, nullspace, cross-ratio."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from higgs4p.exact import (
    BinaryForm,
    ProjPoint,
    affine_rank,
    bf_divexact,
    bf_eval,
    bf_gcd,
    bf_normalize,
    cross_ratio,
    fraction_sqrt,
    linear_form,
    matrix_rank,
    nullspace,
    solve_unique,
)

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=5)


def pp(a, b=1):
    return ProjPoint(F(a), F(b))


def form(*coeffs):
    return BinaryForm(len(coeffs) - 1, tuple(F(c) for c in coeffs))


class TestProjPoint:
    def test_canonical_representative(self):
        assert pp(4, 2) == pp(2, 1)
        assert pp(3, 0) == ProjPoint.infinity()
        with pytest.raises(ValueError):
            ProjPoint(F(0), F(0))

    def test_str(self):
        assert str(pp(2)) == "[2:1]"
        assert str(ProjPoint.infinity()) == "[1:0]"


class TestEval:
    def test_root_at_infinity(self):
        f = form(0, 1, 0)  # Z0*Z1
        assert bf_eval(f, ProjPoint.infinity()) == 0

    def test_linear_root(self):
        f = form(1, -2)  # Z0 - 2 Z1
        assert bf_eval(f, pp(2)) == 0

    def test_square(self):
        f = form(1, 0, 0)  # Z0^2
        assert bf_eval(f, pp(3)) == 9

    @given(st.lists(rationals, min_size=3, max_size=3),
           st.lists(rationals, min_size=2, max_size=2), rationals)
    @settings(max_examples=40, deadline=None)
    def test_multiplicative(self, cs, ds, z):
        f, g = form(*cs), form(*ds)
        p = pp(z)
        assert bf_eval(f * g, p) == bf_eval(f, p) * bf_eval(g, p)

    def test_multiplicative_at_infinity(self):
        f, g = form(2, 1, 3), form(0, 5)
        p = ProjPoint.infinity()
        assert bf_eval(f * g, p) == bf_eval(f, p) * bf_eval(g, p)


class TestGcd:
    def test_monomials(self):
        f = form(0, 1, 0, 0)  # Z0^2 Z1
        g = form(0, 0, 1, 0)  # Z0 Z1^2
        assert bf_gcd(f, g) == form(0, 1, 0)  # Z0 Z1

    def test_factor_extraction(self):
        l = form(1, -1)  # Z0 - Z1
        z0, z1 = form(1, 0), form(0, 1)
        assert bf_gcd(l * z1, l * z0) == l

    def test_gcd_with_zero(self):
        f = form(2, 4)
        assert bf_gcd(f, BinaryForm.zero(3)) == bf_normalize(f)
        with pytest.raises(ValueError):
            bf_gcd(BinaryForm.zero(1), BinaryForm.zero(2))

    @given(st.lists(rationals, min_size=2, max_size=4),
           st.lists(rationals, min_size=2, max_size=4))
    @settings(max_examples=60, deadline=None)
    def test_divides_and_coprime_quotients(self, cs, ds):
        f, g = form(*cs), form(*ds)
        if f.is_zero or g.is_zero:
            return
        h = bf_gcd(f, g)
        qf, qg = bf_divexact(f, h), bf_divexact(g, h)
        assert h * qf == f and h * qg == g
        rest = bf_gcd(qf, qg)
        assert rest.degree == rest.inf_multiplicity  # a nonzero constant


class TestNullspace:
    def test_identity(self):
        assert nullspace([[F(1), F(0)], [F(0), F(1)]]) == []

    def test_zero_matrix(self):
        basis = nullspace([[F(0), F(0)], [F(0), F(0)]])
        assert len(basis) == 2

    def test_rank_one(self):
        basis = nullspace([[F(1), F(1)], [F(2), F(2)]])
        assert len(basis) == 1
        v = basis[0]
        assert v[0] == -v[1] != 0

    @given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=2, max_size=4))
    @settings(max_examples=40, deadline=None)
    def test_kernel_vectors_annihilate(self, rows):
        for v in nullspace(rows, ncols=3):
            for row in rows:
                assert sum(a * b for a, b in zip(row, v)) == 0

    def test_solve_unique(self):
        a = [[F(2), F(1)], [F(1), F(-1)]]
        assert solve_unique(a, [F(5), F(1)]) == (F(2), F(1))
        assert solve_unique([[F(1), F(1)], [F(2), F(2)]], [F(0), F(0)]) is None

    def test_affine_rank(self):
        pts = [(F(0), F(0)), (F(1), F(0)), (F(2), F(0))]
        assert affine_rank(pts) == 1
        assert affine_rank([]) == -1
        assert matrix_rank([[F(1), F(2)], [F(2), F(4)]]) == 1


class TestCrossRatio:
    def test_marked_point_normalization(self):
        # the anchors 0, 1, infinity return the first argument itself
        assert cross_ratio(pp(2), pp(0), pp(1), ProjPoint.infinity()) == pp(2)
        assert cross_ratio(pp(3), pp(0), pp(1), ProjPoint.infinity()) == pp(3)

    def test_coincidences(self):
        q, r = pp(5), pp(7)
        assert cross_ratio(pp(3), pp(3), q, r) == pp(0)
        assert cross_ratio(pp(3), q, pp(3), r) == pp(1)
        assert cross_ratio(pp(3), q, r, pp(3)) == ProjPoint.infinity()

    def test_degenerate(self):
        with pytest.raises(ValueError):
            cross_ratio(pp(1), pp(2), pp(2), pp(2))

    @given(rationals, rationals, rationals, rationals,
           rationals, rationals, rationals, rationals)
    @settings(max_examples=60, deadline=None)
    def test_moebius_invariance(self, x1, x2, x3, x4, a, b, c, d):
        if a * d - b * c == 0:
            return
        pts = [pp(x1), pp(x2), pp(x3), pp(x4)]
        if len({(p.a, p.b) for p in pts[1:]}) < 2:
            return
        moved = [ProjPoint(a * p.a + b * p.b, c * p.a + d * p.b) for p in pts]
        try:
            base = cross_ratio(*pts)
        except ValueError:
            return
        assert cross_ratio(*moved) == base


def test_fraction_sqrt():
    assert fraction_sqrt(F(9, 4)) == F(3, 2)
    assert fraction_sqrt(F(2)) is None
    assert fraction_sqrt(F(-1)) is None


def test_divexact_tracks_infinity_roots():
    z1f = form(0, 1)  # Z1
    f = z1f * z1f * form(1, 2)
    assert bf_divexact(f, z1f) == z1f * form(1, 2)
    with pytest.raises(ValueError):
        bf_divexact(form(1, 0), form(0, 1))


def test_linear_form_vanishes_at_point():
    for p in (pp(3), pp(0), ProjPoint.infinity(), pp(-5, 2)):
        assert bf_eval(linear_form(p), p) == 0
