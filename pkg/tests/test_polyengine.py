import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gtboson.polyengine import (
    ExactPoly,
    GaussianRational,
    SqrtRational,
    bargmann_inner,
    diagonal_degrees,
    minor,
    mono_from_map,
    mono_text,
    squarefree_split,
    symbolic_matrix,
    xvar,
    yvar,
    zvar,
)


def zp(r, c):
    return ExactPoly.variable(zvar(r, c))


class TestRingOps:
    def test_product_of_variables_is_single_term(self):
        p = zp(1, 1) * zp(1, 2)
        assert len(p.terms) == 1
        assert p.coefficient(mono_from_map({zvar(1, 1): 1, zvar(1, 2): 1})) == 1

    def test_additive_inverse(self):
        p = zp(1, 1) * 3 + zp(2, 2) ** 2
        assert (p + (-1) * p).is_zero()

    def test_binomial_square(self):
        x, y = ExactPoly.variable(xvar(2, 1)), ExactPoly.variable(yvar(2, 1))
        sq = (x + y) ** 2
        assert sq == x * x + 2 * x * y + y * y

    def test_pow_zero_is_one(self):
        assert zp(1, 1) ** 0 == ExactPoly.const(1)

    def test_rational_scalars(self):
        p = zp(1, 1) * Fraction(2, 3)
        assert p.coefficient(mono_from_map({zvar(1, 1): 1})) == Fraction(2, 3)

    def test_map_variables_retags_slots(self):
        p = zp(1, 2) ** 2 * 5
        q = p.map_variables(lambda v: (v[0], 7, v[2], v[3]))
        assert q.coefficient(mono_from_map({zvar(1, 2, 7): 2})) == 5


class TestMinor:
    def test_two_by_two(self):
        z = symbolic_matrix(2)
        d = minor(z, (1, 2), (1, 2))
        assert d == zp(1, 1) * zp(2, 2) - zp(1, 2) * zp(2, 1)

    def test_single_entry(self):
        z = symbolic_matrix(3)
        assert minor(z, (2,), (3,)) == zp(2, 3)

    def test_repeated_indices_rejected(self):
        z = symbolic_matrix(3)
        with pytest.raises(ValueError):
            minor(z, (1, 1), (1, 2))

    def test_equal_columns_vanish(self):
        z = symbolic_matrix(3)
        mat = [[z[r][0], z[r][0], z[r][2]] for r in range(3)]
        assert minor(mat, (1, 2), (1, 2)).is_zero()

    def test_alternating_and_multilinear_random(self):
        # substitute random rationals and compare against a plain permanent-free
        # determinant evaluation
        rng = random.Random(11)
        for _ in range(20):
            vals = [[Fraction(rng.randrange(-4, 5)) for _ in range(3)]
                    for _ in range(3)]
            mat = [[ExactPoly.const(v) for v in row] for row in vals]
            det = minor(mat, (1, 2, 3), (1, 2, 3))
            brute = Fraction(0)
            import itertools
            for perm in itertools.permutations(range(3)):
                sgn = 1
                for a in range(3):
                    for b in range(a + 1, 3):
                        if perm[a] > perm[b]:
                            sgn = -sgn
                term = Fraction(sgn)
                for r in range(3):
                    term *= vals[r][perm[r]]
                brute += term
            assert det == ExactPoly.const(brute)


class TestBargmann:
    def test_unit_monomial(self):
        assert bargmann_inner(zp(1, 1), zp(1, 1)) == 1

    def test_factorial_norm(self):
        sq = zp(1, 1) ** 2
        assert bargmann_inner(sq, sq) == 2

    def test_determinant_norm(self):
        z = symbolic_matrix(2)
        d = minor(z, (1, 2), (1, 2))
        assert bargmann_inner(d, d) == 2

    def test_symmetry_and_positivity(self):
        rng = random.Random(5)
        vars_ = [zvar(1, 1), zvar(1, 2), zvar(2, 1)]
        for _ in range(25):
            p = ExactPoly()
            q = ExactPoly()
            for _ in range(4):
                m = mono_from_map({v: rng.randrange(3) for v in vars_})
                p = p + ExactPoly.monomial(m, rng.randrange(-3, 4))
                q = q + ExactPoly.monomial(m, rng.randrange(-3, 4))
            assert bargmann_inner(p, q) == bargmann_inner(q, p)
            if not p.is_zero():
                assert bargmann_inner(p, p) > 0

    def test_factorization_over_disjoint_variables(self):
        p1 = zp(1, 1) + 2 * zp(1, 2)
        p2 = zp(1, 1) ** 2 - zp(1, 2)
        q1 = zp(2, 1) ** 3
        q2 = zp(2, 1) ** 3 + zp(2, 2)
        lhs = bargmann_inner(p1 * q1, p2 * q2)
        assert lhs == bargmann_inner(p1, p2) * bargmann_inner(q1, q2)


class TestDiagonalDegrees:
    def test_determinant_degrees(self):
        z = symbolic_matrix(3)
        assert diagonal_degrees(minor(z, (1, 2), (1, 2)), 3) == [1, 1, 0]

    def test_pure_power(self):
        assert diagonal_degrees(zp(1, 1) ** 3) == [3]

    def test_inhomogeneous_names_column(self):
        p = zp(1, 1) + zp(1, 2)
        with pytest.raises(ValueError, match="column 1"):
            diagonal_degrees(p, 2)


class TestExtraction:
    def test_single_variable(self):
        x, y = xvar(2, 1), yvar(2, 1)
        p = (ExactPoly.variable(x) * zp(1, 1)
             + ExactPoly.variable(y) * zp(1, 2))
        got = p.extract_coefficient(mono_from_map({x: 1}),
                                    lambda v: v[0] in ("x", "y"))
        assert got == zp(1, 1)

    def test_empty_target_is_identity_on_free_polys(self):
        p = zp(1, 1) ** 2 + 3 * zp(2, 2)
        assert p.extract_coefficient((), lambda v: v[0] in ("x", "y")) == p

    def test_text_form(self):
        p = zp(1, 1) * zp(2, 2) - zp(1, 2) * zp(2, 1)
        assert p.text() == "z[1,1]*z[2,2] - z[1,2]*z[2,1]"
        assert mono_text(()) == "1"


small_fracs = st.fractions(min_value=-100, max_value=100, max_denominator=60)
pos_fracs = st.fractions(min_value=0, max_value=400, max_denominator=60)


class TestSqrtRational:
    @given(small_fracs, pos_fracs, small_fracs, pos_fracs)
    @settings(max_examples=200, deadline=None)
    def test_product_squares_exactly(self, a, r, b, s):
        x, y = SqrtRational(a, r), SqrtRational(b, s)
        assert (x * y).squared() == a * a * r * b * b * s

    @given(small_fracs, pos_fracs, small_fracs)
    @settings(max_examples=200, deadline=None)
    def test_same_radicand_product(self, a, r, b):
        x, y = SqrtRational(a, r), SqrtRational(b, r)
        assert (x * y) == SqrtRational.from_rational(a * b * r)

    @given(small_fracs, small_fracs, pos_fracs)
    @settings(max_examples=200, deadline=None)
    def test_canonical_equality(self, a, b, r):
        # a*sqrt(b^2 r) and a*b*sqrt(r) are the same number
        assert SqrtRational(a, b * b * r if b else r) == \
            SqrtRational(a * abs(b) if b else a, r)

    def test_addition_same_radicand(self):
        x = SqrtRational(Fraction(1, 2), 3)
        y = SqrtRational(Fraction(1, 3), 3)
        assert (x + y) == SqrtRational(Fraction(5, 6), 3)

    def test_addition_mixed_radicand_rejected(self):
        with pytest.raises(ValueError):
            SqrtRational(1, 2) + SqrtRational(1, 3)

    def test_zero_is_canonical(self):
        assert SqrtRational(0, 7) == SqrtRational.zero()
        assert SqrtRational(3, 0) == SqrtRational.zero()

    def test_wire_format(self):
        v = SqrtRational(1, Fraction(1, 2))
        assert v.text() == "1/1*sqrt(1/2)"
        assert SqrtRational.from_json(v.to_json()) == v

    def test_division(self):
        x = SqrtRational(3, 2)
        assert x / x == SqrtRational.one()
        assert SqrtRational.one() / SqrtRational.sqrt(2) == \
            SqrtRational(1, Fraction(1, 2))

    @given(st.integers(min_value=1, max_value=10 ** 9))
    @settings(max_examples=200, deadline=None)
    def test_squarefree_split(self, n):
        a, b = squarefree_split(n)
        assert a * a * b == n
        # b square-free: no prime square divides it
        d = 2
        while d * d <= b:
            assert b % (d * d) != 0
            d += 1


class TestGaussianRational:
    def test_multiplication(self):
        i = GaussianRational(0, 1)
        assert i * i == GaussianRational(-1, 0)

    def test_conjugation_and_power(self):
        u = GaussianRational(Fraction(3, 5), Fraction(4, 5))
        assert (u * u.conjugate()) == GaussianRational(1, 0)
        assert u ** 2 == u * u
