"""Parser, germ arithmetic, and the resultant-valuation oracle."""

from fractions import Fraction

import pytest
import sympy

from folindex.errors import (ExtensionDegreeExceeded, GermSyntaxError,
                             InputError, NonPolynomial, UnsupportedGerm)
from folindex.germs import Germ, X, Y, parse_germ
from folindex.oracle import (INFINITE, bifurcation_candidates,
                             oracle_intersection, oracle_milnor,
                             oracle_mu_pair)

T = sympy.Symbol("t")

F = Fraction


class TestParser:
    def test_monomials_and_coefficients(self):
        assert parse_germ("x*y + y^2 + x^3") == {
            (1, 1): F(1), (0, 2): F(1), (3, 0): F(1)}

    def test_double_star_power(self):
        assert parse_germ("x**2 - y/2") == {(2, 0): F(1), (0, 1): F(-1, 2)}

    def test_unary_signs(self):
        assert parse_germ("-x/2 + +3*y") == {(1, 0): F(-1, 2), (0, 1): F(3)}

    def test_parenthesized_base_expands(self):
        assert parse_germ("(x+y)^2") == {(2, 0): F(1), (1, 1): F(2),
                                         (0, 2): F(1)}

    def test_parenthesized_literal_exponent(self):
        assert parse_germ("x^(2)") == {(2, 0): F(1)}

    def test_constant(self):
        assert parse_germ("7/3") == {(0, 0): F(7, 3)}

    def test_unknown_name(self):
        with pytest.raises(GermSyntaxError, match="unknown name 'z'"):
            parse_germ("z + x")

    def test_unexpected_operator_reports_position(self):
        with pytest.raises(GermSyntaxError, match=r"position 4"):
            parse_germ("x + * y")

    def test_unexpected_character(self):
        with pytest.raises(GermSyntaxError, match="character '@'"):
            parse_germ("x @ y")

    def test_unclosed_parenthesis(self):
        with pytest.raises(GermSyntaxError, match=r"expected '\)'"):
            parse_germ("(x + y")

    def test_trailing_operator(self):
        with pytest.raises(GermSyntaxError):
            parse_germ("x +")

    def test_empty_input(self):
        with pytest.raises(GermSyntaxError, match="empty"):
            parse_germ("")

    def test_adjacent_tokens_need_an_operator(self):
        with pytest.raises(GermSyntaxError, match="position 1"):
            parse_germ("2x")

    def test_nonconstant_division(self):
        with pytest.raises(NonPolynomial, match="non-constant"):
            parse_germ("x / y")

    def test_variable_exponent(self):
        with pytest.raises(NonPolynomial, match="literal nonnegative"):
            parse_germ("x ^ y")

    def test_negative_exponent(self):
        with pytest.raises(NonPolynomial, match="literal nonnegative"):
            parse_germ("x ^ -2")


class TestGerm:
    def test_equivalent_constructions(self):
        from_text = Germ("x*y + y^2")
        from_expr = Germ(X * Y + Y**2)
        from_poly = Germ(sympy.Poly(X * Y + Y**2, X, Y))
        assert from_text.expr == from_expr.expr == from_poly.expr

    def test_zero_rejected(self):
        with pytest.raises(InputError, match="zero polynomial"):
            Germ("x - x")
        with pytest.raises(InputError, match="zero polynomial"):
            Germ("0")

    def test_order_and_vanishing(self):
        cusp = Germ("y^2 - x^3")
        assert cusp.order() == 2 and cusp.vanishes()
        assert Germ("x").order() == 1
        unit = Germ("2 + x")
        assert unit.order() == 0 and not unit.vanishes()

    def test_leading_form(self):
        assert Germ("y^2 - x^3").leading_form().as_expr() == Y**2
        lf = Germ("x*y + y^2 + x^3").leading_form()
        assert lf.as_expr() == X * Y + Y**2

    def test_diff_accepts_names_and_symbols(self):
        cusp = Germ("y^2 - x^3")
        assert cusp.diff("x").expr == -3 * X**2
        assert cusp.diff(X).expr == -3 * X**2
        assert cusp.diff("y").expr == 2 * Y
        assert cusp.diff(Y).expr == 2 * Y

    def test_diff_of_constant_is_none(self):
        assert Germ("3").diff("x") is None

    def test_diff_unknown_variable(self):
        with pytest.raises(InputError, match="no such variable"):
            Germ("x").diff("z")

    def test_partials(self):
        fx, fy = Germ("y^2 - x^3").partials()
        assert fx.expr == -3 * X**2 and fy.expr == 2 * Y

    def test_evaluate(self):
        assert Germ("y^2 - x^3").evaluate(2, 1) == -7

    def test_reducedness(self):
        assert Germ("y^2 - x^3").is_reduced_at_origin()
        assert Germ("x*y").is_reduced_at_origin()
        assert Germ("x^2 + y^2").is_reduced_at_origin()
        assert not Germ("y^2").is_reduced_at_origin()
        assert not Germ("(1+x)*y^2").is_reduced_at_origin()

    def test_combine(self):
        f, g = Germ("x*y + y^2 + x^3"), Germ("x*y")
        assert f.combine(g, -1).expr == sympy.expand(X**3 + Y**2)
        assert f.combine(g, F(3, 5)).expr == sympy.expand(
            sympy.Rational(8, 5) * X * Y + Y**2 + X**3)


class TestIntersectionOracle:
    def test_fixture_pair(self):
        f, g = Germ("x*y + y^2 + x^3"), Germ("x*y")
        assert oracle_intersection(f, g) == 5
        assert oracle_intersection(g, f) == 5
        assert oracle_intersection(f, g, seed=5) == 5

    def test_smooth_transverse(self):
        assert oracle_intersection(Germ("x"), Germ("y")) == 1

    def test_cusp_against_axis(self):
        assert oracle_intersection(Germ("y^2 - x^3"), Germ("y")) == 3

    def test_unit_gives_zero(self):
        assert oracle_intersection(Germ("1 + x"), Germ("y")) == 0

    def test_shared_branch_is_infinite(self):
        assert oracle_intersection(Germ("x^2"), Germ("x*y")) == INFINITE

    def test_additive_on_products(self):
        cusp, axis = Germ("y^2 - x^3"), Germ("y")
        total = oracle_intersection(Germ(cusp.expr * X), axis)
        assert total == 4
        assert total == (oracle_intersection(cusp, axis)
                         + oracle_intersection(Germ("x"), axis))


class TestMilnorOracle:
    def test_fixture_values(self):
        assert oracle_milnor(Germ("y^2 - x^3")) == 2
        assert oracle_milnor(Germ("y^2 - x^3"), seed=7) == 2
        assert oracle_milnor(Germ("x*y")) == 1
        assert oracle_milnor(Germ("x*y + y^2 + x^3")) == 1
        assert oracle_milnor(Germ("x")) == 0

    def test_unit_germ(self):
        assert oracle_milnor(Germ("1 + x")) == 0

    def test_non_reduced_is_infinite(self):
        assert oracle_milnor(Germ("y^2")) == INFINITE

    def test_product_of_fixture_generators(self):
        product = Germ((X * Y + Y**2 + X**3) * X * Y)
        assert oracle_milnor(product) == 11

    def test_pencil_member(self):
        f, g = Germ("x*y + y^2 + x^3"), Germ("x*y")
        assert oracle_milnor(f.combine(g, -1)) == 2


class TestMuPairOracle:
    def test_transverse_coordinates(self):
        assert oracle_mu_pair(Germ("x"), Germ("y")) == 1

    def test_fixture_pair(self):
        f, g = Germ("x*y + y^2 + x^3"), Germ("x*y")
        assert oracle_mu_pair(f, g) == 12

    def test_matches_explicit_coefficient_germs(self):
        p = Germ("y*(2*x^3 - y^2)")
        q = Germ("x*(y^2 - x^3)")
        assert oracle_intersection(p, q) == 12

    def test_proportional_generators_rejected(self):
        with pytest.raises(InputError, match="no pencil"):
            oracle_mu_pair(Germ("x*y"), Germ("2*x*y"))


class TestBifurcationCandidates:
    def test_fixture_pencil(self):
        f, g = Germ("x*y + y^2 + x^3"), Germ("x*y")
        data = bifurcation_candidates(f, g, seed=0)
        assert data.mu_generic == 1
        assert data.mu_f == 1 and data.mu_g == 1
        assert len(data.samples) == 2
        assert all(mu == 1 for _, mu in data.samples)
        a, b, c, d = data.shear
        assert abs(a * d - b * c) == 1
        (cand,) = data.candidates
        assert cand.minpoly.as_expr() == T + 1
        assert cand.value == -1
        assert cand.conjugates == 1
        assert cand.mu == 2
        assert cand.status == "bifurcation"
        assert data.bifurcation_values() == (cand,)

    def test_unpruned_run_keeps_spurious_roots(self):
        f, g = Germ("x*y + y^2 + x^3"), Germ("x*y")
        data = bifurcation_candidates(f, g, seed=0, prune=False)
        by_status = {c.status: c for c in data.candidates}
        spurious = by_status["spurious"]
        assert spurious.value == sympy.Rational(3, 5)
        assert spurious.mu == 1
        real = by_status["bifurcation"]
        assert real.value == -1 and real.mu == 2
        assert data.bifurcation_values() == (real,)

    def test_quadratic_bifurcation_value(self):
        # members (y - t*x)^2 + x^3 at t^2 = 2: a cusp on a Morse pencil
        f, g = Germ("y^2 + 2*x^2 + x^3"), Germ("-2*x*y")
        data = bifurcation_candidates(f, g, seed=0)
        assert data.mu_generic == 1
        (cand,) = data.candidates
        assert cand.minpoly.as_expr() == T**2 - 2
        assert cand.conjugates == 2
        assert cand.mu == 2
        assert cand.status == "bifurcation"
        assert abs(float(cand.value) + 2**0.5) < 1e-12

    def test_extension_budget(self):
        f, g = Germ("y^2 + 2*x^2 + x^3"), Germ("-2*x*y")
        with pytest.raises(ExtensionDegreeExceeded, match="degree 2"):
            bifurcation_candidates(f, g, seed=0, max_ext_degree=1)

    def test_non_reduced_member_rejected(self):
        f, g = Germ("y^2 + 2*x^2"), Germ("-2*x*y")
        with pytest.raises(UnsupportedGerm, match="non-reduced"):
            bifurcation_candidates(f, g, seed=0)

    def test_shared_branch_rejected(self):
        with pytest.raises(UnsupportedGerm, match="share a branch"):
            bifurcation_candidates(Germ("x*y"), Germ("x^2"), seed=0)

    def test_generators_must_vanish(self):
        with pytest.raises(InputError, match="vanish at the origin"):
            bifurcation_candidates(Germ("1 + x"), Germ("y"), seed=0)

    def test_pencil_without_jumps(self):
        data = bifurcation_candidates(Germ("x"), Germ("y"), seed=0)
        assert data.mu_generic == 0
        assert data.candidates == ()
        assert data.bifurcation_values() == ()
