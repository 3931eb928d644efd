import pytest

from folindex.blowup import BlowUpProgram, build_cholesky, build_intersection
from folindex.divisors import InvariantMarking, total_vector
from folindex.errors import InputError, PathMismatch
from folindex.pencil import (Fiber, PencilModel, bifurcation_formula_check,
                             fiber_balanced_divisor, fiber_gsv_check,
                             semitame_check, unfolding_dimension)


def tower_matrix():
    return build_intersection(build_cholesky(
        BlowUpProgram.from_lists([[], [1], [1, 2]])))


@pytest.fixture
def node_cusp():
    # pencil of f = xy + y^2 + x^3 and g = xy; h = f - g = y^2 + x^3
    return PencilModel(tower_matrix(), InvariantMarking((0, 0, 1)),
                       [("h", (0, 0, 1), 2)], (1, 1, 0), 1, 5)


@pytest.fixture
def trivial():
    a = build_intersection(build_cholesky(BlowUpProgram.from_lists([[]])))
    return PencilModel(a, InvariantMarking((0,)), [], (1,), 0, 1,
                       generators=("x", "y"))


class TestModelValidation:
    def test_fiber_tuples_coerced(self, node_cusp):
        assert node_cusp.bifurcation_fibers == (Fiber("h", (0, 0, 1), 2),)

    def test_generic_must_be_dicritical_only(self):
        with pytest.raises(InputError):
            PencilModel(tower_matrix(), InvariantMarking((0, 0, 1)),
                        [("h", (0, 0, 1), 2)], (1, 1, 1), 1, 5)

    def test_special_fiber_needs_isolated_part(self):
        with pytest.raises(InputError):
            PencilModel(tower_matrix(), InvariantMarking((0, 0, 1)),
                        [("h", (1, 1, 0), 2)], (1, 1, 0), 1, 5)

    def test_special_fiber_mu_must_exceed_generic(self):
        with pytest.raises(InputError):
            PencilModel(tower_matrix(), InvariantMarking((0, 0, 1)),
                        [("h", (0, 0, 1), 1)], (1, 1, 0), 1, 5)

    def test_pairing_invariant_enforced(self):
        with pytest.raises(InputError):
            PencilModel(tower_matrix(), InvariantMarking((0, 0, 1)),
                        [("h", (0, 0, 1), 2)], (1, 1, 0), 1, 4)

    def test_infinite_mu_refused(self):
        with pytest.raises(InputError):
            Fiber("bad", (0, 0, 1), None)


class TestBalancedDivisor:
    def test_node_cusp_divisor(self, node_cusp):
        d = fiber_balanced_divisor(node_cusp)
        assert total_vector(d, 3) == (1, 1, 1)
        assert d.coefficient("h") == 1
        assert d.coefficient("f") == 1
        assert d.coefficient("generic.1") == -1

    def test_trivial(self, trivial):
        d = fiber_balanced_divisor(trivial)
        assert total_vector(d, 1) == (2,)
        assert len(d.terms) == 2


class TestBifurcationFormula:
    def test_node_cusp_three_ways(self, node_cusp):
        rec = bifurcation_formula_check(node_cusp)
        assert rec.mu_pair == 12
        assert rec.path_quadratic == rec.path_telescoped == 12
        assert rec.mu_fg == 11
        assert rec.excess_sum == 1
        assert rec.equal
        assert dict(rec.fiber_milnor) == {"h": 2, "f": 1, "g": 1}

    def test_trivial(self, trivial):
        rec = bifurcation_formula_check(trivial)
        assert rec.mu_pair == rec.mu_fg == 1
        assert rec.excess_sum == 0
        assert rec.equal

    def test_inconsistent_mu_caught(self):
        # stored mu(h) = 3 contradicts the attachment vector, which gives 2
        model = PencilModel(tower_matrix(), InvariantMarking((0, 0, 1)),
                            [("h", (0, 0, 1), 3)], (1, 1, 0), 1, 5)
        with pytest.raises(PathMismatch):
            bifurcation_formula_check(model)


class TestCorollaries:
    def test_gsv_constant_over_fibers(self, node_cusp, trivial):
        rec = fiber_gsv_check(node_cusp)
        assert rec.ok and rec.expected == 5 and not rec.failures
        assert fiber_gsv_check(trivial).ok

    def test_semitame(self, node_cusp, trivial):
        rec = semitame_check(node_cusp)
        assert not rec.is_semitame
        assert (rec.mu_pair, rec.mu_fg) == (12, 11)
        rec2 = semitame_check(trivial)
        assert rec2.is_semitame
        assert rec2.mu_pair == rec2.mu_fg == 1

    def test_unfolding_dimension(self, node_cusp, trivial):
        assert unfolding_dimension(node_cusp) == 12 - 5
        assert unfolding_dimension(trivial) == 0
