import itertools

import pytest

from folindex.blowup import BlowUpProgram, build_cholesky, build_intersection
from folindex.divisors import (BranchAttachment, InvariantMarking,
                               SeparatrixDivisor, bal_pairing_check,
                               enumerate_balanced, is_balanced,
                               require_balanced, total_vector)
from folindex.errors import InputError, NotBalanced


@pytest.fixture
def tower():
    p = BlowUpProgram.from_lists([[], [1], [1, 2]])
    f = build_cholesky(p)
    return f, build_intersection(f)


H = BranchAttachment("h", (0, 0, 1))
F_ = BranchAttachment("f", (1, 1, 0))
G = BranchAttachment("g", (1, 1, 0))
PHI = BranchAttachment("phi", (1, 1, 0))
MARK = InvariantMarking((0, 0, 1))


def test_marking_validation(tower):
    _, a = tower
    MARK.validate_against(a)
    with pytest.raises(InputError):
        # E1 and E3 meet, so they cannot both be dicritical
        InvariantMarking((0, 1, 0)).validate_against(a)
    with pytest.raises(InputError):
        InvariantMarking((0, 2, 1))


def test_marking_parts():
    assert MARK.dicritical() == (1, 2)
    assert MARK.invariant() == (3,)
    assert MARK.delta() == (1, 1, 0)


def test_attachment_classification():
    assert H.is_isolated(MARK)
    assert PHI.is_dicritical(MARK)
    with pytest.raises(InputError):
        BranchAttachment("bad", (0, -1, 1))
    with pytest.raises(InputError):
        BranchAttachment("zero", (0, 0, 0))


def test_total_vector_and_addition():
    d = SeparatrixDivisor(((H, 1), (F_, 1), (G, 1), (PHI, -1)))
    assert total_vector(d) == (1, 1, 1)
    e = d + SeparatrixDivisor(((BranchAttachment("phi", (1, 1, 0)), 1),))
    assert total_vector(e, 3) == (2, 2, 1)
    assert e.coefficient("phi") == 0
    assert total_vector(SeparatrixDivisor(()), 3) == (0, 0, 0)


def test_duplicate_names_rejected():
    with pytest.raises(InputError):
        SeparatrixDivisor(((H, 1), (BranchAttachment("h", (0, 1, 0)), 1)))


def test_balanced_fiber_divisor(tower):
    _, a = tower
    d = SeparatrixDivisor(((H, 1), (F_, 1), (G, 1), (PHI, -1)))
    report = is_balanced(d, MARK, a)
    assert report.ok and bool(report)
    require_balanced(d, MARK, a)


def test_unbalanced_divisor_reported(tower):
    _, a = tower
    d = SeparatrixDivisor(((H, 1), (F_, 1), (G, 1)))
    report = is_balanced(d, MARK, a)
    assert not report.ok
    kinds = {c for c, _, _ in report.failures}
    assert kinds == {"dicritical-total"}
    with pytest.raises(NotBalanced):
        require_balanced(d, MARK, a)


def test_isolated_branch_needs_plus_one(tower):
    _, a = tower
    d = SeparatrixDivisor(((H, -1), (F_, 1), (G, 1), (PHI, -1)))
    kinds = {c for c, _, _ in is_balanced(d, MARK, a).failures}
    assert "isolated-coefficient" in kinds
    assert "negative-on-invariant" in kinds


def test_pairing_vanishes_exactly_on_balance(tower):
    f, a = tower
    balanced = SeparatrixDivisor(((H, 1), (F_, 1), (G, 1), (PHI, -1)))
    assert bal_pairing_check(balanced, MARK, a, f) == 0
    lopsided = SeparatrixDivisor(((H, 1), (F_, 1), (G, 1)))
    assert bal_pairing_check(lopsided, MARK, a, f) == 2


def test_enumerate_balanced_smallest_first(tower):
    _, a = tower
    divisors = list(itertools.islice(enumerate_balanced(MARK, a, (H,)), 5))
    assert divisors
    first = divisors[0]
    assert total_vector(first, 3) == (1, 1, 1)
    assert len(first.terms) == 3  # h plus one transverse branch on E1, E2
    for d in divisors:
        assert is_balanced(d, MARK, a).ok
        assert total_vector(d, 3) == (1, 1, 1)


def test_enumerate_respects_bounds(tower):
    _, a = tower
    got = list(enumerate_balanced(MARK, a, (H,), max_divisors=7))
    assert len(got) == 7
    small = list(enumerate_balanced(MARK, a, (H,), max_branches=3))
    assert all(len(d.terms) <= 3 for d in small)


def test_enumerate_rejects_dicritical_branch_as_isolated(tower):
    _, a = tower
    with pytest.raises(InputError):
        list(enumerate_balanced(MARK, a, (PHI,)))


def test_all_invariant_marking_balances_trivially(tower):
    _, a = tower
    mark = InvariantMarking((1, 1, 1))
    d = SeparatrixDivisor(((BranchAttachment("cusp", (0, 0, 1)), 1),))
    assert is_balanced(d, mark, a).ok
    divisors = list(enumerate_balanced(
        mark, a, (BranchAttachment("cusp", (0, 0, 1)),)))
    assert len(divisors) == 1  # nothing dicritical to adjust
