# Balanced divisors of separatrices and what they do not change.
#
# A dicritical foliation has no finite separatrix set, so the index
# formulas run over a *balanced* divisor instead: isolated separatrices
# with coefficient +1, plus transverse curves through each dicritical
# component whose signed count comes out to 2 - valence.  There are
# infinitely many such divisors; the Milnor number, the singularity
# count, and the telescoped sum must not depend on the choice.

import itertools

import folindex as fx


def ledger():
    return fx.HypothesisLedger(generalized_curve="asserted")


def show_family(title, lists, iota, isolated=()):
    program = fx.BlowUpProgram.from_lists(lists)
    a = fx.build_intersection(fx.build_cholesky(program))
    marking = fx.InvariantMarking(iota)
    print(title)
    print("  A =", a.rows)
    for i in marking.dicritical():
        print(f"  component {i} is dicritical: valence {fx.valence(a, i)},"
              f" target {2 - fx.valence(a, i)}")
    divisors = itertools.islice(fx.enumerate_balanced(marking, a, isolated), 4)
    seen = set()
    for k, divisor in enumerate(divisors):
        names = " ".join(f"{c:+d}*{att.name}" for att, c in divisor.terms)
        s_b = fx.total_vector(divisor, a.n)
        mu = fx.milnor_foliation(s_b, a, ledger())
        dec = fx.milnor_decomposition(s_b, marking, a, ledger())
        tele = sum(c * (fx.milnor_along(s_b, att.s, a) - 1)
                   for att, c in divisor.terms) + 1
        print(f"  divisor {k}: {names or '(empty)'}")
        print(f"    S_B = {s_b}  mu = {mu}  singularities = "
              f"{dec.singularity_count}  telescoped = {tele}")
        assert tele == mu
        assert dec.total == mu
        seen.add(mu)
    assert len(seen) == 1, f"mu changed across balanced divisors: {seen}"
    print(f"  mu = {seen.pop()} for every balanced divisor")
    print()


# The radial foliation: one blow-up, the exceptional line is dicritical
# with valence 0, so balance wants two transverse lines -- or three and
# one, or four and two, and so on.
show_family("radial foliation x dy - y dx", [[]], (0,))

# A chain of three components whose end is dicritical.  One isolated
# separatrix sits on the first component; each balanced completion adds
# transverse branches at the far end.
show_family("chain with a dicritical tail", [[], [1], [2]], (1, 1, 0),
            (fx.BranchAttachment("c1", (1, 0, 0)),))

# Balance is checked, not assumed.  A single transverse line through
# the radial exceptional component is not enough:
program = fx.BlowUpProgram.from_lists([[]])
a = fx.build_intersection(fx.build_cholesky(program))
marking = fx.InvariantMarking((0,))
lone = fx.SeparatrixDivisor(((fx.BranchAttachment("r1", (1,)), 1),))
report = fx.is_balanced(lone, marking, a)
print("a lone transverse line through the radial component:")
for kind, where, detail in report.failures:
    print(f"  {kind} [{where}]: {detail}")
