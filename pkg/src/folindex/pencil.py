"""Pencils of curve germs: bifurcation fibers and the excess formula.

A pencil {alpha f + beta g} with i_0(f, g) < infinity has finitely many
special members whose Milnor number exceeds the generic one.  Its member
fibers are the separatrices of the foliation g df - f dg, and choosing the
divisor

    B = sum of special fibers + (f) + (g) - r copies of a generic fiber

(r = number of special fibers) gives a balanced divisor of separatrices.
Two independent routes then compute the pencil Milnor number mu(f, g):

  * the quadratic-form Milnor formula on the total vector of B, and
  * telescoping mu_0 along each member, where every fiber C contributes
    milnor_along(C) = i_0(f, g) + mu_0(C).

Both must agree and reconcile with the excess formula

    mu(f, g) = mu_0(fg) + sum over special fibers of (mu_0(h) - mu_gen).

The model assumes the generators f, g are themselves generic members; the
polynomial front-end substitutes generic combinations when they are not.
"""

from dataclasses import dataclass, field

from . import exact
from .blowup import IntersectionMatrix
from .divisors import (BranchAttachment, InvariantMarking, SeparatrixDivisor,
                       require_balanced, total_vector)
from .errors import InputError, PathMismatch
from .indices import (HypothesisLedger, gsv, intersection_number,
                      milnor_along, milnor_curve, milnor_foliation)


@dataclass(frozen=True)
class Fiber:
    name: str
    s: tuple
    mu: int

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))
        if not (isinstance(self.mu, int) and self.mu >= 0):
            raise InputError(f"fiber {self.name!r} needs a finite Milnor number; "
                             "a pencil with a non-reduced member is out of scope")


@dataclass
class PencilModel:
    """Combinatorial data of a pencil after one common resolution.

    `a` is the intersection matrix (with Cholesky factor) of a blow-up
    program resolving every member; `marking` flags the components the
    induced foliation leaves invariant (1) or crosses dicritically (0).
    Special fibers carry their attachment vectors and Milnor numbers;
    `generic_s`/`mu_generic` describe any generic member and `i0` is the
    intersection number of two distinct members.
    """

    a: IntersectionMatrix
    marking: InvariantMarking
    bifurcation_fibers: tuple
    generic_s: tuple
    mu_generic: int
    i0: int
    generators: tuple = ("f", "g")
    ledger: HypothesisLedger = field(default=None)

    def __post_init__(self):
        self.bifurcation_fibers = tuple(
            fib if isinstance(fib, Fiber) else Fiber(*fib)
            for fib in self.bifurcation_fibers)
        self.generic_s = tuple(self.generic_s)
        if self.ledger is None:
            self.ledger = HypothesisLedger(generalized_curve="asserted")
        self.marking.validate_against(self.a)
        if len(self.generators) != 2 or self.generators[0] == self.generators[1]:
            raise InputError("a pencil has two distinct generator names")
        self._check_supports()
        self._check_pairings()

    def _check_supports(self):
        dicritical = set(self.marking.dicritical())
        gen_support = {i + 1 for i, v in enumerate(self.generic_s) if v}
        if not gen_support:
            raise InputError("generic fiber attaches nowhere")
        if not gen_support <= dicritical:
            raise InputError("a generic member must attach only to dicritical "
                             f"components, got support {sorted(gen_support)}")
        for fib in self.bifurcation_fibers:
            support = {i + 1 for i, v in enumerate(fib.s) if v}
            if support <= dicritical:
                raise InputError(f"special fiber {fib.name!r} carries no isolated "
                                 "separatrix; it cannot be a bifurcation member")
            if fib.mu <= self.mu_generic:
                raise InputError(f"special fiber {fib.name!r} has mu = {fib.mu}, "
                                 "not above the generic value "
                                 f"{self.mu_generic}; drop it from the model")

    def _check_pairings(self):
        # two generic members share one attachment vector, so the generic
        # self-pairing is the i0 of a genuinely distinct pair
        vectors = [("generic", self.generic_s), ("generic", self.generic_s)]
        vectors += [(f.name, f.s) for f in self.bifurcation_fibers]
        for idx, (name_i, s_i) in enumerate(vectors):
            for name_j, s_j in vectors[idx + 1:]:
                if name_i == name_j and name_i != "generic":
                    continue
                got = intersection_number(s_i, s_j, self.a)
                if got != self.i0:
                    raise InputError(
                        f"members {name_i!r} and {name_j!r} pair to {got}, but "
                        f"distinct fibers of the pencil must pair to i0 = {self.i0}")

    @property
    def n(self):
        return self.a.n

    def fibers(self):
        """All named fibers of the model: special ones, then the generators."""
        out = list(self.bifurcation_fibers)
        for name in self.generators:
            out.append(Fiber(name, self.generic_s, self.mu_generic))
        return out


def fiber_balanced_divisor(model):
    """B = sum of special fibers + (f) + (g) - r generic copies; balanced."""
    terms = [(BranchAttachment(f.name, f.s), 1) for f in model.bifurcation_fibers]
    terms += [(BranchAttachment(name, model.generic_s), 1)
              for name in model.generators]
    terms += [(BranchAttachment(f"generic.{k + 1}", model.generic_s), -1)
              for k in range(len(model.bifurcation_fibers))]
    divisor = SeparatrixDivisor(tuple(terms))
    require_balanced(divisor, model.marking, model.a)
    return divisor


@dataclass(frozen=True)
class BifurcationRecord:
    mu_pair: int
    mu_fg: int
    excess_sum: int
    equal: bool
    path_quadratic: int
    path_telescoped: int
    fiber_milnor: tuple  # (name, mu) as recomputed from attachment vectors


def bifurcation_formula_check(model):
    """Verify mu(f, g) = mu_0(fg) + excess by two independent routes.

    Route one evaluates the quadratic-form Milnor formula on the balanced
    divisor built from fibers; route two telescopes milnor_along over its
    members.  Per-fiber Milnor numbers recomputed from attachment vectors
    must match the stored ones.  Any disagreement raises PathMismatch.
    """
    divisor = fiber_balanced_divisor(model)
    s_b = total_vector(divisor, model.n)
    a = model.a

    path1 = milnor_foliation(s_b, a, model.ledger)

    coeff_sum = 0
    path2 = 0
    for branch, coeff in divisor.terms:
        path2 += coeff * milnor_along(s_b, branch.s, a)
        coeff_sum += coeff
    path2 += 1 - coeff_sum
    if path1 != path2:
        raise PathMismatch(f"quadratic-form route gives {path1}, telescoping "
                           f"along fibers gives {path2}")

    recomputed = []
    for fib in model.fibers():
        mu = milnor_curve(fib.s, a)
        recomputed.append((fib.name, mu))
        if mu != fib.mu:
            raise PathMismatch(f"fiber {fib.name!r}: stored Milnor number "
                               f"{fib.mu} vs {mu} from its attachment vector")
        along = milnor_along(s_b, fib.s, a)
        if along != model.i0 + mu:
            raise PathMismatch(f"fiber {fib.name!r}: milnor_along gives {along}, "
                               f"expected i0 + mu = {model.i0 + mu}")

    s_fg = exact.vec_scale(2, model.generic_s)
    mu_fg = milnor_curve(s_fg, a)
    if mu_fg != 2 * model.mu_generic + 2 * model.i0 - 1:
        raise PathMismatch(f"mu_0(fg) = {mu_fg} from the attachment vector, but "
                           f"mu(f) + mu(g) + 2 i0(f,g) - 1 = "
                           f"{2 * model.mu_generic + 2 * model.i0 - 1}")

    excess = sum(f.mu - model.mu_generic for f in model.bifurcation_fibers)
    return BifurcationRecord(mu_pair=path1, mu_fg=mu_fg, excess_sum=excess,
                             equal=(path1 == mu_fg + excess),
                             path_quadratic=path1, path_telescoped=path2,
                             fiber_milnor=tuple(recomputed))


@dataclass(frozen=True)
class FiberGsvRecord:
    ok: bool
    expected: int
    failures: tuple  # (fiber name, gsv value)

    def __bool__(self):
        return self.ok


def fiber_gsv_check(model):
    """GSV along every member fiber equals i_0(f, g); witnesses on failure."""
    divisor = fiber_balanced_divisor(model)
    s_b = total_vector(divisor, model.n)
    failures = []
    for fib in model.fibers():
        value = gsv(s_b, fib.s, model.a)
        if value != model.i0:
            failures.append((fib.name, value))
    return FiberGsvRecord(not failures, model.i0, tuple(failures))


@dataclass(frozen=True)
class SemitameRecord:
    is_semitame: bool
    mu_pair: int
    mu_fg: int


def semitame_check(model):
    """Semitame means no interior bifurcation fiber, i.e. mu(f,g) = mu_0(fg)."""
    record = bifurcation_formula_check(model)
    semitame = not model.bifurcation_fibers
    if record.mu_pair < record.mu_fg:
        raise PathMismatch(f"mu(f,g) = {record.mu_pair} fell below mu_0(fg) = "
                           f"{record.mu_fg}; pencil data is inconsistent")
    if semitame != (record.mu_pair == record.mu_fg):
        raise PathMismatch("excess sum and bifurcation-fiber count disagree "
                           "about semitameness")
    return SemitameRecord(semitame, record.mu_pair, record.mu_fg)


def unfolding_dimension(model):
    """nu(f, g) = mu(f, g) - i_0(f, g): parameters of the versal unfolding."""
    record = bifurcation_formula_check(model)
    return record.mu_pair - model.i0
