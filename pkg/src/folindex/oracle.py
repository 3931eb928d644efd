"""Brute-force oracles: resultants after random shears.

Everything the combinatorial engine computes has an independent check here.
The intersection number of two coprime germs is the x-valuation of their
y-resultant after a random unimodular change of coordinates; a bad shear
can only overcount, so the oracle keeps drawing shears until the minimal
value has been seen several times (three by default).  Milnor numbers are
intersection numbers of the partials, and the pencil Milnor number mu(f,g)
is the intersection number of the coefficients of g df - f dg.

Pencil bifurcation values are located exactly: the y-resultant of the
partials of f + t*g is a polynomial in (x, t) whose generic x-valuation is
the generic Milnor number, and every parameter where the Milnor number
jumps is a root of the lowest x-coefficient.  Roots are certified one
conjugacy class at a time by recomputing the Milnor number over the
algebraic extension Q(root); spurious roots (no jump) are reported, not
silently dropped.  Infinite values are returned as math.inf.
"""

import math
import random
from dataclasses import dataclass

import sympy
from sympy import QQ, Poly

from .errors import (CandidateUncertified, ChangeOfCoordinatesFailed,
                     ExtensionDegreeExceeded, InputError, OracleMismatch,
                     UnsupportedGerm)
from .germs import Germ, X, Y

T = sympy.Symbol("t")

INFINITE = math.inf


def _rng(seed):
    return random.Random(seed)


def _unimodular(rng):
    """Random 2x2 integer matrix with determinant +-1, entries in [-9, 9]."""
    while True:
        a, b, c, d = (rng.randint(-9, 9) for _ in range(4))
        if abs(a * d - b * c) == 1:
            return a, b, c, d


def _shear(expr, u):
    a, b, c, d = u
    return sympy.expand(expr.subs({X: a * X + b * Y, Y: c * X + d * Y},
                                  simultaneous=True))


def _as_poly(expr, domain):
    return Poly(expr, X, Y, domain=domain)


def _germ_order(p):
    """Least total degree of a monomial (infinite for the zero poly)."""
    monoms = p.monoms()
    if not monoms:
        return INFINITE
    return min(a + b for a, b in monoms)


def _y_order_at_axis(expr, domain):
    """Order in y of expr(0, y); INFINITE when the restriction vanishes."""
    restricted = sympy.expand(expr.subs(X, 0))
    if restricted == 0:
        return INFINITE
    p = Poly(restricted, Y, domain=domain)
    return min(m[0] for m in p.monoms())


def _x_valuation(p):
    """Least x-exponent of a univariate Poly in x; INFINITE for zero."""
    d = p.as_dict()
    if not d:
        return INFINITE
    return min(k[0] for k in d)


def _intersection(fexpr, gexpr, domain, rng, agreements, max_trials):
    """ord-of-resultant oracle over an explicit coefficient domain."""
    if fexpr == 0 and gexpr == 0:
        raise InputError("intersection number of the zero ideal")
    if fexpr == 0 or gexpr == 0:
        other = _as_poly(gexpr if fexpr == 0 else fexpr, domain)
        return INFINITE if _germ_order(other) > 0 else 0
    pf, pg = _as_poly(fexpr, domain), _as_poly(gexpr, domain)
    if _germ_order(pf) == 0 or _germ_order(pg) == 0:
        return 0   # one germ is a unit at the origin
    common = pf.gcd(pg)
    if common.eval((0, 0)) == 0:
        return INFINITE   # shared branch through the origin
    if common.total_degree() > 0:
        pf, pg = pf.exquo(common), pg.exquo(common)
    mf, mg = _germ_order(pf), _germ_order(pg)
    fe, ge = pf.as_expr(), pg.as_expr()

    values = []
    for _ in range(max_trials):
        u = _unimodular(rng)
        fu, gu = _shear(fe, u), _shear(ge, u)
        if _y_order_at_axis(fu, domain) != mf or _y_order_at_axis(gu, domain) != mg:
            continue   # tangent shear; the valuation would overcount
        res = Poly(fu, Y, X, domain=domain).resultant(
            Poly(gu, Y, X, domain=domain))
        v = _x_valuation(res)
        if v is INFINITE:
            continue
        values.append(v)
        if values.count(min(values)) >= agreements:
            return min(values)
    if not values:
        raise ChangeOfCoordinatesFailed(
            f"all {max_trials} random shears were tangent to a germ")
    raise OracleMismatch(f"no {agreements}-fold agreement on the intersection "
                         f"number after {max_trials} shears; saw {values}")


def _coerce(f):
    return f if isinstance(f, Germ) else Germ(f)


def oracle_intersection(f, g, seed=0, agreements=3, max_trials=14):
    """i_0(f, g) by sheared resultant valuation; math.inf on a common branch."""
    f, g = _coerce(f), _coerce(g)
    return _intersection(f.expr, g.expr, QQ, _rng(seed), agreements, max_trials)


def _milnor_expr(fexpr, domain, rng, agreements=3, max_trials=14):
    fx = sympy.expand(sympy.diff(fexpr, X))
    fy = sympy.expand(sympy.diff(fexpr, Y))
    return _intersection(fx, fy, domain, rng, agreements, max_trials)


def oracle_milnor(f, seed=0):
    """mu_0(f) = i_0(f_x, f_y); math.inf for a non-isolated singularity."""
    f = _coerce(f)
    if not f.vanishes():
        return 0
    return _milnor_expr(f.expr, QQ, _rng(seed), 3, 14)


def oracle_mu_pair(f, g, seed=0):
    """mu(f, g) = i_0 of the coefficients of the 1-form g df - f dg."""
    f, g = _coerce(f), _coerce(g)
    p = sympy.expand(g.expr * sympy.diff(f.expr, X)
                     - f.expr * sympy.diff(g.expr, X))
    q = sympy.expand(g.expr * sympy.diff(f.expr, Y)
                     - f.expr * sympy.diff(g.expr, Y))
    if p == 0 and q == 0:
        raise InputError("the two germs span no pencil (proportional)")
    return _intersection(p, q, QQ, _rng(seed), 3, 14)


# ---------------------------------------------------------------------------
# pencil bifurcation values

@dataclass(frozen=True)
class Candidate:
    """One Galois conjugacy class of parameter values t with Milnor jump data.

    `minpoly` is irreducible over Q in t; `value` is its first root (a
    Rational when the degree is 1), `conjugates` the number of roots, `mu`
    the common Milnor number of the members at those parameters, and
    `status` either "bifurcation" (mu > generic) or "spurious" (no jump;
    kept for the record).
    """

    minpoly: object
    value: object
    conjugates: int
    mu: int
    status: str


@dataclass(frozen=True)
class PencilBifurcationData:
    mu_generic: int
    candidates: tuple
    mu_f: object
    mu_g: object
    samples: tuple     # ((t, mu), (t, mu)) certifying the generic value
    shear: tuple

    def bifurcation_values(self):
        return tuple(c for c in self.candidates if c.status == "bifurcation")


def _certify_candidate(f, g, m, rng, max_ext_degree):
    deg = m.degree()
    if deg > max_ext_degree:
        raise ExtensionDegreeExceeded(
            f"bifurcation value with minimal polynomial {m.as_expr()} of degree "
            f"{deg} exceeds the extension budget {max_ext_degree}")
    if deg == 1:
        a1, a0 = m.all_coeffs()
        tau = sympy.Rational(-a0, a1)
        member = f.expr + tau * g.expr
        mu = _milnor_expr(member, QQ, rng)
        return tau, mu
    alpha = sympy.CRootOf(m.as_expr(), T, 0)
    field = QQ.algebraic_field(alpha)
    member = sympy.expand(f.expr + alpha * g.expr)
    mu = _milnor_expr(member, field, rng)
    return alpha, mu


def bifurcation_candidates(f, g, seed=0, max_ext_degree=8, max_shears=6,
                           prune=True):
    """Locate and certify the parameters where mu_0(f + t g) jumps.

    Returns PencilBifurcationData; raises UnsupportedGerm when the pencil
    has a non-reduced member (infinite Milnor number somewhere, common
    branch included), OracleMismatch when no shear certifies a generic
    value, CandidateUncertified on an impossible sub-generic candidate.
    With prune=False the shear-dependent spurious roots of the low
    coefficient are kept (and certified, hence flagged) instead of being
    removed by a second independent shear.
    """
    f, g = _coerce(f), _coerce(g)
    rng = _rng(seed)
    if not (f.vanishes() and g.vanishes()):
        raise InputError("pencil generators must vanish at the origin")
    if _intersection(f.expr, g.expr, QQ, rng, 3, 14) is INFINITE:
        raise UnsupportedGerm("generators share a branch; every member of the "
                              "pencil is non-reduced")

    h = f.expr + T * g.expr
    p0 = sympy.expand(sympy.diff(h, X))
    q0 = sympy.expand(sympy.diff(h, Y))

    def low_coefficient(u):
        res = sympy.resultant(_shear(p0, u), _shear(q0, u), Y)
        if res == 0:
            raise UnsupportedGerm("the generic member has a non-isolated "
                                  "singularity")
        coeffs = {k[0]: c for k, c in Poly(res, X).as_dict().items()}
        v = min(coeffs)
        return v, Poly(coeffs[v], T, domain=QQ)

    for _ in range(max_shears):
        u = _unimodular(rng)
        v_gen, c_low = low_coefficient(u)

        samples = []
        while len(samples) < 2:
            tau = sympy.Rational(rng.randint(-99, 99), rng.randint(1, 9))
            if tau == 0 or c_low.eval(tau) == 0:
                continue
            samples.append((tau, _milnor_expr(f.expr + tau * g.expr, QQ, rng)))
        if all(mu == v_gen for _, mu in samples):
            break
    else:
        raise OracleMismatch("no shear reproduced the generic Milnor number "
                             "on random members")

    # every true bifurcation value is a root of the low coefficient for any
    # shear with the certified generic valuation, so intersecting two
    # independent shears prunes shear-dependent spurious roots
    if prune:
        for _ in range(max_shears):
            v2, c2 = low_coefficient(_unimodular(rng))
            if v2 == v_gen:
                c_low = c_low.gcd(c2)
                break

    mu_gen = v_gen
    candidates = []
    if c_low.degree() > 0:
        _, factors = c_low.factor_list()
        for m, _mult in sorted(factors, key=lambda fm: (fm[0].degree(),
                                                        str(fm[0].as_expr()))):
            if m.degree() == 0:
                continue
            value, mu = _certify_candidate(f, g, m, rng, max_ext_degree)
            if mu is INFINITE:
                raise UnsupportedGerm(f"the member at t = {value} is "
                                      "non-reduced; out of scope")
            if mu < mu_gen:
                raise CandidateUncertified(
                    f"candidate t = {value} has mu = {mu} below the certified "
                    f"generic value {mu_gen}")
            candidates.append(Candidate(
                minpoly=m, value=value, conjugates=m.degree(), mu=mu,
                status="bifurcation" if mu > mu_gen else "spurious"))

    mu_f, mu_g = oracle_milnor(f, seed=seed + 1), oracle_milnor(g, seed=seed + 2)
    if mu_f is INFINITE or mu_g is INFINITE:
        raise UnsupportedGerm("a generator is non-reduced; out of scope")
    return PencilBifurcationData(mu_generic=mu_gen,
                                 candidates=tuple(candidates),
                                 mu_f=mu_f, mu_g=mu_g,
                                 samples=tuple(samples), shear=u)
