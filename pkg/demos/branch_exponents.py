# Characteristic exponents and multiplicity sequences of curve branches.
#
# Everything here is read off the derived resolution: the multiplicity
# sequence is the sequence of infinitely-near multiplicities, and the
# characteristic exponents are recovered from it by the usual Euclidean
# bookkeeping.  The resultant oracle double-checks each Milnor number.

import folindex as fx


GERMS = (
    "y^2 - x^3",                # the cusp
    "(y^2 - x^3)^2 - x^5*y",    # two Puiseux pairs
    "y^3 - x^5",                # (3, 5) quasihomogeneous
    "y^4 - 2*x^4 - x^6",        # splits in a degree-4 extension
)

for expr in GERMS:
    data = fx.branch_analysis(expr)
    print(expr)
    print(f"  mu = {data.mu}  (oracle: {fx.oracle_milnor(expr)})")
    assert data.mu == fx.oracle_milnor(expr)
    orders, multiplicities = fx.vanishing_orders(data.s, data.a)
    print(f"  total multiplicities M = {orders}")
    print(f"  multiplicity sequence  = "
          f"{fx.curve_multiplicity_sequence(data.s, data.a.cholesky)}")
    for branch in data.branches:
        note = ""
        if branch.conjugates > 1:
            minpoly = fx.encode_value(branch.tangent)["minpoly"]
            note = (f"  [one of {branch.conjugates} conjugates, tangent"
                    f" a root of {minpoly}]")
        print(f"  branch {branch.name}: char exponents"
              f" {branch.char_exponents}, sequence"
              f" {branch.multiplicity_sequence}{note}")
    print()

# The Milnor number of a product sees both factors and their contact:
# mu(fg) = mu(f) + mu(g) + 2 i0(f, g) - 1.
f, g = "y^2 - x^3", "y^2 - x^5"
mu_f, mu_g = fx.oracle_milnor(f), fx.oracle_milnor(g)
i0 = fx.oracle_intersection(f, g)
product = f"({f}) * ({g})"
print(f"mu(f) = {mu_f}, mu(g) = {mu_g}, i0 = {i0}")
print(f"mu(fg) = {fx.oracle_milnor(product)}"
      f" = {mu_f} + {mu_g} + 2*{i0} - 1")
assert fx.oracle_milnor(product) == mu_f + mu_g + 2 * i0 - 1
