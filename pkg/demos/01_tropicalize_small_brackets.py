"""
Tropicalizing small Poisson brackets
====================================

Write x = exp(t xi) for real variables and z = exp(t zeta + i phi) for complex
ones, rescale the bracket by t, and let t grow.  On an open cone of (xi, zeta)
the result tends to a constant bracket.  This script walks through three small
brackets, then watches the limit happen numerically.

Run:  python demos/01_tropicalize_small_brackets.py
"""

from fractions import Fraction

from tropoisson.arith import I, LaurentPoly, VarRegistry
from tropoisson.poisson import PoissonStructure, check_jacobi
from tropoisson.polyhedra import cone_interior_sample, cone_is_empty
from tropoisson.tropical import constant_bracket, limit_sample, max_deviation, tropical_cone

# %% A two-variable bracket
# {x1, x2} = x1 x2 + x1^2 + x2.  The first term is log-canonical; the other two
# must be dominated, which cuts out the cone.
reg = VarRegistry.build(real=["x1", "x2"])
x1, x2 = LaurentPoly.var(reg, "x1"), LaurentPoly.var(reg, "x2")
P = PoissonStructure(reg, {("x1", "x2"): x1 * x2 + x1 ** 2 + x2})
print(P.format())

cone = tropical_cone(P)
print("cone normals (n . xi > 0):", cone.sorted_normals())
cb = constant_bracket(P)
print("limit bracket {xi1, xi2} =", cb.entry("xi(x1)", "xi(x2)"))

# %% An empty cone
# x1 (1 + x2^2) asks for xi2 > 0 and xi2 < 0 at once.
Q = PoissonStructure(reg, {("x1", "x2"): x1 * (1 + x2 ** 2)})
print("\n" + Q.format())
print("cone empty:", cone_is_empty(tropical_cone(Q)))

# %% A complex variable
# One real x and one complex z.  The z, ~z bracket has no log-canonical part,
# yet it still contributes to the cone: zeta must beat |xi|.
creg = VarRegistry.build(real=["x"], complex_=["z"])
x, z, zb = (LaurentPoly.var(creg, v) for v in ("x", "z", "~z"))
C = PoissonStructure(creg, {
    ("x", "z"): (x * z).scale(I),
    ("x", "~z"): (x * zb).scale(-I),
    ("z", "~z"): (x ** 2 - x ** -2).scale(I),
})
print("\n" + C.format())
print("Jacobi:", "ok" if not check_jacobi(C)[1] else "fails")
ccone = tropical_cone(C)
ccb = constant_bracket(C)
print("cone normals over", ccone.coords or ccb.coords.names[:2], ":", ccone.sorted_normals())
for row_name, row in zip(ccb.coords.names, ccb.matrix):
    print(f"  {row_name:>8}", [str(v) for v in row])

# %% Watching the limit
# Pick an integer point with slack at least 1 and evaluate t * {xi_a, xi_b}
# numerically.  The gap to the constant bracket decays like exp(-t * slack).
eta = cone_interior_sample(cone)
print("\nsample point", [str(v) for v in eta], "slack", cone.min_slack(eta))
rows = limit_sample(P, eta, None, (1, 2, 5, 10, 20))
for t, dev in sorted(max_deviation(rows).items()):
    print(f"  t = {t:>4g}   deviation = {dev:.3e}")

eta = [Fraction(0), Fraction(3)]
rows = limit_sample(C, eta, {"z": 0.4}, (1, 2, 5, 10), cone=ccone)
print("complex example at", [str(v) for v in eta])
for t, pair, scaled, lim, dev in rows:
    print(f"  t = {t:>4g}  {pair:<22} {complex(scaled).real:+.6f}  -> {lim:+.1f}")
