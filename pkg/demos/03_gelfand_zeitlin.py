"""
From G* to the Gelfand-Zeitlin system
=====================================

Tropicalizing G* gives a cone and a constant bracket.  In matched zeta
coordinates the cone is the Gelfand-Zeitlin cone, the zeta's Poisson-commute,
the top row is Casimir, and the zeta/phi pairing is triangular with -1/2 on
the diagonal.  A triangular change of angles turns it into action-angle form.

Run:  python demos/03_gelfand_zeitlin.py
"""

import time

from tropoisson.groups import GSTAR, GroupBracketSpec, assemble, matched_gz_cone, verify_gz
from tropoisson.gz import GZPattern, gz_cone, sigma, sigma_inverse, uv_quantities
from tropoisson.polyhedra import cone_interior_sample
from tropoisson.tropical import TropicalCoordinates, tropical_cone

# The GZ cone itself, in zeta = partial sums of a pattern's rows.
print("GZ cone, n = 3, normals over", gz_cone(3).coords)
for v in gz_cone(3).sorted_normals():
    print("  ", v)

lam = GZPattern(3, {(3, 1): 5, (3, 2): 2, (3, 3): -1, (2, 1): 4, (2, 2): 0, (1, 1): 1})
z = sigma(lam)
print("\npattern", [str(v) for v in lam.to_list()], "strictly interlacing:", lam.interlacing(strict=True))
print("zeta   ", [str(z[kl]) for kl in sorted(z)])
print("u, v   ", {kl: (str(u), str(v)) for kl, (u, v) in uv_quantities(z).items()})
assert sigma_inverse(z, 3) == lam

# An interior point of the G* cone, read back as a pattern.
P = assemble(GroupBracketSpec(3, GSTAR))
tc = TropicalCoordinates.of(P.registry)
ours = matched_gz_cone(tropical_cone(P), tc, 3)
eta = cone_interior_sample(ours)
print("\ninterior point of the G* cone:", [str(v) for v in eta])
print("as a pattern:", [str(v) for v in sigma_inverse(eta, 3).to_list()])

# The full check, n = 2..4.
for n in (2, 3, 4):
    t0 = time.perf_counter()
    rep = verify_gz(n)
    print()
    print(rep.summary(), f"[{time.perf_counter() - t0:.2f} s]")

X = verify_gz(3).checks[-1].detail["X"]
print("\nangle change matrix X (phi = X psi), n = 3:")
for row in X:
    print("  ", [str(v) for v in row])
