"""
Planar networks and the tropical Gelfand-Zeitlin map
====================================================

Upper triangular matrices come from weighted planar networks: the (i, j) entry
sums path weights from source i to sink j, and a minor sums over families of
vertex-disjoint paths.  Replace sums by max and products by sums and the solid
minors become a piecewise-linear map from edge weights to zeta's.

Run:  python demos/04_networks_and_tropical_gz.py
"""

import json
import os
import random
from fractions import Fraction

from tropoisson.gz import (check_rhombus, principal_chamber_cone, principal_chamber_test,
                           principal_zeta, tropical_argmax, tropical_gz_map, weights_from_zeta)
from tropoisson.networks import (build_gamma_s, determinant, distinguished_multipath,
                                 matrix_from_network, minor_in_deltas, minor_lindstrom,
                                 network_from_json, submatrix, symbolic_weighting)
from tropoisson.polyhedra import cone_interior_sample

here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, "..", "data", "three_line_network.json")) as fh:
    net, _ = network_from_json(json.load(fh))

# Symbolic weights: one variable per labelled edge.
reg, w = symbolic_weighting(net)
M = matrix_from_network(net, w)
print("three-line network, symbolic matrix:")
for row in M:
    print("  ", [str(x) for x in row])
print("minor rows {1,2} cols {2,3} by paths:", minor_lindstrom(net, w, [1, 2], [2, 3]))
print("                      by determinant:", determinant(submatrix(M, [1, 2], [2, 3])))

# The standard network for n = 3 and the minors in solid-minor coordinates.
n = 3
g = build_gamma_s(n)
print(f"\nGamma_s({n}) edge labels:", g.labels)
for I, J in (([1], [1]), ([1], [3]), ([1, 2], [2, 3])):
    print(f"  minor {I} x {J} =", minor_in_deltas(n, I, J))

# Tropical map on random weights: always weakly interlacing.
rng = random.Random(0)
w = {lab: Fraction(rng.randint(-5, 5)) for lab in g.labels}
vals = tropical_gz_map(w, n)
print("\nrandom weights", {k: str(v) for k, v in w.items()})
print("tropical minors", {kl: str(v) for kl, v in sorted(vals.items())})
print("rhombus violations:", check_rhombus(vals, n))

# In the principal chamber the maxima sit on the distinguished multi-paths and
# the map is linear with an inverse.
eta = cone_interior_sample(principal_chamber_cone(n))
w = dict(zip(g.labels, eta))
print("\nprincipal-chamber point", {k: str(v) for k, v in w.items()})
print("passes chamber test:", principal_chamber_test(w, n))
am = tropical_argmax(w, n)
print("argmax is distinguished everywhere:",
      all(am[kl] == [tuple(distinguished_multipath(n, *kl))] for kl in am))
z = principal_zeta(w, n)
print("zeta", {kl: str(v) for kl, v in sorted(z.items())})
print("weights recovered:", weights_from_zeta(z, n) == w)
