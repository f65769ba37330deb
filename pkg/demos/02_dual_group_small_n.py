"""
The dual Poisson-Lie group in solid-minor coordinates
=====================================================

G* consists of pairs (g, f) of upper and lower triangular matrices.  Its
bracket is written here in the solid minors Delta^(k)_l of g: real for k = l,
complex otherwise, with the conjugate ~Delta standing in for the matching
minor of f^-1.

For n = 2 the whole story fits on a screen.

Run:  python demos/02_dual_group_small_n.py [n]
"""

import sys

from tropoisson.groups import (BPLUS, GSTAR, GSTAR0, GroupBracketSpec, assemble,
                               check_log_canonical_part_matches_gstar0)
from tropoisson.poisson import check_jacobi, check_reality
from tropoisson.tropical import casimirs, constant_bracket, tropical_cone

n = int(sys.argv[1]) if len(sys.argv) > 1 else 2

for family in (BPLUS, GSTAR0, GSTAR):
    P = assemble(GroupBracketSpec(n, family))
    print(f"--- {family}, n = {n}: {P}")
    print(P.format() or "(all brackets vanish)")

P = assemble(GroupBracketSpec(n, GSTAR))

# The G* bracket is real, satisfies Jacobi, and its log-canonical part is G0*.
print("\nreality:", check_reality(P).passed)
count, bad = check_jacobi(P)
print(f"Jacobi on {count} triples:", "ok" if not bad else bad[:3])
print(check_log_canonical_part_matches_gstar0(n).summary())

# Tropicalize.  Real generators Delta^(k)_k get xi coordinates; they play the
# role of zeta^(k)_k.
cone = tropical_cone(P)
cb = constant_bracket(P)
print("\ncoordinates:", cb.coords.names)
print("cone normals:")
for v in cone.sorted_normals():
    print("  ", v)
print("nonzero limit brackets:")
names = cb.coords.names
for a in range(len(names)):
    for b in range(a + 1, len(names)):
        if cb.matrix[a][b]:
            print(f"  {{{names[a]}, {names[b]}}} = {cb.matrix[a][b]}")
print("Casimirs:", casimirs(cb))
