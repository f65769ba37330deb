"""The Poisson structures of B+, G0* and G* in solid-minor coordinates, and the
end-to-end check that G* tropicalizes to the Gelfand-Zeitlin system."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import COMPLEX, I, REAL, GaussianRational, LaurentPoly, VarRegistry, lp_conjugate
from .gz import gz_cone, zeta_keys
from .networks import delta_label, delta_name, delta_registry, minor_in_deltas, monomial_grading
from .poisson import PoissonStructure, check_reality, pair_monomial, split_log_canonical
from .polyhedra import StrictCone, cone_equal, cone_is_empty
from .report import Report
from .rmatrix import (angle_coefficient, bracket_sandwich, delta_delta_coefficient,
                      delta_lambda_coefficient, delta_symbol, lambda_lambda_coefficient,
                      lambda_symbol, simplify_triangular, FINV, G)
from .tropical import (casimirs, check_liouville_structure, constant_bracket,
                       tropical_cone)

BPLUS = "bplus"
GSTAR0 = "gstar0"
GSTAR = "gstar"
FAMILIES = (BPLUS, GSTAR0, GSTAR)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class GroupBracketSpec:
    n: int
    family: str

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")

    @property
    def registry(self) -> VarRegistry:
        return group_registry(self.n, self.family)


@lru_cache(maxsize=None)
def group_registry(n: int, family: str) -> VarRegistry:
    """B+: every Delta^(k)_l real.  G0*, G*: Delta^(k)_k real, Delta^(k)_l (k > l)
    complex with conjugate ~Delta^(k)_l standing for Lambda^(k)_l."""
    if family == BPLUS:
        return delta_registry(n)
    keys = [(k, l) for k in range(1, n + 1) for l in range(1, k + 1)]
    specs = [(delta_name(k, l), REAL if k == l else COMPLEX) for k, l in keys]
    labels = {delta_name(k, l): delta_label(k, l) for k, l in keys}
    indices = {delta_name(k, l): (k, l) for k, l in keys}
    return VarRegistry.ordered(specs, labels=labels, indices=indices)


def _mono(reg, *pairs):
    e = [0] * len(reg)
    for name in pairs:
        e[reg.index(name)] += 1
    return tuple(e)


def _log_canonical(reg, u, v, c):
    return LaurentPoly._raw(reg, {_mono(reg, u, v): GaussianRational.coerce(c)}) if c else None


def minor_poly(sym, n, reg) -> LaurentPoly:
    """A g-minor in Delta variables; an f^-1 minor via (f^-1)_{ST} = conj(g_{TS})."""
    if sym.tag == G:
        return minor_in_deltas(n, sym.rows, sym.cols, reg)
    return lp_conjugate(minor_in_deltas(n, sym.cols, sym.rows, reg))


def expression_to_poly(expr, n, reg) -> LaurentPoly:
    out = LaurentPoly.zero(reg)
    for key, c in expr.terms.items():
        t = LaurentPoly.const(reg, c)
        for s in key:
            t = t * minor_poly(s, n, reg)
            if not t:
                break
        out = out + t
    return out


def mixed_gstar_expression(n, k, l, p, q):
    """i * {g-minor Delta^(k)_l, f^-1-minor Lambda^(p)_q} after triangular vanishing."""
    e = bracket_sandwich(delta_symbol(n, k, l), lambda_symbol(n, p, q), n)
    return simplify_triangular(e, n).scale(I)


def assemble(spec: GroupBracketSpec) -> PoissonStructure:
    return _assemble(spec.n, spec.family)


@lru_cache(maxsize=None)
def _assemble(n, family):
    reg = group_registry(n, family)
    keys = [(k, l) for k in range(1, n + 1) for l in range(1, k + 1)]
    table = {}
    if family == BPLUS:
        for a, (k, l) in enumerate(keys):
            for p, q in keys[a + 1:]:
                u, v = delta_name(k, l), delta_name(p, q)
                entry = _log_canonical(reg, u, v, delta_delta_coefficient(n, k, l, p, q))
                if entry is not None:
                    table[(u, v)] = entry
        return PoissonStructure(reg, table)

    iu = I
    cplx = [(k, l) for k, l in keys if k > l]
    # g-g pairs (real and complex Delta's)
    for a, (k, l) in enumerate(keys):
        for p, q in keys[a + 1:]:
            u, v = delta_name(k, l), delta_name(p, q)
            c = delta_delta_coefficient(n, k, l, p, q)
            entry = _log_canonical(reg, u, v, iu * c)
            if entry is not None:
                table[(u, v)] = entry
    # Lambda-Lambda pairs between conjugates
    for a, (k, l) in enumerate(cplx):
        for p, q in cplx[a + 1:]:
            u, v = "~" + delta_name(k, l), "~" + delta_name(p, q)
            c = lambda_lambda_coefficient(n, k, l, p, q)
            entry = _log_canonical(reg, u, v, iu * c)
            if entry is not None:
                table[(u, v)] = entry
    # mixed pairs: g-minor Delta^(k)_l (any) with Lambda^(p)_q = ~Delta^(p)_q
    for k, l in keys:
        for p, q in cplx:
            u, v = delta_name(k, l), "~" + delta_name(p, q)
            if family == GSTAR0:
                entry = _log_canonical(reg, u, v, iu * delta_lambda_coefficient(n, k, l, p, q))
            else:
                entry = expression_to_poly(mixed_gstar_expression(n, k, l, p, q), n, reg)
            if entry:
                table[(u, v)] = entry
    return PoissonStructure(reg, table)


def check_log_canonical_part_matches_gstar0(n: int) -> Report:
    rep = Report(f"log-canonical part of G* equals G0*, n = {n}")
    gs = assemble(GroupBracketSpec(n, GSTAR))
    g0 = assemble(GroupBracketSpec(n, GSTAR0))
    reg = gs.registry
    a, b = split_log_canonical(gs), split_log_canonical(g0)
    bad = []
    for i, j in gs.pairs():
        if a.coefficient(i, j) != b.coefficient(i, j):
            bad.append((reg[i].name, reg[j].name, str(a.coefficient(i, j)),
                        str(b.coefficient(i, j))))
    rep.add("pi(G*) = pi(G0*) pair by pair", not bad, {"mismatches": bad})
    rep.add("G0* has no remainder", not b.remainder, {"pairs": len(b.remainder)})

    def deg(m):
        # conjugates carry the grading of their partner
        e = [0] * len(delta_registry(n))
        pos = {delta_registry(n)[x].index: x for x in range(len(delta_registry(n)))}
        for x, k in enumerate(m):
            if k:
                e[pos[reg[x].index]] += k
        return monomial_grading(n, e)

    low = []
    for (i, j), rem in a.remainder.items():
        base = deg(pair_monomial(reg, i, j))
        for m in rem.terms:
            if not deg(m) > base:
                low.append((reg[i].name, reg[j].name, m))
    rep.add("remainder monomials have higher grading", not low, {"violations": low})
    return rep


def _coord(tc, kind, key):
    for c, (kd, ky) in enumerate(zip(tc.kinds, tc.keys)):
        if ky == key and (kd == kind or (kind == "zeta" and kd == "xi")):
            return c
    raise KeyError((kind, key))


def matched_gz_cone(cone: StrictCone, tc, n: int) -> StrictCone:
    """Re-express the G* cone in the coordinate order of ``gz_cone(n)``."""
    perm = [_coord(tc, "zeta", kl) for kl in zeta_keys(n)]
    normals = frozenset(tuple(v[c] for c in perm) for v in cone.normals)
    return StrictCone(cone.dim, normals, gz_cone(n).coords)


def _solve_lower(A, B):
    """X with A X = B for lower triangular A (exact)."""
    m = len(A)
    X = [[Fraction(0)] * len(B[0]) for _ in range(m)]
    for col in range(len(B[0])):
        for r in range(m):
            s = B[r][col] - sum(A[r][c] * X[c][col] for c in range(r))
            X[r][col] = s / A[r][r]
    return X


def verify_gz(n: int, structure: PoissonStructure | None = None) -> Report:
    """Cone, constant bracket, Casimirs, Liouville form, and the angle change."""
    rep = Report(f"G* tropicalizes to the Gelfand-Zeitlin system, n = {n}")
    P = structure if structure is not None else assemble(GroupBracketSpec(n, GSTAR))
    cone = tropical_cone(P)
    from .tropical import TropicalCoordinates
    tc = TropicalCoordinates.of(P.registry)

    # (1) cone
    gz = gz_cone(n)
    ours = matched_gz_cone(cone, tc, n)
    if cone_is_empty(ours):
        rep.add("cone equals the GZ cone", False, {"reason": "tropical cone is empty"})
    else:
        eq = cone_equal(ours, gz)
        rep.add("cone equals the GZ cone", eq, {"normals": ours.sorted_normals()})

    # (2) constant bracket against 1/4 (eps(k-p) - 1)(C - R)
    try:
        cb = constant_bracket(P)
    except ValueError as exc:
        rep.add("constant bracket matches the closed form", False, {"error": str(exc)})
        return rep
    keys = zeta_keys(n)
    phis = [(p, q) for p, q in keys if p > q]
    bad = []
    for k, l in keys:
        z = _coord(tc, "zeta", (k, l))
        for p, q in phis:
            want = angle_coefficient(n, k, l, p, q)
            got = cb.matrix[z][_coord(tc, "phi", (p, q))]
            if got != want:
                bad.append({"pair": (f"zeta^({k})_{l}", f"phi^({p})_{q}"),
                            "expected": want, "found": got})
    names = tc.names
    for a in range(len(names)):
        for b in range(len(names)):
            if (tc.kinds[a] == "phi") == (tc.kinds[b] == "phi") and cb.matrix[a][b]:
                bad.append({"pair": (names[a], names[b]), "expected": 0,
                            "found": cb.matrix[a][b]})
    rep.add("constant bracket matches the closed form", not bad, {"mismatches": bad})

    # (3) Casimirs
    found = set(casimirs(cb))
    want = {names[_coord(tc, "zeta", (n, l))] for l in range(1, n + 1)}
    rep.add("Casimirs are exactly zeta^(n)_l", found == want,
            {"found": sorted(found), "expected": sorted(want)})

    # (4) Liouville structure
    if n >= 2:
        lv = check_liouville_structure(cb, n)
        rep.add("pairing is lower triangular with -1/2 diagonal", lv.passed,
                {c.name: c.passed for c in lv.checks})

        # (5) angle change phi = X psi with X unit upper triangular
        zs = [(k, l) for k in range(n - 1, 0, -1) for l in range(1, k + 1)]
        ps = [(p, q) for p in range(n, 1, -1) for q in range(1, p)]
        Pm = [[cb.matrix[_coord(tc, "zeta", z)][_coord(tc, "phi", p)] for p in ps] for z in zs]
        pos = {z: i for i, z in enumerate(zs)}
        S = [[Fraction(0)] * len(zs) for _ in zs]
        for (k, l), r in pos.items():
            for a in range(1, l + 1):
                S[r][pos[(k, a)]] = HALF
        Xt = [[-x for x in row] for row in _solve_lower(S, Pm)]
        X = [list(r) for r in zip(*Xt)]
        unit_upper = all(X[i][i] == 1 for i in range(len(X))) and all(
            X[i][j] == 0 for i in range(len(X)) for j in range(i))
        # {lambda_a, psi_b} recomputed from P = -S X^T
        recon = [[-sum(S[i][a] * X[j][a] for a in range(len(zs))) for j in range(len(zs))]
                 for i in range(len(zs))]
        rep.add("angle change phi = psi + higher psi's exists", unit_upper and recon == Pm,
                {"X": X})
    else:
        rep.add("pairing is lower triangular with -1/2 diagonal", True, {"note": "n = 1"})
        rep.add("angle change phi = psi + higher psi's exists", True, {"note": "n = 1"})
    return rep


def check_extremal_minors(n: int) -> Report:
    """The two squared moduli at weight -2l(k-l)+2 inside {Delta^(k)_l, ~Delta^(k)_l}:
    column-shifted minor with +i, row-shifted minor with -i."""
    rep = Report(f"extremal minors in {{Delta, ~Delta}}, n = {n}")
    from .rmatrix import MinorSymbol
    for k in range(2, n + 1):
        for l in range(1, k):
            e = mixed_gstar_expression(n, k, l, k, l)
            rows = list(range(n - k + 1, n - k + l + 1))
            cols = list(range(n - l + 1, n + 1))
            col_shift = MinorSymbol(G, tuple(rows), tuple([n - l] + cols[1:]))
            row_shift = MinorSymbol(G, tuple(rows[:-1] + [rows[-1] + 1]), tuple(cols))
            for sym, want in ((col_shift, I), (row_shift, -I)):
                key = tuple(sorted((sym, MinorSymbol(FINV, sym.cols, sym.rows))))
                got = e.terms.get(key)
                rep.add(f"{sym} in (k, l) = ({k}, {l})", got == want,
                        {"expected": str(want), "found": str(got)})
    return rep


def gstar_reality(n: int):
    return check_reality(assemble(GroupBracketSpec(n, GSTAR)))
