"""Tropicalization: the cone C(pi; x, z), the constant bracket pi_inf, and the
numerical scaling limit that connects them.

Coordinates: each real variable x_i contributes xi_i (x_i = exp(t xi_i)); each
complex z_a contributes zeta_a and an angle phi_a (z_a = exp(t zeta_a + i phi_a)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .arith import COMPLEX, CONJ, REAL, VarRegistry
from .poisson import PoissonStructure, check_reality, split_log_canonical
from .polyhedra import StrictCone, primitive
from .report import Report


class RealityError(ValueError):
    pass


@dataclass(frozen=True)
class TropicalCoordinates:
    """Cone coordinates (one per real or complex variable) followed by angles."""

    names: tuple[str, ...]
    kinds: tuple[str, ...]      # "xi", "zeta" or "phi"
    sources: tuple[int, ...]    # registry index of the variable each coordinate comes from
    cone_dim: int
    keys: tuple = ()            # structured key (e.g. (k, l)) of each source variable

    @classmethod
    def of(cls, registry: VarRegistry) -> "TropicalCoordinates":
        names, kinds, sources = [], [], []
        for i, v in enumerate(registry):
            if v.kind == REAL:
                names.append(f"xi({v.name})")
                kinds.append("xi")
                sources.append(i)
            elif v.kind == COMPLEX:
                names.append(f"zeta({v.name})")
                kinds.append("zeta")
                sources.append(i)
        dim = len(names)
        for i, v in enumerate(registry):
            if v.kind == COMPLEX:
                names.append(f"phi({v.name})")
                kinds.append("phi")
                sources.append(i)
        keys = tuple(registry[s].index for s in sources)
        return cls(tuple(names), tuple(kinds), tuple(sources), dim, keys)

    def __len__(self):
        return len(self.names)

    def cone_index(self, registry: VarRegistry) -> list[int]:
        """For every registry variable, the cone coordinate carrying its modulus."""
        pos = {s: c for c, (s, k) in enumerate(zip(self.sources, self.kinds)) if k != "phi"}
        out = []
        for i, v in enumerate(registry):
            out.append(pos[registry.partner_index(i)] if v.kind == CONJ else pos[i])
        return out

    def angle_index(self, registry: VarRegistry) -> dict[int, int]:
        return {s: c for c, (s, k) in enumerate(zip(self.sources, self.kinds)) if k == "phi"}

    def find(self, kind: str, var_index) -> int:
        """Coordinate of the given kind attached to variable index ``var_index``."""
        for c, (k, s) in enumerate(zip(self.kinds, self.sources)):
            if k == kind and s == var_index:
                return c
        raise KeyError((kind, var_index))


@dataclass(frozen=True)
class ConstantBracket:
    coords: TropicalCoordinates
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.coords)
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise ValueError("bracket matrix does not match the coordinates")
        for i in range(n):
            for j in range(n):
                if self.matrix[i][j] != -self.matrix[j][i]:
                    raise ValueError("constant bracket must be antisymmetric")

    def entry(self, a: str, b: str) -> Fraction:
        ia = self.coords.names.index(a)
        ib = self.coords.names.index(b)
        return self.matrix[ia][ib]

    def __getitem__(self, ij):
        i, j = ij
        return self.matrix[i][j]


def tropical_cone(P: PoissonStructure) -> StrictCone:
    """Intersection over all pairs (u, v) and remainder monomials m of
    <n_uv - n(m), eta> > 0, where z and ~z exponents both count on zeta."""
    reg = P.registry
    tc = TropicalCoordinates.of(reg)
    cidx = tc.cone_index(reg)
    dim = tc.cone_dim
    normals = set()
    lc = split_log_canonical(P)
    for (i, j), rem in lc.remainder.items():
        base = [0] * dim
        base[cidx[i]] += 1
        base[cidx[j]] += 1
        for m in rem.terms:
            v = list(base)
            for r, e in enumerate(m):
                if e:
                    v[cidx[r]] -= e
            if any(v):
                normals.add(primitive(v))
            else:
                # 0 > 0: no point survives; encode as a pair of opposite normals
                e1 = [1] + [0] * (dim - 1)
                normals.add(tuple(e1))
                normals.add(tuple(-x for x in e1))
    return StrictCone(dim, frozenset(normals), tc.names[:dim])


def constant_bracket(P: PoissonStructure) -> ConstantBracket:
    """pi_inf: pi_ij on xi in the all-real case; in the complex case
    {xi_i, phi_a} = Im pi_ia and {zeta_a, phi_b} = Im(pi_ab - pi_a~b) / 2."""
    reg = P.registry
    tc = TropicalCoordinates.of(reg)
    n = len(tc)
    M = [[Fraction(0)] * n for _ in range(n)]
    lc = split_log_canonical(P)

    def put(a, b, val):
        M[a][b] = val
        M[b][a] = -val

    if not reg.has_complex:
        for (i, j), c in lc.pi.items():
            if c.im != 0:
                raise RealityError(f"non-real coefficient {c} for pair "
                                   f"({reg[i].name}, {reg[j].name}) in an all-real structure")
            put(tc.find("xi", i), tc.find("xi", j), c.re)
        return ConstantBracket(tc, tuple(tuple(r) for r in M))

    rep = check_reality(P)
    if not rep.passed:
        cond, pair = rep.failures[0]
        raise RealityError(f"reality condition violated: {cond} at {pair}")
    real = [i for i, v in enumerate(reg) if v.kind == REAL]
    cplx = [i for i, v in enumerate(reg) if v.kind == COMPLEX]
    for i in real:
        for a in cplx:
            put(tc.find("xi", i), tc.find("phi", a), lc.coefficient(i, a).im)
    for a in cplx:
        for b in cplx:
            val = (lc.coefficient(a, b).im - lc.coefficient(a, reg.partner_index(b)).im) / 2
            za, pb = tc.find("zeta", a), tc.find("phi", b)
            if val or M[za][pb]:
                put(za, pb, val)
    return ConstantBracket(tc, tuple(tuple(r) for r in M))


def casimirs(cb: ConstantBracket) -> list[str]:
    return [name for name, row in zip(cb.coords.names, cb.matrix) if not any(row)]


def _coordinate_forms(reg: VarRegistry, tc: TropicalCoordinates, t: float):
    """Each coordinate as a linear form in the logarithms log(u) of the generators."""
    forms = []
    for kind, s in zip(tc.kinds, tc.sources):
        if kind == "xi":
            forms.append({s: 1 / t})
        elif kind == "zeta":
            forms.append({s: 1 / (2 * t), reg.partner_index(s): 1 / (2 * t)})
        else:
            forms.append({s: 1 / 2j, reg.partner_index(s): -1 / 2j})
    return forms


def scaled_brackets(P: PoissonStructure, eta: Sequence, phis: Mapping | None, t: float):
    """Exact (float-evaluated) brackets of the limit coordinates at parameter t,
    multiplied by t^2 (all-real) or t (complex case)."""
    reg = P.registry
    tc = TropicalCoordinates.of(reg)
    cidx = tc.cone_index(reg)
    phis = phis or {}
    logs = []
    for i, v in enumerate(reg):
        re = t * float(eta[cidx[i]])
        if v.kind == REAL:
            logs.append(complex(re, 0))
        elif v.kind == COMPLEX:
            logs.append(complex(re, float(phis.get(v.name, 0.0))))
        else:
            logs.append(complex(re, -float(phis.get(v.partner, 0.0))))
    n = len(reg)
    # B[u][v] = {u, v} / (u v), evaluated term by term in log space
    B = [[0j] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            p = P.bracket(i, j)
            s = 0j
            for m, c in p.terms.items():
                ex = sum(e * logs[r] for r, e in enumerate(m) if e) - logs[i] - logs[j]
                s += complex(c) * cmath.exp(ex)
            B[i][j] = s
            B[j][i] = -s
    forms = _coordinate_forms(reg, tc, t)
    scale = t if reg.has_complex else t * t
    out = {}
    for a in range(len(tc)):
        for b in range(a + 1, len(tc)):
            val = 0j
            for u, cu in forms[a].items():
                for v, cv in forms[b].items():
                    val += cu * cv * B[u][v]
            out[(a, b)] = scale * val
    return tc, out


def limit_sample(P: PoissonStructure, eta: Sequence, phis: Mapping | None = None,
                 ts: Sequence[float] = (2, 5, 10, 20), *, cone: StrictCone | None = None):
    """Deviation rows (t, pair, scaled value, limit value, abs deviation).

    ``eta`` must have slack >= 1 on every normal of the tropical cone.
    """
    cone = cone if cone is not None else tropical_cone(P)
    eta = [Fraction(x) for x in eta]
    if len(eta) != cone.dim:
        raise ValueError(f"eta has length {len(eta)}, expected {cone.dim}")
    bad = [n for n in cone.normals if sum(a * b for a, b in zip(n, eta)) < 1]
    if bad:
        raise ValueError(f"eta is not inside the cone with slack >= 1 (violates {bad[0]})")
    cb = constant_bracket(P)
    rows = []
    for t in ts:
        tc, vals = scaled_brackets(P, eta, phis, float(t))
        for (a, b), v in vals.items():
            lim = float(cb.matrix[a][b])
            scaled = v.real if abs(v.imag) < 1e-300 else v
            rows.append((float(t), f"{tc.names[a]},{tc.names[b]}", scaled, lim, abs(v - lim)))
    return rows


def max_deviation(rows) -> dict[float, float]:
    out = {}
    for t, _, _, _, dev in rows:
        out[t] = max(out.get(t, 0.0), dev)
    return out


def deviation_decreasing(dev: Mapping[float, float], floor: float = 0.0) -> bool:
    """Strictly decreasing in t, except that values at or below ``floor``
    (float roundoff) count as converged."""
    ts = sorted(dev)
    return all(dev[b] < dev[a] or dev[b] <= floor for a, b in zip(ts, ts[1:]))


def check_liouville_structure(cb: ConstantBracket, n: int) -> Report:
    """Pairing matrix {zeta_M, phi_N} in the order 'higher k first, then smaller l'
    must be lower triangular with -1/2 on the diagonal."""
    if n < 2:
        raise ValueError("need n >= 2 for a nontrivial pairing")
    tc = cb.coords
    zeta_of, phi_of = {}, {}
    for c, (kind, key) in enumerate(zip(tc.kinds, tc.keys)):
        if key is None:
            continue
        if kind == "phi":
            phi_of[key] = c
        else:
            zeta_of[key] = c
    zetas = [(k, l) for k in range(n - 1, 0, -1) for l in range(1, k + 1)]
    phis = [(p, q) for p in range(n, 1, -1) for q in range(1, p)]
    rep = Report(f"Liouville structure, n = {n}")
    missing = [z for z in zetas if z not in zeta_of] + [p for p in phis if p not in phi_of]
    if missing or len(zetas) != len(phis):
        raise ValueError(f"bracket does not have the expected shape (missing {missing})")
    Pm = [[cb.matrix[zeta_of[z]][phi_of[p]] for p in phis] for z in zetas]
    upper = [(zetas[i], phis[j]) for i in range(len(zetas)) for j in range(i + 1, len(phis))
             if Pm[i][j] != 0]
    diag = [Pm[i][i] for i in range(len(zetas))]
    rep.add("lower triangular", not upper, {"nonzero above diagonal": upper})
    rep.add("diagonal entries -1/2", all(d == Fraction(-1, 2) for d in diag),
            {"diagonal": diag})
    rep.add("pairing", True, {"zeta order": zetas, "phi order": phis, "matrix": Pm})
    return rep


def decay_margin(cone: StrictCone, eta) -> float:
    s = cone.min_slack(eta)
    return math.inf if s is None else float(s)
