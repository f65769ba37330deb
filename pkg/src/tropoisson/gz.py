"""Gelfand-Zeitlin cone, the sigma map, and the tropical GZ map on Gamma_s(n)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .networks import (build_gamma_s, delta_name, distinguished_multipath, multipaths,
                       solid_minor_indices, solid_minor_rows_cols, solve_weights_from_deltas,
                       delta_registry)
from .polyhedra import StrictCone


def zeta_keys(n):
    """(k, l) in the fixed coordinate order k = 1..n, l = 1..k."""
    return solid_minor_indices(n)


def zeta_names(n):
    return tuple(f"zeta^({k})_{l}" for k, l in zeta_keys(n))


@dataclass(frozen=True)
class GZPattern:
    n: int
    values: Mapping  # (k, l) -> Fraction

    def __post_init__(self):
        vals = {tuple(k): Fraction(v) for k, v in dict(self.values).items()}
        if set(vals) != set(zeta_keys(self.n)):
            raise ValueError(f"pattern needs exactly the entries (k, l), 1 <= l <= k <= {self.n}")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, kl):
        return self.values[kl]

    def interlacing(self, strict=False) -> bool:
        for k in range(2, self.n + 1):
            for l in range(1, k):
                a, b, c = self[(k, l)], self[(k - 1, l)], self[(k, l + 1)]
                if strict and not (a > b > c):
                    return False
                if not strict and not (a >= b >= c):
                    return False
        return True

    def to_list(self):
        return [self.values[kl] for kl in zeta_keys(self.n)]


def _vec(vals, n):
    if isinstance(vals, Mapping):
        return {tuple(k): Fraction(v) for k, v in vals.items()}
    return {kl: Fraction(v) for kl, v in zip(zeta_keys(n), vals)}


def gz_cone(n: int) -> StrictCone:
    if n < 1:
        raise ValueError("gz_cone needs n >= 1")
    keys = zeta_keys(n)
    pos = {kl: i for i, kl in enumerate(keys)}
    normals = set()

    def normal(plus, minus):
        v = [0] * len(keys)
        for kl in plus:
            if kl[1] >= 1:
                v[pos[kl]] += 1
        for kl in minus:
            if kl[1] >= 1:
                v[pos[kl]] -= 1
        return tuple(v)

    for k in range(2, n + 1):
        for l in range(1, k):
            normals.add(normal([(k, l), (k - 1, l - 1)], [(k, l - 1), (k - 1, l)]))
            normals.add(normal([(k, l), (k - 1, l)], [(k, l + 1), (k - 1, l - 1)]))
    return StrictCone(len(keys), frozenset(normals), zeta_names(n))


def sigma(pattern: GZPattern, half: bool = False) -> dict:
    """zeta^(k)_l = c (lambda^(k)_1 + ... + lambda^(k)_l), c = 1 or 1/2."""
    c = Fraction(1, 2) if half else Fraction(1)
    out = {}
    for k in range(1, pattern.n + 1):
        acc = Fraction(0)
        for l in range(1, k + 1):
            acc += pattern[(k, l)]
            out[(k, l)] = c * acc
    return out


def sigma_inverse(zeta: Mapping, n: int, half: bool = False) -> GZPattern:
    z = _vec(zeta, n)
    c = Fraction(2) if half else Fraction(1)
    vals = {}
    for k in range(1, n + 1):
        for l in range(1, k + 1):
            vals[(k, l)] = c * (z[(k, l)] - (z[(k, l - 1)] if l > 1 else 0))
    return GZPattern(n, vals)


def zeta_vector(zeta: Mapping, n: int) -> list[Fraction]:
    z = _vec(zeta, n)
    return [z[kl] for kl in zeta_keys(n)]


def uv_quantities(zeta, n: int | None = None) -> dict:
    """(k, l) -> (u, v) for k = 2..n, l = 1..k-1."""
    if n is None:
        if not isinstance(zeta, Mapping):
            raise ValueError("n is required for a flat zeta vector")
        n = max(k for k, _ in zeta)
    z = _vec(zeta, n)
    if set(z) != set(zeta_keys(n)):
        raise ValueError(f"zeta point does not have the entries of size {n}")

    def Z(k, l):
        return z[(k, l)] if l >= 1 else Fraction(0)

    out = {}
    for k in range(2, n + 1):
        for l in range(1, k):
            u = Z(k, l) + Z(k - 1, l - 1) - Z(k, l - 1) - Z(k - 1, l)
            v = Z(k - 1, l - 1) + Z(k, l + 1) - Z(k, l) - Z(k - 1, l)
            out[(k, l)] = (u, v)
    return out


# tropical GZ map

@lru_cache(maxsize=None)
def _tropical_systems(n):
    """(k, i) -> [(paths, label counts)] over every vertex-disjoint i-path system
    of Gamma^(k), i.e. any i of its sources to any i of its sinks."""
    net = build_gamma_s(n)
    out = {}
    for k, i in solid_minor_indices(n):
        lines = range(n - k + 1, n + 1)
        systems = []
        for I in itertools.combinations(lines, i):
            for J in itertools.combinations(lines, i):
                for _, paths in multipaths(net, I, J, permutations=False):
                    counts = {}
                    for p in paths:
                        for e in p:
                            lab = net.edges[e].label
                            if lab is not None:
                                counts[lab] = counts.get(lab, 0) + 1
                    systems.append((tuple(paths), counts))
        out[(k, i)] = systems
    return out


def _system_weight(counts, weights):
    return sum(c * weights[lab] for lab, c in counts.items())


def tropical_gz_map(weights: Mapping, n: int | None = None) -> dict:
    """l^(k)_i: max total weight over vertex-disjoint i-path systems of Gamma^(k)."""
    n = n or _infer_n(weights)
    out = {}
    for key, systems in _tropical_systems(n).items():
        out[key] = max(_system_weight(c, weights) for _, c in systems)
    return out


def tropical_argmax(weights: Mapping, n: int | None = None) -> dict:
    """(k, i) -> list of path systems achieving the maximum."""
    n = n or _infer_n(weights)
    out = {}
    for key, systems in _tropical_systems(n).items():
        vals = [_system_weight(c, weights) for _, c in systems]
        m = max(vals)
        out[key] = [s for (s, _), v in zip(systems, vals) if v == m]
    return out


def _infer_n(weights):
    m = len(weights)
    n = 1
    while n * (n + 1) // 2 < m:
        n += 1
    if n * (n + 1) // 2 != m:
        raise ValueError("weights do not match any Gamma_s(n)")
    return n


def principal_linear_map(n: int) -> dict:
    """(k, l) -> {label: multiplicity}: zeta^(k)_l as the weight of gamma^(k)_l."""
    net = build_gamma_s(n)
    out = {}
    for k, l in solid_minor_indices(n):
        counts = {}
        for p in distinguished_multipath(n, k, l):
            for e in p:
                lab = net.edges[e].label
                if lab is not None:
                    counts[lab] = counts.get(lab, 0) + 1
        out[(k, l)] = counts
    return out


def principal_zeta(weights: Mapping, n: int) -> dict:
    return {kl: _system_weight(c, weights) for kl, c in principal_linear_map(n).items()}


def weights_from_zeta(zeta, n: int) -> dict:
    """Inverse of the principal linear map (tropical form of the weight inversion)."""
    z = zeta_vector(zeta, n)
    reg = delta_registry(n)
    pos = {reg[i].index: i for i in range(len(reg))}
    out = {}
    for lab, (_, e) in solve_weights_from_deltas(n).items():
        out[lab] = sum(x * z[pos[kl]] for kl, x in
                       ((reg[i].index, a) for i, a in enumerate(e) if a))
    return out


def jacobian_rank(n: int) -> int:
    labels = build_gamma_s(n).labels
    rows = [[Fraction(c.get(lab, 0)) for lab in labels]
            for c in principal_linear_map(n).values()]
    return _rank(rows)


def _rank(rows):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


# regions of Gamma_s and the principal chamber

@dataclass(frozen=True)
class Region:
    floor: int
    position: int            # 0 = leftmost gap of the floor
    sample: tuple            # (x, height) strictly inside the face
    plus: tuple              # labels bounding it from above / the right
    minus: tuple             # labels bounding it from below / the left


@lru_cache(maxsize=None)
def regions(n: int) -> tuple:
    """Bounded faces of Gamma_s(n) between the source and sink lines."""
    net = build_gamma_s(n)
    pos = net.positions
    right_end = Fraction(n + 1)
    out = []
    for f in range(1, n):
        sl = sorted((e for e in net.edges if pos[e.tail][1] == f and pos[e.head][1] == f + 1),
                    key=lambda e: pos[e.tail][0])
        bounds = [None] + sl + [None]
        for j in range(len(bounds) - 1):
            left, right = bounds[j], bounds[j + 1]
            top_lo = pos[left.tail][0] if left else Fraction(0)
            top_hi = pos[right.tail][0] if right else right_end
            bot_lo = pos[left.head][0] if left else Fraction(0)
            bot_hi = pos[right.head][0] if right else right_end
            plus, minus = [], []
            for e in net.edges:
                (x0, l0), (x1, l1) = pos[e.tail], pos[e.head]
                if e.label is None or l0 != l1:
                    continue
                if l0 == f and top_lo <= x0 and x1 <= top_hi:
                    plus.append(e.label)
                if l0 == f + 1 and bot_lo <= x0 and x1 <= bot_hi:
                    minus.append(e.label)
            if right is not None and right.label is not None:
                plus.append(right.label)
            if left is not None and left.label is not None:
                minus.append(left.label)
            xl = (top_lo + bot_lo) / 2
            xr = (top_hi + bot_hi) / 2
            sample = ((xl + xr) / 2, Fraction(2 * f + 1, 2))
            out.append(Region(f, j, sample, tuple(plus), tuple(minus)))
    return tuple(out)


def region_weights(weights: Mapping, n: int | None = None) -> dict:
    """Region -> omega (plus-labels minus minus-labels)."""
    n = n or _infer_n(weights)
    return {r: sum(weights[x] for x in r.plus) - sum(weights[x] for x in r.minus)
            for r in regions(n)}


def _height_at(net, path, start, x):
    pos = net.positions
    vs = net.path_vertices(path, start)
    for a, b in zip(vs, vs[1:]):
        (x0, y0), (x1, y1) = pos[a], pos[b]
        if x0 <= x <= x1:
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    raise ValueError("sample abscissa outside the path")


def multiplicities(n, I, paths) -> dict:
    """Region -> number of paths of the system lying above the region's sample point."""
    net = build_gamma_s(n)
    out = {}
    for r in regions(n):
        x, y = r.sample
        out[r] = sum(1 for i, p in zip(I, paths)
                     if _height_at(net, p, net.sources[i - 1], x) < y)
    return out


def _extreme_system(n, I, J, lowest):
    net = build_gamma_s(n)
    best = None
    for _, paths in multipaths(net, I, J, permutations=False):
        s = sum(multiplicities(n, I, paths).values())
        if best is None or (s < best[0] if lowest else s > best[0]):
            best = (s, paths)
    return best[1]


@lru_cache(maxsize=None)
def alpha_regions(n: int) -> dict:
    """(sign, k, l) -> {region: multiplicity} for the regions alpha^+-_{k,l}.

    alpha^+ lies between gamma^(k)_l and the lowest system for rows
    {n-k+1..n-k+l-1, n-k+l+1}; alpha^- between gamma^(k)_l and the highest
    system for columns {n-l, n-l+2..n}.
    """
    out = {}
    for k in range(2, n + 1):
        for l in range(1, k):
            I, J = solid_minor_rows_cols(n, k, l)
            gam = multiplicities(n, I, distinguished_multipath(n, k, l))
            I1 = I[:-1] + [I[-1] + 1]
            low = multiplicities(n, I1, _extreme_system(n, I1, J, lowest=True))
            J2 = [J[0] - 1] + J[1:]
            high = multiplicities(n, I, _extreme_system(n, I, J2, lowest=False))
            out[("+", k, l)] = {r: gam[r] - low[r] for r in gam if gam[r] != low[r]}
            out[("-", k, l)] = {r: high[r] - gam[r] for r in gam if gam[r] != high[r]}
    return out


def alpha_weights(weights: Mapping, n: int | None = None) -> dict:
    n = n or _infer_n(weights)
    om = region_weights(weights, n)
    return {key: sum(m * om[r] for r, m in regs.items())
            for key, regs in alpha_regions(n).items()}


def principal_chamber_test(weights: Mapping, n: int | None = None) -> bool:
    n = n or _infer_n(weights)
    for (sign, _, _), w in alpha_weights(weights, n).items():
        if sign == "+" and not w > 0:
            return False
        if sign == "-" and not w < 0:
            return False
    return True


def principal_chamber_cone(n: int) -> StrictCone:
    """The principal chamber as a cone in edge-weight coordinates (Gamma_s labels):
    omega(alpha^+) > 0 and omega(alpha^-) < 0."""
    labels = build_gamma_s(n).labels
    pos = {lab: i for i, lab in enumerate(labels)}
    normals = set()
    regs = regions(n)
    for (sign, _, _), mult in alpha_regions(n).items():
        v = [0] * len(labels)
        for r in regs:
            m = mult.get(r, 0)
            for lab in r.plus:
                v[pos[lab]] += m
            for lab in r.minus:
                v[pos[lab]] -= m
        if sign == "-":
            v = [-x for x in v]
        normals.add(tuple(v))
    return StrictCone(len(labels), frozenset(normals), tuple(labels))


def check_rhombus(values: Mapping, n: int, strict=False) -> list:
    """Violated rhombus inequalities of a (k, i)-indexed point, as (k, l, kind)."""
    bad = []
    for (k, l), (u, v) in uv_quantities(values, n).items():
        if (u <= 0) if strict else (u < 0):
            bad.append((k, l, "u"))
        if (v >= 0) if strict else (v > 0):
            bad.append((k, l, "v"))
    return bad


__all__ = [
    "GZPattern", "Region", "regions", "multiplicities", "gz_cone", "sigma", "sigma_inverse", "uv_quantities",
    "tropical_gz_map", "tropical_argmax", "region_weights", "principal_chamber_test",
    "alpha_regions", "alpha_weights", "principal_chamber_cone", "principal_linear_map", "principal_zeta",
    "weights_from_zeta", "jacobian_rank", "check_rhombus", "zeta_keys", "zeta_names",
    "delta_name",
]
