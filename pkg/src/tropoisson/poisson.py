"""Poisson structures whose brackets of coordinate functions are Laurent polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .arith import (COMPLEX, CONJ, REAL, ZERO, GaussianRational, LaurentPoly, VarRegistry,
                    lp_conjugate)


class PoissonStructure:
    """Antisymmetric bracket table on the variables of a registry.

    Only pairs ``(i, j)`` with ``i < j`` in registry order are stored;
    ``bracket(v, u)`` is served as ``-bracket(u, v)`` and ``{u, u} = 0``.
    """

    def __init__(self, registry: VarRegistry, table: Mapping | None = None):
        self.registry = registry
        self._table: dict[tuple[int, int], LaurentPoly] = {}
        for (u, v), p in (table or {}).items():
            self._set(u, v, p)

    def _idx(self, u) -> int:
        return u if isinstance(u, int) else self.registry.index(u)

    def _set(self, u, v, p):
        i, j = self._idx(u), self._idx(v)
        if i == j:
            if p:
                raise ValueError(f"nonzero self-bracket for {self.registry[i].name!r}")
            return
        if not isinstance(p, LaurentPoly):
            p = LaurentPoly.const(self.registry, p)
        elif p.registry != self.registry:
            raise ValueError("bracket polynomial uses a different registry")
        if i > j:
            i, j, p = j, i, -p
        if (i, j) in self._table:
            raise ValueError(f"bracket ({self.registry[i].name}, {self.registry[j].name}) "
                             "given twice")
        if p:
            self._table[(i, j)] = p

    def bracket(self, u, v) -> LaurentPoly:
        i, j = self._idx(u), self._idx(v)
        if i == j:
            return LaurentPoly.zero(self.registry)
        if i < j:
            return self._table.get((i, j), LaurentPoly.zero(self.registry))
        p = self._table.get((j, i))
        return LaurentPoly.zero(self.registry) if p is None else -p

    def pairs(self):
        """All index pairs i < j (including those with zero bracket)."""
        n = len(self.registry)
        return [(i, j) for i in range(n) for j in range(i + 1, n)]

    def items(self):
        """Nonzero stored entries ``((i, j), poly)`` with ``i < j``."""
        return sorted(self._table.items())

    def __eq__(self, other):
        if not isinstance(other, PoissonStructure):
            return NotImplemented
        return self.registry == other.registry and self._table == other._table

    def __repr__(self):
        return f"PoissonStructure({len(self.registry)} variables, {len(self._table)} brackets)"

    def format(self) -> str:
        names = self.registry.names
        return "\n".join(f"{{{names[i]}, {names[j]}}} = {p}" for (i, j), p in self.items())


def pair_monomial(registry: VarRegistry, i: int, j: int) -> tuple[int, ...]:
    e = [0] * len(registry)
    e[i] += 1
    e[j] += 1
    return tuple(e)


@dataclass
class LogCanonicalPart:
    """``{u, v} = pi[u, v] * u * v + remainder[u, v]`` for every pair ``u < v``."""

    registry: VarRegistry
    pi: dict = field(default_factory=dict)
    remainder: dict = field(default_factory=dict)

    def coefficient(self, i, j) -> GaussianRational:
        if i <= j:
            return self.pi.get((i, j), ZERO)
        return -self.pi.get((j, i), ZERO)


def split_log_canonical(P: PoissonStructure) -> LogCanonicalPart:
    reg = P.registry
    out = LogCanonicalPart(reg)
    for (i, j), p in P.items():
        mono = pair_monomial(reg, i, j)
        c = p.coefficient(mono)
        rest = dict(p.terms)
        rest.pop(mono, None)
        if c:
            out.pi[(i, j)] = c
        if rest:
            out.remainder[(i, j)] = LaurentPoly._raw(reg, rest)
    return out


@dataclass
class RealityReport:
    passed: bool
    failures: list = field(default_factory=list)  # (condition, (name_u, name_v))
    checked: dict = field(default_factory=dict)   # condition -> number of instances

    def __bool__(self):
        return self.passed


def check_reality(P: PoissonStructure) -> RealityReport:
    """Reality of the bivector and of its log-canonical coefficients.

    Bivector: {x_i, x_j} real, {~z_a, ~z_b} = conj{z_a, z_b},
    {x_i, ~z_a} = conj{x_i, z_a}, {z_a, ~z_b} = -conj{z_b, ~z_a}.
    Log-canonical part: pi(x, x) = 0 and Re pi = 0 for (x, z), (z, z), (z, ~z).
    """
    reg = P.registry
    lc = split_log_canonical(P)
    real = [i for i, v in enumerate(reg) if v.kind == REAL]
    cplx = [i for i, v in enumerate(reg) if v.kind == COMPLEX]
    bar = {a: reg.partner_index(a) for a in cplx}
    failures = []
    checked = {}

    def record(cond, ok, i, j):
        checked[cond] = checked.get(cond, 0) + 1
        if not ok:
            failures.append((cond, (reg[i].name, reg[j].name)))

    for x, i in enumerate(real):
        for j in real[x + 1:]:
            p = P.bracket(i, j)
            record("real {x_i, x_j}", lp_conjugate(p) == p, i, j)
    for x, a in enumerate(cplx):
        for b in cplx[x + 1:]:
            record("{~z_a, ~z_b} = conj{z_a, z_b}",
                   P.bracket(bar[a], bar[b]) == lp_conjugate(P.bracket(a, b)), a, b)
    for i in real:
        for a in cplx:
            record("{x_i, ~z_a} = conj{x_i, z_a}",
                   P.bracket(i, bar[a]) == lp_conjugate(P.bracket(i, a)), i, a)
    for a in cplx:
        for b in cplx:
            record("{z_a, ~z_b} = -conj{z_b, ~z_a}",
                   P.bracket(a, bar[b]) == -lp_conjugate(P.bracket(b, bar[a])), a, bar[b])

    for x, i in enumerate(real):
        for j in real[x + 1:]:
            record("pi_ij = 0", not lc.coefficient(i, j), i, j)
    for i in real:
        for a in cplx:
            record("Re pi_ia = 0", lc.coefficient(i, a).re == 0, i, a)
    for x, a in enumerate(cplx):
        for b in cplx[x + 1:]:
            record("Re pi_ab = 0", lc.coefficient(a, b).re == 0, a, b)
    for a in cplx:
        for b in cplx:
            record("Re pi_a~b = 0", lc.coefficient(a, bar[b]).re == 0, a, bar[b])
    return RealityReport(not failures, failures, checked)


def bracket_with_poly(P: PoissonStructure, u, p: LaurentPoly) -> LaurentPoly:
    """{u, p} by the Leibniz rule: sum_j I_j x^(I - e_j) {u, x_j} over terms of p."""
    reg = P.registry
    out = LaurentPoly.zero(reg)
    cache = {}
    for m, c in p.terms.items():
        for j, e in enumerate(m):
            if not e:
                continue
            if j not in cache:
                cache[j] = P.bracket(u, j)
            b = cache[j]
            if not b:
                continue
            mono = list(m)
            mono[j] -= 1
            out = out + LaurentPoly._raw(reg, {tuple(mono): c * e}) * b
    return out


def jacobiator(P: PoissonStructure, u, v, w) -> LaurentPoly:
    """{u,{v,w}} + {v,{w,u}} + {w,{u,v}}."""
    ids = [P._idx(x) for x in (u, v, w)]
    if len(set(ids)) != 3:
        raise ValueError("jacobiator needs three distinct generators")
    i, j, k = ids
    return (bracket_with_poly(P, i, P.bracket(j, k))
            + bracket_with_poly(P, j, P.bracket(k, i))
            + bracket_with_poly(P, k, P.bracket(i, j)))


def check_jacobi(P: PoissonStructure):
    """Return (number of triples checked, list of failing triples by name)."""
    n = len(P.registry)
    bad = []
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                count += 1
                if jacobiator(P, i, j, k):
                    names = P.registry.names
                    bad.append((names[i], names[j], names[k]))
    return count, bad


__all__ = [
    "PoissonStructure", "LogCanonicalPart", "RealityReport", "split_log_canonical",
    "check_reality", "jacobiator", "check_jacobi", "bracket_with_poly", "pair_monomial",
    "REAL", "COMPLEX", "CONJ",
]
