"""Open homogeneous cones {eta : <n, eta> > 0 for all normals n}, decided exactly.

All linear programs go through :func:`simplex`, a dense two-phase tableau
simplex over :class:`fractions.Fraction` with Bland's anti-cycling rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
OPTIMAL = "optimal"
UNBOUNDED = "unbounded"


class EmptyConeError(ValueError):
    pass


@dataclass(frozen=True)
class LPResult:
    status: str
    witness: tuple | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status in (FEASIBLE, OPTIMAL, UNBOUNDED)


def simplex(A: Sequence[Sequence], b: Sequence, c: Sequence | None = None) -> LPResult:
    """Minimize ``c.x`` subject to ``A x = b``, ``x >= 0``.

    With ``c=None`` only feasibility is decided (phase 1).  The witness is an
    exact rational vector.  Bland's rule (smallest eligible index enters,
    smallest basic index breaks ratio ties) guarantees termination.
    """
    m = len(A)
    nv = len(A[0]) if m else (len(c) if c is not None else 0)
    if m == 0:
        if c is not None and any(Fraction(ci) < 0 for ci in c):
            return LPResult(UNBOUNDED, tuple(Fraction(0) for _ in range(nv)))
        return LPResult(OPTIMAL if c is not None else FEASIBLE,
                        tuple(Fraction(0) for _ in range(nv)), Fraction(0))

    # rows: [x_0 .. x_{nv-1}, a_0 .. a_{m-1}, rhs]
    width = nv + m
    T = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(row + art + [rhs])
    basis = [nv + i for i in range(m)]

    # phase 1 objective: minimize sum of artificials, reduced costs r_j
    cost1 = [Fraction(0)] * nv + [Fraction(1)] * m
    _run(T, basis, cost1, allowed=range(width))
    infeas = sum(T[i][-1] for i in range(m) if basis[i] >= nv)
    if infeas != 0:
        return LPResult(INFEASIBLE)

    # drive zero-level artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= nv:
            for j in range(nv):
                if T[i][j] != 0:
                    _pivot(T, basis, i, j)
                    break
    keep = [i for i in range(m) if basis[i] < nv]
    T = [T[i] for i in keep]
    basis = [basis[i] for i in keep]

    if c is None:
        return LPResult(FEASIBLE, _solution(T, basis, nv))

    cost2 = [Fraction(v) for v in c] + [Fraction(0)] * m
    status = _run(T, basis, cost2, allowed=range(nv))
    x = _solution(T, basis, nv)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, x)
    return LPResult(OPTIMAL, x, sum(Fraction(ci) * xi for ci, xi in zip(c, x)))


def _solution(T, basis, nv):
    x = [Fraction(0)] * nv
    for i, j in enumerate(basis):
        if j < nv:
            x[j] = T[i][-1]
    return tuple(x)


def _pivot(T, basis, r, col):
    prow = T[r]
    p = prow[col]
    if p != 1:
        prow = [v / p for v in prow]
        T[r] = prow
    nz = [j for j, v in enumerate(prow) if v != 0]
    for i, row in enumerate(T):
        if i == r:
            continue
        f = row[col]
        if f != 0:
            for j in nz:
                row[j] -= f * prow[j]
    basis[r] = col


def _run(T, basis, cost, allowed):
    m = len(T)
    allowed = list(allowed)
    while True:
        # reduced cost of column j: cost_j - sum_i cost_{basis_i} T[i][j]
        cb = [cost[j] for j in basis]
        enter = None
        for j in allowed:
            if j in basis:
                continue
            r = cost[j]
            for i in range(m):
                if cb[i]:
                    v = T[i][j]
                    if v:
                        r -= cb[i] * v
            if r < 0:
                enter = j
                break
        if enter is None:
            return OPTIMAL
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best[1], enter)


def primitive(v: Iterable[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries, keeping its sign."""
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero normal vector")
    return tuple(x // g for x in v)


def integer_normal(v: Iterable) -> tuple[int, ...]:
    """Clear denominators of a rational vector and make it primitive."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive(int(x * den) for x in v)


@dataclass(frozen=True)
class StrictCone:
    """{eta in R^dim : <n, eta> > 0 for every n in normals}."""

    dim: int
    normals: frozenset = field(default_factory=frozenset)
    coords: tuple | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("cone dimension must be positive")
        ns = set()
        for n in self.normals:
            if len(n) != self.dim:
                raise ValueError(f"normal {n} has wrong length for dim {self.dim}")
            ns.add(primitive(n))
        object.__setattr__(self, "normals", frozenset(ns))
        if self.coords is not None:
            if len(self.coords) != self.dim:
                raise ValueError("coordinate names do not match the dimension")
            object.__setattr__(self, "coords", tuple(self.coords))

    @classmethod
    def full(cls, dim, coords=None):
        return cls(dim, frozenset(), coords)

    def sorted_normals(self) -> list[tuple[int, ...]]:
        return sorted(self.normals, reverse=True)

    def contains(self, eta, slack=0) -> bool:
        return all(sum(a * b for a, b in zip(n, eta)) > slack for n in self.normals)

    def min_slack(self, eta):
        if not self.normals:
            return None
        return min(sum(a * b for a, b in zip(n, eta)) for n in self.normals)

    def __len__(self):
        return len(self.normals)


def cone_intersect(a: StrictCone, b: StrictCone) -> StrictCone:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return StrictCone(a.dim, a.normals | b.normals, a.coords or b.coords)


def _in_conic_hull(m, gens) -> bool:
    """Is ``m`` a nonnegative combination of ``gens``?  (Farkas form.)"""
    gens = list(gens)
    if not gens:
        return all(x == 0 for x in m)
    d = len(m)
    A = [[g[r] for g in gens] for r in range(d)]
    return simplex(A, list(m)).feasible


def cone_feasibility(c: StrictCone) -> LPResult:
    """Exact certificate for (non)emptiness.

    Feasible: a rational eta with <n, eta> >= 1 for every normal.
    Infeasible: multipliers lambda >= 0, sum 1, with sum lambda_i n_i = 0.
    """
    if not c.normals:
        return LPResult(FEASIBLE, tuple(Fraction(0) for _ in range(c.dim)))
    if cone_is_empty(c):
        normals = c.sorted_normals()
        A = [[n[r] for n in normals] for r in range(c.dim)] + [[1] * len(normals)]
        res = simplex(A, [0] * c.dim + [1])
        return LPResult(INFEASIBLE, res.witness)
    return LPResult(FEASIBLE, cone_interior_sample(c))


def cone_is_empty(c: StrictCone) -> bool:
    """Empty iff some nonzero nonnegative combination of normals vanishes (Gordan)."""
    if not c.normals:
        return False
    normals = c.sorted_normals()
    A = [[n[r] for n in normals] for r in range(c.dim)] + [[1] * len(normals)]
    return simplex(A, [0] * c.dim + [1]).feasible


def cone_implies(c: StrictCone, m) -> bool:
    """True iff <m, eta> > 0 holds on all of ``c`` (vacuously true if ``c`` is empty)."""
    m = tuple(m)
    if len(m) != c.dim:
        raise ValueError("normal has wrong length")
    if all(x == 0 for x in m):
        raise ValueError("zero normal")
    if cone_is_empty(c):
        return True
    return _in_conic_hull(m, c.normals)


def cone_equal(a: StrictCone, b: StrictCone) -> bool:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if cone_is_empty(a) or cone_is_empty(b):
        raise EmptyConeError("cone_equal needs two nonempty cones")
    return (all(_in_conic_hull(n, a.normals) for n in b.normals)
            and all(_in_conic_hull(n, b.normals) for n in a.normals))


def cone_remove_redundant(c: StrictCone) -> StrictCone:
    if cone_is_empty(c):
        raise EmptyConeError("cannot reduce an empty cone")
    kept = c.sorted_normals()
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1:]
        if _in_conic_hull(kept[i], others):
            kept = others
        else:
            i += 1
    return StrictCone(c.dim, frozenset(kept), c.coords)


def cone_interior_sample(c: StrictCone, bound: int = 1) -> tuple[Fraction, ...]:
    """A rational point with slack >= 1 on every normal.

    Maximizes the minimum slack ``s`` over the box ``-bound <= eta <= bound``;
    homogeneity then rescales the optimum to slack exactly >= 1.
    """
    d = c.dim
    if not c.normals:
        return tuple(Fraction(0) for _ in range(d))
    normals = c.sorted_normals()
    B = Fraction(bound)
    while True:
        # variables: y (d, eta = y - B), s, w (one per normal), u (d), r
        nm = len(normals)
        nv = d + 1 + nm + d + 1
        A, rhs = [], []
        for k, n in enumerate(normals):
            row = [Fraction(0)] * nv
            for j in range(d):
                row[j] = Fraction(n[j])
            row[d] = Fraction(-1)
            row[d + 1 + k] = Fraction(-1)
            A.append(row)
            rhs.append(B * sum(n))
        for j in range(d):
            row = [Fraction(0)] * nv
            row[j] = Fraction(1)
            row[d + 1 + nm + j] = Fraction(1)
            A.append(row)
            rhs.append(2 * B)
        row = [Fraction(0)] * nv
        row[d] = Fraction(1)
        row[-1] = Fraction(1)
        A.append(row)
        rhs.append(B)
        cost = [Fraction(0)] * nv
        cost[d] = Fraction(-1)
        res = simplex(A, rhs, cost)
        if res.status != OPTIMAL:
            raise RuntimeError(f"interior-point LP ended with status {res.status}")
        s = res.witness[d]
        if s > 0:
            eta = [(res.witness[j] - B) / s for j in range(d)]
            den = 1
            for x in eta:
                den = den * x.denominator // gcd(den, x.denominator)
            return tuple(Fraction(int(x * den)) for x in eta)
        if cone_is_empty(c):
            raise EmptyConeError("cone is empty")
        B *= 2
