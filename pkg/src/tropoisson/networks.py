"""Planar networks, the Lindstrom lemma, and solid-minor coordinates.

The staircase network ``Gamma_s(n)`` has horizontal lines 1..n (top to
bottom), sources at x = 0 and sinks at x = n + 1.  Floor f joins line f to
line f + 1 by slanted edges starting at x = f, ..., n - 1, each ending half a
unit further right on line f + 1.  Each line's last segment (x = n to the
sink) carries the diagonal weight ``d<line>``; slanted edges carry
``s<floor>_<x>``.  Every solid minor Delta^(k)_l is then a single multi-path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .arith import ONE, GaussianRational, LaurentPoly, VarRegistry, lp_rebase

DELTA_PREFIX = "D"


@dataclass(frozen=True)
class Edge:
    tail: object
    head: object
    label: str | None = None


@dataclass
class PlanarNetwork:
    """Weighted DAG drawn between a source line and a sink line.

    ``positions`` maps vertex -> (x, level); sources and sinks are listed top
    to bottom.  Edges without a label have weight 1.
    """

    positions: dict
    edges: list
    sources: list
    sinks: list
    _out: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.positions = {v: (Fraction(x), lvl) for v, (x, lvl) in self.positions.items()}
        self.edges = [e if isinstance(e, Edge) else Edge(*e) for e in self.edges]
        if len(self.sources) != len(self.sinks):
            raise ValueError("a planar network needs as many sources as sinks")
        out = {v: [] for v in self.positions}
        for i, e in enumerate(self.edges):
            for v in (e.tail, e.head):
                if v not in self.positions:
                    raise ValueError(f"edge endpoint {v!r} is not a vertex")
            if self.positions[e.head][0] <= self.positions[e.tail][0]:
                raise ValueError(f"edge {e.tail!r} -> {e.head!r} does not point right")
            out[e.tail].append(i)
        self._out = out

    @property
    def n(self):
        return len(self.sources)

    @property
    def labels(self) -> list[str]:
        seen = []
        for e in self.edges:
            if e.label is not None and e.label not in seen:
                seen.append(e.label)
        return seen

    def paths(self, start, end) -> list[tuple[int, ...]]:
        """All directed paths as tuples of edge indices."""
        out = []

        def walk(v, acc):
            if v == end:
                out.append(tuple(acc))
                return
            for i in self._out[v]:
                acc.append(i)
                walk(self.edges[i].head, acc)
                acc.pop()

        walk(start, [])
        return out

    def path_vertices(self, path, start):
        vs = [start]
        for i in path:
            vs.append(self.edges[i].head)
        return vs

    def subnetwork(self, k) -> "PlanarNetwork":
        """Same graph, keeping only the last k sources and sinks."""
        if not 1 <= k <= self.n:
            raise ValueError(f"subnetwork size {k} out of range 1..{self.n}")
        return PlanarNetwork(dict(self.positions), list(self.edges),
                             self.sources[-k:], self.sinks[-k:])


def build_gamma_s(n: int) -> PlanarNetwork:
    if n < 1:
        raise ValueError("Gamma_s needs n >= 1")
    pos = {}
    edges = []
    line_points = {r: {Fraction(0), Fraction(n), Fraction(n + 1)} for r in range(1, n + 1)}
    slanted = []
    for f in range(1, n):
        for x in range(f, n):
            a, b = Fraction(x), Fraction(2 * x + 1, 2)
            line_points[f].add(a)
            line_points[f + 1].add(b)
            slanted.append(((a, f), (b, f + 1), f"s{f}_{x}"))
    for r in range(1, n + 1):
        xs = sorted(line_points[r])
        for x in xs:
            pos[(x, r)] = (x, r)
        for x0, x1 in zip(xs, xs[1:]):
            label = f"d{r}" if x0 == n else None
            edges.append(Edge((x0, r), (x1, r), label))
    edges += [Edge(a, b, lab) for a, b, lab in slanted]
    sources = [(Fraction(0), r) for r in range(1, n + 1)]
    sinks = [(Fraction(n + 1), r) for r in range(1, n + 1)]
    return PlanarNetwork(pos, edges, sources, sinks)


def gamma_s_labels(n) -> list[str]:
    return build_gamma_s(n).labels


# multi-paths and the Lindstrom lemma

def _perm_sign(p):
    sign = 1
    p = list(p)
    for a in range(len(p)):
        for b in range(a + 1, len(p)):
            if p[a] > p[b]:
                sign = -sign
    return sign


def multipaths(net: PlanarNetwork, I: Sequence[int], J: Sequence[int], *,
               permutations: bool = True):
    """Vertex-disjoint path systems from sources I to sinks J (1-based).

    Returns (sign, [path, ...]) pairs; path r starts at source I[r].  With
    ``permutations=False`` only the order-preserving pairing I[r] -> J[r] is
    considered, which is all that can occur in a planar network.
    """
    I, J = list(I), list(J)
    if len(I) != len(J):
        raise ValueError("multi-path needs |I| = |J|")
    if not I:
        return [(1, [])]
    perms = itertools.permutations(range(len(J))) if permutations else [tuple(range(len(J)))]
    out = []
    cache = {}
    for perm in perms:
        targets = [J[p] for p in perm]
        options = []
        for i, j in zip(I, targets):
            key = (i, j)
            if key not in cache:
                src, snk = net.sources[i - 1], net.sinks[j - 1]
                cache[key] = [(p, frozenset(net.path_vertices(p, src)))
                              for p in net.paths(src, snk)]
            options.append(cache[key])
        sign = _perm_sign(perm)

        def pick(r, used, acc):
            if r == len(options):
                out.append((sign, list(acc)))
                return
            for p, vs in options[r]:
                if used & vs:
                    continue
                acc.append(p)
                pick(r + 1, used | vs, acc)
                acc.pop()

        pick(0, frozenset(), [])
    return out


def _edge_weight(net, w, i, one):
    lab = net.edges[i].label
    return one if lab is None else w[lab]


def path_weight(net, w, path, one=ONE):
    acc = one
    for i in path:
        acc = acc * _edge_weight(net, w, i, one)
    return acc


def _one_like(w):
    for v in w.values():
        if isinstance(v, LaurentPoly):
            return LaurentPoly.const(v.registry, 1)
        if isinstance(v, GaussianRational):
            return ONE
        return type(v)(1)
    return ONE


def matrix_from_network(net: PlanarNetwork, w: Mapping) -> list[list]:
    one = _one_like(w)
    zero = one - one
    M = []
    for s in net.sources:
        row = []
        for t in net.sinks:
            acc = zero
            for p in net.paths(s, t):
                acc = acc + path_weight(net, w, p, one)
            row.append(acc)
        M.append(row)
    return M


def minor_lindstrom(net: PlanarNetwork, w: Mapping, I, J):
    """Signed sum over vertex-disjoint path systems I -> J."""
    I, J = sorted(I), sorted(J)
    if len(I) != len(J):
        raise ValueError("minor needs |I| = |J|")
    one = _one_like(w)
    acc = one - one
    for sign, paths in multipaths(net, I, J):
        t = one
        for p in paths:
            t = t * path_weight(net, w, p, one)
        acc = acc + t if sign > 0 else acc - t
    return acc


def determinant(M):
    """Exact Laplace/Bareiss-free determinant by permutation expansion (small sizes)."""
    n = len(M)
    if n == 0:
        return ONE
    acc = None
    for perm in itertools.permutations(range(n)):
        t = None
        for r, c in enumerate(perm):
            t = M[r][c] if t is None else t * M[r][c]
        t = t if _perm_sign(perm) > 0 else -t
        acc = t if acc is None else acc + t
    return acc


def submatrix(M, I, J):
    return [[M[i - 1][j - 1] for j in J] for i in I]


def symbolic_weighting(net: PlanarNetwork):
    """Registry of the edge labels (all real) and weights as variables."""
    reg = VarRegistry.build(real=net.labels)
    return reg, {lab: LaurentPoly.var(reg, lab) for lab in net.labels}


# solid minors as coordinates

def delta_name(k, l):
    return f"{DELTA_PREFIX}{k}_{l}"


def delta_label(k, l):
    return f"Delta^({k})_{l}"


def solid_minor_indices(n):
    return [(k, l) for k in range(1, n + 1) for l in range(1, k + 1)]


def solid_minor_rows_cols(n, k, l):
    return list(range(n - k + 1, n - k + l + 1)), list(range(n - l + 1, n + 1))


@lru_cache(maxsize=None)
def delta_registry(n: int) -> VarRegistry:
    """All Delta^(k)_l as real variables, ordered by (k, l)."""
    ks = solid_minor_indices(n)
    return VarRegistry.build(real=[delta_name(k, l) for k, l in ks],
                             labels={delta_name(k, l): delta_label(k, l) for k, l in ks},
                             indices={delta_name(k, l): (k, l) for k, l in ks})


@lru_cache(maxsize=None)
def distinguished_multipath(n: int, k: int, l: int) -> tuple:
    """The unique path system gamma^(k)_l realizing Delta^(k)_l on Gamma_s(n)."""
    net = build_gamma_s(n)
    I, J = solid_minor_rows_cols(n, k, l)
    systems = multipaths(net, I, J)
    if len(systems) != 1 or systems[0][0] != 1:
        raise RuntimeError(f"Delta^({k})_{l} is not a single multi-path on Gamma_s({n})")
    return tuple(systems[0][1])


def multipath_labels(net, paths) -> list[str]:
    return [net.edges[i].label for p in paths for i in p if net.edges[i].label is not None]


@lru_cache(maxsize=None)
def solve_weights_from_deltas(n: int) -> dict:
    """Edge label -> (coefficient, exponent vector over ``delta_registry(n)``).

    Each Delta^(k)_l is the product of the weights on its multi-path; solve
    the triangular monomial system by repeatedly picking a minor whose path
    system has exactly one unknown weight.
    """
    net = build_gamma_s(n)
    reg = delta_registry(n)
    eqs = {}
    for k, l in solid_minor_indices(n):
        labs = multipath_labels(net, distinguished_multipath(n, k, l))
        eqs[(k, l)] = labs
    solved = {}
    pending = dict(eqs)
    while pending:
        progress = False
        for key, labs in list(pending.items()):
            unknown = {x for x in labs if x not in solved}
            if len(unknown) > 1:
                continue
            del pending[key]
            if not unknown:
                continue
            (lab,) = unknown
            if labs.count(lab) != 1:
                raise RuntimeError(f"weight {lab} occurs twice in one multi-path")
            e = list(reg.monomial({delta_name(*key): 1}))
            for other in labs:
                if other != lab:
                    e = [a - b for a, b in zip(e, solved[other][1])]
            solved[lab] = (ONE, tuple(e))
            progress = True
        if not progress:
            raise RuntimeError("weight system is not triangular")
    missing = set(net.labels) - set(solved)
    if missing:
        raise RuntimeError(f"weights not determined by the solid minors: {sorted(missing)}")
    return solved


def delta_weighting(n: int, registry: VarRegistry | None = None) -> dict:
    base = delta_registry(n)
    out = {}
    for lab, (c, e) in solve_weights_from_deltas(n).items():
        p = LaurentPoly._raw(base, {e: c})
        out[lab] = p if registry is None else lp_rebase(p, registry)
    return out


@lru_cache(maxsize=None)
def _minor_in_deltas(n, I, J):
    if any(i > j for i, j in zip(I, J)):
        return LaurentPoly.zero(delta_registry(n))
    return minor_lindstrom(build_gamma_s(n), delta_weighting(n), I, J)


def minor_in_deltas(n: int, I, J, registry: VarRegistry | None = None) -> LaurentPoly:
    """The minor g_{IJ} of an upper triangular matrix as a Laurent polynomial
    in the solid minors Delta^(k)_l."""
    I, J = tuple(sorted(I)), tuple(sorted(J))
    if len(I) != len(J) or not I:
        raise ValueError("minor needs nonempty |I| = |J|")
    if any(x < 1 or x > n for x in I + J):
        raise ValueError(f"minor index outside 1..{n}")
    p = _minor_in_deltas(n, I, J)
    return p if registry is None else lp_rebase(p, registry)


def grading(I, J) -> int:
    """deg g_{IJ} = sum of rows - sum of columns."""
    return sum(I) - sum(J)


def delta_grading(n, k, l) -> int:
    I, J = solid_minor_rows_cols(n, k, l)
    return grading(I, J)


def monomial_grading(n, mono) -> int:
    reg = delta_registry(n)
    return sum(e * delta_grading(n, *reg[i].index) for i, e in enumerate(mono) if e)


# JSON

def network_to_json(net: PlanarNetwork, weights: Mapping | None = None) -> dict:
    ids = {v: f"v{i}" for i, v in enumerate(sorted(net.positions, key=lambda v: (
        net.positions[v][1], net.positions[v][0])))}
    doc = {
        "vertices": [{"id": ids[v], "x": str(net.positions[v][0]), "level": net.positions[v][1]}
                     for v in sorted(ids, key=lambda v: ids[v])],
        "edges": [dict({"tail": ids[e.tail], "head": ids[e.head]},
                       **({"label": e.label} if e.label is not None else {}))
                  for e in net.edges],
        "sources": [ids[v] for v in net.sources],
        "sinks": [ids[v] for v in net.sinks],
    }
    if weights is not None:
        doc["weights"] = {k: str(v) for k, v in weights.items()}
    return doc


def network_from_json(doc: Mapping) -> tuple[PlanarNetwork, dict | None]:
    pos = {}
    for v in doc["vertices"]:
        pos[v["id"]] = (Fraction(v["x"]), int(v["level"]))
    edges = [Edge(e["tail"], e["head"], e.get("label")) for e in doc["edges"]]
    net = PlanarNetwork(pos, edges, list(doc["sources"]), list(doc["sinks"]))
    w = doc.get("weights")
    if w is not None:
        w = {k: GaussianRational.coerce(Fraction(v)) for k, v in w.items()}
        missing = set(net.labels) - set(w)
        if missing:
            raise ValueError(f"weights missing for labels {sorted(missing)}")
    return net, w
