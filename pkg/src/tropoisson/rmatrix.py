"""Brackets of minors under r-matrix Poisson structures, kept symbolic.

A minor symbol is ``g_{IJ}`` (tag ``G``, upper triangular g) or ``(f^-1)_{ST}``
(tag ``FInv``, lower triangular f^-1).  ``r = r0 + r'`` with
``r0 = 1/2 sum e_kk (x) e_kk`` and ``r' = sum_{u<v} e_uv (x) e_vu``.

The replacement sigma_{u,v}(I) swaps u for v *in place*; the resulting row
list is then sorted, which contributes the sign of the sorting permutation.
A repeated index makes the minor vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .arith import ZERO, GaussianRational

G = "G"
FINV = "FInv"

LEFT_LEFT = "LL"      # r0 L1 M2
RIGHT_RIGHT = "RR"    # L1 M2 r0
MIDDLE = "MID"        # L1 r0 M2
MIDDLE_REV = "MIDREV"  # M2 r0 L1


@dataclass(frozen=True, order=True)
class MinorSymbol:
    tag: str
    rows: tuple
    cols: tuple

    def __post_init__(self):
        if self.tag not in (G, FINV):
            raise ValueError(f"unknown minor tag {self.tag!r}")
        rows, cols = tuple(self.rows), tuple(self.cols)
        if len(rows) != len(cols) or not rows:
            raise ValueError("a minor needs equal, nonzero numbers of rows and columns")
        if list(rows) != sorted(set(rows)) or list(cols) != sorted(set(cols)):
            raise ValueError("rows and columns of a minor symbol must be sorted and distinct")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    @property
    def size(self):
        return len(self.rows)

    def __str__(self):
        name = "g" if self.tag == G else "finv"
        r = ",".join(map(str, self.rows))
        c = ",".join(map(str, self.cols))
        return f"{name}[{r};{c}]"


def _sort_sign(seq):
    """(sign, sorted tuple) for a list of indices; sign 0 on a repeat."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, None
    sign = 1
    # count inversions
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                sign = -sign
    return sign, tuple(sorted(seq))


def minor(tag, rows, cols):
    """Canonical (sign, MinorSymbol) for possibly unsorted index lists; (0, None) if zero."""
    s1, r = _sort_sign(rows)
    s2, c = _sort_sign(cols)
    if not s1 or not s2:
        return 0, None
    return s1 * s2, MinorSymbol(tag, r, c)


def sigma(index_list, old, new):
    """Replace ``old`` by ``new`` at the same position."""
    return [new if x == old else x for x in index_list]


class MinorExpression:
    """Gaussian-rational combination of products of minor symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c:
                clean[tuple(sorted(key))] = clean.get(tuple(sorted(key)), ZERO) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def product(cls, coeff, *factors):
        """coeff * prod(factors) where each factor is (tag, rows, cols) in any order."""
        sign = 1
        syms = []
        for f in factors:
            if isinstance(f, MinorSymbol):
                syms.append(f)
                continue
            s, m = minor(*f)
            if not s:
                return cls()
            sign *= s
            syms.append(m)
        return cls({tuple(syms): GaussianRational.coerce(coeff) * sign})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return MinorExpression(out)

    def __neg__(self):
        return MinorExpression({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = GaussianRational.coerce(c)
        return MinorExpression({k: v * c for k, v in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MinorExpression):
            return NotImplemented
        return self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def symbols(self):
        return {s for k in self.terms for s in k}

    def __repr__(self):
        return f"MinorExpression({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            parts.append(f"({self.terms[k]})*" + "*".join(map(str, k)))
        return " + ".join(parts)


def _check(L: MinorSymbol, M: MinorSymbol):
    if not isinstance(L, MinorSymbol) or not isinstance(M, MinorSymbol):
        raise TypeError("brackets take MinorSymbol arguments")


def bracket_rprime_left(L: MinorSymbol, M: MinorSymbol, n=None) -> MinorExpression:
    """r' L1 M2: sum_{u<v} chi_I(u) chi_S(v) L_{sigma_uv(I),J} M_{sigma_vu(S),T}."""
    _check(L, M)
    out = MinorExpression()
    for u in L.rows:
        if u in M.rows:
            continue
        for v in M.rows:
            if v <= u or v in L.rows:
                continue
            out += MinorExpression.product(1, (L.tag, sigma(L.rows, u, v), L.cols),
                                           (M.tag, sigma(M.rows, v, u), M.cols))
    return out


def bracket_rprime_right(L: MinorSymbol, M: MinorSymbol, n=None) -> MinorExpression:
    """L1 M2 r': sum_{u<v} chi_J(v) chi_T(u) L_{I,sigma_vu(J)} M_{S,sigma_uv(T)}."""
    _check(L, M)
    out = MinorExpression()
    for v in L.cols:
        if v in M.cols:
            continue
        for u in M.cols:
            if u >= v or u in L.cols:
                continue
            out += MinorExpression.product(1, (L.tag, L.rows, sigma(L.cols, v, u)),
                                           (M.tag, M.rows, sigma(M.cols, u, v)))
    return out


def bracket_rprime_mid(L: MinorSymbol, M: MinorSymbol, n=None) -> MinorExpression:
    """L1 r' M2: sum_{u<v} chi_J(v) chi_S(v) L_{I,sigma_vu(J)} M_{sigma_vu(S),T}."""
    _check(L, M)
    out = MinorExpression()
    for v in L.cols:
        if v not in M.rows:
            continue
        for u in range(1, v):
            if u in L.cols or u in M.rows:
                continue
            out += MinorExpression.product(1, (L.tag, L.rows, sigma(L.cols, v, u)),
                                           (M.tag, sigma(M.rows, v, u), M.cols))
    return out


def bracket_rprime_mid_reversed(L: MinorSymbol, M: MinorSymbol, n=None) -> MinorExpression:
    """M2 r' L1: sum_{u<v} chi_I(u) chi_T(u) L_{sigma_uv(I),J} M_{S,sigma_uv(T)}."""
    _check(L, M)
    if n is None:
        raise ValueError("the reversed middle bracket needs the matrix size n")
    out = MinorExpression()
    for u in L.rows:
        if u not in M.cols:
            continue
        for v in range(u + 1, n + 1):
            if v in L.rows or v in M.cols:
                continue
            out += MinorExpression.product(1, (L.tag, sigma(L.rows, u, v), L.cols),
                                           (M.tag, M.rows, sigma(M.cols, u, v)))
    return out


def _common(a, b):
    return len(set(a) & set(b))


def bracket_r0(L: MinorSymbol, M: MinorSymbol, side=LEFT_LEFT) -> MinorExpression:
    """The r0 brackets: 1/2 |I&S|, 1/2 |J&T|, 1/2 |J&S| (and 1/2 |I&T| reversed) times L M."""
    _check(L, M)
    count = {
        LEFT_LEFT: _common(L.rows, M.rows),
        RIGHT_RIGHT: _common(L.cols, M.cols),
        MIDDLE: _common(L.cols, M.rows),
        MIDDLE_REV: _common(L.rows, M.cols),
    }
    if side not in count:
        raise ValueError(f"unknown side {side!r}")
    return MinorExpression.product(Fraction(count[side], 2), L, M)


def bracket_commutator(L: MinorSymbol, M: MinorSymbol, n=None) -> MinorExpression:
    """{L1, M2} = [r, L1 M2] for two minors of the same matrix."""
    _check(L, M)
    if L.tag != M.tag:
        raise ValueError("commutator bracket needs minors of the same matrix")
    return (bracket_rprime_left(L, M) - bracket_rprime_right(L, M)
            + bracket_r0(L, M, LEFT_LEFT) - bracket_r0(L, M, RIGHT_RIGHT))


def bracket_sandwich(L: MinorSymbol, M: MinorSymbol, n=None) -> MinorExpression:
    """{g1, (f^-1)2} = g1 r (f^-1)2 - (f^-1)2 r g1 on a g-minor and an f^-1-minor."""
    _check(L, M)
    if L.tag != G or M.tag != FINV:
        raise ValueError("sandwich bracket needs a g-minor on the left and an f^-1-minor")
    if n is None:
        raise ValueError("the sandwich bracket needs the matrix size n")
    return (bracket_rprime_mid(L, M) - bracket_rprime_mid_reversed(L, M, n)
            + bracket_r0(L, M, MIDDLE) - bracket_r0(L, M, MIDDLE_REV))


def vanishes_on_triangular(s: MinorSymbol) -> bool:
    if s.tag == G:
        return any(i > j for i, j in zip(s.rows, s.cols))
    return any(i < j for i, j in zip(s.rows, s.cols))


def simplify_triangular(e: MinorExpression, n=None) -> MinorExpression:
    """Drop products containing a minor that is identically zero for upper
    triangular g / lower triangular f^-1."""
    out = {}
    for k, v in e.terms.items():
        if n is not None and any(x < 1 or x > n for s in k for x in s.rows + s.cols):
            raise ValueError(f"minor index outside 1..{n}")
        if not any(vanishes_on_triangular(s) for s in k):
            out[k] = v
    return MinorExpression(out)


# solid minors and the closed forms

def eps(x) -> int:
    return (x > 0) - (x < 0)


def delta_rows_cols(n, k, l):
    if not 1 <= l <= k <= n:
        raise ValueError(f"need 1 <= l <= k <= n, got k={k}, l={l}, n={n}")
    return tuple(range(n - k + 1, n - k + l + 1)), tuple(range(n - l + 1, n + 1))


def delta_symbol(n, k, l) -> MinorSymbol:
    """Delta^(k)_l: rows n-k+1..n-k+l, last l columns of g."""
    rows, cols = delta_rows_cols(n, k, l)
    return MinorSymbol(G, rows, cols)


def lambda_symbol(n, k, l) -> MinorSymbol:
    """Lambda^(k)_l: last l rows, columns n-k+1..n-k+l of f^-1."""
    rows, cols = delta_rows_cols(n, k, l)
    return MinorSymbol(FINV, cols, rows)


def solid_indices(n):
    return [(k, l) for k in range(1, n + 1) for l in range(1, k + 1)]


def delta_delta_coefficient(n, k, l, p, q) -> Fraction:
    a, b = delta_symbol(n, k, l), delta_symbol(n, p, q)
    C = _common(a.cols, b.cols)
    R = _common(a.rows, b.rows)
    return Fraction(eps(k - p) * (C - R), 2)


def lambda_lambda_coefficient(n, k, l, p, q) -> Fraction:
    """1/2 eps(k-p)(R - C) with R, C the common rows and columns of the matching
    Delta minors (the transposed shape swaps them for the Lambda minors)."""
    a, b = delta_symbol(n, k, l), delta_symbol(n, p, q)
    C = _common(a.cols, b.cols)
    R = _common(a.rows, b.rows)
    return Fraction(eps(k - p) * (R - C), 2)


def delta_lambda_coefficient(n, k, l, p, q) -> Fraction:
    """1/2 (A - B): A = columns of Delta^(k)_l among rows of Lambda^(p)_q,
    B = rows of Delta^(k)_l among columns of Lambda^(p)_q."""
    a, b = delta_symbol(n, k, l), lambda_symbol(n, p, q)
    A = _common(a.cols, b.rows)
    B = _common(a.rows, b.cols)
    return Fraction(A - B, 2)


def angle_coefficient(n, k, l, p, q) -> Fraction:
    """Limit bracket {zeta^(k)_l, phi^(p)_q} = 1/4 (eps(k-p) - 1)(C - R)."""
    a, b = delta_symbol(n, k, l), delta_symbol(n, p, q)
    C = _common(a.cols, b.cols)
    R = _common(a.rows, b.rows)
    return Fraction((eps(k - p) - 1) * (C - R), 4)


def expression_single_product(e: MinorExpression, factors: Iterable[MinorSymbol]):
    """Coefficient of ``prod(factors)`` if ``e`` is exactly that one product (or 0)."""
    key = tuple(sorted(factors))
    if not e.terms:
        return ZERO
    if set(e.terms) != {key}:
        return None
    return e.terms[key]
