"""Exact Gaussian-rational coefficients and Laurent polynomials.

Coefficients live in Q(i).  A :class:`LaurentPoly` is a finitely supported map
from integer exponent vectors (indexed by a :class:`VarRegistry`) to
:class:`GaussianRational` values.  Everything here is immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

REAL = "real"
COMPLEX = "complex"
CONJ = "conj"


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact coefficients")
    return Fraction(x)


class GaussianRational:
    """A number ``re + i*im`` with ``re, im`` rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_fraction(re))
        object.__setattr__(self, "im", as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("complex floats are not accepted as exact coefficients")
        return cls(x, 0)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        d = self.norm2()
        if d == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / d, -self.im / d)

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{_imag_str(self.im)}"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{_imag_str(abs(self.im))})"


def _imag_str(q: Fraction) -> str:
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    return f"{q}i"


def _coerce_or_none(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x, 0)
    return None


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)


@dataclass(frozen=True)
class Var:
    name: str
    kind: str = REAL
    label: str = ""
    partner: str | None = None
    # optional structured key, e.g. (k, l) for the solid minor D^(k)_l
    index: tuple | None = None

    def __post_init__(self):
        if self.kind not in (REAL, COMPLEX, CONJ):
            raise ValueError(f"unknown variable kind {self.kind!r}")
        if not self.label:
            object.__setattr__(self, "label", self.name)


@dataclass(frozen=True)
class VarRegistry:
    """Ordered variables.  Complex variables come with a conjugate partner."""

    variables: tuple[Var, ...]
    _pos: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vs = tuple(self.variables)
        object.__setattr__(self, "variables", vs)
        pos = {}
        for i, v in enumerate(vs):
            if v.name in pos:
                raise ValueError(f"duplicate variable name {v.name!r}")
            pos[v.name] = i
        object.__setattr__(self, "_pos", pos)
        for v in vs:
            if v.kind == REAL:
                if v.partner is not None:
                    raise ValueError(f"real variable {v.name!r} cannot have a partner")
                continue
            if v.partner is None or v.partner not in pos:
                raise ValueError(f"variable {v.name!r} lacks its conjugate partner")
            p = vs[pos[v.partner]]
            want = CONJ if v.kind == COMPLEX else COMPLEX
            if p.kind != want or p.partner != v.name:
                raise ValueError(f"inconsistent conjugate pair {v.name!r}/{p.name!r}")

    @classmethod
    def build(cls, real: Iterable = (), complex_: Iterable = (), *, labels=None,
              indices=None) -> "VarRegistry":
        """Real variables, then complex ones, then the conjugates ``~name``."""
        labels = labels or {}
        indices = indices or {}
        out = [Var(n, REAL, labels.get(n, ""), None, indices.get(n)) for n in real]
        cx = list(complex_)
        out += [Var(n, COMPLEX, labels.get(n, ""), "~" + n, indices.get(n)) for n in cx]
        out += [Var("~" + n, CONJ, "~" + labels.get(n, n), n, indices.get(n)) for n in cx]
        return cls(tuple(out))

    @classmethod
    def ordered(cls, specs: Iterable[tuple], *, labels=None, indices=None) -> "VarRegistry":
        """Variables in the given order; conjugates of complex ones are appended."""
        labels = labels or {}
        indices = indices or {}
        out, conj = [], []
        for name, kind in specs:
            if kind == REAL:
                out.append(Var(name, REAL, labels.get(name, ""), None, indices.get(name)))
            elif kind == COMPLEX:
                out.append(Var(name, COMPLEX, labels.get(name, ""), "~" + name,
                               indices.get(name)))
                conj.append(Var("~" + name, CONJ, "~" + labels.get(name, name), name,
                                indices.get(name)))
            else:
                raise ValueError(f"kind must be real or complex, got {kind!r}")
        return cls(tuple(out + conj))

    def __len__(self):
        return len(self.variables)

    def __iter__(self):
        return iter(self.variables)

    def __getitem__(self, i) -> Var:
        return self.variables[i]

    def __contains__(self, name):
        return name in self._pos

    def index(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def var(self, name: str) -> Var:
        return self.variables[self.index(name)]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @property
    def has_complex(self) -> bool:
        return any(v.kind != REAL for v in self.variables)

    def partner_index(self, i: int) -> int | None:
        p = self.variables[i].partner
        return None if p is None else self._pos[p]

    def unit(self) -> tuple[int, ...]:
        return (0,) * len(self.variables)

    def monomial(self, exps: Mapping[str, int] | None = None) -> tuple[int, ...]:
        e = [0] * len(self.variables)
        for name, k in (exps or {}).items():
            e[self.index(name)] += int(k)
        return tuple(e)


Monomial = tuple  # exponent vector indexed by registry position


class RegistryMismatch(ValueError):
    pass


class LaurentPoly:
    """Immutable Laurent polynomial with Gaussian-rational coefficients."""

    __slots__ = ("registry", "terms", "_hash")

    def __init__(self, registry: VarRegistry, terms: Mapping | None = None):
        self.registry = registry
        clean = {}
        n = len(registry)
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise ValueError(f"exponent vector {m} does not match registry size {n}")
            c = GaussianRational.coerce(c)
            if c:
                clean[m] = c
        self.terms = clean
        self._hash = None

    # trusted constructor: terms already clean
    @classmethod
    def _raw(cls, registry, terms):
        p = cls.__new__(cls)
        p.registry = registry
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, registry):
        return cls._raw(registry, {})

    @classmethod
    def const(cls, registry, c=1):
        c = GaussianRational.coerce(c)
        return cls._raw(registry, {registry.unit(): c} if c else {})

    @classmethod
    def var(cls, registry, name, power=1):
        e = [0] * len(registry)
        e[registry.index(name)] = power
        return cls._raw(registry, {tuple(e): ONE})

    @classmethod
    def monomial(cls, registry, exps, coeff=1):
        if isinstance(exps, Mapping):
            exps = registry.monomial(exps)
        return cls(registry, {tuple(exps): coeff})

    def _check(self, other):
        if other.registry is not self.registry and other.registry != self.registry:
            raise RegistryMismatch("Laurent polynomials over different registries")

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        c = _coerce_or_none(other)
        if c is None:
            return None
        return LaurentPoly.const(self.registry, c)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.registry == other.registry and self.terms == other.terms
        c = _coerce_or_none(other)
        if c is None:
            return NotImplemented
        return self.terms == LaurentPoly.const(self.registry, c).terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly._raw(self.registry, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.registry, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return LaurentPoly._raw(self.registry, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers are only defined for monomials")
            (m, c), = self.terms.items()
            inv = c.inverse()
            k = -k
            return LaurentPoly._raw(self.registry,
                                    {tuple(-e * k for e in m): _gr_pow(inv, k)})
        out = LaurentPoly.const(self.registry, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "LaurentPoly":
        c = GaussianRational.coerce(c)
        if not c:
            return LaurentPoly.zero(self.registry)
        return LaurentPoly._raw(self.registry, {m: c * v for m, v in self.terms.items()})

    def coefficient(self, mono) -> GaussianRational:
        return self.terms.get(tuple(mono), ZERO)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def sorted_terms(self):
        """Terms in descending lexicographic order of exponents (registry order)."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def conjugate(self) -> "LaurentPoly":
        return lp_conjugate(self)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = _mono_str(self.registry, m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _gr_pow(c: GaussianRational, k: int) -> GaussianRational:
    out = ONE
    for _ in range(k):
        out = out * c
    return out


def _mono_str(registry, m) -> str:
    bits = []
    for v, e in zip(registry, m):
        if e == 0:
            continue
        bits.append(v.name if e == 1 else f"{v.name}^{e}")
    return "*".join(bits)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    a._check(b)
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    a._check(b)
    return a * b


def lp_conjugate(p: LaurentPoly) -> LaurentPoly:
    """Complex conjugate: conjugate coefficients, swap z with its partner ~z."""
    reg = p.registry
    perm = [reg.partner_index(i) for i in range(len(reg))]
    perm = [i if j is None else j for i, j in enumerate(perm)]
    out = {}
    for m, c in p.terms.items():
        e = [0] * len(m)
        for i, k in enumerate(m):
            e[perm[i]] += k
        out[tuple(e)] = c.conjugate()
    return LaurentPoly._raw(reg, out)


def lp_substitute(p: LaurentPoly, var: str, mono, coeff=1) -> LaurentPoly:
    """Replace ``var`` by ``coeff * x^mono`` everywhere in ``p``."""
    reg = p.registry
    coeff = GaussianRational.coerce(coeff)
    if not coeff:
        raise ValueError("substituting a zero coefficient into a Laurent polynomial")
    if isinstance(mono, Mapping):
        mono = reg.monomial(mono)
    mono = tuple(mono)
    k = reg.index(var)
    if mono[k] != 0:
        raise ValueError(f"circular substitution: {var!r} appears in its own image")
    out = LaurentPoly.zero(reg)
    for m, c in p.terms.items():
        e = m[k]
        new = list(m)
        new[k] = 0
        new = [a + e * b for a, b in zip(new, mono)]
        cc = c * (_gr_pow(coeff, e) if e >= 0 else _gr_pow(coeff.inverse(), -e))
        out = out + LaurentPoly._raw(reg, {tuple(new): cc})
    return out


def lp_rebase(p: LaurentPoly, registry: VarRegistry, rename: Mapping[str, str] | None = None
              ) -> LaurentPoly:
    """Move ``p`` into another registry, matching variables by (renamed) name."""
    rename = rename or {}
    idx = [registry.index(rename.get(v.name, v.name)) for v in p.registry]
    out = {}
    n = len(registry)
    for m, c in p.terms.items():
        e = [0] * n
        for i, k in enumerate(m):
            if k:
                e[idx[i]] += k
        out[tuple(e)] = c
    return LaurentPoly._raw(registry, out)


def lp_eval(p: LaurentPoly, point: Mapping[str, complex]) -> complex:
    """Numeric value of ``p``; conjugate variables default to the conjugate value.
    Only variables occurring in ``p`` need a value."""
    reg = p.registry
    used = {i for m in p.terms for i, e in enumerate(m) if e}
    vals = [1j] * len(reg)
    for i in used:
        v = reg[i]
        if v.name in point:
            x = complex(point[v.name])
        elif v.kind == CONJ and v.partner in point:
            x = complex(point[v.partner]).conjugate()
        else:
            raise KeyError(f"no value for variable {v.name!r}")
        if x == 0:
            raise ValueError(f"variable {v.name!r} evaluates to zero")
        vals[i] = x
    total = 0j
    for m, c in p.terms.items():
        t = complex(c)
        for x, e in zip(vals, m):
            if e:
                t *= x ** e
        total += t
    return total

