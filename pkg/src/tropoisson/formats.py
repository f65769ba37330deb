"""JSON and CSV formats: bracket specs, cones, constant brackets, reports,
deviation tables.  Rationals are written as "p/q" strings."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Mapping

from .arith import COMPLEX, CONJ, REAL, GaussianRational, LaurentPoly, VarRegistry
from .poisson import PoissonStructure
from .polyhedra import StrictCone
from .report import Report
from .tropical import ConstantBracket, TropicalCoordinates

CSV_COLUMNS = ("t", "pair", "scaled value", "limit value", "abs deviation")


class FormatError(ValueError):
    """Malformed input.  ``where`` is a JSON path or a "line L, column C" string."""

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def rational_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s, where=None) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise FormatError(f"expected a rational string 'p/q', got {s!r}", where)
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"not a rational number: {s!r}", where) from None


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, f"line {e.lineno}, column {e.colno}") from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _need(doc, key, typ, where):
    if not isinstance(doc, dict):
        raise FormatError("expected an object", where)
    if key not in doc:
        raise FormatError(f"missing field {key!r}", where)
    val = doc[key]
    if not isinstance(val, typ) or isinstance(val, bool) and typ is not bool:
        raise FormatError(f"field {key!r} has the wrong type", f"{where}.{key}")
    return val


# bracket specs

def structure_to_json(P: PoissonStructure) -> dict:
    reg = P.registry
    variables = []
    for v in reg:
        if v.kind == CONJ:
            continue
        entry = {"name": v.name, "kind": v.kind}
        if v.label:
            entry["label"] = v.label
        if v.index is not None:
            entry["index"] = list(v.index) if isinstance(v.index, tuple) else v.index
        variables.append(entry)
    brackets = []
    for (i, j), p in P.items():
        terms = []
        for m, c in p.sorted_terms():
            terms.append({
                "coeff": {"re": rational_str(c.re), "im": rational_str(c.im)},
                "exponents": {reg[r].name: e for r, e in enumerate(m) if e},
            })
        brackets.append({"lhs": reg[i].name, "rhs": reg[j].name, "poly": terms})
    return {"variables": variables, "brackets": brackets}


def structure_from_json(doc) -> PoissonStructure:
    where = "$"
    specs, labels, indices = [], {}, {}
    for a, v in enumerate(_need(doc, "variables", list, where)):
        w = f"$.variables[{a}]"
        name = _need(v, "name", str, w)
        kind = _need(v, "kind", str, w)
        if kind not in (REAL, COMPLEX):
            raise FormatError(f"kind must be 'real' or 'complex', got {kind!r}", f"{w}.kind")
        if name.startswith("~"):
            raise FormatError("names starting with '~' are reserved for conjugates", f"{w}.name")
        specs.append((name, kind))
        if "label" in v:
            labels[name] = str(v["label"])
        if "index" in v:
            ix = v["index"]
            indices[name] = tuple(ix) if isinstance(ix, list) else ix
    try:
        reg = VarRegistry.ordered(specs, labels=labels, indices=indices)
    except ValueError as e:
        raise FormatError(str(e), "$.variables") from None
    table = {}
    for b, br in enumerate(_need(doc, "brackets", list, where)):
        w = f"$.brackets[{b}]"
        lhs = _need(br, "lhs", str, w)
        rhs = _need(br, "rhs", str, w)
        for side, name in (("lhs", lhs), ("rhs", rhs)):
            if name not in reg:
                raise FormatError(f"unknown variable {name!r}", f"{w}.{side}")
        terms = {}
        for t, term in enumerate(_need(br, "poly", list, w)):
            tw = f"{w}.poly[{t}]"
            coeff = _need(term, "coeff", dict, tw)
            c = GaussianRational(parse_rational(coeff.get("re", "0"), f"{tw}.coeff.re"),
                                 parse_rational(coeff.get("im", "0"), f"{tw}.coeff.im"))
            exps = _need(term, "exponents", dict, tw)
            for name, e in exps.items():
                if name not in reg:
                    raise FormatError(f"unknown variable {name!r}", f"{tw}.exponents")
                if not isinstance(e, int) or isinstance(e, bool):
                    raise FormatError(f"exponent of {name!r} must be an integer",
                                      f"{tw}.exponents.{name}")
            m = reg.monomial(exps)
            terms[m] = terms.get(m, GaussianRational(0)) + c
        key = (reg.index(lhs), reg.index(rhs))
        if key[0] == key[1]:
            raise FormatError("a variable has zero bracket with itself", w)
        if key in table or key[::-1] in table:
            raise FormatError(f"bracket {{{lhs}, {rhs}}} given twice", w)
        table[key] = LaurentPoly(reg, terms)
    return PoissonStructure(reg, table)


# cones and constant brackets

def cone_to_json(cone: StrictCone) -> dict:
    coords = list(cone.coords) if cone.coords else [f"x{i + 1}" for i in range(cone.dim)]
    return {"coordinates": coords, "normals": [list(n) for n in cone.sorted_normals()]}


def cone_from_json(doc) -> StrictCone:
    coords = _need(doc, "coordinates", list, "$")
    normals = _need(doc, "normals", list, "$")
    if not coords:
        raise FormatError("a cone needs at least one coordinate", "$.coordinates")
    out = []
    for a, n in enumerate(normals):
        if (not isinstance(n, list) or len(n) != len(coords)
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in n)):
            raise FormatError(f"normal must be {len(coords)} integers", f"$.normals[{a}]")
        if not any(n):
            raise FormatError("zero normal", f"$.normals[{a}]")
        out.append(tuple(n))
    return StrictCone(len(coords), frozenset(out), tuple(coords))


def bracket_to_json(cb: ConstantBracket) -> dict:
    tc = cb.coords
    return {
        "coordinates": list(tc.names),
        "kinds": list(tc.kinds),
        "sources": list(tc.sources),
        "keys": [list(k) if isinstance(k, tuple) else k for k in tc.keys],
        "cone_dim": tc.cone_dim,
        "matrix": [[rational_str(x) for x in row] for row in cb.matrix],
    }


def bracket_from_json(doc) -> ConstantBracket:
    names = _need(doc, "coordinates", list, "$")
    rows = _need(doc, "matrix", list, "$")
    kinds = doc.get("kinds") or ["xi"] * len(names)
    sources = doc.get("sources") or list(range(len(names)))
    keys = doc.get("keys") or [None] * len(names)
    dim = doc.get("cone_dim", sum(k != "phi" for k in kinds))
    if not (len(kinds) == len(sources) == len(keys) == len(names)):
        raise FormatError("coordinate metadata lengths differ", "$")
    M = []
    for a, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(names):
            raise FormatError(f"row must have {len(names)} entries", f"$.matrix[{a}]")
        M.append(tuple(parse_rational(x, f"$.matrix[{a}][{b}]") for b, x in enumerate(row)))
    tc = TropicalCoordinates(tuple(names), tuple(kinds), tuple(sources), dim,
                             tuple(tuple(k) if isinstance(k, list) else k for k in keys))
    try:
        return ConstantBracket(tc, tuple(M))
    except ValueError as e:
        raise FormatError(str(e), "$.matrix") from None


# GZ patterns and zeta points: flat arrays with an index legend

def zeta_to_json(values, n: int, kind: str = "zeta") -> dict:
    from .gz import zeta_keys
    keys = zeta_keys(n)
    return {"kind": kind, "n": n, "legend": [list(kl) for kl in keys],
            "values": [rational_str(values[kl]) for kl in keys]}


def pattern_to_json(pattern) -> dict:
    return zeta_to_json(pattern.values, pattern.n, "lambda")


def zeta_from_json(doc) -> dict:
    n = _need(doc, "n", int, "$")
    legend = _need(doc, "legend", list, "$")
    vals = _need(doc, "values", list, "$")
    if len(legend) != len(vals):
        raise FormatError("legend and values differ in length", "$.values")
    out = {}
    for a, (kl, v) in enumerate(zip(legend, vals)):
        if not (isinstance(kl, list) and len(kl) == 2 and 1 <= kl[1] <= kl[0] <= n):
            raise FormatError(f"bad index for size {n}", f"$.legend[{a}]")
        out[tuple(kl)] = parse_rational(v, f"$.values[{a}]")
    if len(out) != n * (n + 1) // 2:
        raise FormatError(f"need all {n * (n + 1) // 2} entries", "$.legend")
    return out


def pattern_from_json(doc):
    from .gz import GZPattern
    return GZPattern(doc.get("n"), zeta_from_json(doc))


# reports and tables

def report_to_json(rep: Report) -> dict:
    return rep.to_json()


def report_from_json(doc) -> Report:
    _need(doc, "title", str, "$")
    _need(doc, "checks", list, "$")
    return Report.from_json(doc)


def _float_or_complex(v):
    return v if isinstance(v, float) else complex(v)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for t, pair, scaled, lim, dev in rows:
        w.writerow([repr(float(t)), pair, repr(_float_or_complex(scaled)), repr(float(lim)),
                    repr(float(dev))])
    return buf.getvalue()


def rows_from_csv(text: str):
    r = csv.reader(io.StringIO(text))
    head = next(r, None)
    if tuple(head or ()) != CSV_COLUMNS:
        raise FormatError(f"expected header {CSV_COLUMNS}", "line 1")
    out = []
    for ln, row in enumerate(r, start=2):
        if len(row) != 5:
            raise FormatError("expected 5 columns", f"line {ln}")
        scaled = complex(row[2].strip("()")) if "j" in row[2] else float(row[2])
        out.append((float(row[0]), row[1], scaled, float(row[3]), float(row[4])))
    return out


def read_json(path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write_text(path, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
