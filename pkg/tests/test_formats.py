import json
import os
from fractions import Fraction

import jsonschema
import pytest

from tropoisson import formats
from tropoisson.formats import FormatError
from tropoisson.groups import FAMILIES, GroupBracketSpec, assemble, verify_gz
from tropoisson.gz import GZPattern, sigma
from tropoisson.networks import build_gamma_s, network_from_json, network_to_json
from tropoisson.tropical import constant_bracket, limit_sample, tropical_cone
from test_poisson import abc, complex_example

ROOT = os.path.join(os.path.dirname(__file__), "..")


def schema(name):
    with open(os.path.join(ROOT, "schemas", f"{name}.schema.json")) as fh:
        return json.load(fh)


def through_text(doc):
    return formats.loads(formats.dumps(doc))


def structures():
    out = [abc(), complex_example()]
    for fam in FAMILIES:
        for n in (1, 2, 3):
            out.append(assemble(GroupBracketSpec(n, fam)))
    return out


def test_rationals():
    assert formats.rational_str(Fraction(-3, 4)) == "-3/4"
    assert formats.rational_str(2) == "2/1"
    assert formats.parse_rational("6/4") == Fraction(3, 2)
    assert formats.parse_rational(-2) == -2
    for bad in ("1/0", "x", 1.5, True, None):
        with pytest.raises(FormatError):
            formats.parse_rational(bad)


@pytest.mark.parametrize("P", structures(), ids=repr)
def test_structure_round_trip(P):
    doc = through_text(formats.structure_to_json(P))
    jsonschema.validate(doc, schema("bracket_spec"))
    Q = formats.structure_from_json(doc)
    assert Q == P
    assert formats.structure_to_json(Q) == doc


def test_cone_and_bracket_round_trip():
    for P in structures():
        cone = tropical_cone(P)
        doc = through_text(formats.cone_to_json(cone))
        jsonschema.validate(doc, schema("cone"))
        back = formats.cone_from_json(doc)
        assert back.normals == cone.normals and back.dim == cone.dim
        cb = constant_bracket(P)
        doc = through_text(formats.bracket_to_json(cb))
        jsonschema.validate(doc, schema("bracket"))
        assert formats.bracket_from_json(doc) == cb


def test_report_round_trip():
    rep = verify_gz(2)
    doc = through_text(formats.report_to_json(rep))
    jsonschema.validate(doc, schema("report"))
    back = formats.report_from_json(doc)
    assert back.passed == rep.passed and [c.name for c in back.checks] == [c.name for c in rep.checks]
    assert formats.report_to_json(back) == doc


def test_network_documents_validate():
    with open(os.path.join(ROOT, "data", "three_line_network.json")) as fh:
        jsonschema.validate(json.load(fh), schema("network"))
    net = build_gamma_s(4)
    doc = through_text(network_to_json(net, {lab: Fraction(1, 3) for lab in net.labels}))
    jsonschema.validate(doc, schema("network"))
    net2, w = network_from_json(doc)
    assert net2.labels == net.labels


def test_zeta_and_pattern_round_trip():
    p = GZPattern(3, {(1, 1): 0, (2, 1): 1, (2, 2): -1, (3, 1): 2, (3, 2): Fraction(1, 2),
                      (3, 3): -2})
    for doc in (formats.pattern_to_json(p), formats.zeta_to_json(sigma(p), 3)):
        jsonschema.validate(through_text(doc), schema("zeta_point"))
    assert formats.pattern_from_json(formats.pattern_to_json(p)) == p
    assert formats.zeta_from_json(formats.zeta_to_json(sigma(p), 3)) == sigma(p)
    bad = formats.zeta_to_json(sigma(p), 3)
    bad["legend"][0] = [1, 2]
    with pytest.raises(FormatError, match=r"\$\.legend\[0\]"):
        formats.zeta_from_json(bad)


def test_csv_round_trip():
    rows = limit_sample(abc(), (1, 2), None, (2, 5))
    rows += limit_sample(complex_example(), (0, 2), {"z": 0.3}, (2,))
    text = formats.rows_to_csv(rows)
    assert text.splitlines()[0] == "t,pair,scaled value,limit value,abs deviation"
    back = formats.rows_from_csv(text)
    assert formats.rows_to_csv(back) == text
    for a, b in zip(rows, back):
        assert a[1] == b[1] and a[4] == b[4]
    with pytest.raises(FormatError, match="line 1"):
        formats.rows_from_csv("a,b\n")


def test_data_files_parse():
    for name in ("ex_abc", "ex2_empty", "complex_example", "log_canonical"):
        doc = formats.read_json(os.path.join(ROOT, "data", f"{name}.json"))
        jsonschema.validate(doc, schema("bracket_spec"))
        formats.structure_from_json(doc)
    P = formats.structure_from_json(formats.read_json(os.path.join(ROOT, "data", "ex_abc.json")))
    assert P == abc()


# error locations

def test_syntax_error_has_line_and_column():
    with pytest.raises(FormatError) as ei:
        formats.loads('{\n  "variables": [,]\n}')
    assert ei.value.where == "line 2, column 17"


@pytest.mark.parametrize("mutate, where", [
    (lambda d: d.pop("brackets"), "$"),
    (lambda d: d["variables"][0].update(kind="imaginary"), "$.variables[0].kind"),
    (lambda d: d["variables"][1].update(name="~x"), "$.variables[1].name"),
    (lambda d: d["brackets"][0].update(lhs="q"), "$.brackets[0].lhs"),
    (lambda d: d["brackets"][0]["poly"][1]["coeff"].update(re="1/0"),
     "$.brackets[0].poly[1].coeff.re"),
    (lambda d: d["brackets"][0]["poly"][0]["exponents"].update(x1=1.5),
     "$.brackets[0].poly[0].exponents.x1"),
    (lambda d: d["brackets"].append(dict(d["brackets"][0])), "$.brackets[1]"),
    (lambda d: d["brackets"][0].update(rhs="x1"), "$.brackets[0]"),
    (lambda d: d.update(variables={}), "$.variables"),
])
def test_structural_errors_are_located(mutate, where):
    doc = formats.structure_to_json(abc())
    mutate(doc)
    with pytest.raises(FormatError) as ei:
        formats.structure_from_json(doc)
    assert ei.value.where == where


def test_cone_and_bracket_errors():
    with pytest.raises(FormatError, match=r"\$\.normals\[0\]"):
        formats.cone_from_json({"coordinates": ["a", "b"], "normals": [[1]]})
    with pytest.raises(FormatError, match="zero normal"):
        formats.cone_from_json({"coordinates": ["a"], "normals": [[0]]})
    with pytest.raises(FormatError, match=r"\$\.matrix"):
        formats.bracket_from_json({"coordinates": ["a", "b"], "matrix": [["0/1", "1/1"], ["1/1", "0/1"]]})
