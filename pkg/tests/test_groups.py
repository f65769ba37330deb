from fractions import Fraction

import pytest

from tropoisson.arith import I, LaurentPoly
from tropoisson.groups import (BPLUS, GSTAR, GSTAR0, GroupBracketSpec, assemble,
                               check_extremal_minors, check_log_canonical_part_matches_gstar0,
                               gstar_reality, group_registry, matched_gz_cone, verify_gz)
from tropoisson.gz import gz_cone
from tropoisson.poisson import PoissonStructure, split_log_canonical
from tropoisson.polyhedra import cone_equal
from tropoisson.tropical import TropicalCoordinates, constant_bracket, tropical_cone

HALF = Fraction(1, 2)


def gens(P, *names):
    return [LaurentPoly.var(P.registry, x) for x in names]


def test_spec_validation():
    with pytest.raises(ValueError):
        GroupBracketSpec(0, GSTAR)
    with pytest.raises(ValueError):
        GroupBracketSpec(2, "gl")


def test_registries():
    reg = group_registry(3, GSTAR)
    assert len([v for v in reg.names if not v.startswith("~")]) == 6
    assert {v for v in reg.names if v.startswith("~")} == {"~D2_1", "~D3_1", "~D3_2"}
    assert all(not v.startswith("~") for v in group_registry(3, BPLUS).names)


def test_bplus_n2_table():
    P = assemble(GroupBracketSpec(2, BPLUS))
    d11, d21, d22 = gens(P, "D1_1", "D2_1", "D2_2")
    assert P.bracket("D1_1", "D2_2") == LaurentPoly.zero(P.registry)
    assert P.bracket("D2_1", "D2_2") == LaurentPoly.zero(P.registry)
    assert P.bracket("D1_1", "D2_1") == (d11 * d21).scale(-HALF)


def test_gstar_n2_brackets():
    P = assemble(GroupBracketSpec(2, GSTAR))
    d11, d21, d22, l21 = gens(P, "D1_1", "D2_1", "D2_2", "~D2_1")
    assert P.bracket("D2_1", "~D2_1") == \
        (d22 ** 2 * d11 ** -2).scale(I) - (d11 ** 2).scale(I)
    assert P.bracket("D1_1", "D2_1") == (d11 * d21).scale(-I * HALF)
    assert P.bracket("D1_1", "~D2_1") == (d11 * l21).scale(I * HALF)
    assert not P.bracket("D2_2", "D2_1") and not P.bracket("D2_2", "D1_1")


def test_gstar0_is_log_canonical():
    for n in (2, 3):
        lc = split_log_canonical(assemble(GroupBracketSpec(n, GSTAR0)))
        assert not lc.remainder


@pytest.mark.parametrize("n", [2, 3])
def test_log_canonical_part(n):
    rep = check_log_canonical_part_matches_gstar0(n)
    assert rep.passed, rep.summary()
    assert len(rep.checks) == 3


@pytest.mark.parametrize("n", [2, 3, 4])
def test_verify_gz(n):
    rep = verify_gz(n)
    assert rep.passed, rep.summary()
    assert len(rep.checks) == 5


def test_verify_gz_n1():
    assert verify_gz(1).passed


def test_n2_cone_inequalities():
    P = assemble(GroupBracketSpec(2, GSTAR))
    tc = TropicalCoordinates.of(P.registry)
    c = matched_gz_cone(tropical_cone(P), tc, 2)
    # (zeta^(1)_1, zeta^(2)_1, zeta^(2)_2): z21 > z22 - z11 and z21 > z11
    assert cone_equal(c, gz_cone(2))
    assert c.normals == {(1, 1, -1), (-1, 1, 0)}
    cb = constant_bracket(P)
    assert cb.entry("xi(D1_1)", "phi(D2_1)") == -HALF


def _flipped(P, a, b):
    reg = P.registry
    table = {}
    for (i, j), p in P.items():
        names = {reg[i].name, reg[j].name}
        table[(reg[i].name, reg[j].name)] = -p if names in ({a, b}, {a, "~" + b}) else p
    return PoissonStructure(reg, table)


def test_corrupted_bracket_is_caught():
    P = _flipped(assemble(GroupBracketSpec(2, GSTAR)), "D1_1", "D2_1")
    rep = verify_gz(2, P)
    assert not rep.passed
    bad = {c.name: c for c in rep.failures()}
    check = bad["constant bracket matches the closed form"]
    pairs = [m["pair"] for m in check.detail["mismatches"]]
    assert ("zeta^(1)_1", "phi^(2)_1") in pairs


def test_reality_and_extremal_minors():
    for n in (2, 3, 4):
        assert gstar_reality(n).passed
    rep = check_extremal_minors(3)
    assert rep.passed, rep.summary()
    assert len(rep.checks) == 2 * 3
