import math
from fractions import Fraction

import pytest

from tropoisson.arith import I, LaurentPoly, VarRegistry
from tropoisson.groups import GSTAR, GroupBracketSpec, assemble
from tropoisson.poisson import PoissonStructure
from tropoisson.polyhedra import StrictCone, cone_interior_sample, cone_is_empty
from tropoisson.tropical import (ConstantBracket, RealityError, TropicalCoordinates, casimirs,
                                 check_liouville_structure, constant_bracket, decay_margin,
                                 deviation_decreasing, limit_sample, max_deviation,
                                 scaled_brackets, tropical_cone)
from test_poisson import abc, complex_example

HALF = Fraction(1, 2)


def example_two():
    reg = VarRegistry.build(real=["x1", "x2"])
    x1, x2 = LaurentPoly.var(reg, "x1"), LaurentPoly.var(reg, "x2")
    return PoissonStructure(reg, {("x1", "x2"): x1 * (1 + x2 ** 2)})


def log_canonical():
    reg = VarRegistry.build(real=["u", "v", "w"])
    m = lambda a, b: LaurentPoly.monomial(reg, {a: 1, b: 1})
    return PoissonStructure(reg, {("u", "v"): m("u", "v").scale(HALF),
                                  ("u", "w"): m("u", "w").scale(-3),
                                  ("v", "w"): m("v", "w").scale(2)})


def test_cone_examples():
    assert tropical_cone(abc()).normals == {(-1, 1), (1, 0)}
    assert cone_is_empty(tropical_cone(example_two()))
    assert tropical_cone(complex_example()).normals == {(-1, 1), (1, 1)}
    assert tropical_cone(log_canonical()).normals == frozenset()


def test_constant_bracket_examples():
    cb = constant_bracket(abc())
    assert cb.entry("xi(x1)", "xi(x2)") == 1
    cb = constant_bracket(complex_example())
    assert cb.coords.names == ("xi(x)", "zeta(z)", "phi(z)")
    assert cb.entry("xi(x)", "phi(z)") == 1
    assert cb.entry("xi(x)", "zeta(z)") == 0
    assert cb.entry("zeta(z)", "phi(z)") == 0
    cb = constant_bracket(log_canonical())
    assert cb.entry("xi(u)", "xi(w)") == -3 and cb.entry("xi(w)", "xi(v)") == -2


def test_gstar_n2_bracket_and_casimirs():
    cb = constant_bracket(assemble(GroupBracketSpec(2, GSTAR)))
    # real generators Delta^(k)_k carry xi coordinates; they play the role of zeta^(k)_k
    assert cb.entry("xi(D1_1)", "phi(D2_1)") == -HALF
    nz = {(a, b) for a, row in enumerate(cb.matrix) for b, x in enumerate(row) if x}
    names = cb.coords.names
    assert {frozenset((names[a], names[b])) for a, b in nz} == \
        {frozenset(("xi(D1_1)", "phi(D2_1)"))}
    assert set(casimirs(cb)) == {"zeta(D2_1)", "xi(D2_2)"}


def test_gstar_n3_casimirs_exact():
    cb = constant_bracket(assemble(GroupBracketSpec(3, GSTAR)))
    assert set(casimirs(cb)) == {"zeta(D3_1)", "zeta(D3_2)", "xi(D3_3)"}


def test_all_zero_bracket_casimirs():
    reg = VarRegistry.build(real=["a", "b"])
    cb = constant_bracket(PoissonStructure(reg))
    assert casimirs(cb) == ["xi(a)", "xi(b)"]


def test_complex_blocks_vanish():
    for n in (2, 3):
        cb = constant_bracket(assemble(GroupBracketSpec(n, GSTAR)))
        kinds = cb.coords.kinds
        for a, ka in enumerate(kinds):
            for b, kb in enumerate(kinds):
                if (ka == "phi") == (kb == "phi"):
                    assert cb.matrix[a][b] == 0


def test_reality_failure_raises():
    reg = VarRegistry.build(real=["x"], complex_=["z"])
    x, z = LaurentPoly.var(reg, "x"), LaurentPoly.var(reg, "z")
    P = PoissonStructure(reg, {("x", "z"): x * z})
    with pytest.raises(RealityError, match="reality"):
        constant_bracket(P)
    reg = VarRegistry.build(real=["a", "b"])
    P = PoissonStructure(reg, {("a", "b"): LaurentPoly.monomial(reg, {"a": 1, "b": 1}, I)})
    with pytest.raises(RealityError):
        constant_bracket(P)


def test_constant_bracket_antisymmetry_enforced():
    tc = TropicalCoordinates(("a", "b"), ("xi", "xi"), (0, 1), 2)
    with pytest.raises(ValueError):
        ConstantBracket(tc, ((0, 1), (1, 0)))


def test_liouville_structure():
    for n, size in ((2, 1), (3, 3), (4, 6)):
        rep = check_liouville_structure(constant_bracket(assemble(GroupBracketSpec(n, GSTAR))), n)
        assert rep.passed
        pairing = rep.checks[-1].detail["matrix"]
        assert len(pairing) == size
        assert [pairing[i][i] for i in range(size)] == [-HALF] * size
    with pytest.raises(ValueError):
        check_liouville_structure(constant_bracket(abc()), 2)


# scaling limit

def test_log_canonical_limit_is_exact():
    rows = limit_sample(log_canonical(), (0, 0, 0), None, (2, 5, 10))
    assert max(r[4] for r in rows) <= 1e-12


def test_abc_limit_matches_closed_form():
    P = abc()
    rows = limit_sample(P, (1, 2), None, (2, 5, 10, 20))
    for t, pair, scaled, lim, dev in rows:
        # t^2 {xi1, xi2} = 1 + exp(t(2 xi1 - xi1 - xi2)) + exp(t(xi2 - xi1 - xi2))
        direct = 1 + math.exp(t * (1 - 2)) + math.exp(-t * 1)
        assert abs(scaled - direct) < 1e-12
        assert lim == 1.0
    dev = max_deviation(rows)
    assert dev[10] < dev[5] < dev[2]
    assert deviation_decreasing(dev)
    assert dev[20] < 1e-6


def test_complex_limit_matches_closed_form():
    P = complex_example()
    eta = (Fraction(1, 2), 2)
    phi = 0.7
    _, vals = scaled_brackets(P, eta, {"z": phi}, 3.0)
    t, xi, zeta = 3.0, 0.5, 2.0
    # zeta = (log z + log zbar) / 2t, phi = (log z - log zbar) / 2i; only {z, zbar} contributes
    zz = 1j * (math.exp(2 * t * xi) - math.exp(-2 * t * xi)) / math.exp(2 * t * zeta)
    zeta_phi = t * (1 / (2 * t)) * (1 / 2j) * (-zz - zz)
    assert abs(vals[(1, 2)] - zeta_phi) < 1e-12
    assert abs(vals[(0, 2)] - 1) < 1e-12


def test_gstar_n2_limit():
    P = assemble(GroupBracketSpec(2, GSTAR))
    cone = tropical_cone(P)
    eta = cone_interior_sample(cone)
    rows = limit_sample(P, eta, {"D2_1": 0.4}, (2, 5, 10, 20), cone=cone)
    dev = max_deviation(rows)
    assert deviation_decreasing(dev)
    assert dev[20] < 1e-6
    assert dev[10] <= dev[5] and dev[20] <= dev[10]


def test_decay_bound_by_slack():
    P = abc()
    cone = tropical_cone(P)
    eta = (3, 5)
    s = decay_margin(cone, eta)
    dev = max_deviation(limit_sample(P, eta, None, (1, 2, 4, 8)))
    for t in (1, 2, 4):
        assert dev[2 * t] <= dev[t]
        assert dev[t] <= 2 * math.exp(-t * s) + 1e-15


def test_limit_sample_rejects_outside_points():
    with pytest.raises(ValueError):
        limit_sample(abc(), (2, 1), None, (2,))
    with pytest.raises(ValueError):
        limit_sample(abc(), (1, 2, 3), None, (2,))


def test_deviation_floor():
    dev = {2.0: 1e-3, 5.0: 1e-16, 10.0: 3e-16}
    assert not deviation_decreasing(dev)
    assert deviation_decreasing(dev, 1e-12)
    assert decay_margin(StrictCone.full(2), (0, 0)) == math.inf
