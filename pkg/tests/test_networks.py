import itertools
import json
import os
import random
from fractions import Fraction

import pytest

from tropoisson.arith import LaurentPoly, lp_substitute
from tropoisson.networks import (Edge, PlanarNetwork, build_gamma_s, delta_grading, delta_name,
                                 delta_registry, delta_weighting, determinant,
                                 distinguished_multipath, grading, matrix_from_network,
                                 minor_in_deltas, minor_lindstrom, monomial_grading, multipaths,
                                 network_from_json, network_to_json, solid_minor_indices,
                                 solid_minor_rows_cols, solve_weights_from_deltas, submatrix,
                                 symbolic_weighting)

DATA = os.path.join(os.path.dirname(__file__), "..", "data")


def three_line():
    with open(os.path.join(DATA, "three_line_network.json")) as fh:
        net, _ = network_from_json(json.load(fh))
    reg, w = symbolic_weighting(net)
    return net, reg, w


def test_three_line_matrix():
    net, reg, w = three_line()
    a, b, c = w["a"], w["b"], w["c"]
    al, be, ga = w["alpha"], w["beta"], w["gamma"]
    zero = LaurentPoly.zero(reg)
    assert matrix_from_network(net, w) == [
        [al, (a + b) * be, a * c * ga],
        [zero, be, c * ga],
        [zero, zero, ga],
    ]
    assert minor_lindstrom(net, w, [1], [3]) == a * c * ga


def test_three_line_two_by_two_minor():
    net, reg, w = three_line()
    M = matrix_from_network(net, w)
    got = minor_lindstrom(net, w, [1, 2], [2, 3])
    assert got == determinant(submatrix(M, [1, 2], [2, 3]))
    assert got == w["b"] * w["beta"] * w["c"] * w["gamma"]


def test_network_validation():
    with pytest.raises(ValueError):
        PlanarNetwork({"a": (0, 1), "b": (0, 1)}, [Edge("a", "b")], ["a"], ["b"])
    with pytest.raises(ValueError):
        PlanarNetwork({"a": (0, 1), "b": (1, 1)}, [Edge("a", "b")], ["a"], [])
    with pytest.raises(ValueError):
        build_gamma_s(0)


def test_gamma_s_shapes():
    assert len(build_gamma_s(1).labels) == 1
    assert len(build_gamma_s(2).labels) == 3
    assert len(build_gamma_s(4).labels) == 10
    net = build_gamma_s(4)
    sub = net.subnetwork(2)
    assert sub.sources == net.sources[-2:] and sub.sinks == net.sinks[-2:]


def test_gamma_s2_unit_weights_and_generic_entries():
    net = build_gamma_s(2)
    M = matrix_from_network(net, {lab: Fraction(1) for lab in net.labels})
    assert M == [[1, 1], [0, 1]]
    reg, w = symbolic_weighting(net)
    M = matrix_from_network(net, w)
    assert M[1][0] == LaurentPoly.zero(reg)
    assert all(len(M[i][j]) == 1 for i, j in ((0, 0), (0, 1), (1, 1)))
    assert len({M[0][0], M[0][1], M[1][1]}) == 3


def test_one_by_one_minor_is_entry():
    net = build_gamma_s(3)
    reg, w = symbolic_weighting(net)
    M = matrix_from_network(net, w)
    for i in range(1, 4):
        for j in range(1, 4):
            assert minor_lindstrom(net, w, [i], [j]) == M[i - 1][j - 1]
    with pytest.raises(ValueError):
        minor_lindstrom(net, w, [1, 2], [3])


def test_solid_minors_are_single_multipaths():
    for n in range(1, 6):
        net = build_gamma_s(n)
        reg, w = symbolic_weighting(net)
        for k, l in solid_minor_indices(n):
            I, J = solid_minor_rows_cols(n, k, l)
            assert len(multipaths(net, I, J)) == 1
            assert minor_lindstrom(net, w, I, J).is_monomial()
            assert distinguished_multipath(n, k, l)


def test_lindstrom_random_weightings():
    rng = random.Random(2024)
    trials = 0
    for n in (2, 3, 4, 5):
        net = build_gamma_s(n)
        for _ in range(25):
            w = {lab: Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 7)) for lab in net.labels}
            M = matrix_from_network(net, w)
            for size in range(1, min(n, 3) + 1):
                for I in itertools.combinations(range(1, n + 1), size):
                    for J in itertools.combinations(range(1, n + 1), size):
                        assert minor_lindstrom(net, w, I, J) == determinant(submatrix(M, I, J))
            trials += 1
    assert trials >= 100


def test_weight_inversion_examples_n2():
    sol = solve_weights_from_deltas(2)
    reg = delta_registry(2)
    as_poly = {lab: LaurentPoly._raw(reg, {e: c}) for lab, (c, e) in sol.items()}
    d11, d21 = LaurentPoly.var(reg, "D1_1"), LaurentPoly.var(reg, "D2_1")
    assert as_poly["d2"] == d11
    assert as_poly["s1_1"] == d21 * d11 ** -1


def test_weight_inversion_round_trip():
    for n in range(1, 5):
        net = build_gamma_s(n)
        w = delta_weighting(n)
        reg = delta_registry(n)
        for k, l in solid_minor_indices(n):
            I, J = solid_minor_rows_cols(n, k, l)
            assert minor_lindstrom(net, w, I, J) == LaurentPoly.var(reg, delta_name(k, l))


def test_substitution_matches_direct_minor():
    # substitute the solved weights into the symbolic Lindstrom polynomial, then
    # compare with the minor computed from numeric weights
    rng = random.Random(7)
    for n in (2, 3, 4):
        net = build_gamma_s(n)
        sreg, sw = symbolic_weighting(net)
        dreg = delta_registry(n)
        sol = solve_weights_from_deltas(n)
        from tropoisson.arith import VarRegistry, lp_eval, lp_rebase
        both = VarRegistry.build(real=list(sreg.names) + list(dreg.names))
        deltas = {name: Fraction(rng.randint(1, 9), rng.randint(1, 4)) for name in dreg.names}
        for I in itertools.combinations(range(1, n + 1), 2 if n > 2 else 1):
            for J in itertools.combinations(range(1, n + 1), len(I)):
                p = lp_rebase(minor_lindstrom(net, sw, I, J), both)
                for lab, (c, e) in sol.items():
                    mono = {dreg[i].name: x for i, x in enumerate(e) if x}
                    p = lp_substitute(p, lab, mono, c)
                direct = minor_in_deltas(n, I, J)
                val = {k: float(v) for k, v in deltas.items()}
                assert abs(lp_eval(p, val) - lp_eval(direct, val)) < 1e-9


def test_minor_in_deltas_examples():
    for n in (2, 3, 4):
        reg = delta_registry(n)
        for k, l in solid_minor_indices(n):
            I, J = solid_minor_rows_cols(n, k, l)
            assert minor_in_deltas(n, I, J) == LaurentPoly.var(reg, delta_name(k, l))
    assert not minor_in_deltas(3, [2], [1])
    reg = delta_registry(2)
    g11 = minor_in_deltas(2, [1], [1])
    assert g11 == LaurentPoly.var(reg, "D2_2") * LaurentPoly.var(reg, "D1_1") ** -1
    # Delta^(2)_2 = g11 g22
    assert g11 * minor_in_deltas(2, [2], [2]) == LaurentPoly.var(reg, "D2_2")
    with pytest.raises(ValueError):
        minor_in_deltas(2, [1, 2], [1])


def test_grading_is_respected():
    for n in (2, 3, 4):
        for size in range(1, n + 1):
            for I in itertools.combinations(range(1, n + 1), size):
                for J in itertools.combinations(range(1, n + 1), size):
                    p = minor_in_deltas(n, I, J)
                    for m in p.terms:
                        assert monomial_grading(n, m) == grading(I, J)


def test_solid_minor_has_lowest_grading():
    n = 4
    for k, l in solid_minor_indices(n):
        rows = range(n - k + 1, n + 1)
        best = min(grading(I, J) for I in itertools.combinations(rows, l)
                   for J in itertools.combinations(range(n - k + 1, n + 1), l))
        winners = [(I, J) for I in itertools.combinations(rows, l)
                   for J in itertools.combinations(range(n - k + 1, n + 1), l)
                   if grading(I, J) == best]
        assert winners == [tuple(map(tuple, solid_minor_rows_cols(n, k, l)))]
        assert delta_grading(n, k, l) == best


def test_network_json_round_trip():
    net = build_gamma_s(3)
    w = {lab: Fraction(i + 1, 2) for i, lab in enumerate(net.labels)}
    doc = json.loads(json.dumps(network_to_json(net, w)))
    net2, w2 = network_from_json(doc)
    M1 = matrix_from_network(net, w)
    M2 = matrix_from_network(net2, w2)
    assert [[complex(x) for x in r] for r in M1] == [[complex(x) for x in r] for r in M2]
    assert network_to_json(net2, {k: v.re for k, v in w2.items()}) == doc
