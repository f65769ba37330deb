from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import fm_implies, fm_strict_empty
from tropoisson.gz import gz_cone
from tropoisson.polyhedra import (INFEASIBLE, OPTIMAL, UNBOUNDED, EmptyConeError, StrictCone,
                                  cone_equal, cone_implies, cone_interior_sample, cone_intersect,
                                  cone_is_empty, cone_remove_redundant, integer_normal, primitive,
                                  simplex)


def cone(*normals, dim=None):
    dim = dim or len(normals[0])
    return StrictCone(dim, frozenset(map(tuple, normals)))


ABC = cone((-1, 1), (1, 0))


# simplex

def test_simplex_optimum():
    # max x + y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
    res = simplex([[1, 2, 1, 0], [3, 1, 0, 1]], [4, 6], [-1, -1, 0, 0])
    assert res.status == OPTIMAL
    x, y = res.witness[:2]
    assert (x, y) == (Fraction(8, 5), Fraction(6, 5))
    assert all(isinstance(v, Fraction) for v in res.witness)


def test_simplex_infeasible_and_unbounded():
    assert simplex([[1, 1]], [-1], [0, 0]).status == INFEASIBLE
    assert simplex([[1, -1]], [1], [0, -1]).status == UNBOUNDED


def test_bland_terminates_on_beale_cycling_example():
    # Beale's instance cycles under the largest-coefficient rule
    A = [[Fraction(1, 4), -8, -1, 9, 1, 0, 0],
         [Fraction(1, 2), -12, Fraction(-1, 2), 3, 0, 1, 0],
         [0, 0, 1, 0, 0, 0, 1]]
    c = [Fraction(-3, 4), 20, Fraction(-1, 2), 6, 0, 0, 0]
    res = simplex(A, [0, 0, 1], c)
    assert res.status == OPTIMAL
    val = sum(ci * xi for ci, xi in zip(c, res.witness))
    assert val == Fraction(-5, 4)


# normals

def test_primitive_keeps_orientation():
    assert primitive((2, -4, 6)) == (1, -2, 3)
    assert primitive((-3, 0)) == (-1, 0)
    with pytest.raises(ValueError):
        primitive((0, 0))
    assert integer_normal((Fraction(1, 2), Fraction(-1, 3))) == (3, -2)


def test_cone_invariants():
    c = cone((2, 0), (1, 0))
    assert c.normals == frozenset({(1, 0)})
    with pytest.raises(ValueError):
        cone((1, 0, 0), dim=2)


# worked examples

def test_intersect_examples():
    full = StrictCone.full(2)
    assert cone_intersect(ABC, full) == ABC
    assert cone_intersect(cone((-1, 1)), cone((1, 0))) == ABC
    contra = cone_intersect(cone((0, -1)), cone((0, 1)))
    assert len(contra.normals) == 2 and cone_is_empty(contra)
    with pytest.raises(ValueError):
        cone_intersect(ABC, StrictCone.full(3))


def test_emptiness_examples():
    assert not cone_is_empty(StrictCone.full(3))
    # x1 (1 + x2^2): xi1 + xi2 > xi1 and xi1 + xi2 > xi1 + 2 xi2
    assert cone_is_empty(cone((0, 1), (0, -1)))
    assert not cone_is_empty(gz_cone(3))


def test_implies_examples():
    assert all(cone_implies(ABC, m) for m in ABC.normals)
    assert cone_implies(ABC, (0, 1))
    assert not cone_implies(ABC, (1, -1))


def test_equal_examples():
    assert cone_equal(ABC, ABC)
    assert cone_equal(cone((1,)), cone((2,)))
    assert cone_equal(ABC, cone((-1, 1), (1, 0), (0, 1)))
    assert not cone_equal(ABC, cone((0, 1), (1, 0)))
    with pytest.raises(EmptyConeError):
        cone_equal(ABC, cone((0, 1), (0, -1)))


def test_remove_redundant_examples():
    c = cone((1, 0), (0, 1), (1, 1))
    assert cone_remove_redundant(c).normals == {(1, 0), (0, 1)}
    g2 = gz_cone(2)
    assert cone_remove_redundant(g2) == g2
    with pytest.raises(EmptyConeError):
        cone_remove_redundant(cone((0, 1), (0, -1)))


def test_interior_sample_examples():
    assert cone_interior_sample(StrictCone.full(2)) == (0, 0)
    eta = cone_interior_sample(ABC)
    assert ABC.min_slack(eta) >= 1
    g3 = gz_cone(3)
    assert g3.min_slack(cone_interior_sample(g3)) >= 1
    with pytest.raises(EmptyConeError):
        cone_interior_sample(cone((0, 1), (0, -1)))


# properties against Fourier-Motzkin

vec3 = st.tuples(*[st.integers(-3, 3)] * 3).filter(any)
cones3 = st.lists(vec3, min_size=1, max_size=6).map(lambda ns: cone(*ns))


@settings(max_examples=200, deadline=None)
@given(cones3)
def test_emptiness_matches_elimination(c):
    assert cone_is_empty(c) == fm_strict_empty(c.normals, c.dim)


@settings(max_examples=200, deadline=None)
@given(cones3, vec3)
def test_implication_matches_elimination(c, m):
    if cone_is_empty(c):
        return
    assert cone_implies(c, m) == fm_implies(c.normals, m, c.dim)


@settings(max_examples=150, deadline=None)
@given(cones3)
def test_sample_xor_empty(c):
    if cone_is_empty(c):
        with pytest.raises(EmptyConeError):
            cone_interior_sample(c)
        return
    eta = cone_interior_sample(c)
    assert all(isinstance(x, Fraction) and x.denominator == 1 for x in eta)
    assert c.min_slack(eta) >= 1


@settings(max_examples=150, deadline=None)
@given(cones3)
def test_reduction_is_minimal(c):
    if cone_is_empty(c):
        return
    r = cone_remove_redundant(c)
    assert r.normals <= c.normals
    assert cone_equal(r, c)
    for m in r.normals:
        rest = StrictCone(r.dim, r.normals - {m})
        assert not cone_implies(rest, m)
