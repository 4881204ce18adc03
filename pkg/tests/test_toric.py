from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agkit.toric import (
    Cone,
    ConeError,
    Fan,
    Sublattice,
    blowup_fan,
    c3_minus_axis_fan,
    cp2_fan,
    det2,
    dual_cone,
    fan_is_valid,
    hilbert_basis,
    hj_continued_fraction,
    is_smooth,
    morphism_compatible,
    octant_fan,
    relation_lattice,
    resolve_2d,
)

from oracles import HJ_7_3, HJ_7_5


@pytest.mark.parametrize(
    "gens, dual",
    [
        ([(1, 0), (0, 1)], {(1, 0), (0, 1)}),
        ([(1, 0), (1, 2)], {(0, 1), (2, -1)}),
        ([(1, 0), (-1, -1)], {(0, -1), (1, -1)}),
    ],
)
def test_dual_examples(gens, dual):
    assert set(dual_cone(Cone(gens)).generators) == dual


def test_dual_of_ray_and_half_plane():
    ray = Cone([(1, 0)])
    half = dual_cone(ray)
    assert set(half.generators) == {(0, -1), (1, 0), (0, 1)}
    assert dual_cone(half).generators == ((1, 0),)


ray = st.tuples(st.integers(-6, 6), st.integers(-6, 6)).filter(lambda v: v != (0, 0))


@settings(max_examples=80, deadline=None)
@given(ray, ray)
def test_dual_involution(a, b):
    if det2(a, b) == 0:
        return
    c = Cone([a, b])
    assert dual_cone(dual_cone(c)).generators == c.generators
    for u in dual_cone(c).generators:
        assert all(u[0] * v[0] + u[1] * v[1] >= 0 for v in c.generators)


def test_opposite_rays_rejected():
    with pytest.raises(ConeError):
        Cone([(1, 0), (-1, 0)])


@pytest.mark.parametrize("n", range(2, 9))
def test_hilbert_basis_of_an_singularity(n):
    basis = hilbert_basis(Cone([(1, 0), (1, n)]))
    assert basis == [(1, i) for i in range(n + 1)]


def test_hilbert_basis_of_dual_an():
    # the dual of cone((1,0),(1,n)) has Hilbert basis {(0,1), (1,0), (n,-1)}
    for n in range(2, 8):
        basis = hilbert_basis(dual_cone(Cone([(1, 0), (1, n)])))
        assert set(basis) == {(0, 1), (1, 0), (n, -1)}
        rel = relation_lattice(basis, ["u", "w", "v"])
        assert rel.binomials == (f"u*v - w^{n}",)


def _minimal(basis):
    s = set(basis)
    for p in basis:
        for q in basis:
            r = (p[0] - q[0], p[1] - q[1])
            if q != p and r in s:
                return False
    return True


@settings(max_examples=60, deadline=None)
@given(ray, ray)
def test_hilbert_basis_generates_and_is_minimal(a, b):
    if det2(a, b) == 0:
        return
    c = Cone([a, b])
    basis = hilbert_basis(c)
    assert _minimal(basis)
    assert all(c.contains(v) for v in basis)
    assert set(c.generators) <= set(basis)
    # every lattice point of the box gets written as a nonnegative sum
    reachable = {(0, 0)}
    frontier = [(0, 0)]
    bound = 8
    while frontier:
        p = frontier.pop()
        for v in basis:
            q = (p[0] + v[0], p[1] + v[1])
            if max(abs(q[0]), abs(q[1])) <= bound and q not in reachable:
                reachable.add(q)
                frontier.append(q)
    for x in range(-3, 4):
        for y in range(-3, 4):
            if c.contains((x, y)):
                assert (x, y) in reachable


def test_relation_lattice_examples():
    assert relation_lattice([(1, 0), (0, 1)]).kernel == ()
    rel = relation_lattice([(0, 1), (1, 0), (2, -1)], ["u", "w", "v"])
    assert len(rel.kernel) == 1
    with pytest.raises(ValueError):
        relation_lattice([])


@pytest.mark.parametrize(
    "gens, smooth",
    [([(1, 0), (0, 1)], True), ([(1, 0), (1, 2)], False), ([(1, 0), (1, 1)], True), ([(2, 1), (1, 1)], True), ([(1, 0)], True)],
)
def test_is_smooth(gens, smooth):
    assert is_smooth(Cone(gens)) is smooth


def test_sublattice_cone_is_singular():
    c = Cone([(1, 0), (0, 1)], Sublattice(2, (1, 1)))
    assert not is_smooth(c)
    assert Sublattice(2, (1, 1)).contains((Fraction(1, 2), Fraction(1, 2)))
    assert not Sublattice(2, (1, 1)).contains((Fraction(1, 2), 0))


def test_resolve_smooth_cone_is_trivial():
    res = resolve_2d(Cone([(1, 0), (0, 1)]))
    assert res.inserted == () and len(res.fan.cones) == 1


def test_resolve_a1():
    res = resolve_2d(Cone([(1, 0), (1, 2)]))
    assert res.inserted == ((1, 1),)
    assert res.self_intersections() == [2]


def _check_resolution(res):
    rays = res.rays
    for a, b in zip(rays, rays[1:]):
        assert det2(a, b) == 1
    assert all(is_smooth(c) for c in res.fan.cones)
    assert fan_is_valid(res.fan)


@pytest.mark.parametrize("n", range(2, 10))
def test_resolve_an(n):
    res = resolve_2d(Cone([(1, 0), (1, n)]))
    assert len(res.inserted) == n - 1
    assert res.self_intersections() == [2] * (n - 1)
    _check_resolution(res)
    lat = resolve_2d(Cone([(1, 0), (0, 1)], Sublattice(n, (1, -1))))
    assert len(lat.inserted) == n - 1 and lat.self_intersections() == [2] * (n - 1)


def test_resolve_cyclic_quotients():
    for q, expected in ((3, HJ_7_3), (5, HJ_7_5)):
        res = resolve_2d(Cone([(1, 0), (0, 1)], Sublattice(7, (1, q))))
        assert res.self_intersections()[::-1] == expected
        _check_resolution(res)
    assert hj_continued_fraction(7, 3) == HJ_7_3
    assert hj_continued_fraction(7, 5) == HJ_7_5


@pytest.mark.parametrize("n, q", [(5, 2), (8, 3), (11, 4), (13, 5), (9, 1)])
def test_resolution_matches_continued_fraction(n, q):
    res = resolve_2d(Cone([(0, 1), (n, -q)]))
    expected = hj_continued_fraction(n, q)
    assert res.self_intersections() in (expected, expected[::-1])
    _check_resolution(res)


def test_fan_validity():
    assert fan_is_valid(cp2_fan())
    assert fan_is_valid(octant_fan())
    assert fan_is_valid(blowup_fan())
    assert fan_is_valid(c3_minus_axis_fan())
    overlap = Fan([[(1, 0), (1, 2)], [(1, 1), (0, 1)]])
    assert not fan_is_valid(overlap)


def test_morphisms():
    ident = [[1, 0], [0, 1]]
    assert morphism_compatible(blowup_fan(), octant_fan(), ident)
    assert morphism_compatible(octant_fan(), octant_fan(), ident)
    assert not morphism_compatible(octant_fan(), blowup_fan(), ident)
    with pytest.raises(ValueError):
        morphism_compatible(octant_fan(), octant_fan(), [[1, 0, 0]])


@pytest.mark.parametrize("n", range(2, 7))
def test_refinement_maps_to_original(n):
    c = Cone([(1, 0), (1, n)])
    res = resolve_2d(c)
    assert morphism_compatible(res.fan, Fan([c]), [[1, 0], [0, 1]])
    assert not morphism_compatible(Fan([c]), res.fan, [[1, 0], [0, 1]])


@pytest.mark.parametrize("n", range(2, 9))
def test_hilbert_basis_of_tilted_an_cone(n):
    basis = hilbert_basis(Cone([(1, 0), (n - 1, n)]))
    assert basis == [(1, 0), (1, 1), (n - 1, n)]
    assert relation_lattice(basis, ["u", "w", "v"]).binomials == (f"u*v - w^{n}",)
