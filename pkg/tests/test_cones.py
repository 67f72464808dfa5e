import itertools
import random
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from rootmonoid import lattice as lat
from rootmonoid.cones import (Cone, ConeError, Face, SearchBoxExceeded, all_faces, dual_cone, extreme_rays,
                              faces_of_dimension, hilbert_basis, is_regular_face, lattice_points_in_box)
from conftest import box, random_pointed_cone


def cone(*gens, rank=None):
    return Cone(rank if rank is not None else len(gens[0]), gens)


def decomposes(c, basis, bound):
    """Every point of c in the box is a non-negative integer combination of basis."""
    basis = list(basis)

    @lru_cache(maxsize=None)
    def ok(p):
        if not any(p):
            return True
        return any(c.contains(lat.sub(p, h)) and ok(lat.sub(p, h)) for h in basis)

    return all(ok(p) for p in lattice_points_in_box(c, bound))


def test_dual_examples():
    assert dual_cone(cone((1, 0), (0, 1))) == cone((1, 0), (0, 1))
    assert dual_cone(cone((1, 0), rank=2)) == cone((1, 0), (0, 1), (0, -1))
    assert dual_cone(cone((2, -1), (0, 1))).same_set(cone((1, 0), (1, 2)))


def test_extreme_rays_examples():
    assert extreme_rays(cone((1, 0), (1, 1), (0, 1))) == [(1, 0), (0, 1)]
    assert extreme_rays(cone((1, 0))) == [(1, 0)]
    with pytest.raises(ConeError):
        extreme_rays(cone((1, 0), (-1, 0)))


def test_strong_convexity():
    assert cone((1, 0), (0, 1)).is_strongly_convex()
    assert not cone((1, 0), (-1, 0)).is_strongly_convex()
    assert Cone(2, ()).is_strongly_convex()


def test_generators_are_canonical():
    c = cone((0, 2), (4, 0), (1, 0))
    assert c.generators == ((1, 0), (0, 1))


def test_contains_examples():
    assert cone((1, 0), (0, 1)).contains((3, 5))
    assert not cone((1, 0), (0, 1)).contains((-1, 0))
    assert cone((0, 1), (2, -1)).contains((1, 0))
    with pytest.raises(lat.LatticeError):
        cone((1, 0), (0, 1)).contains((1, 0, 0))


def test_regular_faces():
    sigma = cone((1, 0), (0, 1))
    assert is_regular_face(Face.from_rays(sigma, [(1, 0)]))
    assert is_regular_face(Face(sigma, ()))
    sigma = cone((1, 1), (1, -1))
    assert not is_regular_face(Face(sigma, (0, 1)))


def test_face_must_be_a_face():
    sigma = cone((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1))
    with pytest.raises(ConeError):
        # (1,0,0) and (0,1,0) do not span a face: (1,1,-1) + (0,0,1) lies between them
        Face.from_rays(sigma, [(1, 0, 0), (0, 1, 0)])


def test_faces_of_orthant():
    o2 = cone((1, 0), (0, 1))
    assert len(faces_of_dimension(o2, 1)) == 2
    assert [f.ray_indices for f in faces_of_dimension(o2, 0)] == [()]
    o3 = cone((1, 0, 0), (0, 1, 0), (0, 0, 1))
    twos = faces_of_dimension(o3, 2)
    assert len(twos) == 3
    for f in twos:
        w = f.witness
        assert all(lat.pair(w, r) == 0 for r in f.rays)
        assert all(lat.pair(w, r) > 0 for i, r in enumerate(o3.rays) if i not in f.ray_indices)


@pytest.mark.parametrize("seed", range(6))
def test_faces_closed_under_intersection(seed):
    c = random_pointed_cone(random.Random(seed), 3)
    faces = all_faces(c)
    keys = {f.ray_indices: f for f in faces}
    for a, b in itertools.combinations(faces, 2):
        meet = tuple(sorted(set(a.ray_indices) & set(b.ray_indices)))
        assert meet in keys
        assert keys[meet].dim == (lat.rank(keys[meet].rays) if meet else 0)


def test_hilbert_examples():
    assert set(hilbert_basis(cone((1, 0), (0, 1)))) == {(1, 0), (0, 1)}
    assert set(hilbert_basis(cone((0, 1), (2, -1)))) == {(0, 1), (1, 0), (2, -1)}
    assert list(hilbert_basis(cone((1,)))) == [(1,)]


def test_hilbert_half_plane():
    hb = hilbert_basis(cone((1, 0), (0, 1), (0, -1)))
    assert set(hb) == {(1, 0), (0, 1), (0, -1)}
    assert hb.lineality == ((0, 1),)


def test_hilbert_search_box():
    c = cone((1, 0), (1, 7))
    with pytest.raises(SearchBoxExceeded):
        hilbert_basis(c, degree_bound=1)
    assert len(hilbert_basis(c)) == 8


def test_hilbert_basis_brute_force_small():
    # irreducible points of cone((0,1),(2,-1)) among lattice points with coordinates at most 2
    c = cone((0, 1), (2, -1))
    pts = [p for p in lattice_points_in_box(c, 2) if any(p)]
    irreducible = {p for p in pts if not any(c.contains(lat.sub(p, q)) and any(lat.sub(p, q)) for q in pts if q != p)}
    assert irreducible == set(hilbert_basis(c))


@pytest.mark.parametrize("seed", range(12))
def test_double_dual(seed):
    rng = random.Random(seed)
    c = random_pointed_cone(rng, rng.choice([2, 3]))
    assert dual_cone(dual_cone(c)).generators == c.rays


def test_double_dual_not_full_dimensional():
    c = cone((1, 0, 0), (0, 1, 0), rank=3)
    dd = dual_cone(dual_cone(c))
    assert all(dd.contains(p) == c.contains(p) for p in box(3, 2))


@pytest.mark.parametrize("seed", range(8))
def test_hilbert_properties(seed):
    rng = random.Random(100 + seed)
    n = rng.choice([2, 3])
    c = dual_cone(random_pointed_cone(rng, n, coord_bound=2))
    hb = list(hilbert_basis(c))
    assert all(c.contains(h) for h in hb)
    # minimality: no element minus another stays in the cone
    for h in hb:
        assert not any(c.contains(lat.sub(h, g)) for g in hb if g != h)
    assert decomposes(c, hb, 3 if n == 2 else 2)


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(any), min_size=1, max_size=4))
def test_dual_is_dual(gens):
    c = Cone(2, gens)
    d = dual_cone(c)
    for m in box(2, 3):
        assert d.contains(m) == all(lat.pair(m, g) >= 0 for g in c.generators)


def test_cone_json_roundtrip():
    c = cone((2, -1), (0, 1))
    assert Cone.from_json(c.to_json()) == c
    assert c.to_json() == {"rank": 2, "rays": [[2, -1], [0, 1]]}
