import random

import pytest

from lcspheres import catalog
from lcspheres.canonical import canonical_complex, canonical_key, canonical_labeling, isomorphism, key_digest
from lcspheres.complex import relabel, simplex_boundary

from conftest import shuffled

NAMES = catalog.SPHERES_2 + catalog.SPHERES_3 + catalog.BALLS_3[:12] + catalog.OTHERS


@pytest.mark.parametrize("name", NAMES)
def test_key_invariant_under_relabeling(name):
    C = catalog.builtin(name)
    key = canonical_key(C)
    rng = random.Random(name)
    for _ in range(100):
        assert canonical_key(shuffled(C, rng)) == key


@pytest.mark.parametrize("name", NAMES)
def test_key_is_fixed_point(name):
    C = catalog.builtin(name)
    K = canonical_complex(C)
    assert canonical_key(K) == canonical_key(C)
    assert sorted(tuple(sorted(f)) for f in K.facets) == list(canonical_key(C))


def test_spec_examples():
    tet = simplex_boundary(3)
    bip = catalog.builtin("bipyramid")
    rng = random.Random(0)
    assert canonical_key(shuffled(bip, rng)) == canonical_key(shuffled(bip, rng))
    assert canonical_key(tet) != canonical_key(bip)
    assert canonical_key(tet) == ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))


def test_distinguishes_same_f_vector():
    # both have f = (6, 12, 8) but different vertex degrees
    a = catalog.builtin("octahedron")
    b = catalog.builtin("stacked_sphere:2:3")
    assert a.f_vector() == b.f_vector()
    assert canonical_key(a) != canonical_key(b)


def test_isomorphism_maps_onto_target():
    C = catalog.builtin("join_triangle_square")
    D = shuffled(C, random.Random(3))
    phi = isomorphism(C, D)
    assert relabel(C, phi) == D
    # the suspension of a bipyramid is the join of a 4-cycle and a triangle again
    assert isomorphism(C, catalog.builtin("suspension:bipyramid")) is not None
    assert isomorphism(C, catalog.builtin("cyclic:4:7")) is None


def test_labeling_and_digest():
    C = catalog.builtin("icosahedron")
    key, mapping = canonical_labeling(C)
    assert sorted(mapping.values()) == list(range(1, 13))
    assert key == canonical_key(C)
    assert len(key_digest(key)) == 64
