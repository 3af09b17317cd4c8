import pytest

from lcspheres import catalog
from lcspheres.collapse import find_collapse_onto_dim, is_collapsible
from lcspheres.complex import SimplicialComplex, boundary_complex, remove_facet, simplex, simplex_boundary
from lcspheres.errors import InvalidInput, NotPseudomanifold
from lcspheres.lc.certificates import replay, verify_lc_certificate
from lcspheres.lc.classify import classify_step_3d
from lcspheres.lc.decide import LCBudget, is_lc
from lcspheres.lc.state import LCState
from lcspheres.sphere import interior_vertices


@pytest.mark.parametrize("name", catalog.SPHERES_2)
def test_every_2_sphere_is_lc(name):
    C = catalog.builtin(name)
    for strategy in ("A", "B"):
        res = is_lc(C, "sphere", strategy)
        assert res.found and verify_lc_certificate(C, res.certificate)


SMALL_3_SPHERES = [n for n in catalog.SPHERES_3 if len(catalog.builtin(n).facets) <= 12]


@pytest.mark.parametrize("name", SMALL_3_SPHERES)
def test_strategies_agree_with_collapsibility(name):
    S = catalog.builtin(name)
    a = is_lc(S, "sphere", "A").status
    b = is_lc(S, "sphere", "B").status
    per_facet = {is_collapsible(remove_facet(S, f)).status for f in S.sorted_facets()}
    assert len(per_facet) == 1
    (c,) = per_facet
    assert (a == "found") == (b == "found") == (c == "found")


def test_input_checks():
    with pytest.raises(NotPseudomanifold):
        is_lc(catalog.builtin("dunce_hat"), "pm")
    with pytest.raises(InvalidInput):
        is_lc(simplex([1, 2, 3, 4]), "sphere")
    with pytest.raises(InvalidInput):
        is_lc(simplex_boundary(4), "torus")
    with pytest.raises(InvalidInput):
        is_lc(catalog.builtin("fig4"), "pm", "A")


def test_pseudomanifold_mode():
    C = catalog.builtin("fig4")
    res = is_lc(C, "pm")
    assert res.found and verify_lc_certificate(C, res.certificate)
    two = SimplicialComplex([(1, 2, 3, 4), (5, 6, 7, 8)])
    assert is_lc(two, "pm").status == "no"


def test_closed_pseudomanifold_that_is_not_simply_connected_is_not_lc():
    # a 6-vertex triangulation of the projective plane
    rp2 = SimplicialComplex([
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
        (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4),
    ])
    res = is_lc(rp2, "pm", budget=LCBudget(max_trees=100_000))
    assert res.status == "no"


def _steps(cert):
    s = LCState(cert.d)
    out = []
    for m in cert.moves:
        out.append(classify_step_3d(s, m).type)
        s.apply_inplace(m)
    return out


BALLS = catalog.BALLS_3


@pytest.mark.parametrize("name", BALLS)
def test_interior_vertices_iff_steps_beyond_ii(name):
    B = catalog.builtin(name)
    res = is_lc(B, "ball")
    assert res.found
    kinds = set(_steps(res.certificate))
    assert (not interior_vertices(B)) == (kinds <= {"i", "ii"})


def test_ball_sample_has_both_kinds():
    flags = {not interior_vertices(catalog.builtin(n)) for n in BALLS}
    assert flags == {True, False}
    assert len(BALLS) >= 20


@pytest.mark.parametrize("name", [n for n in BALLS if len(catalog.builtin(n).all_faces()) <= 60])
def test_ball_lc_iff_collapse_onto_boundary_minus_triangle(name):
    B = catalog.builtin(name)
    lc = is_lc(B, "ball").found
    bd = boundary_complex(B)
    answers = set()
    for sigma in bd.sorted_facets():
        target = remove_facet(bd, sigma)
        answers.add(find_collapse_onto_dim(B, 0, protected=target).found)
    assert answers == {lc}


def test_ball_certificate_replays_to_the_ball():
    B = catalog.builtin("subdivide:edge_star:4")
    res = is_lc(B, "ball", "B")
    assert res.found
    assert len(replay(res.certificate).boundary) == len(boundary_complex(B).facets)
