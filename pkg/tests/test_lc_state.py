import pytest
from hypothesis import given, settings, strategies as st

from lcspheres.canonical import canonical_key
from lcspheres.complex import SimplicialComplex, face_key, simplex_boundary
from lcspheres.errors import IllegalMove, NotSimplicial
from lcspheres.lc.state import Attach, Glue, LCState, admissible_gluings, initial_state, lc_apply, quotient_complex
from lcspheres.sampler import tree_state
from lcspheres.trees import sample_tree


def path_of_tets(n):
    """Tetrahedra 1234, 2345, 3456, ... each glued to the previous one."""
    s = initial_state(3)
    for i in range(1, n):
        s = lc_apply(s, Attach(range(i + 1, i + 4)))
    return s


def test_attach_grows_the_tree():
    s = initial_state(3)
    s2 = lc_apply(s, Attach({1, 2, 3}))
    assert s.N == 1 and s2.N == 2
    assert len(s2.boundary_cells()) == 6
    assert quotient_complex(s2) == SimplicialComplex([(1, 2, 3, 4), (1, 2, 3, 5)])


def test_attach_must_use_a_boundary_ridge():
    s = lc_apply(initial_state(3), Attach({1, 2, 3}))
    with pytest.raises(IllegalMove) as exc:
        s.attach_inplace(Attach({1, 2, 3}))
    assert exc.value.reason == "not-boundary"


def test_single_tetrahedron_has_no_gluings():
    assert admissible_gluings(initial_state(3)) == []
    with pytest.raises(IllegalMove) as exc:
        initial_state(3).glue_inplace(Glue({1, 2, 3}, {1, 2, 4}, {1, 2}))
    assert exc.value.reason == "same-simplex"


def test_adjacent_tetrahedra_cannot_be_glued():
    s = path_of_tets(2)
    with pytest.raises(IllegalMove) as exc:
        s.glue_inplace(Glue({1, 2, 4}, {2, 4, 5}, {2, 4}))
    assert exc.value.reason == "adjacent-simplices"
    # in a tree of two tetrahedra every pair of boundary triangles is either
    # on one tetrahedron or on the two adjacent ones
    assert admissible_gluings(s) == []


def test_gluing_sinks_an_edge():
    s = path_of_tets(3)
    move = Glue({1, 3, 4}, {3, 4, 6}, {3, 4})
    assert move in admissible_gluings(s)
    before = len(s.boundary_cells())
    t = lc_apply(s, move)
    assert len(t.boundary_cells()) == before - 2
    assert t.label(6) == 1
    # edge 34 had two boundary triangles through it, now none
    edges = {e for c in t.boundary_cells() for e in map(frozenset, [(a, b) for a in c for b in c if a < b])}
    assert frozenset({3, 4}) not in edges
    # edges 13 ~ 36 and 14 ~ 46 are identified
    assert len(quotient_complex(t).faces(1)) == len(quotient_complex(s).faces(1)) - 2
    assert t.interior_vertex_count() == 0


def test_move_errors():
    s = path_of_tets(3)
    with pytest.raises(IllegalMove) as exc:
        s.glue_inplace(Glue({1, 3, 4}, {1, 3, 4}, {3, 4}))
    assert exc.value.reason in ("same-cell", "not-boundary")
    with pytest.raises(IllegalMove) as exc:
        s.glue_inplace(Glue({1, 2, 3}, {4, 5, 6}, {1, 2}))
    assert exc.value.reason == "no-shared-face"
    with pytest.raises(IllegalMove) as exc:
        s.glue_inplace(Glue({2, 3, 4}, {4, 5, 6}, {4, 5}))
    assert exc.value.reason == "not-boundary"
    s.glue_inplace(Glue({1, 3, 4}, {3, 4, 6}, {3, 4}))
    with pytest.raises(IllegalMove) as exc:
        s.attach_inplace(Attach({1, 2, 4}))
    assert exc.value.reason == "phase"


def test_lc_apply_leaves_input_untouched():
    s = path_of_tets(3)
    snapshot = s.boundary_cells()
    lc_apply(s, Glue({1, 3, 4}, {3, 4, 6}, {3, 4}))
    assert s.boundary_cells() == snapshot and s.glued == 0


def test_fan_of_triangles():
    # triangles 1 2 k, k+1 around vertex... a fan around vertex 1
    s = initial_state(2)
    for v in range(3, 7):
        s.attach_inplace(Attach({1, v}))
    moves = admissible_gluings(s)
    assert moves
    for m in moves:
        # the two edges meet in a boundary vertex of the polygon
        assert len(s.labels(m.sigma) & s.labels(m.tau)) == 1
        assert m.sigma in s.boundary and m.tau in s.boundary


def test_closed_state_is_final():
    s = LCState(2)
    for move in [Attach({1, 2}), Attach({1, 3}), Attach({2, 3})]:
        s.apply_inplace(move)
    while admissible_gluings(s):
        s.glue_inplace(admissible_gluings(s)[0])
    assert s.is_closed()
    assert canonical_key(quotient_complex(s)) == canonical_key(simplex_boundary(3))
    assert admissible_gluings(s) == []


def test_two_triangles_on_the_same_vertices_are_not_simplicial():
    s = path_of_tets(4)
    s.glue_inplace(Glue({1, 3, 4}, {3, 4, 6}, {3, 4}))
    quotient_complex(s)
    s.glue_inplace(Glue({1, 2, 4}, {4, 6, 7}, {1, 4}))
    cells = s.boundary_cells()
    assert len(cells) != len(set(cells))
    with pytest.raises(NotSimplicial):
        quotient_complex(s)


def test_tree_state_quotient_is_the_tree():
    T = sample_tree(3, 6, 4)
    assert quotient_complex(tree_state(T)) == T.complex


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 3), st.integers(2, 7), st.integers(0, 10**6))
def test_random_gluing_runs_keep_invariants(d, N, seed):
    import random

    rng = random.Random(seed)
    s = tree_state(sample_tree(d, N, seed))
    while True:
        moves = admissible_gluings(s)
        if not moves:
            break
        keys = [s.move_key(m) for m in moves]
        assert len(keys) == len(set(keys))
        assert moves == sorted(moves, key=lambda m: (face_key(m.sigma), face_key(m.tau), face_key(m.shared)))
        m = rng.choice(moves)
        assert s.problem(m) is None
        s.glue_inplace(m)
        # each ridge cell lies in at most two simplices, and two simplices
        # share at most one ridge cell
        cells = {}
        for i, simp in enumerate(s.simplices):
            for r in map(frozenset, __import__("itertools").combinations(simp, d)):
                cells.setdefault(s.find(r), set()).add(i)
        assert all(len(v) <= 2 for v in cells.values())
        pairs = [frozenset(v) for v in cells.values() if len(v) == 2]
        assert len(pairs) == len(set(pairs))
    assert s.N == N and len(s.moves) == N - 1 + s.glued
