from collections import Counter
from itertools import combinations

import networkx as nx
import pytest

from lcspheres.canonical import canonical_key
from lcspheres.complex import simplex_boundary
from lcspheres.errors import DimensionError, InvalidInput
from lcspheres.lc.certificates import replay, verify_lc_certificate
from lcspheres.lc.state import quotient_complex
from lcspheres.sampler import (
    lc_census,
    lc_upper_bound,
    sample_lc_closed,
    tree_state,
    upper_bound_base,
)
from lcspheres.sphere import verify_sphere
from lcspheres.trees import sample_tree


def _is_2_sphere(tris, n):
    edges = Counter(e for t in tris for e in combinations(t, 2))
    if any(c != 2 for c in edges.values()):
        return False
    if n - len(edges) + len(tris) != 2:
        return False
    for v in range(n):
        star = [t for t in tris if v in t]
        if not star:
            return False
        g = nx.Graph(tuple(u for u in t if u != v) for t in star)
        if not nx.is_connected(g):  # link is a union of cycles, need exactly one
            return False
    return True


def brute_force_2_spheres(N):
    """Pairwise non-isomorphic 2-spheres with N triangles, by exhaustion."""
    n = N // 2 + 2
    triangles = list(combinations(range(n), 3))
    found = []
    for tris in combinations(triangles, N):
        if tris[0][0] != 0 or not _is_2_sphere(tris, n):
            continue
        g = nx.Graph()
        for t in tris:
            g.add_edges_from((("t", t), ("v", v)) for v in t)
        if not any(nx.is_isomorphic(g, h) for h in found):
            found.append(g)
    return len(found)


@pytest.mark.parametrize("N,count", [(4, 1), (6, 1), (8, 2)])
def test_census_matches_brute_force(N, count):
    assert brute_force_2_spheres(N) == count
    census = lc_census(2, N)
    assert census.distinct == count
    assert census.distinct <= lc_upper_bound(2, N)


def test_small_censuses():
    assert set(lc_census(2, 4).counts) == {canonical_key(simplex_boundary(3))}
    c = lc_census(3, 5)
    assert set(c.counts) == {canonical_key(simplex_boundary(4))}
    for d, N in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)]:
        assert lc_census(d, N).distinct == 0


def test_bases():
    assert [upper_bound_base(d) for d in (2, 3, 4)] == [16, 216, 6117]
    assert lc_upper_bound(3, 2) == 216**2
    with pytest.raises(DimensionError):
        upper_bound_base(1)
    with pytest.raises(InvalidInput):
        lc_upper_bound(3, 0)


def test_base_is_the_ceiling():
    for d in range(2, 9):
        x = d * (d / (d - 1)) ** (d - 1) * 2 ** ((2 * d * d - d) / 3)
        assert upper_bound_base(d) - 1 < x <= upper_bound_base(d) + 1e-9 * x


@pytest.mark.parametrize("seed", range(5))
def test_two_dimensional_samples(seed):
    r = sample_lc_closed(2, 4, seed)
    assert r.closed and r.key == canonical_key(simplex_boundary(3))
    assert not r.histogram


def test_three_dimensional_batch_on_five_tets():
    target = canonical_key(simplex_boundary(4))
    closed = 0
    for seed in range(40):
        r = sample_lc_closed(3, 5, seed, max_restarts=3)
        if r.closed:
            closed += 1
            assert r.key == target
            assert sum(r.histogram.values()) == len(r.certificate.moves)
            assert r.histogram["ix"] == 1
    assert closed > 0


def test_closed_sample_is_a_sphere_and_replays():
    r = sample_lc_closed(3, 8, 3, max_restarts=200)
    assert r.closed
    assert r.attempts == r.stalls + r.invalid + 1
    final = quotient_complex(replay(r.certificate))
    assert verify_sphere(final, 3)
    assert verify_lc_certificate(final, r.certificate)
    assert canonical_key(final) == r.key


def test_determinism():
    a = sample_lc_closed(3, 7, 11, max_restarts=20)
    b = sample_lc_closed(3, 7, 11, max_restarts=20)
    assert a == b and a.summary() == b.summary()
    assert sample_tree(3, 6, 9).simplices == sample_tree(3, 6, 9).simplices


def test_stalled_report():
    # ten tetrahedra can never close up: no 3-sphere has ten facets
    r = sample_lc_closed(3, 10, 0, max_restarts=2)
    assert r.outcome in ("stalled", "invalid") and r.certificate is None
    assert r.attempts == 3 == r.stalls + r.invalid


def test_input_checks():
    with pytest.raises(DimensionError):
        sample_lc_closed(4, 5)
    with pytest.raises(InvalidInput):
        sample_lc_closed(3, 0)


def test_tree_state_is_open():
    s = tree_state(sample_tree(3, 4, 1))
    assert len(s.boundary) == 2 * 4 + 2
