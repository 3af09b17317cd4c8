"""Named test complexes, each checked against its expected properties when built.

Names are colon separated.  Base entries::

    simplex_boundary:<k>        boundary of the k-simplex, 2 <= k <= 6
    simplex:<d>                 the d-simplex
    stacked_sphere:<d>:<N>[:<seed>]   boundary of a random tree of N (d+1)-simplices
    tree_ball:<d>:<N>[:<seed>]  a random tree of N d-simplices
    cyclic:<d>:<n>              boundary of the cyclic d-polytope on n vertices, d even
    edge_star:<n>               n tetrahedra around a common edge
    bipyramid, octahedron, icosahedron, dunce_hat, fig4
    join_triangle_triangle, join_triangle_square

Builders, applied to any name: ``cone:``, ``suspension:``,
``cone_over_boundary:`` (a ball plus the cone over its boundary),
``minus_facet:`` (remove the first facet) and ``subdivide:`` (stellar
subdivision of the first facet).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .collapse import free_pairs
from .complex import (
    SimplicialComplex,
    boundary_complex,
    cone,
    join,
    link,
    pseudomanifold_check,
    simplex,
    simplex_boundary,
    suspension,
    union,
)
from .errors import DimensionError, InternalInvariantViolation, InvalidComplex, InvalidInput, NotFound
from .sphere import verify_ball, verify_sphere
from .trees import sample_tree


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    complex: SimplicialComplex
    provenance: str  # "standard" | "derived" | "constructed"
    kind: str  # "sphere" | "ball" | "other"
    facts: dict = field(default_factory=dict)


def _fresh(C):
    return max(C.vertices) + 1


def _require(cond, name, what):
    if not cond:
        raise InternalInvariantViolation(f"catalog entry {name!r}: {what}")


def _check_kind(C, name, kind):
    d = C.dim
    if d > 3:
        return
    if kind == "sphere":
        _require(verify_sphere(C, d), name, "is not a sphere")
    elif kind == "ball":
        _require(verify_ball(C, d), name, "is not a ball")


def cyclic_polytope_boundary(d: int, n: int) -> SimplicialComplex:
    """Facets by Gale's evenness condition (d even)."""
    if d % 2 or n <= d:
        raise NotFound("cyclic polytopes are built for even d and n > d")
    facets = []
    for S in combinations(range(1, n + 1), d):
        s = set(S)
        ok = True
        gaps = [x for x in range(1, n + 1) if x not in s]
        for a, b in combinations(gaps, 2):
            if sum(1 for x in S if a < x < b) % 2:
                ok = False
                break
        if ok:
            facets.append(S)
    return SimplicialComplex(facets)


def stellar_subdivision(C: SimplicialComplex, facet=None) -> SimplicialComplex:
    facet = frozenset(facet) if facet is not None else frozenset(C.sorted_facets()[0])
    v = _fresh(C)
    rest = [f for f in C.facets if f != facet]
    return SimplicialComplex(rest + [(facet - {u}) | {v} for u in facet])


DUNCE_HAT = [
    (1, 2, 5), (1, 2, 6), (1, 2, 8), (1, 3, 4), (1, 3, 6), (1, 3, 7), (1, 4, 7), (1, 5, 8), (2, 3, 4),
    (2, 3, 7), (2, 3, 8), (2, 4, 6), (2, 5, 7), (3, 6, 8), (4, 5, 7), (4, 5, 8), (4, 6, 8),
]

ICOSAHEDRON = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2), (2, 3, 7), (3, 4, 8), (4, 5, 9), (5, 6, 10),
    (6, 2, 11), (3, 7, 8), (4, 8, 9), (5, 9, 10), (6, 10, 11), (2, 11, 7), (7, 8, 12), (8, 9, 12),
    (9, 10, 12), (10, 11, 12), (11, 7, 12),
]

# two cones over triangulated triangles, sharing a strip of four triangles
# around vertex 1; see fig4_pseudomanifold
_FIG4_DISK_A = [(1, 3, 6), (1, 6, 5), (1, 5, 4), (3, 4, 5), (3, 6, 7), (6, 5, 7), (5, 7, 3)]
_FIG4_DISK_B = [(1, 2, 3), (2, 3, 4), (3, 4, 5), (4, 5, 1), (1, 2, 9), (2, 4, 9), (4, 1, 9)]


def fig4_parts():
    """The two 3-balls whose union along a four-triangle strip is the fig4 entry."""
    return cone(2, SimplicialComplex(_FIG4_DISK_A)), cone(8, SimplicialComplex(_FIG4_DISK_B))


def fig4_pseudomanifold() -> SimplicialComplex:
    a, b = fig4_parts()
    return union(a, b)


def _base(name, args):
    if name == "simplex_boundary":
        (k,) = args
        if not 2 <= k <= 6:
            raise NotFound(f"{name}: k must be in 2..6")
        C = simplex_boundary(k)
        fv = tuple(math.comb(k + 1, i + 1) for i in range(k))
        _require(C.f_vector() == fv, name, "wrong f-vector")
        return C, "standard", "sphere", {"f_vector": fv}
    if name == "simplex":
        (d,) = args
        return simplex(range(1, d + 2)), "standard", "ball", {}
    if name == "stacked_sphere":
        d, n, *rest = args
        ball = sample_tree(d + 1, n, rest[0] if rest else 0).complex
        C = boundary_complex(ball)
        _require(len(C.facets) == d * n + 2, name, "wrong facet count")
        return C, "constructed", "sphere", {"facets": d * n + 2}
    if name == "tree_ball":
        d, n, *rest = args
        C = sample_tree(d, n, rest[0] if rest else 0).complex
        return C, "constructed", "ball", {"facets": n}
    if name == "cyclic":
        d, n = args
        C = cyclic_polytope_boundary(d, n)
        return C, "standard", "sphere", {"facets": len(C.facets)}
    if name == "edge_star":
        (n,) = args
        if n < 3:
            raise NotFound(f"{name}: needs at least 3 tetrahedra")
        ring = list(range(3, n + 3))
        C = SimplicialComplex((1, 2, ring[i], ring[(i + 1) % n]) for i in range(n))
        return C, "constructed", "ball", {"facets": n}
    if args:
        raise NotFound(f"{name!r} takes no parameters")
    if name == "bipyramid":
        C = suspension(simplex_boundary(2))
        _require(C.f_vector() == (5, 9, 6), name, "wrong f-vector")
        return C, "standard", "sphere", {"f_vector": (5, 9, 6)}
    if name == "octahedron":
        square = SimplicialComplex([(1, 2), (2, 3), (3, 4), (4, 1)])
        C = suspension(square)
        _require(C.f_vector() == (6, 12, 8), name, "wrong f-vector")
        return C, "standard", "sphere", {"f_vector": (6, 12, 8)}
    if name == "icosahedron":
        C = SimplicialComplex(ICOSAHEDRON)
        _require(C.f_vector() == (12, 30, 20), name, "wrong f-vector")
        return C, "standard", "sphere", {"f_vector": (12, 30, 20)}
    if name == "join_triangle_triangle":
        C = join(simplex_boundary(2), simplex_boundary(2, offset=3))
        return C, "standard", "sphere", {"facets": 9}
    if name == "join_triangle_square":
        square = SimplicialComplex([(4, 5), (5, 6), (6, 7), (7, 4)])
        C = join(simplex_boundary(2), square)
        return C, "standard", "sphere", {"facets": 12}
    if name == "dunce_hat":
        C = SimplicialComplex(DUNCE_HAT)
        report = pseudomanifold_check(C)
        _require(C.euler_characteristic() == 1, name, "Euler characteristic is not 1")
        _require(not free_pairs(C), name, "has a free edge")
        _require(report.pure and not report.ridge_degrees_ok, name, "ridge degrees unexpected")
        return C, "standard", "other", {"free_pairs": 0, "euler": 1}
    if name == "fig4":
        C = fig4_pseudomanifold()
        _require(len(C.vertices) == 9, name, "does not have 9 vertices")
        _require(len(C.facets) == 14 and C.dim == 3, name, "does not have 14 tetrahedra")
        _require(link(C, [1]).euler_characteristic() == 0, name, "link of vertex 1 is not an annulus")
        _require(bool(pseudomanifold_check(C)), name, "not a strongly connected pseudomanifold")
        return C, "derived", "other", {"vertices": 9, "facets": 14, "top_vertex": 1}
    raise NotFound(f"unknown catalog entry {name!r}")


_BUILDERS: dict = {}


def _builder(prefix):
    def wrap(fn: Callable):
        _BUILDERS[prefix] = fn
        return fn

    return wrap


@_builder("cone")
def _cone(inner):
    kind = {"sphere": "ball", "ball": "ball"}.get(inner.kind, "other")
    return cone(_fresh(inner.complex), inner.complex), kind


@_builder("suspension")
def _susp(inner):
    return suspension(inner.complex), "sphere" if inner.kind == "sphere" else "other"


@_builder("cone_over_boundary")
def _cone_over_boundary(inner):
    B = inner.complex
    C = union(B, cone(_fresh(B), boundary_complex(B)))
    return C, "sphere" if inner.kind == "ball" else "other"


@_builder("minus_facet")
def _minus(inner):
    C = inner.complex
    facet = C.sorted_facets()[0]
    rest = SimplicialComplex(f for f in C.facets if f != frozenset(facet))
    return rest, "ball" if inner.kind == "sphere" else "other"


@_builder("subdivide")
def _subdivide(inner):
    return stellar_subdivision(inner.complex), inner.kind


def _parse(name):
    parts = name.split(":")
    args = []
    for p in parts[1:]:
        try:
            args.append(int(p))
        except ValueError:
            raise NotFound(f"bad parameter {p!r} in {name!r}") from None
    return parts[0], args


def entry(name: str) -> CatalogEntry:
    head, _, rest = name.partition(":")
    if head in _BUILDERS:
        if not rest:
            raise NotFound(f"{head}: needs an argument")
        inner = entry(rest)
        C, kind = _BUILDERS[head](inner)
        _check_kind(C, name, kind)
        return CatalogEntry(name, C, "constructed", kind)
    base, args = _parse(name)
    try:
        C, provenance, kind, facts = _base(base, args)
    except (TypeError, ValueError, DimensionError, InvalidInput, InvalidComplex):
        raise NotFound(f"wrong parameters for {name!r}") from None
    _check_kind(C, name, kind)
    return CatalogEntry(name, C, provenance, kind, facts)


def builtin(name: str) -> SimplicialComplex:
    return entry(name).complex


# a fixed menu used by tests and the CLI listing
SPHERES_2 = [
    "simplex_boundary:3", "bipyramid", "octahedron", "icosahedron",
    "stacked_sphere:2:3", "stacked_sphere:2:4:1", "stacked_sphere:2:5:2", "suspension:simplex_boundary:2",
]
SPHERES_3 = [
    "simplex_boundary:4", "suspension:simplex_boundary:3", "stacked_sphere:3:2", "join_triangle_triangle",
    "stacked_sphere:3:3", "stacked_sphere:3:3:1", "stacked_sphere:3:3:2", "join_triangle_square",
    "suspension:bipyramid", "subdivide:simplex_boundary:4", "subdivide:join_triangle_triangle", "cyclic:4:7",
]
BALLS_3 = [
    "simplex:3", "tree_ball:3:2", "tree_ball:3:3", "tree_ball:3:4:1", "tree_ball:3:5:2", "tree_ball:3:6:3",
    "edge_star:3", "edge_star:4", "edge_star:5", "minus_facet:simplex_boundary:4",
    "minus_facet:stacked_sphere:3:2", "minus_facet:join_triangle_triangle", "minus_facet:cyclic:4:7",
    "cone:simplex_boundary:3", "cone:bipyramid", "cone:octahedron", "cone:stacked_sphere:2:4:1",
    "cone:tree_ball:2:4", "cone:tree_ball:2:6:1", "subdivide:simplex:3", "subdivide:subdivide:simplex:3",
    "subdivide:tree_ball:3:3", "subdivide:edge_star:4",
]
OTHERS = ["dunce_hat", "fig4"]


def names() -> list:
    return SPHERES_2 + SPHERES_3 + BALLS_3 + OTHERS + [f"simplex_boundary:{k}" for k in (5, 6)]
