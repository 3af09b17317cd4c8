"""Finite simplicial complexes stored by their facet lists.

Vertices are positive integers and faces are ``frozenset`` objects.  Every
iteration order exposed here is lexicographic on sorted vertex tuples, so
results do not depend on hash seeds.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import networkx as nx

from .errors import (
    DimensionError,
    FaceNotFound,
    InvalidComplex,
    NotPseudomanifold,
    VertexClash,
)

Face = frozenset


def face_key(face):
    """Sort key putting faces in lexicographic order of their sorted vertices."""
    return tuple(sorted(face))


def sorted_faces(faces):
    return sorted(faces, key=face_key)


def _absorb(faces):
    """Drop every face contained in another one."""
    ordered = sorted(set(faces), key=lambda f: (-len(f), face_key(f)))
    kept = []
    for f in ordered:
        if not any(f < g for g in kept if len(g) > len(f)):
            kept.append(f)
    return kept


class SimplicialComplex:
    """A complex given by its inclusion-maximal faces.

    Instances are immutable.  The empty complex (no facets) is allowed; it is
    what closed pseudomanifolds have as boundary and what a full facet
    massacre ends with.
    """

    __slots__ = ("facets", "_faces", "_hash")

    def __init__(self, facets: Iterable[Iterable[int]] = ()):
        fs = []
        for f in facets:
            f = frozenset(f)
            if not f:
                raise InvalidComplex("facets must be non-empty")
            for v in f:
                if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
                    raise InvalidComplex(f"vertex {v!r} is not a positive integer")
            fs.append(f)
        self.facets = frozenset(_absorb(fs))
        self._faces = None
        self._hash = None

    @classmethod
    def from_faces(cls, faces):
        """Complex generated by an arbitrary family of faces."""
        return cls(faces)

    # --- basic data -----------------------------------------------------
    @property
    def dim(self) -> int:
        if not self.facets:
            return -1
        return max(len(f) for f in self.facets) - 1

    @property
    def vertices(self) -> tuple:
        return tuple(sorted(set().union(*self.facets))) if self.facets else ()

    def sorted_facets(self) -> list:
        return sorted(face_key(f) for f in self.facets)

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def is_empty(self) -> bool:
        return not self.facets

    def _face_table(self):
        if self._faces is None:
            table = {}
            for f in self.facets:
                for k in range(1, len(f) + 1):
                    table.setdefault(k - 1, set()).update(
                        frozenset(c) for c in combinations(sorted(f), k)
                    )
            self._faces = {k: frozenset(v) for k, v in table.items()}
        return self._faces

    def faces(self, k: int) -> frozenset:
        if not 0 <= k <= self.dim:
            raise DimensionError(f"k={k} outside 0..{self.dim}")
        return self._face_table()[k]

    def all_faces(self) -> frozenset:
        return frozenset().union(*self._face_table().values()) if self.facets else frozenset()

    def f_vector(self) -> tuple:
        table = self._face_table()
        return tuple(len(table[k]) for k in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def __contains__(self, face) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(f in other for f in self.facets)

    def __len__(self):
        return len(self.facets)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.facets)
        return self._hash

    def __repr__(self):
        body = ", ".join(" ".join(map(str, f)) for f in self.sorted_facets()[:6])
        more = "" if len(self.facets) <= 6 else f", ... ({len(self.facets)} facets)"
        return f"SimplicialComplex([{body}{more}])"


EMPTY = SimplicialComplex()


def from_facets(facet_list) -> SimplicialComplex:
    facet_list = list(facet_list)
    if not facet_list:
        raise InvalidComplex("empty facet list")
    return SimplicialComplex(facet_list)


def faces(C: SimplicialComplex, k: int) -> frozenset:
    return C.faces(k)


def ridge_degrees(C: SimplicialComplex) -> Counter:
    """Number of top-dimensional facets containing each ridge."""
    d = C.dim
    counts = Counter()
    for f in C.facets:
        if len(f) == d + 1:
            for r in combinations(sorted(f), d):
                counts[frozenset(r)] += 1
    return counts


@dataclass(frozen=True)
class PseudomanifoldReport:
    pure: bool
    ridge_degrees_ok: bool
    strongly_connected: bool

    def __bool__(self):
        return self.pure and self.ridge_degrees_ok and self.strongly_connected


def pseudomanifold_check(C: SimplicialComplex) -> PseudomanifoldReport:
    pure = C.is_pure() and not C.is_empty()
    ok = all(n <= 2 for n in ridge_degrees(C).values())
    connected = pure and nx.is_connected(dual_graph(C))
    return PseudomanifoldReport(pure, ok, connected)


def require_pseudomanifold(C):
    if not C.is_pure():
        raise NotPseudomanifold("complex is not pure")
    bad = [r for r, n in ridge_degrees(C).items() if n > 2]
    if bad:
        raise NotPseudomanifold(f"ridge {face_key(min(bad, key=face_key))} lies in more than two facets")


def boundary_complex(C: SimplicialComplex) -> SimplicialComplex:
    require_pseudomanifold(C)
    return SimplicialComplex(r for r, n in ridge_degrees(C).items() if n == 1)


def dual_graph(C: SimplicialComplex) -> nx.Graph:
    """Graph on the facets; arcs join facets sharing a ridge (``ridge`` attribute)."""
    G = nx.Graph()
    G.add_nodes_from(sorted_faces(C.facets))
    holders = {}
    for f in sorted_faces(C.facets):
        for r in combinations(sorted(f), len(f) - 1):
            holders.setdefault(frozenset(r), []).append(f)
    for r in sorted_faces(holders):
        fs = holders[r]
        for a, b in combinations(fs, 2):
            G.add_edge(a, b, ridge=r)
    return G


def link(C: SimplicialComplex, F) -> SimplicialComplex:
    F = frozenset(F)
    if not F or F not in C:
        raise FaceNotFound(f"{face_key(F)} is not a face")
    return SimplicialComplex(f - F for f in C.facets if F <= f and f != F)


def star(C: SimplicialComplex, F) -> SimplicialComplex:
    F = frozenset(F)
    if F not in C:
        raise FaceNotFound(f"{face_key(F)} is not a face")
    return SimplicialComplex(f for f in C.facets if F <= f)


def cone(v: int, C: SimplicialComplex) -> SimplicialComplex:
    if v in C.vertices:
        raise VertexClash(f"vertex {v} already present")
    if C.is_empty():
        return SimplicialComplex([[v]])
    return SimplicialComplex(f | {v} for f in C.facets)


def join(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    if set(A.vertices) & set(B.vertices):
        raise VertexClash("join of complexes with common vertices")
    return SimplicialComplex(a | b for a in A.facets for b in B.facets)


def suspension(C: SimplicialComplex, north=None, south=None) -> SimplicialComplex:
    top = max(C.vertices, default=0)
    north = top + 1 if north is None else north
    south = top + 2 if south is None else south
    return union(cone(north, C), cone(south, C))


def union(*complexes: SimplicialComplex) -> SimplicialComplex:
    return SimplicialComplex(f for C in complexes for f in C.facets)


def remove_facet(C: SimplicialComplex, facet) -> SimplicialComplex:
    """``C - facet``: delete the open facet, keeping all of its proper faces."""
    facet = frozenset(facet)
    if facet not in C.facets:
        raise FaceNotFound(f"{face_key(facet)} is not a facet")
    rest = [f for f in C.facets if f != facet]
    rest.extend(facet - {v} for v in facet if len(facet) > 1)
    return SimplicialComplex(rest)


def relabel(C: SimplicialComplex, mapping) -> SimplicialComplex:
    """Apply a vertex bijection given as a dict (missing vertices stay fixed)."""
    return SimplicialComplex(frozenset(mapping.get(v, v) for v in f) for f in C.facets)


def simplex(vertices) -> SimplicialComplex:
    return SimplicialComplex([vertices])


def simplex_boundary(k: int, offset: int = 0) -> SimplicialComplex:
    """Boundary of the k-simplex on vertices offset+1 .. offset+k+1, a (k-1)-sphere."""
    verts = range(offset + 1, offset + k + 2)
    return SimplicialComplex(combinations(verts, k))


def is_connected(C: SimplicialComplex) -> bool:
    if C.is_empty():
        return False
    G = nx.Graph()
    G.add_nodes_from(C.vertices)
    for f in C.facets:
        vs = sorted(f)
        G.add_edges_from(zip(vs, vs[1:]))
    return nx.is_connected(G)
