"""Closure of LC complexes under gluing along a common boundary part and coning."""
from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Optional

import networkx as nx

from ..complex import (
    SimplicialComplex,
    boundary_complex,
    face_key,
    relabel,
    sorted_faces,
    union,
)
from ..errors import InvalidGluing, VertexClash
from .certificates import CertificateBuilder, LCCertificate, certificate_plan
from .state import Attach, Glue, LCState, quotient_complex
from ..canonical import canonical_key, key_digest


def _reroot(order, new_root):
    """BFS order of the tree underlying ``order``, started at ``new_root``."""
    G = nx.Graph()
    for facet, parent in order:
        G.add_node(facet)
        if parent is not None:
            G.add_edge(facet, parent)
    out, seen, queue = [], {new_root}, deque([new_root])
    while queue:
        u = queue.popleft()
        for w in sorted(G[u], key=face_key):
            if w not in seen:
                seen.add(w)
                out.append((w, u))
                queue.append(w)
    return out


def shared_part(C1: SimplicialComplex, C2: SimplicialComplex) -> SimplicialComplex:
    """The common subcomplex, checked to be a strongly connected part of both boundaries."""
    d = C1.dim
    if C2.dim != d:
        raise InvalidGluing("complexes of different dimensions")
    common = C1.all_faces() & C2.all_faces()
    b1 = set(boundary_complex(C1).facets)
    b2 = set(boundary_complex(C2).facets)
    ridges = {f for f in common if len(f) == d}
    if not ridges:
        raise InvalidGluing("no common ridge")
    if not ridges <= b1 or not ridges <= b2:
        raise InvalidGluing("common ridges must lie in both boundaries")
    shared = SimplicialComplex(ridges)
    if shared.all_faces() != common:
        raise InvalidGluing("the complexes meet outside their common ridges")
    G = nx.Graph()
    G.add_nodes_from(ridges)
    for a, b in combinations(sorted_faces(ridges), 2):
        if len(a & b) == d - 1:
            G.add_edge(a, b)
    if not nx.is_connected(G):
        raise InvalidGluing("shared part is not strongly connected")
    return shared


def lc_union(
    C1: SimplicialComplex,
    cert1: LCCertificate,
    C2: SimplicialComplex,
    cert2: LCCertificate,
    vertex_map: Optional[dict] = None,
) -> LCCertificate:
    """Certificate for C1 ∪ C2, glued along their common boundary ridges.

    ``vertex_map`` (optional) relabels C2 first; vertices of C2 that map to
    vertices of C1 are the ones identified.  The two trees are joined
    across one shared ridge, both gluing sequences are replayed, and then
    the remaining shared ridges are glued, each next to one glued before.
    """
    if vertex_map:
        C2 = relabel(C2, vertex_map)
    shared = shared_part(C1, C2)
    target = union(C1, C2)
    order1, glues1 = certificate_plan(C1, cert1)
    order2, glues2 = certificate_plan(C2, cert2)
    ridges = sorted_faces(shared.facets)
    sigma = ridges[0]
    (s1,) = [f for f in C1.facets if sigma < f]
    (s2,) = [f for f in C2.facets if sigma < f]
    order = list(order1) + [(s2, s1)] + _reroot(order2, s2)
    builder = CertificateBuilder(target, order)
    for rho, r in glues1 + glues2:
        builder.glue(rho, r)
    queue = deque([sigma])
    placed = {sigma}
    while queue:
        u = queue.popleft()
        for w in ridges:
            if w not in placed and len(u & w) == len(sigma) - 1:
                placed.add(w)
                builder.glue(w, u & w)
                queue.append(w)
    return builder.certificate()


def lc_cone(cert: LCCertificate, v: Optional[int] = None, target: Optional[SimplicialComplex] = None) -> LCCertificate:
    """Certificate for the cone over the complex built by ``cert``.

    The apex becomes tree vertex d+2 of the coned construction and joins
    every move.  When ``target`` is given, ``v`` must be a fresh vertex of it.
    """
    if target is not None and v is not None and v in target.vertices:
        raise VertexClash(f"vertex {v} already present")
    d = cert.d
    apex = d + 2

    def up(face, extra=True):
        out = {u + 1 if u > d + 1 else u for u in face}
        return frozenset(out | {apex}) if extra else frozenset(out)

    moves = []
    for m in cert.moves:
        if isinstance(m, Attach):
            moves.append(Attach(up(m.facet)))
        else:
            moves.append(Glue(up(m.sigma), up(m.tau), up(m.shared)))
    state = LCState(d + 1)
    for m in moves:
        state.apply_inplace(m)
    final = quotient_complex(state)
    return LCCertificate(d + 1, tuple(moves), key_digest(canonical_key(final)))
