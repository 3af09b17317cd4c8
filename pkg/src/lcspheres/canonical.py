"""Exact canonical forms of simplicial complexes.

The canonical key is the lexicographically least sorted facet list among all
labelings produced by individualization/refinement: vertices are first split
into colour classes by iterated incidence-degree refinement, and the search
branches over every vertex of the first non-singleton class.  Because the
refinement is isomorphism invariant, the set of candidate labelings of
``relabel(C, p)`` is the image of that of ``C``, so keys agree exactly on
isomorphic inputs.
"""
from __future__ import annotations

import hashlib

from .complex import SimplicialComplex

CanonicalKey = tuple  # tuple of ascending vertex tuples over labels 1..n


def _rank(signatures):
    order = {s: i for i, s in enumerate(sorted(set(signatures.values())))}
    return {v: order[s] for v, s in signatures.items()}


def _refine(colors, incidence):
    """Iterate colour refinement to a fixed point (number of classes stable)."""
    ncls = len(set(colors.values()))
    while True:
        sig = {}
        for v, facets in incidence.items():
            nb = sorted(tuple(sorted(colors[u] for u in f if u != v)) for f in facets)
            sig[v] = (colors[v], tuple(nb))
        new = _rank(sig)
        n = len(set(new.values()))
        if n == ncls:
            return new
        colors, ncls = new, n


def canonical_labeling(C: SimplicialComplex):
    """Return ``(key, mapping)`` where ``mapping`` sends each vertex to 1..n."""
    verts = C.vertices
    if not verts:
        return (), {}
    facets = [tuple(sorted(f)) for f in C.facets]
    incidence = {v: [] for v in verts}
    for f in facets:
        for v in f:
            incidence[v].append(f)
    init = {
        v: (len(fs), tuple(sorted(len(f) for f in fs))) for v, fs in incidence.items()
    }
    colors = _refine(_rank(init), incidence)

    best = [None, None]

    def leaf(cols):
        mapping = {v: c + 1 for v, c in cols.items()}
        key = tuple(sorted(tuple(sorted(mapping[v] for v in f)) for f in facets))
        if best[0] is None or key < best[0]:
            best[0], best[1] = key, mapping

    def search(cols):
        cells = {}
        for v, c in cols.items():
            cells.setdefault(c, []).append(v)
        if len(cells) == len(cols):
            leaf(cols)
            return
        target = min(c for c, vs in cells.items() if len(vs) > 1)
        for v in sorted(cells[target]):
            split = {u: (c, 0 if u == v else 1) for u, c in cols.items()}
            search(_refine(_rank(split), incidence))

    search(colors)
    return best[0], best[1]


def canonical_key(C: SimplicialComplex) -> CanonicalKey:
    return canonical_labeling(C)[0]


def canonical_complex(C: SimplicialComplex) -> SimplicialComplex:
    return SimplicialComplex(canonical_key(C))


def key_digest(key: CanonicalKey) -> str:
    text = "\n".join(" ".join(map(str, f)) for f in key)
    return hashlib.sha256(text.encode()).hexdigest()


def isomorphism(A: SimplicialComplex, B: SimplicialComplex):
    """A vertex map sending A onto B, or None when they are not isomorphic."""
    ka, ma = canonical_labeling(A)
    kb, mb = canonical_labeling(B)
    if ka != kb:
        return None
    back = {c: v for v, c in mb.items()}
    return {v: back[c] for v, c in ma.items()}
