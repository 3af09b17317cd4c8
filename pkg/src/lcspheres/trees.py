"""Trees of d-simplices, planted plane d-ary trees and their counts.

A planted plane d-ary tree is a nested tuple: a leaf is ``()`` and an
internal node is a tuple of exactly d subtrees.  Its preorder word writes
``1`` for an internal node and ``0`` for a leaf.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterator

from .canonical import canonical_key
from .complex import SimplicialComplex, ridge_degrees
from .errors import DimensionError, InternalInvariantViolation, InvalidInput

LEAF = ()


def fuss_catalan(d: int, N: int) -> int:
    """Number of planted plane d-ary trees with N internal nodes."""
    if d < 2:
        raise DimensionError(f"d={d} < 2")
    if N < 0:
        raise InvalidInput(f"N={N} < 0")
    return math.comb(d * N, N) // ((d - 1) * N + 1)


def internal_count(t) -> int:
    return 0 if t == LEAF else 1 + sum(internal_count(c) for c in t)


def leaf_count(t) -> int:
    return 1 if t == LEAF else sum(leaf_count(c) for c in t)


def preorder_word(t) -> tuple:
    out = []

    def walk(u):
        if u == LEAF:
            out.append(0)
        else:
            out.append(1)
            for c in u:
                walk(c)

    walk(t)
    return tuple(out)


def tree_from_word(word, d: int):
    it = iter(word)

    def build():
        if next(it) == 0:
            return LEAF
        return tuple(build() for _ in range(d))

    t = build()
    if next(it, None) is not None:
        raise InvalidInput("word longer than its tree")
    return t


def _trees(d, n):
    if n == 0:
        yield LEAF
        return
    for parts in _compositions(n - 1, d):
        yield from _products(d, parts)


def _compositions(total, k):
    """Weak compositions of ``total`` into k parts, first part descending."""
    if k == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


def _products(d, parts):
    if not parts:
        yield ()
        return
    for head in _trees(d, parts[0]):
        for tail in _products(d, parts[1:]):
            yield (head,) + tail


def enumerate_dary_trees(d: int, N: int) -> Iterator[tuple]:
    """Every planted plane d-ary tree with N internal nodes, exactly once.

    Order: lexicographically decreasing preorder word, i.e. depth first with
    internal nodes preferred, so the left comb comes first.
    """
    if d < 2:
        raise DimensionError(f"d={d} < 2")
    yield from _trees(d, N)


def random_dary_tree(d: int, N: int, rng: random.Random):
    """Uniform planted plane d-ary tree via a random word and the cycle lemma."""
    word = [d - 1] * N + [-1] * ((d - 1) * N + 1)
    rng.shuffle(word)
    # the unique rotation whose proper prefix sums stay >= 0 starts right
    # after the first position where the prefix sum reaches its minimum
    s, low, at = 0, 0, -1
    for i, x in enumerate(word):
        s += x
        if s < low:
            low, at = s, i
    rot = word[at + 1:] + word[:at + 1]
    return tree_from_word([1 if x > 0 else 0 for x in rot], d)


@dataclass(frozen=True)
class TreeOfSimplices:
    """N d-simplices glued along a dual tree.

    ``simplices[i]`` is a sorted vertex tuple, ``parents[i]`` the index of
    the simplex it was attached to (None for the root).  ``labels`` is the
    proper colouring of the vertices by 1..d+1 induced by ``root_facet``.
    """

    d: int
    simplices: tuple
    parents: tuple
    root_facet: frozenset
    labels: dict = field(compare=False, hash=False)

    @property
    def N(self) -> int:
        return len(self.simplices)

    @cached_property
    def complex(self) -> SimplicialComplex:
        return SimplicialComplex(self.simplices)

    def attachment_facets(self):
        """Facet shared with the parent, for every non-root simplex."""
        return [
            None if p is None else frozenset(self.simplices[i]) & frozenset(self.simplices[p])
            for i, p in enumerate(self.parents)
        ]

    @classmethod
    def from_simplices(cls, d, simplices, parents, root_facet=None):
        simplices = tuple(tuple(sorted(s)) for s in simplices)
        if root_facet is None:
            root_facet = frozenset(simplices[0][:d])
        labels = {v: i + 1 for i, v in enumerate(sorted(root_facet))}
        (apex,) = set(simplices[0]) - root_facet
        labels[apex] = d + 1
        for i in range(1, len(simplices)):
            new = set(simplices[i]) - set(simplices[parents[i]])
            if len(new) != 1:
                raise InvalidInput(f"simplex {i} does not add exactly one vertex")
            (v,) = new
            (gone,) = set(simplices[parents[i]]) - set(simplices[i])
            labels[v] = labels[gone]
        return cls(d, simplices, tuple(parents), frozenset(root_facet), labels)


def tree_of_simplices_from_dary(t, d: int) -> TreeOfSimplices:
    """Rooted tree of d-simplices encoded by a planted plane d-ary tree.

    The root simplex is ``1..d+1`` with the distinguished facet ``1..d``;
    child j of a simplex is glued across its facet missing the j-th smallest
    label other than the label of the facet towards the parent.
    """
    if t == LEAF:
        raise InvalidInput("a tree of simplices needs at least one internal node")
    simplices, parents = [], []
    labels = {}
    next_id = [d + 2]

    def grow(node, verts, up_label, parent):
        idx = len(simplices)
        simplices.append(tuple(sorted(verts)))
        parents.append(parent)
        by_label = {labels[v]: v for v in verts}
        slots = [lab for lab in range(1, d + 2) if lab != up_label]
        for lab, child in zip(slots, node):
            if child == LEAF:
                continue
            v = next_id[0]
            next_id[0] += 1
            labels[v] = lab
            facet = [u for u in verts if u != by_label[lab]]
            grow(child, facet + [v], lab, idx)

    root = list(range(1, d + 2))
    for v in root:
        labels[v] = v
    grow(t, root, d + 1, None)
    return TreeOfSimplices(d, tuple(simplices), tuple(parents), frozenset(range(1, d + 1)), labels)


def dary_from_tree_of_simplices(T: TreeOfSimplices):
    """Inverse of :func:`tree_of_simplices_from_dary` (uses the stored root facet)."""
    d = T.d
    labels = T.labels
    holders = {}
    for i, s in enumerate(T.simplices):
        for r in combinations(s, d):
            holders.setdefault(frozenset(r), []).append(i)
    root = next(i for i, s in enumerate(T.simplices) if T.root_facet <= set(s))

    def shape(i, up_label, parent):
        verts = T.simplices[i]
        by_label = {labels[v]: v for v in verts}
        kids = []
        for lab in range(1, d + 2):
            if lab == up_label:
                continue
            facet = frozenset(verts) - {by_label[lab]}
            other = [j for j in holders[facet] if j != i and j != parent]
            kids.append(shape(other[0], lab, i) if other else LEAF)
        return tuple(kids)

    return shape(root, d + 1, None)


def sample_tree(d: int, N: int, seed: int = 0) -> TreeOfSimplices:
    if d < 2:
        raise DimensionError(f"d={d} < 2")
    if N < 1:
        raise InvalidInput("N must be at least 1")
    rng = random.Random(seed)
    return tree_of_simplices_from_dary(random_dary_tree(d, N, rng), d)


def enumerate_trees_unlabeled(d: int, N: int) -> list:
    """Canonical keys of all combinatorially distinct trees of N d-simplices."""
    if N < 1:
        raise InvalidInput("N must be at least 1")
    keys = {canonical_key(tree_of_simplices_from_dary(t, d).complex) for t in enumerate_dary_trees(d, N)}
    return sorted(keys)


def unlabeled_bounds(d: int, N: int):
    """Lower and upper bound on the number of unlabeled trees of N d-simplices."""
    upper = fuss_catalan(d, N)
    return upper / (((d - 1) * N + 2) * math.factorial(d)), upper


@dataclass(frozen=True)
class TreeStats:
    boundary_facets: int
    interior_ridges: int
    codim2_faces: int


def tree_stats_formula(d: int, N: int) -> TreeStats:
    b = (d - 1) * N + 2
    return TreeStats(b, N - 1, d * b // 2)


def tree_boundary_stats(T: TreeOfSimplices) -> TreeStats:
    """Face counts of a tree of simplices, by formula and by enumeration."""
    expected = tree_stats_formula(T.d, T.N)
    C = T.complex
    degs = ridge_degrees(C)
    boundary = {r for r, n in degs.items() if n == 1}
    interior = sum(1 for n in degs.values() if n == 2)
    codim2 = C.faces(T.d - 2)
    on_boundary = {frozenset(f) for r in boundary for f in combinations(sorted(r), T.d - 1)}
    measured = TreeStats(len(boundary), interior, len(codim2))
    if measured != expected or not codim2 <= on_boundary:
        raise InternalInvariantViolation(f"tree counts {measured} differ from {expected}")
    return measured
