"""Elementary collapses, phased collapse search, facet massacres.

Searches are phased: all pairs whose cofacet has the top dimension are
removed first, then the next dimension, and so on.  Inside one phase the set
of free pairs only grows (removing a k-face never blocks another (k-1)-face
from being free), which gives two facts used below:

* whether a phase can be completed from a given state is decided greedily;
* taking an available pair immediately is never worse than taking it later,
  so the exhaustive search branches on "take the least free pair" versus
  "never use this free face in this phase".
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import networkx as nx

from .canonical import canonical_key
from .complex import EMPTY, SimplicialComplex, face_key, is_connected
from .errors import (
    DimensionError,
    IllegalCollapse,
    InvalidKillingSequence,
    InvalidSubcomplex,
    InvalidTree,
)


@dataclass(frozen=True)
class CollapseStep:
    free_face: frozenset
    cofacet: frozenset

    def __post_init__(self):
        object.__setattr__(self, "free_face", frozenset(self.free_face))
        object.__setattr__(self, "cofacet", frozenset(self.cofacet))
        if len(self.cofacet) != len(self.free_face) + 1 or not self.free_face < self.cofacet:
            raise IllegalCollapse(f"{face_key(self.free_face)} is not a ridge of {face_key(self.cofacet)}")

    @property
    def dim(self) -> int:
        """Dimension of the cofacet."""
        return len(self.cofacet) - 1

    def sort_key(self):
        return (-len(self.cofacet), face_key(self.free_face), face_key(self.cofacet))

    def __repr__(self):
        return f"CollapseStep({face_key(self.free_face)} < {face_key(self.cofacet)})"


@dataclass(frozen=True)
class CollapseSequence:
    steps: tuple
    start: Optional[tuple] = field(default=None, compare=False)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def facet_phase(self, d):
        """Leading steps whose cofacet has dimension d."""
        out = []
        for s in self.steps:
            if s.dim != d:
                break
            out.append(s)
        return out


@dataclass(frozen=True)
class CollapseResult:
    status: str  # "found" | "impossible" | "unknown"
    sequence: Optional[CollapseSequence] = None
    final: Optional[SimplicialComplex] = None

    @property
    def found(self):
        return self.status == "found"


@dataclass(frozen=True)
class CollapseBudget:
    retries: int = 64
    exhaustive_threshold: int = 60
    max_nodes: int = 200_000
    seed: int = 0


class FaceSet:
    """Mutable face set with coface incidences, used during collapses."""

    __slots__ = ("faces", "up", "by_size")

    def __init__(self, faces=()):
        self.faces = set()
        self.up = {}
        self.by_size = {}
        for f in sorted(faces, key=len):
            self._add(frozenset(f))

    @classmethod
    def of(cls, C: SimplicialComplex):
        return cls(C.all_faces())

    def _add(self, f):
        self.faces.add(f)
        self.up.setdefault(f, set())
        self.by_size.setdefault(len(f), set()).add(f)
        if len(f) > 1:
            for v in f:
                sub = f - {v}
                self.up.setdefault(sub, set()).add(f)

    def copy(self):
        new = FaceSet.__new__(FaceSet)
        new.faces = set(self.faces)
        new.up = {f: set(s) for f, s in self.up.items()}
        new.by_size = {k: set(s) for k, s in self.by_size.items()}
        return new

    def is_free(self, sigma, cofacet):
        return sigma in self.faces and self.up.get(sigma) == {cofacet}

    def _drop(self, f):
        self.faces.discard(f)
        self.by_size[len(f)].discard(f)
        self.up.pop(f, None)
        if len(f) > 1:
            for v in f:
                s = self.up.get(f - {v})
                if s is not None:
                    s.discard(f)

    def collapse(self, sigma, cofacet):
        if not self.is_free(sigma, cofacet):
            raise IllegalCollapse(f"{face_key(sigma)} is not a free face of {face_key(cofacet)}")
        self._drop(cofacet)
        self._drop(sigma)

    def free_pairs(self, size, protected=frozenset()):
        """Free pairs whose cofacet has ``size`` vertices, in lexicographic order."""
        out = []
        for sigma in self.by_size.get(size - 1, ()):
            if sigma in protected:
                continue
            ups = self.up[sigma]
            if len(ups) == 1:
                (cof,) = ups
                out.append(CollapseStep(sigma, cof))
        out.sort(key=CollapseStep.sort_key)
        return out

    def count(self, size, protected=frozenset()):
        return sum(1 for f in self.by_size.get(size, ()) if f not in protected)

    def to_complex(self):
        return SimplicialComplex(f for f in self.faces if not self.up[f])


def _protected_faces(C, protected):
    if protected is None or protected.is_empty():
        return frozenset()
    if not protected.is_subcomplex_of(C):
        raise InvalidSubcomplex("protected complex is not a subcomplex")
    return protected.all_faces()


def free_pairs(C: SimplicialComplex, protected: SimplicialComplex = EMPTY):
    prot = _protected_faces(C, protected)
    fs = FaceSet.of(C)
    out = []
    for size in range(C.dim + 1, 1, -1):
        out.extend(fs.free_pairs(size, prot))
    return out


def apply_collapse(C: SimplicialComplex, step: CollapseStep) -> SimplicialComplex:
    fs = FaceSet.of(C)
    fs.collapse(step.free_face, step.cofacet)
    return fs.to_complex()


class _Exhausted(Exception):
    pass


class _Search:
    def __init__(self, C, target_dim, prot, budget):
        self.C = C
        self.target = target_dim
        self.prot = prot
        self.budget = budget
        self.nodes = 0
        self.dead = set()
        # a connected complex with Euler characteristic 1 that has been
        # collapsed to a graph is a tree, so the second-to-last phase need
        # not branch when the goal is a single vertex
        self.point_goal = target_dim == 0 and not prot
        self.point_possible = C.euler_characteristic() == 1 and is_connected(C)

    def greedy_phase(self, fs, size, steps, rng=None):
        while True:
            pairs = fs.free_pairs(size, self.prot)
            if not pairs:
                break
            step = rng.choice(pairs) if rng is not None else pairs[0]
            fs.collapse(step.free_face, step.cofacet)
            steps.append(step)
        return fs.count(size, self.prot) == 0

    def goal(self, fs):
        if any(fs.count(size, self.prot) for size in range(self.target + 2, self.C.dim + 2)):
            return False
        if self.point_goal:
            return len(fs.faces) == 1
        return True

    def needs_branching(self, size):
        # size is the number of vertices of the cofacets removed in this phase
        if size == self.target + 2:
            return False
        return not (self.point_goal and size == 3)

    def greedy(self, rng):
        fs = FaceSet(self.C.all_faces())
        steps = []
        for size in range(self.C.dim + 1, self.target + 1, -1):
            if not self.greedy_phase(fs, size, steps, rng):
                return None
        return (steps, fs) if self.goal(fs) else None

    def exhaustive(self):
        if self.point_goal and not self.point_possible:
            return None
        fs = FaceSet(self.C.all_faces())
        return self._phase(fs, self.C.dim + 1, frozenset())

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _Exhausted

    def _phase(self, fs, size, forbidden):
        if size <= self.target + 1:
            return ([], fs) if self.goal(fs) else None
        if not self.needs_branching(size):
            steps = []
            if not self.greedy_phase(fs, size, steps):
                return None
            rest = self._phase(fs, size - 1, frozenset())
            return None if rest is None else (steps + rest[0], rest[1])
        if fs.count(size, self.prot) == 0:
            return self._phase(fs, size - 1, frozenset())
        forbidden = frozenset(f for f in forbidden if f in fs.faces)
        memo = (size, frozenset(fs.faces), forbidden)
        if memo in self.dead:
            return None
        self._tick()
        pairs = [p for p in fs.free_pairs(size, self.prot) if p.free_face not in forbidden]
        if pairs:
            p = pairs[0]
            taken = fs.copy()
            taken.collapse(p.free_face, p.cofacet)
            res = self._phase(taken, size, forbidden)
            if res is not None:
                return ([p] + res[0], res[1])
            res = self._phase(fs, size, forbidden | {p.free_face})
            if res is not None:
                return res
        self.dead.add(memo)
        return None


def find_collapse_onto_dim(
    C: SimplicialComplex,
    target_dim: int,
    protected: SimplicialComplex = EMPTY,
    budget: CollapseBudget = CollapseBudget(),
) -> CollapseResult:
    """Search a phased collapse removing every face above ``target_dim``.

    Faces of ``protected`` are never removed.  With ``target_dim == 0`` and
    nothing protected the goal is a single vertex, i.e. collapsibility.
    Randomised greedy runs come first; negative answers ("impossible") are
    only produced by the exhaustive search, which runs when the complex has
    at most ``budget.exhaustive_threshold`` faces.
    """
    if target_dim >= C.dim:
        raise DimensionError(f"target {target_dim} is not below dim {C.dim}")
    prot = _protected_faces(C, protected)
    search = _Search(C, target_dim, prot, budget)
    rng = random.Random(budget.seed)
    for _ in range(budget.retries):
        res = search.greedy(rng)
        if res is not None:
            return _result(C, res)
    if len(C.all_faces()) > budget.exhaustive_threshold:
        return CollapseResult("unknown")
    try:
        res = search.exhaustive()
    except _Exhausted:
        return CollapseResult("unknown")
    if res is None:
        return CollapseResult("impossible")
    return _result(C, res)


def _result(C, res):
    steps, fs = res
    return CollapseResult("found", CollapseSequence(tuple(steps), canonical_key(C)), fs.to_complex())


def is_collapsible(C: SimplicialComplex, budget: CollapseBudget = CollapseBudget()) -> CollapseResult:
    if C.dim <= 0:
        status = "found" if len(C.facets) == 1 else "impossible"
        return CollapseResult(status, CollapseSequence((), canonical_key(C)), C)
    return find_collapse_onto_dim(C, 0, EMPTY, budget)


def replay_collapse(C: SimplicialComplex, seq) -> SimplicialComplex:
    fs = FaceSet.of(C)
    for step in seq:
        fs.collapse(step.free_face, step.cofacet)
    return fs.to_complex()


def verify_collapse(C: SimplicialComplex, seq, expected_final=None) -> bool:
    """Replay a collapse certificate.

    ``expected_final`` is either a complex (compared label for label) or an
    integer dimension bound for the final complex.  ``None`` accepts any
    final complex once the replay succeeds.
    """
    try:
        final = replay_collapse(C, seq)
    except IllegalCollapse:
        return False
    if expected_final is None:
        return True
    if isinstance(expected_final, int):
        return final.dim <= expected_final
    return final == expected_final


@dataclass(frozen=True)
class MassacreStep:
    facet: frozenset
    ridge: frozenset
    swept: frozenset


@dataclass(frozen=True)
class MassacreSequence:
    """Pure facet-massacre: compared by its sequence of complexes only."""

    states: tuple
    steps: tuple = field(compare=False)

    def __len__(self):
        return len(self.steps)


def derive_massacre(P: SimplicialComplex, Q: SimplicialComplex, killing) -> MassacreSequence:
    """Massacre induced by a facet-killing sequence of (P, Q)."""
    if not P.is_pure() or P.is_empty():
        raise InvalidKillingSequence("P must be a non-empty pure complex")
    d = P.dim
    Q = Q if Q is not None else EMPTY
    if not Q.is_empty() and (Q.dim != d or not Q.is_pure() or not Q.is_subcomplex_of(P)):
        raise InvalidKillingSequence("Q must be empty or a pure d-subcomplex of P")
    qfaces = Q.all_faces()
    steps = list(killing)
    if len(steps) != len(P.faces(d)) - (len(Q.faces(d)) if not Q.is_empty() else 0):
        raise InvalidKillingSequence("killing sequence does not remove every facet outside Q")
    fs = FaceSet.of(P)
    state = P
    states, entries = [P], []
    for step in steps:
        if step.dim != d:
            raise InvalidKillingSequence(f"{step} is not a facet-level pair")
        if step.free_face in qfaces:
            raise InvalidKillingSequence(f"{step} touches Q")
        try:
            fs.collapse(step.free_face, step.cofacet)
        except IllegalCollapse as exc:
            raise InvalidKillingSequence(str(exc)) from None
        top = [f for f in fs.faces if len(f) == d + 1]
        new = SimplicialComplex(top)
        before = state.all_faces() if not state.is_empty() else frozenset()
        after = new.all_faces() if not new.is_empty() else frozenset()
        swept = before - after - {step.cofacet}
        fs = FaceSet(after)
        entries.append(MassacreStep(step.cofacet, step.free_face, frozenset(swept)))
        states.append(new)
        state = new
    return MassacreSequence(tuple(states), tuple(entries))


def spanning_tree_from_collapse(S: SimplicialComplex, delta, seq) -> nx.DiGraph:
    """Directed dual spanning tree, rooted at ``delta``, along which a collapse acts."""
    delta = frozenset(delta)
    d = S.dim
    steps = seq.facet_phase(d) if isinstance(seq, CollapseSequence) else [s for s in seq if s.dim == d]
    if len(steps) != len(S.facets) - 1:
        raise InvalidKillingSequence("facet-level phase does not remove every facet of S - delta")
    holders = {}
    for f in S.facets:
        for r in combinations(sorted(f), d):
            holders.setdefault(frozenset(r), []).append(f)
    T = nx.DiGraph()
    T.add_nodes_from(sorted(S.facets, key=face_key))
    for step in steps:
        others = [f for f in holders.get(step.free_face, ()) if f != step.cofacet]
        if len(others) != 1:
            raise InvalidKillingSequence(f"{step} does not cross an interior ridge")
        T.add_edge(others[0], step.cofacet, ridge=step.free_face)
    spanning = T.number_of_nodes() == len(S.facets) and T.number_of_edges() == len(S.facets) - 1
    connected = nx.is_weakly_connected(T)
    acyclic = nx.is_directed_acyclic_graph(T) and all(T.in_degree(v) == (0 if v == delta else 1) for v in T)
    if not (spanning and connected and acyclic):
        raise InvalidKillingSequence("collapse does not act along a spanning tree rooted at delta")
    return T


def tree_order(tree, root):
    """Breadth-first (parent, child, ridge) triples of a dual tree; a natural labeling."""
    root = frozenset(root)
    G = tree.to_undirected() if tree.is_directed() else tree
    if root not in G:
        raise InvalidTree("root is not a node of the tree")
    if not nx.is_tree(G):
        raise InvalidTree("dual subgraph is not a tree")
    seen = {root}
    out = []
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(G[u], key=face_key):
            if w not in seen:
                seen.add(w)
                out.append((u, w, u & w))
                queue.append(w)
    return out


def collapse_along_tree(S: SimplicialComplex, delta, tree) -> CollapseSequence:
    """The collapse of S - delta onto K^T that follows a natural labeling of T."""
    steps = tuple(CollapseStep(r, child) for _, child, r in tree_order(tree, delta))
    return CollapseSequence(steps)
