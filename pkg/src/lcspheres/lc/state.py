"""Intermediate pseudomanifolds of a local construction.

A state is a tree of d-simplices on "tree vertex ids" together with a
partition of all of its faces into cells.  Attaching grows the tree;
gluing identifies two unglued boundary ridges of the tree along a map that
fixes a shared (d-2)-cell.  Vertex cells are labelled by their least tree
id, and those labels are what certificates and quotients show.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

from ..complex import SimplicialComplex, face_key
from ..errors import IllegalMove, InvalidInput, NotSimplicial


@dataclass(frozen=True)
class Attach:
    facet: frozenset  # unglued boundary ridge of the tree, in tree ids

    def __post_init__(self):
        object.__setattr__(self, "facet", frozenset(self.facet))


@dataclass(frozen=True)
class Glue:
    sigma: frozenset
    tau: frozenset
    shared: frozenset  # (d-2)-face of sigma whose cell also lies in tau

    def __post_init__(self):
        for name in ("sigma", "tau", "shared"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))


LCMove = Union[Attach, Glue]


def _subfaces(f):
    s = sorted(f)
    return [frozenset(c) for k in range(1, len(s) + 1) for c in combinations(s, k)]


class LCState:
    """Value-semantics state; :func:`lc_apply` returns a modified copy."""

    __slots__ = (
        "d", "simplices", "owner", "boundary", "adjacent", "parent",
        "vmin", "vsimp", "moves", "glued",
    )

    def __init__(self, d: int):
        if d < 1:
            raise InvalidInput(f"d={d}")
        self.d = d
        self.simplices = []
        self.owner = {}  # tree ridge -> simplex indices containing it
        self.boundary = set()  # unglued tree ridges lying in one simplex
        self.adjacent = set()  # frozenset({i, j}) of simplices sharing a ridge cell
        self.parent = {}  # union-find over tree faces
        self.vmin = {}  # root of a vertex cell -> least tree id in it
        self.vsimp = {}  # root of a vertex cell -> simplices meeting it
        self.moves = []
        self.glued = 0
        self._add_simplex(tuple(range(1, d + 2)))

    # --- copying and union-find -----------------------------------------
    def copy(self) -> "LCState":
        new = LCState.__new__(LCState)
        new.d = self.d
        new.simplices = list(self.simplices)
        new.owner = {k: list(v) for k, v in self.owner.items()}
        new.boundary = set(self.boundary)
        new.adjacent = set(self.adjacent)
        new.parent = dict(self.parent)
        new.vmin = dict(self.vmin)
        new.vsimp = {k: set(v) for k, v in self.vsimp.items()}
        new.moves = list(self.moves)
        new.glued = self.glued
        return new

    def find(self, face):
        parent = self.parent
        root = face
        while parent[root] != root:
            root = parent[root]
        while parent[face] != root:
            parent[face], face = root, parent[face]
        return root

    def _union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if face_key(rb) < face_key(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        if len(a) == 1:
            self.vmin[ra] = min(self.vmin[ra], self.vmin.pop(rb))
            self.vsimp[ra] |= self.vsimp.pop(rb)

    def vroot(self, v: int):
        return self.find(frozenset([v]))

    def label(self, v: int) -> int:
        return self.vmin[self.vroot(v)]

    def labels(self, face) -> frozenset:
        return frozenset(self.label(v) for v in face)

    # --- structure ---------------------------------------------------------
    @property
    def N(self) -> int:
        return len(self.simplices)

    @property
    def phase(self) -> int:
        return 1 if self.glued == 0 else 2

    def next_vertex(self) -> int:
        return self.d + 1 + len(self.simplices)

    def is_closed(self) -> bool:
        return not self.boundary

    def _add_simplex(self, verts):
        idx = len(self.simplices)
        self.simplices.append(tuple(sorted(verts)))
        for f in _subfaces(verts):
            if f not in self.parent:
                self.parent[f] = f
                if len(f) == 1:
                    (v,) = f
                    self.vmin[f] = v
                    self.vsimp[f] = set()
        for v in verts:
            self.vsimp[self.vroot(v)].add(idx)
        for r in combinations(sorted(verts), self.d):
            r = frozenset(r)
            holders = self.owner.setdefault(r, [])
            holders.append(idx)
            if len(holders) == 1:
                self.boundary.add(r)
            else:
                self.boundary.discard(r)
                self.adjacent.add(frozenset(holders))
        return idx

    def simplex_of(self, ridge) -> int:
        return self.owner[ridge][0]

    def ridge_faces(self, ridge):
        """The (d-2)-faces of a tree ridge."""
        return [frozenset(c) for c in combinations(sorted(ridge), self.d - 1)]

    def identification(self, sigma, tau, shared):
        """The vertex map sigma -> tau fixing the cell of ``shared``, or None."""
        if len(shared) != self.d - 1 or not shared <= sigma:
            return None
        root = self.find(shared)
        match = [g for g in self.ridge_faces(tau) if self.find(g) == root]
        if not match:
            return None
        g = match[0]
        by_class = {self.vroot(v): v for v in g}
        phi = {u: by_class[self.vroot(u)] for u in shared}
        (a,) = sigma - shared
        (b,) = tau - g
        phi[a] = b
        return phi

    # --- legality ----------------------------------------------------------
    def attach_problem(self, move: Attach) -> Optional[str]:
        if self.glued:
            return "phase"
        if move.facet not in self.boundary:
            return "not-boundary"
        return None

    def glue_problem(self, move: Glue) -> Optional[str]:
        sigma, tau = move.sigma, move.tau
        if sigma not in self.boundary or tau not in self.boundary:
            return "not-boundary"
        if sigma == tau:
            return "same-cell"
        phi = self.identification(sigma, tau, move.shared)
        if phi is None:
            return "no-shared-face"
        s, t = self.simplex_of(sigma), self.simplex_of(tau)
        if s == t:
            return "same-simplex"
        if frozenset((s, t)) in self.adjacent:
            return "adjacent-simplices"
        (a,) = sigma - move.shared
        ra, rb = self.vroot(a), self.vroot(phi[a])
        if ra != rb and self.vsimp[ra] & self.vsimp[rb]:
            return "degenerate"
        return None

    def problem(self, move) -> Optional[str]:
        if isinstance(move, Attach):
            return self.attach_problem(move)
        return self.glue_problem(move)

    # --- in-place moves (used by searches on private copies) ---------------
    def attach_inplace(self, move: Attach):
        reason = self.attach_problem(move)
        if reason:
            raise IllegalMove(reason, f"cannot attach along {face_key(move.facet)}")
        self._add_simplex(tuple(move.facet) + (self.next_vertex(),))
        self.moves.append(move)

    def glue_inplace(self, move: Glue):
        reason = self.glue_problem(move)
        if reason:
            raise IllegalMove(
                reason, f"cannot glue {face_key(move.sigma)} to {face_key(move.tau)}"
            )
        phi = self.identification(move.sigma, move.tau, move.shared)
        for f in _subfaces(move.sigma):
            self._union(f, frozenset(phi[u] for u in f))
        self.boundary.discard(move.sigma)
        self.boundary.discard(move.tau)
        self.adjacent.add(frozenset((self.simplex_of(move.sigma), self.simplex_of(move.tau))))
        self.moves.append(move)
        self.glued += 1

    def apply_inplace(self, move):
        if isinstance(move, Attach):
            self.attach_inplace(move)
        else:
            self.glue_inplace(move)

    # --- queries -----------------------------------------------------------
    def move_key(self, move: Glue):
        """Moves with equal keys produce identical states."""
        phi = self.identification(move.sigma, move.tau, move.shared)
        return (move.sigma, move.tau, tuple(sorted(phi.items())))

    def admissible_gluings(self):
        if self.N == 0:
            return []
        by_cell = {}
        for r in sorted(self.boundary, key=face_key):
            for f in self.ridge_faces(r):
                by_cell.setdefault(self.find(f), []).append((r, f))
        seen = {}
        for entries in by_cell.values():
            for (r1, f1), (r2, _) in combinations(entries, 2):
                sigma, tau, shared = r1, r2, f1
                if face_key(tau) < face_key(sigma):
                    sigma, tau = tau, sigma
                    shared = next(f for f in self.ridge_faces(sigma) if self.find(f) == self.find(f1))
                move = Glue(sigma, tau, shared)
                if self.glue_problem(move):
                    continue
                key = self.move_key(move)
                old = seen.get(key)
                if old is None or face_key(shared) < face_key(old.shared):
                    seen[key] = move
        return sorted(seen.values(), key=lambda m: (face_key(m.sigma), face_key(m.tau), face_key(m.shared)))

    def cells(self):
        """Map from cell root to the tree faces in it."""
        out = {}
        for f in self.parent:
            out.setdefault(self.find(f), []).append(f)
        return out

    def vertex_classes(self):
        return {self.vmin[r]: frozenset(next(iter(f)) for f in fs) for r, fs in self.cells().items() if len(r) == 1}

    def boundary_cells(self):
        """Label sets of the unglued ridges (each remains its own cell)."""
        return [self.labels(r) for r in sorted(self.boundary, key=face_key)]

    def interior_vertex_count(self) -> int:
        on_boundary = {self.vroot(v) for r in self.boundary for v in r}
        return len(self.vmin) - len(on_boundary)

    def boundary_components(self) -> int:
        return _components([[self.vroot(v) for v in r] for r in self.boundary])

    def pinch_points(self):
        """Labels of boundary vertices whose link in the boundary is disconnected.

        The link of a vertex is read off the unglued ridges through it: its
        points are the edge cells at the vertex, and each ridge connects
        the edge cells it contains.
        """
        links = {}
        for r in self.boundary:
            for v in r:
                edges = [self.find(frozenset((v, u))) for u in r if u != v]
                links.setdefault(self.vroot(v), []).append(edges)
        return {self.vmin[rv] for rv, groups in links.items() if _components(groups) > 1}


def _components(groups) -> int:
    """Connected components of the hypergraph whose edges are ``groups``."""
    comp = {}

    def root(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for g in groups:
        for x in g:
            comp.setdefault(x, x)
        for x in g[1:]:
            a, b = root(g[0]), root(x)
            if a != b:
                comp[b] = a
    return len({root(x) for x in comp})


def initial_state(d: int) -> LCState:
    """A single d-simplex on tree ids 1..d+1."""
    return LCState(d)


def lc_apply(state: LCState, move) -> LCState:
    new = state.copy()
    new.apply_inplace(move)
    return new


def admissible_gluings(state: LCState):
    return state.admissible_gluings()


def quotient_complex(state: LCState) -> SimplicialComplex:
    """The quotient as a simplicial complex; NotSimplicial when it is not one."""
    seen = {}
    for root, faces in state.cells().items():
        labels = state.labels(root)
        if len(labels) != len(root):
            raise NotSimplicial(f"cell {face_key(root)} has repeated vertices")
        other = seen.setdefault(labels, root)
        if other != root:
            raise NotSimplicial(f"two cells span the vertices {face_key(labels)}")
    return SimplicialComplex(state.labels(s) for s in state.simplices)
