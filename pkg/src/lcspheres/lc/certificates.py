"""LC certificates: move lists, replay, text codec and construction from collapses."""
from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import networkx as nx

from ..canonical import canonical_key, isomorphism, key_digest
from ..collapse import CollapseSequence, spanning_tree_from_collapse
from ..complex import (
    SimplicialComplex,
    dual_graph,
    face_key,
    require_pseudomanifold,
    ridge_degrees,
)
from ..errors import (
    IllegalMove,
    InternalInvariantViolation,
    InvalidInput,
    InvalidKillingSequence,
    InvalidTree,
    NotSimplicial,
    ParseError,
)
from .state import Attach, Glue, LCState, quotient_complex


@dataclass(frozen=True)
class LCCertificate:
    """Attach moves, then Glue moves, in tree vertex ids, plus the final key digest."""

    d: int
    moves: tuple
    digest: str

    @property
    def N(self) -> int:
        return 1 + sum(1 for m in self.moves if isinstance(m, Attach))

    @property
    def attaches(self):
        return [m for m in self.moves if isinstance(m, Attach)]

    @property
    def glues(self):
        return [m for m in self.moves if isinstance(m, Glue)]


@dataclass(frozen=True)
class Verdict:
    ok: bool
    step: Optional[int] = None  # index into moves of the failing move
    reason: str = ""

    def __bool__(self):
        return self.ok


def replay(cert: LCCertificate) -> LCState:
    """Replay every move; IllegalMove carries the failing index in its message."""
    state = LCState(cert.d)
    for i, move in enumerate(cert.moves):
        try:
            state.apply_inplace(move)
        except IllegalMove as exc:
            raise IllegalMove(exc.reason, f"move {i}: {exc}") from None
    return state


def check_lc_certificate(target: SimplicialComplex, cert: LCCertificate) -> Verdict:
    state = LCState(cert.d)
    for i, move in enumerate(cert.moves):
        reason = state.problem(move) if _well_formed(state, move) else "malformed"
        if reason:
            return Verdict(False, i, reason)
        state.apply_inplace(move)
    try:
        final = quotient_complex(state)
    except NotSimplicial as exc:
        return Verdict(False, len(cert.moves), f"not simplicial: {exc}")
    key = canonical_key(final)
    if key != canonical_key(target):
        return Verdict(False, len(cert.moves), "final complex is not isomorphic to the target")
    if key_digest(key) != cert.digest:
        return Verdict(False, len(cert.moves), "key digest mismatch")
    return Verdict(True)


def _well_formed(state, move):
    if isinstance(move, Attach):
        return len(move.facet) == state.d
    if isinstance(move, Glue):
        return len(move.sigma) == len(move.tau) == state.d and len(move.shared) == state.d - 1
    return False


def verify_lc_certificate(target: SimplicialComplex, cert: LCCertificate) -> bool:
    return check_lc_certificate(target, cert).ok


# --- text codec --------------------------------------------------------------

def _fmt(labels):
    return " ".join(map(str, sorted(labels)))


def resolve_glue(state: LCState, sigma_labels, tau_labels, shared_labels) -> Optional[Glue]:
    """The least legal gluing whose cells carry the given vertex labels."""
    sigma_labels, tau_labels, shared_labels = map(frozenset, (sigma_labels, tau_labels, shared_labels))
    ridges = sorted(state.boundary, key=face_key)
    sigmas = [r for r in ridges if state.labels(r) == sigma_labels]
    taus = [r for r in ridges if state.labels(r) == tau_labels]
    for s in sigmas:
        for t in taus:
            if s == t:
                continue
            for f in state.ridge_faces(s):
                if state.labels(f) != shared_labels:
                    continue
                move = Glue(s, t, f)
                if not state.glue_problem(move):
                    return move
    return None


def certificate_to_text(cert: LCCertificate) -> str:
    state = LCState(cert.d)
    lines = [f"LC d={cert.d} N={cert.N}"]
    for i, move in enumerate(cert.moves):
        if isinstance(move, Attach):
            lines.append("A " + _fmt(state.labels(move.facet)))
        else:
            parts = [state.labels(move.sigma), state.labels(move.tau), state.labels(move.shared)]
            back = resolve_glue(state, *parts)
            if back is None or state.move_key(back) != state.move_key(move):
                raise InternalInvariantViolation(f"move {i} cannot be written unambiguously")
            lines.append("G " + " | ".join(_fmt(p) for p in parts))
        state.apply_inplace(move)
    lines.append(f"KEY {cert.digest}")
    return "\n".join(lines) + "\n"


def _ints(text, lineno):
    try:
        vals = [int(x) for x in text.split()]
    except ValueError:
        raise ParseError(lineno, f"non-integer vertex in {text!r}") from None
    if not vals or any(v <= 0 for v in vals):
        raise ParseError(lineno, f"bad vertex list {text!r}")
    return frozenset(vals)


def certificate_from_text(text: str) -> LCCertificate:
    lines = [(i, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ParseError(1, "empty certificate")
    lineno, head = lines[0]
    parts = head.split()
    try:
        if parts[0] != "LC":
            raise ValueError
        d = int(parts[1].removeprefix("d="))
        n = int(parts[2].removeprefix("N="))
    except (ValueError, IndexError):
        raise ParseError(lineno, "header must read 'LC d=<d> N=<N>'") from None
    state = LCState(d)
    moves, digest = [], None
    for lineno, ln in lines[1:]:
        if digest is not None:
            raise ParseError(lineno, "content after KEY line")
        tag, _, rest = ln.partition(" ")
        if tag == "A":
            labels = _ints(rest, lineno)
            match = [r for r in sorted(state.boundary, key=face_key) if state.labels(r) == labels]
            if not match:
                raise ParseError(lineno, f"no boundary facet {_fmt(labels)}")
            move = Attach(match[0])
        elif tag == "G":
            cells = rest.split("|")
            if len(cells) != 3:
                raise ParseError(lineno, "gluing needs 'σ | τ | F'")
            move = resolve_glue(state, *(_ints(c, lineno) for c in cells))
            if move is None:
                raise ParseError(lineno, "no legal gluing matches this line")
        elif tag == "KEY":
            digest = rest.strip()
            continue
        else:
            raise ParseError(lineno, f"unknown record {tag!r}")
        try:
            state.apply_inplace(move)
        except IllegalMove as exc:
            raise ParseError(lineno, str(exc)) from None
        moves.append(move)
    if digest is None:
        raise ParseError(lines[-1][0], "missing KEY line")
    cert = LCCertificate(d, tuple(moves), digest)
    if cert.N != n:
        raise ParseError(lines[0][0], f"header says N={n} but {cert.N} simplices are attached")
    return cert


# --- K^T and certificate construction ------------------------------------------

def _ridges(f):
    return [frozenset(r) for r in combinations(sorted(f), len(f) - 1)]


def check_spanning_tree(C: SimplicialComplex, T) -> nx.Graph:
    G = T.to_undirected() if T.is_directed() else T
    facets = set(C.facets)
    if set(G.nodes) != facets or not nx.is_tree(G):
        raise InvalidTree("T is not a spanning tree of the dual graph")
    for a, b in G.edges:
        if len(a & b) != C.dim:
            raise InvalidTree(f"{face_key(a)} and {face_key(b)} are not adjacent")
    return G


def kT(C: SimplicialComplex, T) -> SimplicialComplex:
    """Complex of the ridges of C not crossed by the dual tree T."""
    require_pseudomanifold(C)
    G = check_spanning_tree(C, T)
    crossed = {a & b for a, b in G.edges}
    ridges = set(ridge_degrees(C)) - crossed
    K = SimplicialComplex(ridges)
    d, n = C.dim, len(C.facets)
    b = sum(1 for x in ridge_degrees(C).values() if x == 1)
    if len(K.facets) != (d * n - n + 2 + b) // 2 or len(ridges) != len(K.facets):
        raise InternalInvariantViolation("K^T facet count differs from the formula")
    return K


def uniform_spanning_tree(G: nx.Graph, seed: int) -> nx.Graph:
    with warnings.catch_warnings():
        # networkx 3.4 calls one of its own deprecated helpers here
        warnings.simplefilter("ignore", DeprecationWarning)
        return nx.random_spanning_tree(G, seed=seed)


def random_spanning_tree(C: SimplicialComplex, seed: int = 0) -> nx.Graph:
    """Uniform spanning tree of the dual graph."""
    return uniform_spanning_tree(dual_graph(C), seed)


def bfs_order(T, root):
    """(facet, parent) pairs of the dual tree in breadth-first order."""
    G = T.to_undirected() if T.is_directed() else T
    root = frozenset(root)
    order, seen, queue = [(root, None)], {root}, deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(G[u], key=face_key):
            if w not in seen:
                seen.add(w)
                order.append((w, u))
                queue.append(w)
    return order


class CertificateBuilder:
    """Builds LC moves whose quotient maps onto a fixed target complex.

    ``order`` lists (facet, parent facet) with every parent before its
    child.  Tree vertex ids are mapped to target vertices by ``image``, and
    gluings are requested by target ridge; both ridges of the tree over it
    are identified.
    """

    def __init__(self, target: SimplicialComplex, order):
        self.target = target
        self.d = d = target.dim
        self.state = LCState(d)
        root = order[0][0]
        self.image = {i + 1: v for i, v in enumerate(sorted(root))}
        self.tree_of = {root: tuple(range(1, d + 2))}
        inverse = {root: {v: i + 1 for i, v in enumerate(sorted(root))}}
        for facet, parent in order[1:]:
            back = inverse[parent]
            ridge = frozenset(back[v] for v in facet & parent)
            new = self.state.next_vertex()
            self.state.attach_inplace(Attach(ridge))
            (v,) = facet - parent
            self.image[new] = v
            inverse[facet] = {**{u: back[u] for u in facet & parent}, v: new}
            self.tree_of[facet] = tuple(sorted(inverse[facet].values()))
        self.over = {}
        for r in self.state.boundary:
            self.over.setdefault(self.img(r), []).append(r)
        for rs in self.over.values():
            rs.sort(key=face_key)

    def img(self, face):
        return frozenset(self.image[u] for u in face)

    def pending(self):
        """Target ridges whose two tree ridges are both still unglued."""
        return sorted(
            (rho for rho, rs in self.over.items() if len(rs) == 2 and all(r in self.state.boundary for r in rs)),
            key=face_key,
        )

    def move_for(self, rho, r=None) -> Optional[Glue]:
        """A legal gluing over ``rho`` (fixing the face over ``r`` when given)."""
        rs = self.over.get(frozenset(rho), [])
        if len(rs) != 2:
            return None
        sigma, tau = rs
        faces = self.state.ridge_faces(sigma)
        if r is not None:
            faces = [f for f in faces if self.img(f) == frozenset(r)]
        for f in faces:
            move = Glue(sigma, tau, f)
            if not self.state.glue_problem(move):
                return move
        return None

    def glue(self, rho, r=None):
        move = self.move_for(rho, r)
        if move is None:
            rs = self.over.get(frozenset(rho), [])
            reason = "no-shared-face"
            if len(rs) == 2:
                f = [f for f in self.state.ridge_faces(rs[0]) if r is None or self.img(f) == frozenset(r)]
                if f:
                    reason = self.state.glue_problem(Glue(rs[0], rs[1], f[0])) or reason
            raise IllegalMove(reason, f"cannot glue over {face_key(rho)}")
        self.state.glue_inplace(move)
        return move

    def certificate(self) -> LCCertificate:
        final = quotient_complex(self.state)
        key = canonical_key(final)
        if key != canonical_key(self.target):
            raise InternalInvariantViolation("construction does not reproduce the target")
        return LCCertificate(self.d, tuple(self.state.moves), key_digest(key))


def certificate_from_collapse(S: SimplicialComplex, delta, seq) -> LCCertificate:
    """LC certificate read off a phased collapse of S - delta.

    The facet phase fixes the tree and (as a natural labeling) the attach
    order; the following ridge phase lists the gluings.  For a ball the
    ridge phase must leave the boundary in place.
    """
    delta = frozenset(delta)
    d = S.dim
    steps = list(seq)
    dims = [s.dim for s in steps]
    if any(a < b for a, b in zip(dims, dims[1:])):
        raise InvalidKillingSequence("collapse is not phased by decreasing dimension")
    T = spanning_tree_from_collapse(S, delta, CollapseSequence(tuple(steps)))
    facet_steps = [s for s in steps if s.dim == d]
    order = [(delta, None)]
    for s in facet_steps:
        (parent,) = T.predecessors(s.cofacet)
        order.append((s.cofacet, parent))
    ridge_steps = [s for s in steps if s.dim == d - 1]
    K = kT(S, T)
    bd = {r for r, n in ridge_degrees(S).items() if n == 1}
    need = len(K.facets) - len(bd)
    killed = {s.cofacet for s in ridge_steps}
    if len(ridge_steps) != need or killed & bd:
        raise InvalidKillingSequence("ridge phase does not remove every ridge of K^T off the boundary")
    builder = CertificateBuilder(S, order)
    for s in ridge_steps:
        try:
            builder.glue(s.cofacet, s.free_face)
        except IllegalMove as exc:
            raise InvalidKillingSequence(f"ridge step {s} is not a legal gluing: {exc}") from None
    return builder.certificate()


def certificate_plan(C: SimplicialComplex, cert: LCCertificate):
    """Express a certificate for C in C's own vertices.

    Returns ``(order, glues)``: (facet, parent) pairs in attach order and
    (ridge, shared face) pairs in gluing order.
    """
    state = replay(cert)
    final = quotient_complex(state)
    iso = isomorphism(final, C)
    if iso is None:
        raise InvalidInput("certificate does not construct this complex")

    def img(face):
        return frozenset(iso[state.label(u)] for u in face)

    order = [(img(state.simplices[0]), None)]
    probe = LCState(cert.d)
    glues = []
    for move in cert.moves:
        if isinstance(move, Attach):
            parent = probe.simplices[probe.simplex_of(move.facet)]
            probe.apply_inplace(move)
            order.append((img(probe.simplices[-1]), img(parent)))
        else:
            glues.append((img(move.sigma), img(move.shared)))
            probe.apply_inplace(move)
    return order, glues
