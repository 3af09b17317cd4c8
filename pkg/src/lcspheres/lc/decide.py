"""Deciding local constructibility, with replay-verified certificates.

Strategy "A" goes through collapses: a sphere S is LC iff S - Delta
collapses onto a complex of dimension d-2, and a ball B is LC iff B - Delta
collapses onto its boundary plus lower-dimensional faces.  Strategy "B"
works directly with moves: for each dual spanning tree it attaches along
the tree and then glues the remaining ridges, greedily first and by
backtracking afterwards.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from ..collapse import CollapseBudget, find_collapse_onto_dim
from ..complex import (
    EMPTY,
    SimplicialComplex,
    boundary_complex,
    dual_graph,
    face_key,
    remove_facet,
    require_pseudomanifold,
    sorted_faces,
)
from ..errors import InternalInvariantViolation, InvalidInput, NotSimplicial
from ..sphere import verify_ball, verify_sphere
from .certificates import (
    CertificateBuilder,
    LCCertificate,
    bfs_order,
    certificate_from_collapse,
    uniform_spanning_tree,
    verify_lc_certificate,
)

MODES = ("sphere", "ball", "pm")


@dataclass(frozen=True)
class LCBudget:
    collapse: CollapseBudget = field(default_factory=CollapseBudget)
    max_trees: int = 5000  # spanning trees tried by strategy B
    max_nodes: int = 100_000  # backtracking nodes per tree in strategy B
    random_trees: int = 8
    seed: int = 0


@dataclass(frozen=True)
class LCResult:
    status: str  # "found" | "no" | "unknown"
    certificate: Optional[LCCertificate] = None
    strategy: str = ""
    detail: str = ""

    @property
    def found(self):
        return self.status == "found"


def _check_input(C, mode):
    if mode not in MODES:
        raise InvalidInput(f"mode must be one of {MODES}")
    require_pseudomanifold(C)
    d = C.dim
    if d < 2:
        raise InvalidInput("local constructions are handled from dimension 2 on")
    if d <= 3:
        if mode == "sphere" and not verify_sphere(C, d):
            raise InvalidInput("input is not a sphere")
        if mode == "ball" and not verify_ball(C, d):
            raise InvalidInput("input is not a ball")


def is_lc(C: SimplicialComplex, mode: str = "sphere", strategy: Optional[str] = None, budget: LCBudget = LCBudget()) -> LCResult:
    """Decide whether C is locally constructible.

    Spheres above dimension 3 are accepted on trust (no recognition is
    available).  The default strategy is "A" for spheres and balls and "B"
    for general pseudomanifolds.
    """
    _check_input(C, mode)
    if strategy is None:
        strategy = "B" if mode == "pm" else "A"
    if strategy == "A":
        if mode == "pm":
            raise InvalidInput("strategy A needs a sphere or a ball")
        res = _strategy_a(C, mode, budget)
    elif strategy == "B":
        res = _strategy_b(C, budget)
    else:
        raise InvalidInput(f"unknown strategy {strategy!r}")
    if res.certificate is not None and not verify_lc_certificate(C, res.certificate):
        raise InternalInvariantViolation("produced certificate does not replay")
    return res


def _strategy_a(C, mode, budget):
    d = C.dim
    protected = boundary_complex(C) if mode == "ball" else EMPTY
    statuses = []
    for delta in sorted_faces(C.facets):
        res = find_collapse_onto_dim(remove_facet(C, delta), d - 2, protected, budget.collapse)
        if res.found:
            cert = certificate_from_collapse(C, delta, res.sequence)
            return LCResult("found", cert, "A", f"collapse of C - {face_key(delta)}")
        statuses.append(res.status)
    if all(s == "impossible" for s in statuses):
        return LCResult("no", None, "A", "no facet admits the collapse (exhaustive)")
    return LCResult("unknown", None, "A", "collapse search budget exhausted")


def _glue_along(C, T, root, budget):
    """Certificate along the dual tree T, or None; raises _Budget when cut off."""
    builder = CertificateBuilder(C, bfs_order(T, root))
    total = len(builder.pending())
    # cheap greedy pass first, the search below only runs if it gets stuck
    state0 = builder.state.copy()
    progress = True
    while progress:
        progress = False
        for rho in builder.pending():
            if builder.move_for(rho) is not None:
                builder.glue(rho)
                progress = True
                break
    if not builder.pending():
        try:
            return builder.certificate()
        except (NotSimplicial, InternalInvariantViolation):
            pass
    builder.state = state0
    dead = set()
    nodes = [0]

    def dfs(done):
        if len(done) == total:
            try:
                return builder.certificate()
            except (NotSimplicial, InternalInvariantViolation):
                return None
        if done in dead:
            return None
        nodes[0] += 1
        if nodes[0] > budget.max_nodes:
            raise _Budget
        saved = builder.state
        for rho in builder.pending():
            builder.state = saved.copy()
            if builder.move_for(rho) is None:
                continue
            builder.glue(rho)
            res = dfs(done | {rho})
            if res is not None:
                return res
        builder.state = saved
        dead.add(done)
        return None

    return dfs(frozenset())


class _Budget(Exception):
    pass


def _candidate_trees(G, budget):
    rng = random.Random(budget.seed)
    root = min(G.nodes, key=face_key)
    for T in (nx.bfs_tree(G, root).to_undirected(), nx.dfs_tree(G, root).to_undirected()):
        yield T
    for _ in range(budget.random_trees):
        yield uniform_spanning_tree(G, rng.randrange(2**32))
    yield None  # marker: heuristic trees done, exhaustive enumeration follows
    for T in nx.SpanningTreeIterator(G):
        yield T


def _strategy_b(C, budget):
    G = dual_graph(C)
    if not nx.is_connected(G):
        return LCResult("no", None, "B", "dual graph is disconnected")
    root = min(C.facets, key=face_key)
    exhaustive, complete, tried = False, True, 0
    seen = set()
    for T in _candidate_trees(G, budget):
        if T is None:
            exhaustive = True
            continue
        edges = frozenset(frozenset(e) for e in T.edges)
        if edges in seen:
            continue
        seen.add(edges)
        tried += 1
        if tried > budget.max_trees:
            complete = False
            break
        try:
            cert = _glue_along(C, T, root, budget)
        except _Budget:
            complete = False
            continue
        if cert is not None:
            return LCResult("found", cert, "B", f"along a spanning tree ({tried} tried)")
    if exhaustive and complete:
        return LCResult("no", None, "B", f"all {tried} spanning trees fail")
    return LCResult("unknown", None, "B", f"gave up after {tried} spanning trees")
