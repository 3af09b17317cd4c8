"""Low-dimensional sphere and ball recognition, and shelling search."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .complex import (
    SimplicialComplex,
    boundary_complex,
    face_key,
    is_connected,
    link,
    ridge_degrees,
    sorted_faces,
)
from .errors import DimensionError, UnsupportedDimension


def _closed_pseudomanifold(C, d):
    if C.dim != d or not C.is_pure():
        return False
    degs = ridge_degrees(C)
    return all(n == 2 for n in degs.values())


def verify_sphere(C: SimplicialComplex, d: int) -> bool:
    """Combinatorial d-sphere test for d <= 3 (links plus Euler characteristic)."""
    if d >= 4:
        raise UnsupportedDimension(f"sphere recognition is not available for d={d}")
    if d < 1:
        raise DimensionError(f"d={d}")
    if not _closed_pseudomanifold(C, d) or not is_connected(C):
        return False
    if d == 1:
        # ridge degree two on vertices means 2-regular; connected gives a cycle
        return True
    if C.euler_characteristic() != 1 + (-1) ** d:
        return False
    return all(verify_sphere(link(C, [v]), d - 1) for v in C.vertices)


def verify_ball(C: SimplicialComplex, d: int) -> bool:
    """Combinatorial d-ball test for d <= 3.

    Checks the manifold-with-boundary conditions on vertex links, that the
    boundary is a sphere, and that the Euler characteristic is 1.  This
    recognises homology balls; for the LC complexes built here (which are
    simply connected) that is the same thing.
    """
    if d >= 4:
        raise UnsupportedDimension(f"ball recognition is not available for d={d}")
    if d == 0:
        return len(C.facets) == 1 and C.dim == 0
    if C.dim != d or not C.is_pure() or not is_connected(C):
        return False
    degs = ridge_degrees(C)
    if any(n > 2 for n in degs.values()):
        return False
    if C.euler_characteristic() != 1:
        return False
    bd = boundary_complex(C)
    if bd.is_empty():
        return False
    if d == 1:
        return len(bd.facets) == 2
    if not verify_sphere(bd, d - 1):
        return False
    on_boundary = set(bd.vertices)
    for v in C.vertices:
        lk = link(C, [v])
        if v in on_boundary:
            if not verify_ball(lk, d - 1):
                return False
        elif not verify_sphere(lk, d - 1):
            return False
    return True


def interior_vertices(C: SimplicialComplex) -> tuple:
    bd = set(boundary_complex(C).vertices)
    return tuple(v for v in C.vertices if v not in bd)


@dataclass(frozen=True)
class ShellingResult:
    status: str  # "found" | "nonshellable" | "budget"
    order: Optional[tuple] = None

    @property
    def found(self):
        return self.status == "found"


class _Budget:
    def __init__(self, limit):
        self.left = limit

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise _Exhausted


class _Exhausted(Exception):
    pass


def _intersection(facet, placed):
    """Complex of faces of ``facet`` already covered by ``placed`` facets."""
    return SimplicialComplex(facet & g for g in placed if facet & g)


def _shellable(C, budget, memo):
    if C in memo:
        return memo[C]
    d = C.dim
    if len(C.facets) == 1 or d <= 0:
        memo[C] = (tuple(sorted_faces(C.facets)),)
        return memo[C]
    order = _search_order(C, budget, memo)
    memo[C] = None if order is None else (order,)
    return memo[C]


def _search_order(C, budget, memo):
    d = C.dim
    facets = sorted_faces(C.facets)
    dead = set()

    def step(placed, used):
        if len(placed) == len(facets):
            return list(placed)
        if used in dead:
            return None
        budget.tick()
        for f in facets:
            if f in used:
                continue
            inter = _intersection(f, placed)
            if inter.is_empty() or inter.dim != d - 1 or not inter.is_pure():
                continue
            if _shellable(inter, budget, memo) is None:
                continue
            placed.append(f)
            res = step(placed, used | {f})
            if res is not None:
                return res
            placed.pop()
        dead.add(used)
        return None

    for first in facets:
        res = step([first], frozenset([first]))
        if res is not None:
            return tuple(face_key(f) for f in res)
    return None


def find_shelling_order(C: SimplicialComplex, budget: int = 200_000) -> ShellingResult:
    """Exhaustive backtracking for a shelling order of a pure complex.

    Any prefix state depends only on the set of facets placed so far, so dead
    sets are memoised; the search is therefore complete.  ``budget`` bounds
    the number of expanded states.
    """
    if not C.is_pure():
        raise DimensionError("shellability needs a pure complex")
    if C.is_empty():
        return ShellingResult("nonshellable")
    memo = {}
    try:
        res = _shellable(C, _Budget(budget), memo)
    except _Exhausted:
        return ShellingResult("budget")
    if res is None:
        return ShellingResult("nonshellable")
    return ShellingResult("found", tuple(tuple(f) for f in res[0]))


def is_shelling(C: SimplicialComplex, order) -> bool:
    """Independent check that ``order`` is a shelling of C."""
    order = [frozenset(f) for f in order]
    if sorted(map(face_key, order)) != C.sorted_facets():
        return False
    d = C.dim
    for k in range(1, len(order)):
        inter = _intersection(order[k], order[:k])
        if inter.is_empty() or inter.dim != d - 1 or not inter.is_pure():
            return False
        if d - 1 > 0 and find_shelling_order(inter).status != "found":
            return False
    return True
