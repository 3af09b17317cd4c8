"""Classification of local-construction steps in dimension 3.

Each gluing is typed by how many edge cells the two boundary triangles
already share, whether their opposite vertices already coincide, and how
many of the shared vertices are pinch points.  Effects on the number of
interior vertices and of boundary components are measured on the state
before and after the move and compared with the expected row.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..errors import DimensionError, InternalInvariantViolation
from .state import Attach, LCState

# (change in interior vertices, change in boundary components).  Measured
# vi and vii steps gain one boundary component fewer than listed here.
EFFECTS = {
    "i": (0, 0),
    "ii": (0, 0),
    "iii": (0, 0),
    "iv": (0, 1),
    "v": (1, 0),
    "vi": (0, 3),
    "vii": (1, 2),
    "viii": (2, 0),
    "ix": (3, -1),
}

STEP_TYPES = tuple(EFFECTS)


@dataclass(frozen=True)
class StepClass:
    type: str
    d_interior_vertices: int
    d_boundary_components: int
    expected: tuple

    @property
    def matches(self) -> bool:
        return (self.d_interior_vertices, self.d_boundary_components) == self.expected


def _edge_cells(state, tri):
    return {state.find(frozenset(e)) for e in combinations(sorted(tri), 2)}


def step_type_3d(state: LCState, move) -> str:
    if state.d != 3:
        raise DimensionError("step types are defined for d = 3")
    if isinstance(move, Attach):
        return "i"
    phi = state.identification(move.sigma, move.tau, move.shared)
    if phi is None:
        raise InternalInvariantViolation("gluing without a shared edge")
    shared = _edge_cells(state, move.sigma) & _edge_cells(state, move.tau)
    (a,) = move.sigma - move.shared
    same_apex = state.vroot(a) == state.vroot(phi[a])
    pinch = state.pinch_points()
    if len(shared) == 1:
        return "iii" if same_apex else "ii"
    if len(shared) == 2 and same_apex:
        ends = [state.labels(e) for e in shared]
        (meet,) = ends[0] & ends[1]
        return "iv" if meet in pinch else "v"
    if len(shared) == 3:
        k = sum(1 for v in move.sigma if state.label(v) in pinch)
        return {3: "vi", 2: "vii", 1: "viii", 0: "ix"}[k]
    raise InternalInvariantViolation(f"unclassifiable gluing: {len(shared)} shared edges")


def classify_step_3d(state: LCState, move, strict: bool = False) -> StepClass:
    """Type of ``move`` with its measured effects.

    With ``strict`` a mismatch against the expected effects raises.
    """
    kind = step_type_3d(state, move)
    after = state.copy()
    after.apply_inplace(move)
    di = after.interior_vertex_count() - state.interior_vertex_count()
    dc = after.boundary_components() - state.boundary_components()
    result = StepClass(kind, di, dc, EFFECTS[kind])
    if strict and not result.matches:
        raise InternalInvariantViolation(
            f"type ({kind}) step changed counts by ({di}, {dc}), expected {EFFECTS[kind]}"
        )
    return result
