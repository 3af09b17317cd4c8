"""Random LC pseudomanifolds, the exponential upper bound, and small censuses."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .canonical import canonical_key, key_digest
from .complex import boundary_complex
from .errors import DimensionError, InternalInvariantViolation, InvalidInput, NotSimplicial
from .lc.certificates import LCCertificate, verify_lc_certificate
from .lc.classify import STEP_TYPES, step_type_3d
from .lc.state import Attach, LCState, quotient_complex
from .sphere import verify_sphere
from .trees import (
    enumerate_dary_trees,
    random_dary_tree,
    sample_tree,
    tree_of_simplices_from_dary,
)

__all__ = [
    "SampleReport",
    "lc_census",
    "lc_upper_bound",
    "sample_lc_closed",
    "sample_tree",
    "upper_bound_base",
]


@dataclass(frozen=True)
class SampleReport:
    seed: int
    d: int
    N: int
    outcome: str  # "closed-complex" | "stalled" | "invalid"
    certificate: Optional[LCCertificate] = None
    key: Optional[tuple] = None
    histogram: dict = field(default_factory=dict)
    attempts: int = 0
    stalls: int = 0
    invalid: int = 0

    @property
    def closed(self) -> bool:
        return self.outcome == "closed-complex"

    def summary(self) -> str:
        key = key_digest(self.key)[:16] if self.key else "-"
        hist = " ".join(f"{t}:{self.histogram[t]}" for t in STEP_TYPES if t in self.histogram)
        return (
            f"seed={self.seed} d={self.d} N={self.N} outcome={self.outcome} "
            f"attempts={self.attempts} stalls={self.stalls} invalid={self.invalid} key={key}"
            + (f" steps={hist}" if hist else "")
        )


def tree_state(tree) -> LCState:
    """LC state after attaching every simplex of a tree of simplices."""
    state = LCState(tree.d)
    for i in range(1, tree.N):
        ridge = frozenset(tree.simplices[i]) & frozenset(tree.simplices[tree.parents[i]])
        state.attach_inplace(Attach(ridge))
    return state


def _fold(state, rng, histogram):
    while True:
        moves = state.admissible_gluings()
        if not moves:
            return
        move = rng.choice(moves)
        if histogram is not None:
            histogram[step_type_3d(state, move)] += 1
        state.glue_inplace(move)


def sample_lc_closed(d: int, N: int, seed: int = 0, max_restarts: int = 100) -> SampleReport:
    """Uniform random tree, then uniformly random admissible gluings.

    A stalled or non-simplicial attempt is restarted with a fresh tree, at
    most ``max_restarts`` times.  Closed outputs are checked to be closed
    simplicial pseudomanifolds and, for d = 3, spheres.
    """
    if d not in (2, 3):
        raise DimensionError("sampling is available for d = 2 and d = 3")
    if N < 1:
        raise InvalidInput("N must be at least 1")
    rng = random.Random(seed)
    stalls = invalid = 0
    outcome = "stalled"
    for attempt in range(1, max_restarts + 2):
        tree = tree_of_simplices_from_dary(random_dary_tree(d, N, rng), d)
        state = tree_state(tree)
        histogram = Counter({"i": N - 1}) if d == 3 else None
        _fold(state, rng, histogram)
        if not state.is_closed():
            stalls += 1
            outcome = "stalled"
            continue
        try:
            final = quotient_complex(state)
        except NotSimplicial:
            invalid += 1
            outcome = "invalid"
            continue
        if not boundary_complex(final).is_empty() or not verify_sphere(final, d):
            raise InternalInvariantViolation("closed LC pseudomanifold is not a sphere")
        key = canonical_key(final)
        cert = LCCertificate(d, tuple(state.moves), key_digest(key))
        if not verify_lc_certificate(final, cert):
            raise InternalInvariantViolation("sample certificate does not replay")
        return SampleReport(seed, d, N, "closed-complex", cert, key, dict(histogram or {}), attempt, stalls, invalid)
    return SampleReport(seed, d, N, outcome, None, None, {}, max_restarts + 1, stalls, invalid)


def upper_bound_base(d: int) -> int:
    """Least integer not below d·(d/(d-1))^(d-1)·2^((2d²-d)/3).

    The cube of the base is rational, so the ceiling is exact.
    """
    if d < 2:
        raise DimensionError(f"d={d} < 2")
    cube = Fraction(d) ** 3 * Fraction(d, d - 1) ** (3 * (d - 1)) * 2 ** (2 * d * d - d)
    lo, hi = 0, 1
    while hi ** 3 < cube:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** 3 >= cube:
            hi = mid
        else:
            lo = mid + 1
    return lo


def lc_upper_bound(d: int, N: int) -> int:
    if N < 1:
        raise InvalidInput("N must be at least 1")
    return upper_bound_base(d) ** N


@dataclass(frozen=True)
class Census:
    d: int
    N: int
    counts: dict  # canonical key -> number of (tree, gluing set) outcomes
    trees: int

    @property
    def distinct(self) -> int:
        return len(self.counts)


def _closed_outcomes(state, found, seen):
    moves = state.admissible_gluings()
    if not moves:
        if state.is_closed():
            try:
                final = quotient_complex(state)
            except NotSimplicial:
                return
            found[canonical_key(final)] += 1
        return
    for move in moves:
        key = state.move_key(move)
        done = seen[0] | {key}
        if done in seen[1]:
            continue
        seen[1].add(done)
        nxt = state.copy()
        nxt.glue_inplace(move)
        prev = seen[0]
        seen[0] = done
        _closed_outcomes(nxt, found, seen)
        seen[0] = prev


def lc_census(d: int, N: int) -> Census:
    """All closed simplicial complexes reachable from trees of N d-simplices.

    Isomorphic starting trees are visited once.  Gluing sets are memoised
    because a set of identifications gives the same state in any order.
    """
    if d < 2 or N < 1:
        raise InvalidInput("need d >= 2 and N >= 1")
    found = Counter()
    starts = {}
    for t in enumerate_dary_trees(d, N):
        tree = tree_of_simplices_from_dary(t, d)
        starts.setdefault(canonical_key(tree.complex), tree)
    for tree in starts.values():
        _closed_outcomes(tree_state(tree), found, [frozenset(), set()])
    census = Census(d, N, dict(found), len(starts))
    if census.distinct > lc_upper_bound(d, N):
        raise InternalInvariantViolation("census exceeds the upper bound")
    return census
