"""Exact lpt(G): minimum hitting set over longest-path vertex sets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import DisconnectedError, InfeasibleError
from .graphs import Graph, bits, is_connected
from .longest_paths import DEFAULT_BUDGET, LongestPathSet, enumerate_longest_paths


@dataclass(frozen=True)
class SetFamily:
    universe: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        for s in self.sets:
            if not s:
                raise InfeasibleError("family contains an empty set")
            for v in s:
                if not 0 <= v < self.universe:
                    raise InfeasibleError(f"element {v} outside universe of size {self.universe}")


@dataclass(frozen=True)
class TransversalResult:
    size: int
    witness: frozenset[int]
    certificate: tuple[tuple[tuple[int, ...], int], ...]
    length: int


def _min_hitting_masks(set_masks: Iterable[int]) -> int:
    """Minimum-cardinality hitting set as a mask; lexicographically smallest
    vertex tuple among the minimums (search by increasing k, candidates in
    ascending id order restricted to the union)."""
    set_masks = list(set_masks)
    if not set_masks:
        return 0
    union = 0
    for m in set_masks:
        if m == 0:
            raise InfeasibleError("family contains an empty set")
        union |= m
    candidates = list(bits(union))
    for k in range(1, len(candidates) + 1):
        for combo in combinations(candidates, k):
            s = 0
            for v in combo:
                s |= 1 << v
            if all(m & s for m in set_masks):
                return s
    raise AssertionError("unreachable: the whole union always hits")


def min_hitting_set(family: SetFamily) -> frozenset[int]:
    """Minimum hitting set; among minimums the lexicographically smallest."""
    masks = []
    for s in family.sets:
        m = 0
        for v in s:
            m |= 1 << v
        masks.append(m)
    return frozenset(bits(_min_hitting_masks(masks)))


def is_transversal(g: Graph, s: Iterable[int], lps: LongestPathSet | None = None,
                   budget: int = DEFAULT_BUDGET) -> bool:
    """True iff every longest path of g meets s."""
    if lps is None:
        lps = enumerate_longest_paths(g, budget)
    s_mask = 0
    for v in s:
        s_mask |= 1 << v
    return all(m & s_mask for m in lps.vertex_masks)


def lpt(g: Graph, lps: LongestPathSet | None = None,
        budget: int = DEFAULT_BUDGET) -> TransversalResult:
    """Exact lpt(G) with a witness set and a per-path certificate.

    Transversality depends only on vertex sets, so the hitting-set search
    runs over the deduplicated vertex sets of the longest paths.
    """
    if not is_connected(g):
        raise DisconnectedError("lpt is defined here for connected graphs only")
    if lps is None:
        lps = enumerate_longest_paths(g, budget)
    witness_mask = _min_hitting_masks(lps.vertex_masks)
    certificate = []
    for p in lps.paths:
        hit = p.mask & witness_mask
        certificate.append((p.vertices, (hit & -hit).bit_length() - 1))
    return TransversalResult(
        size=witness_mask.bit_count(),
        witness=frozenset(bits(witness_mask)),
        certificate=tuple(certificate),
        length=lps.length,
    )


def gallai_vertex(g: Graph, lps: LongestPathSet | None = None,
                  budget: int = DEFAULT_BUDGET) -> int | None:
    """Smallest vertex on all longest paths, or None if there is none."""
    if not is_connected(g):
        raise DisconnectedError("gallai_vertex is defined for connected graphs only")
    if lps is None:
        lps = enumerate_longest_paths(g, budget)
    common = g.vertex_mask
    for m in lps.vertex_masks:
        common &= m
        if not common:
            return None
    return (common & -common).bit_length() - 1
