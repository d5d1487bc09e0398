"""How a path interacts with a vertex set: the fenced/crossing vocabulary.

Every lemma checker classifies longest paths against a clique or bag with
these primitives, so the classification is total: paths the fenced/crossing
dichotomy excludes (path containing all of S, path inside S) get their own
tags instead of being partial.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import PreconditionError
from .graphs import Graph, bits, component_id_map
from .longest_paths import PathSeq, path_seq


class Disposition(str, Enum):
    CONTAINS_ALL = "contains-all-of-S"
    INSIDE = "disjoint-from-rest"
    FENCED = "fenced"
    CROSSING = "crossing"
    NOT_CLASSIFIED = "not-classified"


class Extremes(str, Enum):
    JOINED = "joined"
    SEPARATED = "separated"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class CutClassification:
    touch_count: int
    disposition: Disposition
    extremes: Extremes
    component_id: int | None = None


def as_mask(s: Iterable[int]) -> int:
    out = 0
    for v in s:
        out |= 1 << v
    return out


def touch_count(p: PathSeq, s: Iterable[int]) -> int:
    """|V(p) intersect s|."""
    return len(p.vertex_set & frozenset(s))


def classify(g: Graph, p: PathSeq, s: Iterable[int]) -> CutClassification:
    """Total classification of path p against vertex set s.

    Fenced/crossing apply only when p omits part of s and leaves s; the
    extremes tag only when p crosses s with both endpoints outside s.
    """
    p = path_seq(g, p.vertices)
    s_mask = as_mask(s)
    p_mask = p.mask
    touches = (p_mask & s_mask).bit_count()

    if s_mask & ~p_mask == 0:
        return CutClassification(touches, Disposition.CONTAINS_ALL, Extremes.NOT_APPLICABLE)
    if p_mask & ~s_mask == 0:
        return CutClassification(touches, Disposition.INSIDE, Extremes.NOT_APPLICABLE)

    comp = component_id_map(g, s_mask)
    off_ids = {comp[v] for v in bits(p_mask & ~s_mask)}
    if len(off_ids) == 1:
        return CutClassification(
            touches, Disposition.FENCED, Extremes.NOT_APPLICABLE, component_id=off_ids.pop()
        )

    a, b = p.endpoints()
    if (s_mask >> a & 1) or (s_mask >> b & 1):
        extremes = Extremes.NOT_APPLICABLE
    elif comp[a] == comp[b]:
        extremes = Extremes.JOINED
    else:
        extremes = Extremes.SEPARATED
    return CutClassification(touches, Disposition.CROSSING, extremes)


def comp_of(g: Graph, s: Iterable[int], x: Iterable[int]) -> frozenset[int]:
    """Component ids of g - s met by x outside s (Comp_S(X) as ids)."""
    s_mask = as_mask(s)
    x_mask = as_mask(x)
    if x_mask & ~s_mask == 0:
        raise PreconditionError("x is contained in s; Comp_S(x) undefined")
    comp = component_id_map(g, s_mask)
    return frozenset(comp[v] for v in bits(x_mask & ~s_mask))


def s_equivalent(p: PathSeq, q: PathSeq, s: Iterable[int]) -> bool:
    """True iff p and q touch s at the same vertex subset."""
    s_set = frozenset(s)
    return p.vertex_set & s_set == q.vertex_set & s_set
