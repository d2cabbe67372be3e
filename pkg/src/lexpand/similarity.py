"""Path-based similarity measures over a :class:`~lexpand.taxonomy.TaxonomyGraph`.

All measures take ``simulate_root`` (default True): parts of speech with
several roots get a virtual root one edge above each of them, so that any
two verbs are comparable. Nouns have a single root and are unaffected.

The ``ratio`` variants of lch and wup are the plain quotient forms; the
``standard`` variants are the usual literature definitions.
"""

from __future__ import annotations

import enum
import math
from typing import Optional

from .taxonomy import TaxonomyGraph, ancestor_map, least_common_subsumer, shortest_ancestral_distance
from .wndb import SynsetId, WordNetDatabase, synsets_for_word


class MeasureKind(str, enum.Enum):
    PATH = "path"
    LCH_RATIO = "lch_ratio"
    LCH_STANDARD = "lch_standard"
    WUP_RATIO = "wup_ratio"
    WUP_STANDARD = "wup_standard"

    @classmethod
    def resolve(cls, measure: str, variant: str = "ratio") -> "MeasureKind":
        if measure == "path":
            return cls.PATH
        return cls(f"{measure}_{variant}")


def path_similarity(
    graph: TaxonomyGraph, a: SynsetId, b: SynsetId, simulate_root: bool = True
) -> Optional[float]:
    """``1 / (d + 1)`` with ``d`` the ancestral distance in edges; identity scores 1."""
    d = shortest_ancestral_distance(graph, a, b, simulate_root)
    if d is None:
        return None
    return 1.0 / (d + 1)


def lch_measure(
    graph: TaxonomyGraph, a: SynsetId, b: SynsetId, variant: str = "ratio", simulate_root: bool = True
) -> Optional[float]:
    d = shortest_ancestral_distance(graph, a, b, simulate_root)
    if d is None:
        return None
    depth = graph.max_depth(a.pos, simulate_root)
    if variant == "ratio":
        # distance ratio against the longest possible ancestral path
        longest = 2 * depth
        return d / longest if longest else 0.0
    if variant == "standard":
        return -math.log((d + 1) / (2.0 * (depth + 1)))
    raise ValueError(f"unknown lch variant {variant!r}")


def wup_measure(
    graph: TaxonomyGraph, a: SynsetId, b: SynsetId, variant: str = "ratio", simulate_root: bool = True
) -> Optional[float]:
    lcs = least_common_subsumer(graph, a, b, simulate_root)
    if lcs is None:
        return None
    da = graph.depth(a, simulate_root)
    db = graph.depth(b, simulate_root)
    dl = graph.depth(lcs, simulate_root)
    if da is None or db is None or dl is None:
        return None
    if variant not in ("ratio", "standard"):
        raise ValueError(f"unknown wup variant {variant!r}")
    if variant == "standard":
        # depths measured along the route through the LCS, so the score stays in [0, 1]
        da = dl + ancestor_map(graph, a, simulate_root)[lcs]
        db = dl + ancestor_map(graph, b, simulate_root)[lcs]
    if da + db == 0:
        return 1.0
    num = dl if variant == "ratio" else 2 * dl
    return num / (da + db)


def similarity(graph, a, b, kind=MeasureKind.PATH, simulate_root: bool = True) -> Optional[float]:
    kind = MeasureKind(kind)
    if kind is MeasureKind.PATH:
        return path_similarity(graph, a, b, simulate_root)
    measure, variant = kind.value.split("_")
    fn = lch_measure if measure == "lch" else wup_measure
    return fn(graph, a, b, variant, simulate_root)


def word_max_path_similarity(
    graph: TaxonomyGraph,
    db: WordNetDatabase,
    word: str,
    target: SynsetId,
    cap: int,
    simulate_root: bool = True,
) -> float:
    """Best path similarity between ``target`` and the first ``cap`` senses of ``word``.

    Undefined pairs are skipped, so an unknown word or a word whose senses
    are all in another part of speech scores 0.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    best = 0.0
    for sense in synsets_for_word(db, word)[:cap]:
        f = path_similarity(graph, target, sense.id, simulate_root)
        if f is not None and f > best:
            best = f
    return best
