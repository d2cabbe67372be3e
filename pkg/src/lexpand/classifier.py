"""Proportion-threshold labels, polarity coordinates and clause signs."""

from __future__ import annotations

import enum
import re
import warnings
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence

import numpy as np

from .corpus import count_in_line, normalize_searchword, unigrams
from .errors import ContractError


class Label(str, enum.Enum):
    A = "A"
    B = "B"
    UNCLASSIFIED = "Unclassified"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Thresholds:
    eps1: float = 0.5
    eps2: float = 0.5

    def __post_init__(self):
        for name in ("eps1", "eps2"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise ContractError(f"{name} must lie in [0, 1], got {v}")
        if self.eps1 + self.eps2 < 1:
            warnings.warn(
                f"eps1 + eps2 = {self.eps1 + self.eps2:g} < 1: both labels can pass at once; "
                "the larger proportion will win",
                stacklevel=3,
            )


@dataclass(frozen=True)
class PolarityPoint:
    x: float  # good-set frequency
    y: float  # bad-set frequency


@dataclass(frozen=True)
class ClassificationResult:
    doc_id: str
    label: Label
    p_good: float
    p_bad: float
    strength: float
    point: PolarityPoint
    both_passed: bool = False
    avg_sign: Optional[float] = None


def _sides(lexicon) -> List[str]:
    if hasattr(lexicon, "columns"):
        return [side for _, side in lexicon.columns()]
    return list(lexicon)


def _masses(freq_row, lexicon):
    row = np.asarray(freq_row)
    sides = _sides(lexicon)
    if row.ndim != 1 or len(row) != len(sides):
        raise ContractError(f"row has {row.size} columns but the lexicon has {len(sides)} entries")
    good = np.array([s == "good" for s in sides], dtype=bool)
    return float(row[good].sum()), float(row[~good].sum())


def proportions(freq_row, lexicon) -> tuple:
    """``(G/(G+B), B/(G+B))`` over the good and bad columns; ``(0, 0)`` without evidence."""
    g, b = _masses(freq_row, lexicon)
    total = g + b
    if total == 0:
        return 0.0, 0.0
    return g / total, b / total


def decide(p_good: float, p_bad: float, thresholds: Thresholds = Thresholds()) -> tuple:
    """``(label, both_passed)``."""
    a = p_good > thresholds.eps1
    b = p_bad > thresholds.eps2
    if a and b:
        if p_good > p_bad:
            return Label.A, True
        if p_bad > p_good:
            return Label.B, True
        return Label.UNCLASSIFIED, True
    if a:
        return Label.A, False
    if b:
        return Label.B, False
    return Label.UNCLASSIFIED, False


def classify(p_good: float, p_bad: float, thresholds: Thresholds = Thresholds()) -> Label:
    return decide(p_good, p_bad, thresholds)[0]


def polarity_point(freq_row, lexicon, normalize: bool = False, total_tokens: Optional[int] = None) -> PolarityPoint:
    g, b = _masses(freq_row, lexicon)
    if not normalize:
        return PolarityPoint(g, b)
    if total_tokens is None:
        raise ContractError("normalized polarity point needs the document's token total")
    if total_tokens == 0:
        return PolarityPoint(0.0, 0.0)
    return PolarityPoint(g / total_tokens, b / total_tokens)


def classify_row(
    doc_id: str,
    freq_row,
    lexicon,
    thresholds: Thresholds = Thresholds(),
    normalize: bool = False,
    total_tokens: Optional[int] = None,
) -> ClassificationResult:
    p_good, p_bad = proportions(freq_row, lexicon)
    label, both = decide(p_good, p_bad, thresholds)
    return ClassificationResult(
        doc_id=doc_id,
        label=label,
        p_good=p_good,
        p_bad=p_bad,
        strength=max(p_good, p_bad),
        point=polarity_point(freq_row, lexicon, normalize, total_tokens),
        both_passed=both,
    )


def classify_matrix(matrix, lexicon, thresholds: Thresholds = Thresholds(), normalize: bool = False) -> list:
    cols = [w for w, _ in lexicon.columns()] if hasattr(lexicon, "columns") else None
    if cols is not None and list(matrix.cols) != cols:
        raise ContractError("matrix columns do not match the lexicon (good entries, then bad, in file order)")
    totals = matrix.token_totals or [None] * len(matrix.rows)
    return [
        classify_row(doc_id, row, lexicon, thresholds, normalize, total)
        for doc_id, row, total in zip(matrix.rows, matrix.counts, totals)
    ]


# -- clause signs -----------------------------------------------------------

CONTRASTIVE = frozenset({"but", "however", "yet", "although"})
ADDITIVE = frozenset({"and", "also", "moreover"})

_TOKEN = re.compile(r"[^\W]+")
_SENTENCE_END = re.compile(r"[.!?]+")


@dataclass(frozen=True)
class Clause:
    text: str
    connective: str = "none"  # "none", "additive" or "contrastive"
    sign: int = 0


def split_clauses(sentence: str) -> List[Clause]:
    """Cut a sentence at connective words, tagging each clause with the word that opened it."""
    clauses = []
    start = 0
    pending = "none"
    for m in _TOKEN.finditer(sentence):
        word = m.group().lower()
        if word in CONTRASTIVE:
            kind = "contrastive"
        elif word in ADDITIVE:
            kind = "additive"
        else:
            continue
        text = sentence[start : m.start()].strip(" \t\n,;:-")
        if text:
            clauses.append(Clause(text, pending if clauses else "none"))
            pending = kind
        elif clauses:
            pending = kind
        start = m.end()
    text = sentence[start:].strip(" \t\n,;:-.!?")
    if text:
        clauses.append(Clause(text, pending if clauses else "none"))
    return clauses


def _side_phrases(lexicon):
    good = list(dict.fromkeys(normalize_searchword(w) for w in lexicon.good))
    bad = list(dict.fromkeys(normalize_searchword(w) for w in lexicon.bad))
    return good, bad


def raw_sign(text: str, lexicon) -> int:
    good, bad = _side_phrases(lexicon)
    toks = unigrams(text)
    g = sum(count_in_line(toks, p) for p in good)
    b = sum(count_in_line(toks, p) for p in bad)
    return (g > b) - (g < b)


def clause_signs(seq: Sequence[Clause], lexicon, inherit: bool = True) -> List[Clause]:
    """Resolve each clause to +1 (good), -1 (bad) or 0.

    A clause with no lexicon evidence takes the previous clause's sign,
    flipped after a contrastive connective. A leading evidence-free clause
    stays 0. With ``inherit=False`` such clauses simply stay 0.
    """
    out = []
    prev = 0
    for c in seq:
        sign = raw_sign(c.text, lexicon)
        if sign == 0 and inherit and prev != 0:
            sign = -prev if c.connective == "contrastive" else prev
        out.append(replace(c, sign=sign))
        if sign != 0:
            prev = sign
    return out


def average_sign(seq) -> float:
    """Mean of the non-zero signs; 0.0 when there are none."""
    signs = [c.sign if isinstance(c, Clause) else int(c) for c in seq]
    signs = [s for s in signs if s != 0]
    if not signs:
        return 0.0
    return sum(signs) / len(signs)


def split_sentences(text: str) -> List[str]:
    return [s.strip() for s in _SENTENCE_END.split(text) if s.strip()]


def document_sign(text: str, lexicon, inherit: bool = True) -> float:
    """Average clause sign over every sentence of a document."""
    signs = []
    for sentence in split_sentences(text):
        signs.extend(clause_signs(split_clauses(sentence), lexicon, inherit))
    return average_sign(signs)
