"""Good/bad seed lexicons and the two ways of growing them.

``expand_by_sweep`` walks WordNet synsets and appends a synset's lemma to
the good or bad list when its best path similarity to both lists falls in
the tau windows. ``expand_from_corpus`` grows word pools from labelled
training documents over several random restarts and keeps the most
frequent survivors.

Lexicon file format, one entry per line, order significant::

    # comment
    good<TAB>dazzling<TAB>seed
    bad<TAB>hack<TAB>sweep
"""

from __future__ import annotations

import enum
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from .errors import ConfigError, ParseError
from .taxonomy import TaxonomyGraph
from .wndb import FILE_POS, Synset, WordNetDatabase, synsets_for_word, word_part

SIDES = ("good", "bad")
SWEEP_ORDERS = ("file", "pos-interleaved", "legacy")
# adj, adv, verb, noun: how a Python 2 dict keyed by the POS letters iterates
LEGACY_POS_ORDER = ("a", "r", "v", "n")
PROVENANCE = ("seed", "sweep", "corpus")

DEFAULT_GOOD = (
    "good", "dazzling", "brilliant", "phenomenal", "excellent", "fantastic", "gripping",
    "mesmerizing", "riveting", "spectacular", "cool", "awesome", "thrilling", "badass",
    "moving", "exciting", "love", "wonderful", "best", "great", "superb", "still", "beautiful",
)
DEFAULT_BAD = (
    "suck", "terrible", "awful", "unwatchable", "hideous", "bad", "cliched", "sucks",
    "boring", "stupid", "slow", "worst", "waste",
)


@dataclass(frozen=True)
class LexiconEntry:
    side: str
    word: str
    provenance: str = "seed"


@dataclass
class SeedLexicon:
    entries: List[LexiconEntry] = field(default_factory=list)

    @classmethod
    def from_words(cls, good: Iterable[str], bad: Iterable[str], provenance: str = "seed") -> "SeedLexicon":
        lex = cls()
        for w in good:
            lex.append("good", w, provenance)
        for w in bad:
            lex.append("bad", w, provenance)
        return lex

    @classmethod
    def default_seeds(cls) -> "SeedLexicon":
        return cls.from_words(DEFAULT_GOOD, DEFAULT_BAD)

    @property
    def good(self) -> list:
        return [e.word for e in self.entries if e.side == "good"]

    @property
    def bad(self) -> list:
        return [e.word for e in self.entries if e.side == "bad"]

    def side(self, side: str) -> list:
        return self.good if side == "good" else self.bad

    def append(self, side: str, word: str, provenance: str = "seed"):
        if side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}, got {side!r}")
        if provenance not in PROVENANCE:
            raise ValueError(f"unknown provenance {provenance!r}")
        self.entries.append(LexiconEntry(side, word, provenance))

    def copy(self) -> "SeedLexicon":
        return SeedLexicon(list(self.entries))

    def columns(self) -> list:
        """``(word, side)`` pairs: good entries then bad entries, list order kept.

        This is the column order of a frequency matrix scored against the lexicon.
        """
        return [(w, "good") for w in self.good] + [(w, "bad") for w in self.bad]

    def __len__(self):
        return len(self.entries)


def save_lexicon(lexicon: SeedLexicon, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# side\tword\tprovenance\n")
        for e in lexicon.entries:
            fh.write(f"{e.side}\t{e.word}\t{e.provenance}\n")


def load_lexicon(path) -> SeedLexicon:
    lex = SeedLexicon()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ParseError(f"expected 3 tab-separated fields, got {len(parts)}", lineno, 0, path)
            side, word, prov = parts
            if side not in SIDES:
                raise ParseError(f"unknown side {side!r}", lineno, 0, path)
            if prov not in PROVENANCE:
                raise ParseError(f"unknown provenance tag {prov!r}", lineno, len(side) + len(word) + 2, path)
            if not word:
                raise ParseError("empty word", lineno, len(side) + 1, path)
            lex.append(side, word, prov)
    return lex


# -- synset sweep -----------------------------------------------------------


class Decision(str, enum.Enum):
    APPEND_GOOD = "AppendGood"
    APPEND_BAD = "AppendBad"
    SKIP = "Skip"


@dataclass
class ExpansionConfig:
    tau_good: float = 0.8
    tau_bad: float = 0.2
    synset_limit: int = 25000
    cap_good: int = 3
    cap_bad: int = 5
    dedup: bool = False
    live_growth: bool = True
    order: str = "legacy"  # "file", "pos-interleaved" or "legacy"
    sample: bool = False  # random subset of synset_limit synsets instead of the prefix
    seed: int = 0
    simulate_root: bool = True
    trace: bool = False

    def __post_init__(self):
        if not (0 <= self.tau_bad <= self.tau_good <= 1):
            raise ConfigError(f"need 0 <= tau_bad <= tau_good <= 1, got ({self.tau_good}, {self.tau_bad})")
        if self.cap_good < 1 or self.cap_bad < 1:
            raise ConfigError("synset caps must be >= 1")
        if self.synset_limit < 0:
            raise ConfigError("synset_limit must be >= 0")
        if self.order not in SWEEP_ORDERS:
            raise ConfigError(f"unknown synset order {self.order!r}")


@dataclass
class ExpansionReport:
    appended_good: int = 0
    appended_bad: int = 0
    skipped: int = 0
    trace: Optional[list] = None  # (word, maxp, maxn, decision) per examined synset

    @property
    def examined(self) -> int:
        return self.appended_good + self.appended_bad + self.skipped


def sweep_decision(maxp: float, maxn: float, config: ExpansionConfig = None) -> Decision:
    """Both tau windows must hold; then the larger side wins and ties go to bad."""
    config = config or ExpansionConfig()
    if 0 < maxp < config.tau_good and 0 < maxn < config.tau_bad:
        return Decision.APPEND_GOOD if maxp > maxn else Decision.APPEND_BAD
    return Decision.SKIP


class SenseIndex:
    """Nearest-ancestor table for a growing set of words.

    Keeps ``ancestor -> min distance`` over the capped senses of every word
    added, so the best path similarity from any synset to the whole set is
    one pass over that synset's own ancestor map.
    """

    def __init__(self, graph: TaxonomyGraph, db: WordNetDatabase, cap: int, simulate_root: bool = True):
        self.graph = graph
        self.db = db
        self.cap = cap
        self.simulate_root = simulate_root
        self.table = {}
        self.senses = set()
        self.words = set()

    def add(self, word: str):
        if word in self.words:
            return
        self.words.add(word)
        table = self.table
        for s in synsets_for_word(self.db, word)[: self.cap]:
            if s.id in self.senses:
                continue
            self.senses.add(s.id)
            for c, d in self.graph.ancestors(s.id, self.simulate_root).items():
                if d < table.get(c, math.inf):
                    table[c] = d

    def distance(self, sid) -> Optional[int]:
        table = self.table
        best = None
        for c, d in self.graph.ancestors(sid, self.simulate_root).items():
            t = table.get(c)
            if t is not None and (best is None or d + t < best):
                best = d + t
        return best

    def max_similarity(self, sid) -> float:
        d = self.distance(sid)
        return 0.0 if d is None else 1.0 / (d + 1)

    def word_similarity(self, word: str, cap: Optional[int] = None) -> float:
        """Best similarity between any of ``word``'s capped senses and the set."""
        best = 0.0
        for s in synsets_for_word(self.db, word)[: cap or self.cap]:
            f = self.max_similarity(s.id)
            if f > best:
                best = f
        return best


def sweep_order(db: WordNetDatabase, config: ExpansionConfig) -> List[Synset]:
    if config.order == "file":
        ordered = list(db.all_synsets())
    elif config.order == "legacy":
        ordered = [s for p in LEGACY_POS_ORDER for s in db.all_synsets(p)]
    else:
        per_pos = [list(db.all_synsets(p)) for p in FILE_POS]
        ordered = []
        for i in range(max(len(x) for x in per_pos)):
            ordered.extend(x[i] for x in per_pos if i < len(x))
    limit = min(config.synset_limit, len(ordered))
    if config.sample:
        picks = sorted(random.Random(config.seed).sample(range(len(ordered)), limit))
        return [ordered[i] for i in picks]
    return ordered[:limit]


def expand_by_sweep(db: WordNetDatabase, graph: TaxonomyGraph, lexicon: SeedLexicon, config: ExpansionConfig = None):
    """Grow ``lexicon`` by sweeping synsets; returns ``(new_lexicon, report)``.

    With ``live_growth`` each appended word joins its side immediately and
    is compared against from the next synset on. Without it only the input
    entries are used, which makes the result independent of order.
    """
    config = config or ExpansionConfig()
    if not lexicon.good or not lexicon.bad:
        raise ConfigError("both seed lists must be non-empty")
    out = lexicon.copy()
    good = SenseIndex(graph, db, config.cap_good, config.simulate_root)
    bad = SenseIndex(graph, db, config.cap_bad, config.simulate_root)
    for w in lexicon.good:
        good.add(w)
    for w in lexicon.bad:
        bad.add(w)
    present = {"good": set(lexicon.good), "bad": set(lexicon.bad)}

    report = ExpansionReport(trace=[] if config.trace else None)
    for s in sweep_order(db, config):
        maxp = good.max_similarity(s.id)
        maxn = bad.max_similarity(s.id)
        decision = sweep_decision(maxp, maxn, config)
        word = word_part(s.name or s.words[0].lemma.lower())
        if decision is not Decision.SKIP:
            side = "good" if decision is Decision.APPEND_GOOD else "bad"
            if config.dedup and word in present[side]:
                decision = Decision.SKIP
            else:
                out.append(side, word, "sweep")
                present[side].add(word)
                if config.live_growth:
                    (good if side == "good" else bad).add(word)
                if side == "good":
                    report.appended_good += 1
                else:
                    report.appended_bad += 1
        if decision is Decision.SKIP:
            report.skipped += 1
        if report.trace is not None:
            report.trace.append((word, maxp, maxn, decision.value))
    return out, report


def save_trace(report: ExpansionReport, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("word\tmaxp\tmaxn\tdecision\n")
        for word, maxp, maxn, decision in report.trace or ():
            fh.write(f"{word}\t{maxp:.6f}\t{maxn:.6f}\t{decision}\n")


# -- corpus-driven expansion ------------------------------------------------


@dataclass
class CorpusExpansionConfig:
    repetitions: int = 5
    top_k: int = 50
    membership_threshold: float = 0.8
    seed: int = 0
    cap: int = 3
    simulate_root: bool = True

    def __post_init__(self):
        if self.repetitions < 1:
            raise ConfigError("repetitions must be >= 1")
        if self.top_k < 1:
            raise ConfigError("top_k must be >= 1")


def document_words(text: str, db: WordNetDatabase) -> list:
    """Unigrams in reading order, plus bigrams that are WordNet lemmas."""
    from .corpus import tokenize, unigrams

    uni = unigrams(text)
    n = len(uni)
    out = list(uni)
    for tok in tokenize(text)[n:]:
        if synsets_for_word(db, tok):
            out.append(tok)
    return out


def _ordered_unique(words):
    return list(dict.fromkeys(words))


def expand_from_corpus(
    labeled_docs: Sequence,
    graph: TaxonomyGraph,
    db: WordNetDatabase,
    seeds: SeedLexicon,
    config: CorpusExpansionConfig = None,
    trace: Optional[list] = None,
) -> SeedLexicon:
    """Pool-growing expansion over labelled documents.

    ``labeled_docs`` holds ``(document, label)`` pairs with label ``"A"`` (good)
    or ``"B"`` (bad); a document is anything with a ``text`` attribute. Each
    repetition draws one starting document per label, then scans the rest.
    A word whose similarity to either pool exceeds the membership threshold
    is already classified and ignored; the rest join the pool of their
    document's label. Per side, the ``top_k`` words found in the most
    repetitions (ties by first appearance) are appended to ``seeds``.
    """
    config = config or CorpusExpansionConfig()
    by_label = {"A": [], "B": []}
    for i, (_, label) in enumerate(labeled_docs):
        if label not in by_label:
            raise ConfigError(f"document label must be 'A' or 'B', got {label!r}")
        by_label[label].append(i)
    for label, idx in by_label.items():
        if not idx:
            raise ConfigError(f"no training documents labelled {label}")

    words = [_ordered_unique(document_words(doc.text, db)) for doc, _ in labeled_docs]
    rng = random.Random(config.seed)
    tally = {"A": Counter(), "B": Counter()}
    first_seen = {"A": {}, "B": {}}
    for rep in range(config.repetitions):
        start = {"A": rng.choice(by_label["A"]), "B": rng.choice(by_label["B"])}
        pools, index = {}, {}
        for label in ("A", "B"):
            pools[label] = list(words[start[label]])
            index[label] = SenseIndex(graph, db, config.cap, config.simulate_root)
            for w in pools[label]:
                index[label].add(w)
        for i, (_, label) in enumerate(labeled_docs):
            if i in (start["A"], start["B"]):
                continue
            for w in words[i]:
                if w in pools["A"] or w in pools["B"]:
                    continue
                if (
                    index["A"].word_similarity(w) > config.membership_threshold
                    or index["B"].word_similarity(w) > config.membership_threshold
                ):
                    continue
                pools[label].append(w)
                index[label].add(w)
        for label in ("A", "B"):
            for w in pools[label]:
                tally[label][w] += 1
                first_seen[label].setdefault(w, len(first_seen[label]))
        if trace is not None:
            trace.append({
                "repetition": rep,
                "start": {k: getattr(labeled_docs[v][0], "id", v) for k, v in start.items()},
                "pools": {k: list(v) for k, v in pools.items()},
            })

    out = seeds.copy()
    for label, side in (("A", "good"), ("B", "bad")):
        ranked = sorted(tally[label], key=lambda w: (-tally[label][w], first_seen[label][w]))
        for w in ranked[: config.top_k]:
            out.append(side, w, "corpus")
    return out
