"""Reader for the Princeton WordNet database files (``data.pos`` / ``index.pos``).

Record grammar of a data line::

    offset lex_filenum ss_type w_cnt word lex_id [word lex_id...] p_cnt
    [ptr...] [frames...] | gloss

``w_cnt`` and ``lex_id`` are hexadecimal, ``p_cnt`` is three decimal digits,
and each pointer is ``symbol offset pos source/target`` where source/target
is four hex digits. Verb records carry ``f_cnt + f_num w_num`` frame lists.

Serialization is byte-exact: the text after ``" | "`` is kept verbatim in
``Synset.gloss_raw`` (real files end it with two spaces, a few with three),
while ``Synset.gloss`` is the trimmed definition.
"""

from __future__ import annotations

import enum
import gc
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterator, Mapping, NamedTuple, Optional

from .errors import IntegrityError, LoadError, ParseError


class PartOfSpeech(str, enum.Enum):
    NOUN = "n"
    VERB = "v"
    ADJECTIVE = "a"
    ADJECTIVE_SATELLITE = "s"
    ADVERB = "r"

    @property
    def file_pos(self) -> "PartOfSpeech":
        """The POS whose files hold this synset type (satellites live in data.adj)."""
        return PartOfSpeech.ADJECTIVE if self is PartOfSpeech.ADJECTIVE_SATELLITE else self

    @property
    def suffix(self) -> str:
        return _SUFFIX[self.file_pos]

    @classmethod
    def parse(cls, value) -> "PartOfSpeech":
        if isinstance(value, cls):
            return value
        v = str(value).lower()
        if v in _BY_NAME:
            return _BY_NAME[v]
        return cls(v)

    def __str__(self):
        return self.value


_SUFFIX = {
    PartOfSpeech.NOUN: "noun",
    PartOfSpeech.VERB: "verb",
    PartOfSpeech.ADJECTIVE: "adj",
    PartOfSpeech.ADVERB: "adv",
}
_BY_NAME = {
    "noun": PartOfSpeech.NOUN,
    "verb": PartOfSpeech.VERB,
    "adj": PartOfSpeech.ADJECTIVE,
    "adjective": PartOfSpeech.ADJECTIVE,
    "adjective_satellite": PartOfSpeech.ADJECTIVE_SATELLITE,
    "adv": PartOfSpeech.ADVERB,
    "adverb": PartOfSpeech.ADVERB,
}

#: File order; also the global sense order used by :func:`synsets_for_word`.
FILE_POS = (PartOfSpeech.NOUN, PartOfSpeech.VERB, PartOfSpeech.ADJECTIVE, PartOfSpeech.ADVERB)
_POS_RANK = {p: i for i, p in enumerate(FILE_POS)}

POINTER_SYMBOLS = {
    "!": "antonym",
    "@": "hypernym",
    "@i": "instance hypernym",
    "~": "hyponym",
    "~i": "instance hyponym",
    "#m": "member holonym",
    "#s": "substance holonym",
    "#p": "part holonym",
    "%m": "member meronym",
    "%s": "substance meronym",
    "%p": "part meronym",
    "=": "attribute",
    "+": "derivationally related form",
    ";c": "domain of synset - topic",
    "-c": "member of this domain - topic",
    ";r": "domain of synset - region",
    "-r": "member of this domain - region",
    ";u": "domain of synset - usage",
    "-u": "member of this domain - usage",
    "*": "entailment",
    ">": "cause",
    "^": "also see",
    "$": "verb group",
    "&": "similar to",
    "<": "participle of verb",
    "\\": "pertainym",
}


class SynsetId(NamedTuple):
    """Key of a synset. Satellites are keyed under the adjective namespace."""

    pos: PartOfSpeech
    offset: int

    def sort_key(self):
        return (_POS_RANK.get(self.pos, len(FILE_POS)), self.offset)

    def __str__(self):
        return f"{self.offset:08d}-{self.pos.value}"


def _new_synset_id(cls, pos, offset):
    if pos.__class__ is not PartOfSpeech or pos is PartOfSpeech.ADJECTIVE_SATELLITE:
        pos = PartOfSpeech.parse(pos).file_pos
    return tuple.__new__(cls, (pos, offset))


SynsetId.__new__ = _new_synset_id
_make_id = SynsetId._make  # skips normalization; callers pass a file POS


class Word(NamedTuple):
    lemma: str
    lex_id: int
    marker: str = ""  # adjective syntactic marker: "(a)", "(p)" or "(ip)"


class Pointer(NamedTuple):
    symbol: str
    target: SynsetId
    source_word: int
    target_word: int
    target_tag: str = ""  # pos character as written, keeps "s" for satellites

    @property
    def is_semantic(self) -> bool:
        return self.source_word == 0 and self.target_word == 0


@dataclass(frozen=True, slots=True)
class Synset:
    id: SynsetId
    lex_filenum: int
    ss_type: PartOfSpeech
    words: tuple
    pointers: tuple
    frames: tuple
    gloss: str
    gloss_raw: str = field(default="", repr=False, compare=False)
    name: Optional[str] = None

    @property
    def offset(self) -> int:
        return self.id.offset

    @property
    def pos(self) -> PartOfSpeech:
        return self.id.pos

    def lemma_names(self) -> list:
        return [w.lemma for w in self.words]

    def related(self, *symbols: str) -> list:
        return [p.target for p in self.pointers if p.symbol in symbols]

    def hypernym_ids(self) -> list:
        return self.related("@", "@i")

    def __str__(self):
        return self.name or str(self.id)


@dataclass(frozen=True, slots=True)
class IndexEntry:
    lemma: str
    pos: PartOfSpeech
    synset_offsets: tuple
    pointer_symbols: tuple = ()
    tagsense_cnt: int = 0


_MARKER = re.compile(r"^(.*?)(\((?:a|p|ip)\))?$")


def _column(text: str, token_index: int) -> int:
    """Byte column of the ``token_index``-th whitespace-separated token."""
    for i, m in enumerate(re.finditer(r"\S+", text)):
        if i == token_index:
            return m.start()
    return len(text)


_HEX = "0123456789abcdefABCDEF"
_TAG_POS = {t: PartOfSpeech(t).file_pos for t in "nvasr"}


def _fail(msg, head, token_index, lineno):
    raise ParseError(msg, line=lineno, column=_column(head, token_index))


def _check_fields(head, toks, dec, hexa, lineno):
    """Validate collected field positions; numbers are checked in one pass each."""
    if not ("".join(toks[k] for k in dec).isdigit() and "".join(toks[k] for k in dec).isascii()):
        for k in dec:
            if not (toks[k].isdigit() and toks[k].isascii()):
                _fail(f"malformed decimal field {toks[k]!r}", head, k, lineno)
    if "".join(toks[k] for k in hexa).strip(_HEX):
        for k in hexa:
            if toks[k].strip(_HEX) or not toks[k]:
                _fail(f"malformed hex field {toks[k]!r}", head, k, lineno)


def parse_data_line(line: str, pos, lineno: Optional[int] = None) -> Synset:
    """Parse one non-header line of a ``data.pos`` file."""
    pos = PartOfSpeech.parse(pos)
    line = line.rstrip("\r\n")
    if line.startswith("  "):
        raise ParseError("header line passed to parse_data_line", line=lineno, column=0)
    head, sep, gloss_raw = line.partition(" | ")
    toks = head.split()
    n = len(toks)
    dec = [0, 1]
    hexa = [3]
    if n < 6:
        _fail("truncated record", head, n, lineno)
    _check_fields(head, toks, dec, hexa, lineno)
    offset = int(toks[0])
    lex_filenum = int(toks[1])
    ss_type = _TAG_POS.get(toks[2]) and PartOfSpeech(toks[2])
    if ss_type is None:
        _fail(f"unknown ss_type {toks[2]!r}", head, 2, lineno)
    if ss_type.file_pos is not pos.file_pos:
        _fail(f"ss_type {toks[2]!r} found in data.{pos.suffix}", head, 2, lineno)
    w_cnt = int(toks[3], 16)
    if w_cnt == 0:
        _fail("w_cnt must be positive", head, 3, lineno)

    k = 4 + 2 * w_cnt
    if k >= n:
        _fail(f"truncated record: w_cnt {w_cnt} but only {max(0, (n - 4) // 2)} words", head, n, lineno)
    hexa = list(range(5, k, 2))
    _check_fields(head, toks, [k], hexa, lineno)
    words = []
    for j in range(4, k, 2):
        raw = toks[j]
        if raw.endswith(")"):
            lemma, marker = _MARKER.match(raw).groups()
            words.append(Word(lemma, int(toks[j + 1], 16), marker or ""))
        else:
            words.append(Word(raw, int(toks[j + 1], 16)))

    p_cnt = int(toks[k])
    k += 1
    end = k + 4 * p_cnt
    if end > n:
        _fail(f"truncated pointer list: p_cnt {p_cnt}", head, n, lineno)
    _check_fields(head, toks, range(k + 1, end, 4), range(k + 3, end, 4), lineno)
    pointers = []
    for j in range(k, end, 4):
        st = toks[j + 3]
        target_pos = _TAG_POS.get(toks[j + 2])
        if target_pos is None:
            _fail(f"bad pointer pos {toks[j + 2]!r}", head, j + 2, lineno)
        if len(st) != 4:
            _fail(f"malformed source/target field {st!r}", head, j + 3, lineno)
        pointers.append(
            Pointer(toks[j], _make_id((target_pos, int(toks[j + 1]))), int(st[:2], 16), int(st[2:], 16), toks[j + 2])
        )
    k = end

    frames = []
    if pos is PartOfSpeech.VERB and k < n:
        _check_fields(head, toks, [k], [], lineno)
        f_cnt = int(toks[k])
        k += 1
        end = k + 3 * f_cnt
        if end > n:
            _fail(f"truncated frame list: f_cnt {f_cnt}", head, n, lineno)
        _check_fields(head, toks, range(k + 1, end, 3), range(k + 2, end, 3), lineno)
        for j in range(k, end, 3):
            if toks[j] != "+":
                _fail(f"expected '+' before frame, got {toks[j]!r}", head, j, lineno)
            frames.append((int(toks[j + 1]), int(toks[j + 2], 16)))
        k = end

    if k != n:
        _fail("unexpected trailing fields before gloss", head, k, lineno)

    return Synset(
        id=SynsetId(pos, offset),
        lex_filenum=lex_filenum,
        ss_type=ss_type,
        words=tuple(words),
        pointers=tuple(pointers),
        frames=tuple(frames),
        gloss=gloss_raw.strip(),
        gloss_raw=gloss_raw if sep else None,
    )


def serialize_synset(s: Synset) -> str:
    """Inverse of :func:`parse_data_line` (no line terminator)."""
    parts = [f"{s.offset:08d}", f"{s.lex_filenum:02d}", s.ss_type.value, f"{len(s.words):02x}"]
    for w in s.words:
        parts += [w.lemma + w.marker, f"{w.lex_id:x}"]
    parts.append(f"{len(s.pointers):03d}")
    for p in s.pointers:
        tag = p.target_tag or p.target.pos.value
        parts += [p.symbol, f"{p.target.offset:08d}", tag, f"{p.source_word:02x}{p.target_word:02x}"]
    if s.frames or s.id.pos is PartOfSpeech.VERB:
        parts.append(f"{len(s.frames):02d}")
        for f_num, w_num in s.frames:
            parts += ["+", f"{f_num:02d}", f"{w_num:02x}"]
    head = " ".join(parts)
    if s.gloss_raw is None:
        return head + " "
    gloss = s.gloss_raw if s.gloss_raw else s.gloss + "  "
    return f"{head} | {gloss}"


def parse_index_line(line: str, pos, lineno: Optional[int] = None) -> IndexEntry:
    """Parse one non-header ``index.pos`` line."""
    pos = PartOfSpeech.parse(pos).file_pos
    line = line.rstrip("\r\n")
    toks = line.split()
    n = len(toks)
    if n < 6:
        _fail("truncated index record", line, n, lineno)
    if toks[1] != pos.value:
        _fail(f"pos {toks[1]!r} in index.{pos.suffix}", line, 1, lineno)
    _check_fields(line, toks, [2, 3], [], lineno)
    synset_cnt = int(toks[2])
    p_cnt = int(toks[3])
    k = 4 + p_cnt
    if k + 2 > n:
        _fail(f"truncated index record: p_cnt {p_cnt}", line, n, lineno)
    _check_fields(line, toks, range(k, n), [], lineno)
    sense_cnt = int(toks[k])
    offsets = tuple(int(t) for t in toks[k + 2 :])
    if len(offsets) != synset_cnt:
        _fail(f"synset_cnt is {synset_cnt} but {len(offsets)} offsets follow", line, 2, lineno)
    if sense_cnt != synset_cnt:
        _fail(f"sense_cnt {sense_cnt} disagrees with synset_cnt {synset_cnt}", line, k, lineno)
    return IndexEntry(toks[0].lower(), pos, offsets, tuple(toks[4:k]), int(toks[k + 1]))


def serialize_index_entry(e: IndexEntry) -> str:
    parts = [e.lemma, e.pos.value, str(len(e.synset_offsets)), str(len(e.pointer_symbols))]
    parts += list(e.pointer_symbols)
    parts += [str(len(e.synset_offsets)), str(e.tagsense_cnt)]
    parts += [f"{o:08d}" for o in e.synset_offsets]
    return " ".join(parts) + "  "


def normalize_lemma(word: str) -> str:
    return word.strip().lower().replace(" ", "_")


def word_part(name: str) -> str:
    """Lemma part of a display name: ``"carry_back.v.01"`` -> ``"carry_back"``."""
    return name.split(".", 1)[0]


def _records(path: Path) -> Iterator[tuple]:
    with open(path, encoding="utf-8", errors="surrogateescape", newline="") as fh:
        for lineno, line in enumerate(fh, 1):
            if line.startswith("  ") or not line.strip():
                continue
            yield lineno, line


_HEADER_VERSION = re.compile(r"WordNet (\d+\.\d+)")
_KNOWN_TOTALS = {117659: "3.0", 117791: "3.1"}


class WordNetDatabase:
    """Parsed synsets plus lemma index. Read-only once constructed."""

    def __init__(self, synsets: Mapping, index: Mapping, directory=None, version=None):
        self.synsets = MappingProxyType(dict(synsets))
        self.index = MappingProxyType(dict(index))
        self.directory = directory
        counts = {p.suffix: 0 for p in FILE_POS}
        for sid in self.synsets:
            counts[sid.pos.suffix] += 1
        self.counts = MappingProxyType(counts)
        self.version = version or _KNOWN_TOTALS.get(sum(counts.values()), "unknown")
        self._order = tuple(sorted(self.synsets, key=SynsetId.sort_key))
        self._by_name = {s.name: s for s in self.synsets.values() if s.name}

    def __len__(self):
        return len(self.synsets)

    def __contains__(self, sid):
        return sid in self.synsets

    def __getitem__(self, sid) -> Synset:
        return self.synsets[sid]

    @property
    def total(self) -> int:
        return len(self.synsets)

    def synset(self, name_or_id) -> Synset:
        """Look up by :class:`SynsetId` or by display name such as ``"dog.n.01"``."""
        if isinstance(name_or_id, SynsetId):
            return self.synsets[name_or_id]
        return self._by_name[name_or_id]

    def all_synsets(self, pos=None) -> Iterator[Synset]:
        """Canonical order: noun, verb, adj, adv files, ascending offset within each."""
        want = None if pos is None else PartOfSpeech.parse(pos).file_pos
        for sid in self._order:
            if want is None or sid.pos is want:
                yield self.synsets[sid]

    def synsets_for_word(self, lemma: str, pos=None) -> list:
        return synsets_for_word(self, lemma, pos)


def synsets_for_word(db: WordNetDatabase, lemma: str, pos=None) -> list:
    lemma = normalize_lemma(lemma)
    if pos is None:
        wanted = FILE_POS
    else:
        wanted = (PartOfSpeech.parse(pos).file_pos,)
    out = []
    for p in wanted:
        entry = db.index.get((lemma, p))
        if entry is None:
            continue
        for off in entry.synset_offsets:
            s = db.synsets.get(SynsetId(p, off))
            if s is not None:
                out.append(s)
    return out


def _display_name(s: Synset, index: Mapping) -> Optional[str]:
    lemma = s.words[0].lemma.lower()
    entry = index.get((lemma, s.id.pos))
    if entry is None or s.offset not in entry.synset_offsets:
        return None
    sense = entry.synset_offsets.index(s.offset) + 1
    return f"{lemma}.{s.ss_type.value}.{sense:02d}"


def load_database(directory, check_integrity: bool = True) -> WordNetDatabase:
    """Load all eight data/index files from ``directory``."""
    directory = Path(directory)
    if not directory.is_dir():
        raise LoadError(f"not a WordNet directory: {directory}")
    for p in FILE_POS:
        for kind in ("data", "index"):
            path = directory / f"{kind}.{p.suffix}"
            if not path.is_file():
                raise LoadError(f"missing WordNet file: {path}")

    gc_was_enabled = gc.isenabled()
    gc.disable()  # millions of small acyclic tuples; collection passes only cost time
    try:
        return _load(directory, check_integrity)
    finally:
        if gc_was_enabled:
            gc.enable()


def _load(directory: Path, check_integrity: bool) -> WordNetDatabase:
    synsets = {}
    index = {}
    version = None
    for p in FILE_POS:
        path = directory / f"data.{p.suffix}"
        if version is None:
            with open(path, encoding="utf-8", errors="replace") as fh:
                for line in fh:
                    if not line.startswith("  "):
                        break
                    m = _HEADER_VERSION.search(line)
                    if m:
                        version = m.group(1)
                        break
        for lineno, line in _records(path):
            try:
                s = parse_data_line(line, p, lineno)
            except ParseError as exc:
                raise ParseError(exc.message, exc.line, exc.column, path) from None
            if s.id in synsets:
                raise IntegrityError(f"duplicate synset {s.id} in {path}", [s.id])
            synsets[s.id] = s
        path = directory / f"index.{p.suffix}"
        for lineno, line in _records(path):
            try:
                e = parse_index_line(line, p, lineno)
            except ParseError as exc:
                raise ParseError(exc.message, exc.line, exc.column, path) from None
            index[(e.lemma, e.pos)] = e

    unnamed = []
    for sid, s in synsets.items():
        name = _display_name(s, index)
        if name is None:
            unnamed.append(sid)
        # still private to the loader, so fill the name in place
        object.__setattr__(s, "name", name)

    if check_integrity:
        dangling = sorted(
            {p.target for s in synsets.values() for p in s.pointers if p.target not in synsets},
            key=SynsetId.sort_key,
        )
        if dangling:
            shown = ", ".join(map(str, dangling[:10]))
            raise IntegrityError(f"{len(dangling)} dangling pointer target(s): {shown}", dangling)
        if unnamed:
            shown = ", ".join(map(str, unnamed[:10]))
            raise IntegrityError(f"{len(unnamed)} synset(s) missing from the index: {shown}", unnamed)

    total = len(synsets)
    if version is None:
        version = _KNOWN_TOTALS.get(total, "unknown")
    return WordNetDatabase(synsets, index, directory=directory, version=version)


def default_wordnet_dir() -> Optional[str]:
    return os.environ.get("LEXPAND_WORDNET_DIR") or None
