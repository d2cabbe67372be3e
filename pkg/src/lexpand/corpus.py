"""Document ingestion and per-document lexicon word counts.

Pipeline: pull anchor hrefs from a hub page, keep those containing a
keyword, fetch each kept link (local files by default, HTTP optionally),
then count every search word line by line into a :class:`FrequencyMatrix`.
"""

from __future__ import annotations

import csv
import re
import threading
import time
import urllib.request
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from html.parser import HTMLParser
from pathlib import Path
from typing import List, Optional, Sequence
from urllib.parse import urljoin, urlparse

import numpy as np

from .errors import FetchError

_WORD = re.compile(r"[^\W]+")  # letters, digits and underscore


@dataclass(frozen=True)
class Document:
    id: str
    text: str


# -- links ------------------------------------------------------------------


class _AnchorParser(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.hrefs = []
        self.base = None

    def handle_starttag(self, tag, attrs):
        if tag == "base" and self.base is None:
            self.base = dict(attrs).get("href")
        elif tag == "a":
            for name, value in attrs:
                if name == "href" and value is not None:
                    self.hrefs.append(value)
                    break

    handle_startendtag = handle_starttag


def extract_links(page: str, base: Optional[str] = None) -> List[str]:
    """Every anchor ``href`` in document order, duplicates kept.

    Relative links are resolved against ``base`` (or the page's own
    ``<base href>``) when one is available.
    """
    parser = _AnchorParser()
    try:
        parser.feed(page)
        parser.close()
    except Exception:  # html.parser rarely raises; keep whatever was collected
        pass
    base = base or parser.base
    if not base:
        return list(parser.hrefs)
    return [urljoin(base, h) for h in parser.hrefs]


def filter_sublinks(links: Sequence[str], keywords: Sequence[str]) -> List[str]:
    """Links containing at least one keyword (case-insensitive substring)."""
    if not keywords:
        raise ValueError("keyword list must not be empty")
    lowered = [k.lower() for k in keywords]
    kept = []
    for link in links:
        low = link.lower()
        for k in lowered:
            if k in low:
                kept.append(link)
                break
    return kept


# -- fetching ---------------------------------------------------------------


class _TextExtractor(HTMLParser):
    """Visible text with the source line structure kept intact."""

    _SKIP = {"script", "style"}

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts = []
        self._skip_depth = 0

    def _newlines_of_tag(self):
        raw = self.get_starttag_text() or ""
        self.parts.append("\n" * raw.count("\n"))

    def handle_starttag(self, tag, attrs):
        self._newlines_of_tag()
        if tag in self._SKIP:
            self._skip_depth += 1

    def handle_startendtag(self, tag, attrs):
        self._newlines_of_tag()

    def handle_endtag(self, tag):
        if tag in self._SKIP and self._skip_depth:
            self._skip_depth -= 1

    def handle_data(self, data):
        if self._skip_depth:
            self.parts.append("\n" * data.count("\n"))
        else:
            self.parts.append(data)

    def handle_comment(self, data):
        self.parts.append("\n" * data.count("\n"))


def html_to_text(page: str) -> str:
    parser = _TextExtractor()
    parser.feed(page)
    parser.close()
    return "".join(parser.parts)


def _is_html(name: str, body: str = "") -> bool:
    suffix = Path(urlparse(name).path).suffix.lower()
    if suffix in (".htm", ".html"):
        return True
    if suffix in (".txt", ".text"):
        return False
    return body.lstrip()[:15].lower().startswith(("<!doctype html", "<html"))


@dataclass
class FetchSource:
    """Where documents come from. ``local`` never touches the network."""

    kind: str = "local"  # "local" or "http"
    root: Optional[str] = None
    max_concurrent: int = 4
    per_host_delay: float = 1.0
    timeout: float = 30.0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)
    _last: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("local", "http"):
            raise ValueError(f"unknown fetch source kind {self.kind!r}")

    def _wait_turn(self, host: str):
        with self._lock:
            now = time.monotonic()
            ready = self._last.get(host, -1e9) + self.per_host_delay
            start = max(now, ready)
            self._last[host] = start
        if start > now:
            time.sleep(start - now)


def fetch(source: FetchSource, doc_id: str) -> Document:
    """Fetch one document; HTML is reduced to visible text, line breaks kept."""
    if source.kind == "local":
        path = Path(doc_id)
        if source.root is not None and not path.is_absolute():
            path = Path(source.root) / path
        try:
            body = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise FetchError(doc_id, str(exc)) from exc
    else:
        url = doc_id if source.root is None else urljoin(source.root, doc_id)
        if urlparse(url).scheme not in ("http", "https"):
            raise FetchError(doc_id, f"not an http(s) URL: {url}")
        source._wait_turn(urlparse(url).netloc)
        try:
            with urllib.request.urlopen(url, timeout=source.timeout) as resp:
                charset = resp.headers.get_content_charset() or "utf-8"
                body = resp.read().decode(charset, errors="replace")
        except Exception as exc:  # urllib raises a zoo of types
            raise FetchError(doc_id, str(exc)) from exc
        doc_id = url
    if _is_html(doc_id, body):
        body = html_to_text(body)
    return Document(doc_id, body)


@dataclass
class CorpusRun:
    documents: List[Document]
    errors: List[FetchError]


def fetch_all(source: FetchSource, ids: Sequence[str]) -> CorpusRun:
    """Fetch concurrently; results keep input order and failures do not abort the run."""

    def one(doc_id):
        try:
            return fetch(source, doc_id)
        except FetchError as exc:
            return exc

    workers = max(1, min(source.max_concurrent, len(ids) or 1))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(one, ids))
    docs = [r for r in results if isinstance(r, Document)]
    errors = [r for r in results if isinstance(r, FetchError)]
    return CorpusRun(docs, errors)


def crawl(source: FetchSource, hub: str, keywords: Sequence[str]) -> CorpusRun:
    """Hub mode: fetch ``hub``, follow its keyword-matching links."""
    if source.kind == "local":
        path = Path(hub) if source.root is None else Path(source.root) / hub
        try:
            page = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise FetchError(hub, str(exc)) from exc
        links = extract_links(page)
        base = str(path.parent)
        sub = [str(Path(base) / link) for link in filter_sublinks(links, keywords)]
        # ids must be unique within a run: fetch each sublink once
        return fetch_all(FetchSource("local", None, source.max_concurrent), list(dict.fromkeys(sub)))
    hub_url = hub if source.root is None else urljoin(source.root, hub)
    with urllib.request.urlopen(hub_url, timeout=source.timeout) as resp:
        page = resp.read().decode(resp.headers.get_content_charset() or "utf-8", errors="replace")
    links = extract_links(page, base=hub_url)
    return fetch_all(source, list(dict.fromkeys(filter_sublinks(links, keywords))))


MANIFEST = "MANIFEST"


def load_corpus_dir(directory) -> CorpusRun:
    """All ``.txt``/``.html``/``.htm`` files of a directory.

    Row order follows a ``MANIFEST`` file (one relative name per line, ``#``
    comments allowed) when present, otherwise sorted file names.
    """
    directory = Path(directory)
    manifest = directory / MANIFEST
    if manifest.is_file():
        names = [
            line.strip()
            for line in manifest.read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.startswith("#")
        ]
    else:
        names = sorted(
            p.name for p in directory.iterdir() if p.is_file() and p.suffix.lower() in (".txt", ".html", ".htm")
        )
    run = fetch_all(FetchSource("local", str(directory)), names)
    return run


# -- tokens and counting ----------------------------------------------------


def unigrams(text: str) -> List[str]:
    return _WORD.findall(text.lower())


def tokenize(text: str) -> List[str]:
    """Lowercased word tokens followed by underscore-joined adjacent pairs.

    Pairs never span a line break, so counting line by line and counting a
    whole document agree.
    """
    uni, bi = [], []
    for line in text.lower().splitlines():
        toks = _WORD.findall(line)
        uni.extend(toks)
        bi.extend(f"{a}_{b}" for a, b in zip(toks, toks[1:]))
    return uni + bi


def normalize_searchword(word: str) -> tuple:
    """Search word as a token sequence: ``"carry_back"`` -> ``("carry", "back")``."""
    return tuple(t for part in word.lower().split("_") for t in _WORD.findall(part))


def count_in_line(tokens: Sequence[str], phrase: tuple) -> int:
    n = len(phrase)
    if n == 0:
        return 0
    if n == 1:
        return tokens.count(phrase[0])
    return sum(1 for i in range(len(tokens) - n + 1) if tuple(tokens[i : i + n]) == phrase)


@dataclass
class FrequencyMatrix:
    rows: List[str]
    cols: List[str]
    counts: np.ndarray
    token_totals: Optional[List[int]] = None  # unigram count per row

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=np.int64).reshape(len(self.rows), len(self.cols))
        if (self.counts < 0).any():
            raise ValueError("frequency counts must be non-negative")

    def row(self, doc_id: str) -> np.ndarray:
        return self.counts[self.rows.index(doc_id)]

    def sparsity(self) -> float:
        """Fraction of zero cells."""
        if self.counts.size == 0:
            return 1.0
        return float((self.counts == 0).sum()) / self.counts.size

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["doc_id"] + list(self.cols))
            for doc_id, row in zip(self.rows, self.counts):
                w.writerow([doc_id] + [int(v) for v in row])

    @classmethod
    def from_csv(cls, path) -> "FrequencyMatrix":
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if not header or header[0] != "doc_id":
                raise ValueError(f"{path}: matrix CSV must start with a doc_id column")
            rows, counts = [], []
            for lineno, rec in enumerate(reader, 2):
                if len(rec) != len(header):
                    raise ValueError(f"{path}: line {lineno} has {len(rec)} fields, expected {len(header)}")
                rows.append(rec[0])
                counts.append([int(v) for v in rec[1:]])
        cols = header[1:]
        return cls(rows, cols, np.array(counts, dtype=np.int64).reshape(len(rows), len(cols)))


def count_frequencies(documents: Sequence[Document], searchwords: Sequence[str]) -> FrequencyMatrix:
    """``freq[i][k]``: occurrences of search word ``k`` in document ``i``, summed over lines.

    Multi-word entries (``carry_back``, ``drop_like_flies``) match the
    corresponding run of adjacent tokens on one line.
    """
    if not searchwords:
        raise ValueError("searchwords must not be empty")
    phrases = [normalize_searchword(w) for w in searchwords]
    unique = list(dict.fromkeys(phrases))
    col_of = {p: i for i, p in enumerate(unique)}
    counts = np.zeros((len(documents), len(searchwords)), dtype=np.int64)
    totals = []
    short = [(j, p) for j, p in enumerate(unique) if len(p) <= 2]
    long_ = [(j, p) for j, p in enumerate(unique) if len(p) > 2]
    for i, doc in enumerate(documents):
        per_phrase = np.zeros(len(unique), dtype=np.int64)
        total = 0
        for line in doc.text.lower().splitlines():
            toks = _WORD.findall(line)
            total += len(toks)
            if not toks:
                continue
            grams = Counter(toks)
            grams.update(zip(toks, toks[1:]))
            for j, p in short:
                per_phrase[j] += grams[p[0]] if len(p) == 1 else grams[p]
            for j, p in long_:
                per_phrase[j] += count_in_line(toks, p)
        counts[i] = [per_phrase[col_of[p]] for p in phrases]
        totals.append(total)
    return FrequencyMatrix([d.id for d in documents], list(searchwords), counts, totals)
