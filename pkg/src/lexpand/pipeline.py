"""Run configuration and the step functions shared by the CLI subcommands.

Each subcommand is a thin wrapper over one step here, and ``run_pipeline``
chains the same steps, so a pipeline run and a hand-chained sequence of
subcommands produce identical files.
"""

from __future__ import annotations

import csv
import dataclasses
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from . import plot as plotting
from .classifier import ClassificationResult, Thresholds, classify_matrix, document_sign
from .corpus import CorpusRun, FetchSource, count_frequencies, crawl, load_corpus_dir, unigrams
from .errors import ConfigError
from .lexicon import (
    ExpansionConfig,
    SeedLexicon,
    expand_by_sweep,
    load_lexicon,
    save_lexicon,
    save_trace,
)
from .taxonomy import build_graph
from .wndb import default_wordnet_dir, load_database

log = logging.getLogger(__name__)

BUILTIN_SEEDS = "builtin:default"
PATH_KEYS = ("wordnet_dir", "seeds", "corpus_dir", "hub", "out_dir")
OUTPUT_NAMES = {
    "lexicon": "lexicon.tsv",
    "matrix": "matrix.csv",
    "results": "results.csv",
    "scatter": "scatter.csv",
    "svg": "scatter.svg",
    "config": "run.conf",
}


@dataclass
class RunConfig:
    wordnet_dir: Optional[str] = None
    seeds: str = BUILTIN_SEEDS
    corpus_dir: Optional[str] = None
    hub: Optional[str] = None  # local hub page, followed through `keywords`
    url: Optional[str] = None  # remote hub page
    keywords: List[str] = field(default_factory=list)
    out_dir: str = "lexpand-out"
    tau_good: float = 0.8
    tau_bad: float = 0.2
    limit: int = 25000
    cap_good: int = 3
    cap_bad: int = 5
    frozen: bool = False
    dedup: bool = False
    order: str = "legacy"
    sample: bool = False
    random_seed: int = 0
    eps1: float = 0.5
    eps2: float = 0.5
    clauses: bool = False
    inherit: bool = True
    normalize: bool = False
    svg: bool = True
    swap_axes: bool = False
    jobs: int = 4

    def expansion(self) -> ExpansionConfig:
        return ExpansionConfig(
            tau_good=self.tau_good,
            tau_bad=self.tau_bad,
            synset_limit=self.limit,
            cap_good=self.cap_good,
            cap_bad=self.cap_bad,
            dedup=self.dedup,
            live_growth=not self.frozen,
            order=self.order,
            sample=self.sample,
            seed=self.random_seed,
        )

    def thresholds(self) -> Thresholds:
        return Thresholds(self.eps1, self.eps2)

    def to_text(self) -> str:
        lines = []
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if v is None:
                continue
            if isinstance(v, list):
                v = ",".join(v)
            elif isinstance(v, bool):
                v = "true" if v else "false"
            lines.append(f"{f.name} = {v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, origin: str = "<config>") -> "RunConfig":
        types = {f.name: f for f in dataclasses.fields(cls)}
        defaults = cls()
        values = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or not key:
                raise ConfigError(f"{origin}: line {lineno}: expected 'key = value'")
            if key not in types:
                raise ConfigError(f"{origin}: line {lineno}: unknown key {key!r}")
            values[key] = _coerce(getattr(defaults, key), value, key, f"{origin}: line {lineno}")
        cfg = cls(**values)
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path) -> "RunConfig":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        cfg = cls.from_text(text, str(path))
        # relative paths in a config file are relative to the file itself
        base = Path(path).resolve().parent
        defaults = cls()
        for key in PATH_KEYS:
            value = getattr(cfg, key)
            if value and value != getattr(defaults, key) and not Path(value).is_absolute():
                setattr(cfg, key, str(base / value))
        return cfg

    def validate(self) -> None:
        self.expansion()
        self.thresholds()
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")


def _coerce(default, value: str, key: str, where: str):
    try:
        if isinstance(default, bool):
            low = value.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(value)
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
        if isinstance(default, list):
            return [v.strip() for v in value.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"{where}: bad value for {key}: {value!r}") from None
    return value or None


# -- steps ------------------------------------------------------------------


def load_wordnet(wordnet_dir: Optional[str]):
    directory = wordnet_dir or default_wordnet_dir()
    if not directory:
        raise ConfigError("no WordNet directory: pass --wordnet or set LEXPAND_WORDNET_DIR")
    t0 = time.perf_counter()
    db = load_database(directory)
    graph = build_graph(db)
    log.info("loaded %d synsets from %s in %.1fs", db.total, directory, time.perf_counter() - t0)
    return db, graph


def read_seeds(spec: str) -> SeedLexicon:
    if spec == BUILTIN_SEEDS:
        return SeedLexicon.default_seeds()
    return load_lexicon(spec)


def step_expand(db, graph, seeds: SeedLexicon, config: ExpansionConfig, out, trace=None):
    lexicon, report = expand_by_sweep(db, graph, seeds, config)
    save_lexicon(lexicon, out)
    if trace is not None:
        save_trace(report, trace)
    return lexicon, report


def gather_corpus(cfg: RunConfig) -> CorpusRun:
    sources = [x for x in (cfg.corpus_dir, cfg.hub, cfg.url) if x]
    if len(sources) != 1:
        raise ConfigError("give exactly one corpus source: a directory, a local hub page or a URL")
    if cfg.corpus_dir:
        run = load_corpus_dir(cfg.corpus_dir)
    else:
        if not cfg.keywords:
            raise ConfigError("hub crawling needs at least one keyword")
        kind = "http" if cfg.url else "local"
        run = crawl(FetchSource(kind, None, cfg.jobs), cfg.url or cfg.hub, cfg.keywords)
    for err in run.errors:
        log.warning("fetch failed: %s", err)
    return run


def step_score(run: CorpusRun, lexicon: SeedLexicon, out):
    words = [w for w, _ in lexicon.columns()]
    matrix = count_frequencies(run.documents, words)
    matrix.to_csv(out)
    return matrix


def step_classify(matrix, lexicon, thresholds: Thresholds, out, documents=None,
                  clauses=False, inherit=True, normalize=False) -> List[ClassificationResult]:
    if documents is not None:
        by_id = {d.id: d for d in documents}
        missing = [r for r in matrix.rows if r not in by_id]
        if missing:
            raise ConfigError(f"matrix rows missing from the corpus: {', '.join(missing[:3])}")
        if matrix.token_totals is None:
            matrix.token_totals = [len(unigrams(by_id[r].text)) for r in matrix.rows]
    if normalize and matrix.token_totals is None:
        raise ConfigError("normalized coordinates need the corpus (token totals)")
    if clauses and documents is None:
        raise ConfigError("clause refinement needs the corpus text")
    results = classify_matrix(matrix, lexicon, thresholds, normalize)
    if clauses:
        results = [
            dataclasses.replace(r, avg_sign=document_sign(by_id[r.doc_id].text, lexicon, inherit))
            for r in results
        ]
    write_results(results, out)
    return results


RESULT_FIELDS = ("doc_id", "label", "p_good", "p_bad", "strength", "x", "y", "avg_sign")


def fmt(v) -> str:
    if v is None:
        return ""
    v = float(v)
    return str(int(v)) if v.is_integer() else f"{v:.6g}"


def write_results(results, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RESULT_FIELDS)
        for r in results:
            w.writerow([
                r.doc_id, r.label.value, fmt(r.p_good), fmt(r.p_bad), fmt(r.strength),
                fmt(r.point.x), fmt(r.point.y), fmt(r.avg_sign),
            ])


def step_plot(results_csv, scatter_csv, svg=None, swap_axes=False):
    return plotting.plot(results_csv, scatter_csv, svg, swap_axes)


def run_pipeline(cfg: RunConfig, db=None, graph=None) -> dict:
    """expand, score, classify, plot; returns the paths written."""
    cfg.validate()
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {k: out / v for k, v in OUTPUT_NAMES.items()}
    if db is None or graph is None:
        db, graph = load_wordnet(cfg.wordnet_dir)
    run = gather_corpus(cfg)

    lexicon, report = step_expand(db, graph, read_seeds(cfg.seeds), cfg.expansion(), paths["lexicon"])
    log.info("expand: +%d good, +%d bad, %d skipped", report.appended_good, report.appended_bad, report.skipped)
    matrix = step_score(run, lexicon, paths["matrix"])
    log.info("score: %d documents x %d words, sparsity %.3f", len(matrix.rows), len(matrix.cols), matrix.sparsity())
    step_classify(matrix, lexicon, cfg.thresholds(), paths["results"], run.documents,
                  cfg.clauses, cfg.inherit, cfg.normalize)
    step_plot(paths["results"], paths["scatter"], paths["svg"] if cfg.svg else None, cfg.swap_axes)
    paths["config"].write_text(cfg.to_text(), encoding="utf-8")
    if not cfg.svg:
        del paths["svg"]
    return {k: str(v) for k, v in paths.items()} | {
        "sparsity": matrix.sparsity(),
        "fetch_errors": len(run.errors),
        "appended_good": report.appended_good,
        "appended_bad": report.appended_bad,
    }
