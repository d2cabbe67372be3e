"""``lexpand`` command line: load, sim, expand, score, classify, plot, pipeline, ancestors."""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
import time

from . import __version__
from .classifier import Thresholds
from .corpus import FrequencyMatrix
from .errors import ConfigError, LexpandError, LookupFailure
from .lexicon import SWEEP_ORDERS, ExpansionConfig, load_lexicon
from .pipeline import (
    BUILTIN_SEEDS,
    RunConfig,
    gather_corpus,
    load_wordnet,
    read_seeds,
    run_pipeline,
    step_classify,
    step_expand,
    step_plot,
    step_score,
)
from .similarity import MeasureKind, similarity
from .taxonomy import ancestor_map
from .wndb import FILE_POS, default_wordnet_dir, synsets_for_word

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _wordnet_arg(p):
    p.add_argument("--wordnet", metavar="DIR", help="WordNet dict directory (default: $LEXPAND_WORDNET_DIR)")


def _resolve(db, text):
    """A synset name such as ``hit.v.01`` or a bare word (all its senses)."""
    if text.count(".") >= 2:
        try:
            return [db.synset(text)]
        except LookupFailure:
            pass
    return synsets_for_word(db, text)


# -- subcommands ------------------------------------------------------------


def cmd_load(args):
    t0 = time.perf_counter()
    db, graph = load_wordnet(args.wordnet)
    elapsed = time.perf_counter() - t0
    print(f"directory\t{db.directory}")
    print(f"version\t{db.version or 'unknown'}")
    for name, n in db.counts.items():
        print(f"synsets.{name}\t{n}")
    print(f"synsets.total\t{db.total}")
    print(f"index.entries\t{len(db.index)}")
    for pos in FILE_POS:
        print(f"roots.{pos.name.lower()}\t{len(graph.roots.get(pos, ()))}")
        print(f"max_depth.{pos.name.lower()}\t{graph.max_depth(pos)}")
    print(f"load_seconds\t{elapsed:.2f}")
    return EXIT_OK


def cmd_sim(args):
    db, graph = load_wordnet(args.wordnet)
    kind = MeasureKind.resolve(args.measure, args.variant)
    first = _resolve(db, args.word1)
    second = _resolve(db, args.word2)
    if not first or not second:
        missing = args.word1 if not first else args.word2
        raise LookupFailure(f"no synsets for {missing!r}")
    if not args.all_senses:
        # first sense per part of speech on each side
        def firsts(ss):
            seen = {}
            for s in ss:
                seen.setdefault(s.id.pos, s)
            return list(seen.values())

        first, second = firsts(first), firsts(second)
    simulate = not args.no_virtual_root
    for a in first:
        for b in second:
            if a.id.pos is not b.id.pos and not args.all_senses:
                continue
            score = similarity(graph, a.id, b.id, kind, simulate)
            shown = "undefined" if score is None else f"{score:.6f}"
            print(f"{a.name}\t{b.name}\t{shown}")
    return EXIT_OK


def _expansion_from_args(args) -> ExpansionConfig:
    return ExpansionConfig(
        tau_good=args.tau_good,
        tau_bad=args.tau_bad,
        synset_limit=args.limit,
        cap_good=args.cap_good,
        cap_bad=args.cap_bad,
        dedup=args.dedup,
        live_growth=not args.frozen,
        order=args.order,
        sample=args.sample,
        seed=args.seed,
        trace=args.trace is not None,
    )


def cmd_expand(args):
    config = _expansion_from_args(args)
    db, graph = load_wordnet(args.wordnet)
    t0 = time.perf_counter()
    _, report = step_expand(db, graph, read_seeds(args.seeds), config, args.output, args.trace)
    print(
        f"appended_good={report.appended_good} appended_bad={report.appended_bad} "
        f"skipped={report.skipped} seconds={time.perf_counter() - t0:.2f}"
    )
    return EXIT_OK


def _corpus_config(args) -> RunConfig:
    return RunConfig(
        corpus_dir=args.corpus,
        hub=getattr(args, "hub", None),
        url=getattr(args, "url", None),
        keywords=[k for k in (getattr(args, "keywords", "") or "").split(",") if k],
        jobs=args.jobs,
    )


def cmd_score(args):
    run = gather_corpus(_corpus_config(args))
    matrix = step_score(run, load_lexicon(args.lexicon), args.output)
    print(
        f"documents={len(matrix.rows)} words={len(matrix.cols)} "
        f"sparsity={matrix.sparsity():.4f} fetch_errors={len(run.errors)}"
    )
    for err in run.errors:
        print(f"fetch error: {err}", file=sys.stderr)
    return EXIT_OK


def cmd_classify(args):
    thresholds = Thresholds(args.eps1, args.eps2)
    print(f"eps1={thresholds.eps1:g} eps2={thresholds.eps2:g}")
    matrix = FrequencyMatrix.from_csv(args.matrix)
    documents = gather_corpus(_corpus_config(args)).documents if args.corpus else None
    results = step_classify(
        matrix, load_lexicon(args.lexicon), thresholds, args.output, documents,
        args.clauses, not args.no_inherit, args.normalize,
    )
    counts = {}
    for r in results:
        counts[r.label.value] = counts.get(r.label.value, 0) + 1
        if r.both_passed:
            print(f"note: {r.doc_id} passed both thresholds; larger proportion kept", file=sys.stderr)
    print(" ".join(f"{k}={counts.get(k, 0)}" for k in ("A", "B", "Unclassified")))
    return EXIT_OK


def cmd_plot(args):
    points = step_plot(args.results, args.output, args.svg, args.swap_axes)
    print(f"points={len(points)}")
    return EXIT_OK


def cmd_pipeline(args):
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    overrides = {
        "wordnet_dir": args.wordnet,
        "out_dir": args.out,
        "random_seed": args.seed,
        "jobs": args.jobs,
        "corpus_dir": args.corpus,
    }
    cfg = dataclasses.replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    if not (cfg.wordnet_dir or default_wordnet_dir()):
        raise UsageError("wordnet_dir is not set (config key, --wordnet or LEXPAND_WORDNET_DIR)")
    print(f"eps1={cfg.eps1:g} eps2={cfg.eps2:g}")
    summary = run_pipeline(cfg)
    for key, value in summary.items():
        print(f"{key}\t{value:.4f}" if isinstance(value, float) else f"{key}\t{value}")
    return EXIT_OK


def cmd_ancestors(args):
    db, graph = load_wordnet(args.wordnet)
    targets = _resolve(db, args.synset)
    if not targets:
        raise LookupFailure(f"no synsets for {args.synset!r}")
    for s in targets:
        print(f"# {s.name}")
        amap = ancestor_map(graph, s.id, args.virtual_root)
        for sid, d in sorted(amap.items(), key=lambda kv: (kv[1], kv[0].sort_key())):
            print(f"{d}\t{graph.label(sid)}")
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lexpand", description="WordNet lexicon expansion and lexicon-based document polarity.")
    parser.add_argument("--version", action="version", version=f"lexpand {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("load", help="parse and validate a WordNet database, print statistics")
    _wordnet_arg(p)
    p.set_defaults(func=cmd_load)

    p = sub.add_parser("sim", help="similarity between the senses of two words")
    p.add_argument("word1", help="word or synset name (e.g. hit.v.01)")
    p.add_argument("word2")
    p.add_argument("--measure", choices=("path", "lch", "wup"), default="path")
    p.add_argument("--variant", choices=("ratio", "standard"), default="ratio")
    p.add_argument("--all-senses", action="store_true", help="score every sense pair, not just first senses")
    p.add_argument("--no-virtual-root", action="store_true", help="leave multi-root hierarchies (verbs) unjoined")
    _wordnet_arg(p)
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("expand", help="grow a seed lexicon by sweeping synsets")
    _wordnet_arg(p)
    p.add_argument("--seeds", default=BUILTIN_SEEDS, help=f"seed lexicon file (default: {BUILTIN_SEEDS})")
    p.add_argument("--tau-good", type=float, default=0.8, help="upper bound on maxp (default 0.8)")
    p.add_argument("--tau-bad", type=float, default=0.2, help="upper bound on maxn (default 0.2)")
    p.add_argument("--limit", type=int, default=25000, help="synsets to examine (default 25000)")
    p.add_argument("--cap-good", type=int, default=3, help="senses per good seed (default 3)")
    p.add_argument("--cap-bad", type=int, default=5, help="senses per bad seed (default 5)")
    p.add_argument("--order", choices=SWEEP_ORDERS, default="legacy",
                   help="synset order: legacy = adj, adv, verb, noun (default); file = noun first")
    p.add_argument("--sample", action="store_true", help="sweep a random subset instead of the prefix")
    p.add_argument("--seed", type=int, default=0, help="random seed for --sample")
    p.add_argument("--frozen", action="store_true", help="compare against the seeds only")
    p.add_argument("--dedup", action="store_true", help="skip words already in the lexicon")
    p.add_argument("--trace", metavar="FILE", help="write word, maxp, maxn, decision per synset")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_expand)

    def corpus_args(p, required):
        g = p.add_mutually_exclusive_group(required=required)
        g.add_argument("--corpus", metavar="DIR")
        g.add_argument("--hub", metavar="FILE", help="local hub page whose links are followed")
        g.add_argument("--url", help="remote hub page whose links are followed")
        p.add_argument("--keywords", help="comma-separated sublink keywords (hub modes)")
        p.add_argument("--jobs", type=int, default=4, help="max concurrent fetches")

    p = sub.add_parser("score", help="count lexicon words per document")
    corpus_args(p, True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("classify", help="label documents from a frequency matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--eps1", type=float, default=0.5)
    p.add_argument("--eps2", type=float, default=0.5)
    p.add_argument("--clauses", action="store_true", help="add the clause-sign average (needs the corpus)")
    p.add_argument("--no-inherit", action="store_true", help="drop evidence-free clauses instead of inheriting")
    p.add_argument("--normalize", action="store_true", help="divide coordinates by document length")
    corpus_args(p, False)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("plot", help="scatter CSV (and SVG) from classification results")
    p.add_argument("--results", required=True)
    p.add_argument("-o", "--output", required=True, help="scatter CSV")
    p.add_argument("--svg", metavar="FILE")
    p.add_argument("--swap-axes", action="store_true", help="bad-set frequency on the horizontal axis")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("pipeline", help="expand, score, classify and plot in one run")
    p.add_argument("--config", metavar="FILE", help="key = value run configuration")
    _wordnet_arg(p)
    p.add_argument("--corpus", metavar="DIR")
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("ancestors", help="debug: dump a synset's ancestor map")
    p.add_argument("synset", help="synset name (dog.n.01) or word")
    p.add_argument("--virtual-root", action="store_true")
    _wordnet_arg(p)
    p.set_defaults(func=cmd_ancestors)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"lexpand {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LexpandError as exc:
        print(f"lexpand {args.command}: {exc.module} error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except (OSError, ValueError) as exc:
        print(f"lexpand {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
