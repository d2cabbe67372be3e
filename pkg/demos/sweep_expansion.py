"""Grow a seed lexicon by sweeping the synset list, printing every decision.

Each synset's first word is compared with the good and bad seeds. The best
path similarity on each side (maxp, maxn) decides whether the word joins a
side or is skipped.
"""

import sys
from pathlib import Path

from lexpand import ExpansionConfig, build_graph, expand_by_sweep, load_database, load_lexicon

ROOT = Path(__file__).resolve().parent.parent / "testdata"


def main(directory=ROOT / "miniwn"):
    db = load_database(directory)
    graph = build_graph(db)
    seeds = load_lexicon(ROOT / "pipeline_seeds.tsv")
    print("seeds   good:", " ".join(seeds.good))
    print("        bad: ", " ".join(seeds.bad))

    # tau_bad is raised so the toy database can say something about the bad side
    cfg = ExpansionConfig(tau_bad=0.5, cap_bad=3, order="file", trace=True)
    grown, report = expand_by_sweep(db, graph, seeds, cfg)

    print("\nword        maxp   maxn   decision")
    for word, maxp, maxn, decision in report.trace:
        print(f"{word:11} {maxp:.3f}  {maxn:.3f}  {decision}")
    print(f"\n+{report.appended_good} good, +{report.appended_bad} bad, {report.skipped} skipped")
    print("final good:", " ".join(grown.good))


if __name__ == "__main__":
    main(*sys.argv[1:2])
