"""Score the bundled review corpus against a lexicon, then label each review.

Shows the frequency matrix, the A/B/Unclassified decision at eps = 0.5, and
the clause-level sign sequence for the mixed review.
"""

from pathlib import Path

from lexpand import Thresholds, count_frequencies, load_lexicon
from lexpand.classifier import average_sign, classify_matrix, clause_signs, split_clauses
from lexpand.corpus import load_corpus_dir

ROOT = Path(__file__).resolve().parent.parent / "testdata"

lexicon = load_lexicon(ROOT / "corpus_lexicon.tsv")
docs = load_corpus_dir(ROOT / "corpus").documents
matrix = count_frequencies(docs, [w for w, _ in lexicon.columns()])

print("doc".ljust(14) + " ".join(f"{w[:7]:>7}" for w in matrix.cols))
for doc_id, row in zip(matrix.rows, matrix.counts):
    print(doc_id.ljust(14) + " ".join(f"{v:7d}" for v in row))
print(f"sparsity {matrix.sparsity():.3f}\n")

for r in classify_matrix(matrix, lexicon, Thresholds(0.5, 0.5)):
    print(f"{r.doc_id:14} {r.label.value:13} p_good={r.p_good:.2f} p_bad={r.p_bad:.2f}")

sentence = "the action sequences were terrible yet the screenplay was superb"
seq = clause_signs(split_clauses(sentence), lexicon)
print(f"\n{sentence!r}")
print("clause signs:", [c.sign for c in seq], "average:", average_sign(seq))
