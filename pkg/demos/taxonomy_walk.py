"""Walk the miniature taxonomy: ancestors, distances and the three similarity measures.

    python demos/taxonomy_walk.py            # bundled six-synset database
    python demos/taxonomy_walk.py /path/wn   # a full WordNet 3.0 dict directory
"""

import sys
from pathlib import Path

from lexpand import ancestor_map, build_graph, lch_measure, load_database, path_similarity, wup_measure
from lexpand.taxonomy import least_common_subsumer

MINIWN = Path(__file__).resolve().parent.parent / "testdata" / "miniwn"


def main(directory):
    db = load_database(directory)
    graph = build_graph(db)
    print(f"{db.total} synsets loaded from {directory}")

    dog = db.synset("dog.n.01").id
    print("\nancestors of dog.n.01 (distance in edges):")
    for sid, d in sorted(ancestor_map(graph, dog).items(), key=lambda kv: kv[1]):
        print(f"  {d}  {db[sid].name}")

    pairs = [("dog.n.01", "cat.n.01"), ("dog.n.01", "car.n.01")]
    if db.total > 1000:
        pairs.append(("hit.v.01", "slap.v.01"))  # verbs meet only at the virtual root
    print("\npair                      path    lch     wup     lcs")
    for a, b in pairs:
        x, y = db.synset(a).id, db.synset(b).id
        lcs = least_common_subsumer(graph, x, y, simulate_root=True)
        lcs_name = db[lcs].name if lcs in db else "<virtual root>"
        print(f"{a + ' / ' + b:25} {path_similarity(graph, x, y):.4f}  "
              f"{lch_measure(graph, x, y):.4f}  {wup_measure(graph, x, y):.4f}  {lcs_name}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else MINIWN)
