"""Hypernym taxonomy over synset ids, with memoized upward distance maps.

Distances are counted in edges. The ancestral distance between two synsets
is ``min(dist_up(a, c) + dist_up(b, c))`` over common ancestors ``c``; it is
never an unrestricted undirected path.

A part of speech whose hierarchy has several roots (verbs, in WordNet) can
optionally be given a *virtual root* sitting one edge above every root. Pass
``simulate_root=True`` to the query functions to see the augmented graph;
the default is the bare data.
"""

from __future__ import annotations

from collections import deque
from types import MappingProxyType
from typing import Mapping, Optional

from .errors import IntegrityError, LookupFailure
from .wndb import FILE_POS, PartOfSpeech, SynsetId, WordNetDatabase

HYPERNYM_SYMBOLS = ("@", "@i")
VIRTUAL_OFFSET = -1


def virtual_root(pos) -> SynsetId:
    return SynsetId(PartOfSpeech.parse(pos), VIRTUAL_OFFSET)


def is_virtual(sid: SynsetId) -> bool:
    return sid.offset == VIRTUAL_OFFSET


class TaxonomyGraph:
    """Immutable hypernym/hyponym adjacency plus per-POS roots and depths.

    Build with :func:`build_graph`. The only mutable state is the ancestor-map
    memo; ``dict.setdefault`` keeps concurrent insertion safe under the GIL.
    """

    def __init__(self, up: Mapping, names: Optional[Mapping] = None):
        self.up = MappingProxyType({k: tuple(v) for k, v in up.items()})
        down = {k: [] for k in self.up}
        for child, parents in self.up.items():
            for parent in parents:
                down.setdefault(parent, []).append(child)
        self.down = MappingProxyType({k: tuple(v) for k, v in down.items()})
        self.names = MappingProxyType(dict(names or {}))

        self._check_acyclic()

        roots = {p: [] for p in FILE_POS}
        hierarchical = set()
        for sid, parents in self.up.items():
            if parents:
                hierarchical.add(sid.pos)
            else:
                roots.setdefault(sid.pos, []).append(sid)
        self.roots = MappingProxyType({p: tuple(sorted(r, key=SynsetId.sort_key)) for p, r in roots.items()})
        self.hierarchical = frozenset(hierarchical)

        depth = {}
        queue = deque()
        for p in self.hierarchical:
            for r in self.roots[p]:
                depth[r] = 0
                queue.append(r)
        while queue:
            node = queue.popleft()
            d = depth[node] + 1
            for child in self.down.get(node, ()):
                if child not in depth:
                    depth[child] = d
                    queue.append(child)
        self._depth = depth
        self._max_depth = {p: 0 for p in FILE_POS}
        for sid, d in depth.items():
            if d > self._max_depth[sid.pos]:
                self._max_depth[sid.pos] = d
        self._cache = ({}, {})

    def __contains__(self, sid):
        return sid in self.up

    def __len__(self):
        return len(self.up)

    def _check_acyclic(self):
        indegree = {sid: len(parents) for sid, parents in self.up.items()}
        queue = deque(sid for sid, n in indegree.items() if n == 0)
        seen = 0
        while queue:
            node = queue.popleft()
            seen += 1
            for child in self.down.get(node, ()):
                indegree[child] -= 1
                if indegree[child] == 0:
                    queue.append(child)
        if seen == len(indegree):
            return
        cycle = _find_cycle(self.up, [s for s, n in indegree.items() if n > 0])
        shown = " -> ".join(self.label(s) for s in cycle)
        raise IntegrityError(f"hypernym cycle: {shown}", cycle)

    def label(self, sid: SynsetId) -> str:
        if is_virtual(sid):
            return f"*ROOT*.{sid.pos.value}"
        return self.names.get(sid) or str(sid)

    def needs_root(self, pos) -> bool:
        pos = PartOfSpeech.parse(pos).file_pos
        return pos in self.hierarchical and len(self.roots.get(pos, ())) > 1

    def max_depth(self, pos, simulate_root: bool = False) -> int:
        pos = PartOfSpeech.parse(pos).file_pos
        d = self._max_depth.get(pos, 0)
        return d + 1 if simulate_root and self.needs_root(pos) else d

    def _require(self, sid: SynsetId):
        if sid not in self.up and not (is_virtual(sid) and self.needs_root(sid.pos)):
            raise LookupFailure(f"unknown synset {sid}")

    def ancestors(self, sid: SynsetId, simulate_root: bool = False) -> dict:
        """Cached BFS closure; callers must not mutate the returned dict."""
        cache = self._cache[bool(simulate_root)]
        found = cache.get(sid)
        if found is not None:
            return found
        self._require(sid)
        up = self.up
        dist = {sid: 0}
        frontier = [sid]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for node in frontier:
                for parent in up.get(node, ()):
                    if parent not in dist:
                        dist[parent] = d
                        nxt.append(parent)
            frontier = nxt
        if simulate_root and not is_virtual(sid) and self.needs_root(sid.pos):
            dist[virtual_root(sid.pos)] = min(v for k, v in dist.items() if not up.get(k)) + 1
        return cache.setdefault(sid, dist)

    def depth(self, sid: SynsetId, simulate_root: bool = False) -> Optional[int]:
        self._require(sid)
        if is_virtual(sid):
            return 0
        if sid.pos not in self.hierarchical:
            return None
        d = self._depth.get(sid)
        if d is None:
            return None
        return d + 1 if simulate_root and self.needs_root(sid.pos) else d


def _find_cycle(up: Mapping, candidates) -> list:
    # every node left after Kahn's pass lies on or above a cycle
    pending = set(candidates)
    start = candidates[0]
    path, index = [], {}
    node = start
    while node not in index:
        index[node] = len(path)
        path.append(node)
        node = next(p for p in up[node] if p in pending)
    return path[index[node] :] + [node]


def build_graph(db: WordNetDatabase) -> TaxonomyGraph:
    """Only ``@`` and ``@i`` pointers become edges."""
    up = {}
    names = {}
    for sid, s in db.synsets.items():
        parents = []
        for p in s.pointers:
            if p.symbol in HYPERNYM_SYMBOLS and p.target not in parents:
                parents.append(p.target)
        up[sid] = parents
        names[sid] = s.name
    return TaxonomyGraph(up, names)


def ancestor_map(graph: TaxonomyGraph, s: SynsetId, simulate_root: bool = False) -> Mapping:
    """``{ancestor: minimal up-distance}``, including ``s`` itself at 0."""
    return MappingProxyType(graph.ancestors(s, simulate_root))


def _common(graph, a, b, simulate_root):
    ma = graph.ancestors(a, simulate_root)
    mb = graph.ancestors(b, simulate_root)
    if len(mb) < len(ma):
        ma, mb = mb, ma
    return ma, mb


def shortest_ancestral_distance(
    graph: TaxonomyGraph, a: SynsetId, b: SynsetId, simulate_root: bool = False
) -> Optional[int]:
    """Edge count of the shortest path through one common ancestor; None if there is none."""
    ma, mb = _common(graph, a, b, simulate_root)
    if a.pos is not b.pos:
        return None
    best = None
    for c, da in ma.items():
        db_ = mb.get(c)
        if db_ is not None and (best is None or da + db_ < best):
            best = da + db_
    return best


def least_common_subsumer(
    graph: TaxonomyGraph, a: SynsetId, b: SynsetId, simulate_root: bool = False
) -> Optional[SynsetId]:
    """Common ancestor minimizing the path sum; ties go to the deeper node, then the lower offset."""
    ma, mb = _common(graph, a, b, simulate_root)
    if a.pos is not b.pos:
        return None
    best_key, best = None, None
    for c, da in ma.items():
        db_ = mb.get(c)
        if db_ is None:
            continue
        key = (da + db_, -(graph.depth(c, simulate_root) or 0), c.offset)
        if best_key is None or key < best_key:
            best_key, best = key, c
    return best


def depth(graph: TaxonomyGraph, s: SynsetId, simulate_root: bool = False) -> Optional[int]:
    """Minimal up-distance to a root; None for POS without a hierarchy."""
    return graph.depth(s, simulate_root)


def hypernym_paths(graph: TaxonomyGraph, s: SynsetId) -> list:
    """Every upward path from ``s`` to a root, each listed root-last."""
    parents = graph.up.get(s)
    if parents is None:
        raise LookupFailure(f"unknown synset {s}")
    if not parents:
        return [[s]]
    return [[s] + rest for p in parents for rest in hypernym_paths(graph, p)]
