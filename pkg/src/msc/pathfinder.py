"""k-shortest loopless START->END paths and candidate filtering."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .corpus import Token, word_count
from .wordgraph import END, START, WordGraph, path_text, path_tokens

PENN_VERB_TAGS = frozenset({"VB", "VBD", "VBG", "VBN", "VBP", "VBZ"})


@dataclass
class CompressionCandidate:
    path: tuple[int, ...]          # node ids, START and END included
    tokens: tuple[Token, ...]
    weights: tuple[float, ...]     # one per edge along the path
    total_weight: float
    text: str = ""
    informativity: float | None = None
    lm_score: float | None = None
    final_score: float | None = None

    @property
    def word_count(self) -> int:
        return word_count(self.tokens)

    @property
    def n_edges(self) -> int:
        return len(self.weights)

    @property
    def tags(self) -> list[str]:
        return [t.pos for t in self.tokens]

    @classmethod
    def from_path(cls, graph: WordGraph, path: Sequence[int]) -> "CompressionCandidate":
        path = tuple(path)
        weights = tuple(graph.edge_weight(u, v) for u, v in zip(path, path[1:]))
        return cls(path, tuple(path_tokens(graph, path)), weights, math.fsum(weights),
                   path_text(graph, path))


Adjacency = Mapping[int, Mapping[int, float]]


def _spur_search(adj: Adjacency, source: int, target: int, banned_nodes: set[int],
                 banned_edges: set[tuple[int, int]]):
    """Best path source->target under (weight, hops, node sequence) order."""
    # labels compare lexicographically; sequences only break exact ties
    best: dict[int, tuple[float, int, tuple[int, ...]]] = {source: (0.0, 0, (source,))}
    heap = [(0.0, 0, (source,))]
    done = set()
    while heap:
        w, hops, seq = heapq.heappop(heap)
        u = seq[-1]
        if u in done:
            continue
        done.add(u)
        if u == target:
            return seq
        for v, ew in adj.get(u, {}).items():
            if v in banned_nodes or v in done or (u, v) in banned_edges:
                continue
            label = (w + ew, hops + 1, seq + (v,))
            if v not in best or label < best[v]:
                best[v] = label
                heapq.heappush(heap, label)
    return None


def _path_key(adj: Adjacency, path: tuple[int, ...]):
    total = math.fsum(adj[u][v] for u, v in zip(path, path[1:]))
    return (total, len(path), path)


def yen_k_shortest(adj: Adjacency, source: int, target: int,
                   k: int | None) -> list[tuple[float, tuple[int, ...]]]:
    """Loopless k-shortest paths by total weight (Yen).

    Ties go to fewer nodes, then to the lexicographically smaller node-id
    sequence. ``k=None`` enumerates every simple path.
    """
    if k is not None and k < 1:
        raise ValueError("k must be >= 1")
    first = _spur_search(adj, source, target, set(), set())
    if first is None:
        return []
    found = [first]
    seen = {first}
    heap: list = []
    while k is None or len(found) < k:
        last = found[-1]
        for i in range(len(last) - 1):
            spur = last[i]
            root = last[:i + 1]
            banned_edges = {(p[i], p[i + 1]) for p in found if len(p) > i + 1 and p[:i + 1] == root}
            banned_nodes = set(root[:-1])
            tail = _spur_search(adj, spur, target, banned_nodes, banned_edges)
            if tail is None:
                continue
            cand = root[:-1] + tail
            if cand not in seen:
                seen.add(cand)
                heapq.heappush(heap, _path_key(adj, cand))
        if not heap:
            break
        _, _, nxt = heapq.heappop(heap)
        found.append(nxt)
    return [(_path_key(adj, p)[0], p) for p in found]


def graph_adjacency(graph: WordGraph) -> dict[int, dict[int, float]]:
    adj: dict[int, dict[int, float]] = {u: {} for u in range(len(graph))}
    for u, v in graph.edges():
        adj[u][v] = graph.edge_weight(u, v)
    return adj


def k_shortest_paths(graph: WordGraph, k: int = 150) -> list[CompressionCandidate]:
    if k < 1:
        raise ValueError("k must be >= 1")
    adj = graph_adjacency(graph)
    return [CompressionCandidate.from_path(graph, p) for _, p in yen_k_shortest(adj, START, END, k)]


def has_verb(tokens: Iterable[Token], verb_tags: Iterable[str] = PENN_VERB_TAGS) -> bool:
    verb_tags = frozenset(verb_tags)
    return any(t.pos in verb_tags for t in tokens)


def filter_candidates(cands: Sequence[CompressionCandidate], min_words: int = 8,
                      verb_tags: Iterable[str] = PENN_VERB_TAGS) -> list[CompressionCandidate]:
    """Drop candidates shorter than ``min_words`` words or without a verb."""
    verb_tags = frozenset(verb_tags)
    return [c for c in cands if c.word_count >= min_words and has_verb(c.tokens, verb_tags)]


def average_edge_weight(c: CompressionCandidate) -> float:
    if not c.weights:
        raise ValueError("candidate has no edges")
    return c.total_weight / len(c.weights)


def lightest_average(cands: Sequence[CompressionCandidate]) -> CompressionCandidate | None:
    """Baseline pick: the candidate with the lowest average edge weight."""
    if not cands:
        return None
    return min(cands, key=lambda c: (average_edge_weight(c), c.word_count, c.text))
