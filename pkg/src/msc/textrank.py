"""TextRank word salience and keyphrase-based informativity scoring."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import Cluster, Token

WordKey = tuple[str, str]


@dataclass(frozen=True)
class Keyphrase:
    words: tuple[WordKey, ...]
    score: float
    length: int
    start: int  # index of the first token in the candidate


class SalienceTable(dict):
    """word/POS -> TextRank score; missing words score 0."""

    def __missing__(self, key):
        return 0.0


def _sentences(source) -> list[list[Token]]:
    if isinstance(source, Cluster):
        return [list(s.tokens) for s in source.sentences]
    return [list(s) for s in source]


def cooccurrence_graph(sentences: Iterable[Sequence[Token]], window: int = 10) -> dict[WordKey, set[WordKey]]:
    """Undirected graph over non-stopword keys that co-occur within ``window``.

    The window slides over the content words of each sentence; two words
    are linked when their distance in that sequence is below ``window``.
    """
    adj: dict[WordKey, set[WordKey]] = {}
    for sent in sentences:
        words = [t.key for t in sent if not t.is_stopword and not t.is_punct]
        for w in words:
            adj.setdefault(w, set())
        for i, a in enumerate(words):
            for b in words[i + 1:i + window]:
                if a != b:
                    adj[a].add(b)
                    adj[b].add(a)
    return adj


def textrank_step(adj: dict[WordKey, set[WordKey]], scores: dict[WordKey, float],
                  damping: float) -> dict[WordKey, float]:
    return {
        v: (1.0 - damping) + damping * sum(scores[u] / len(adj[u]) for u in adj[v])
        for v in adj
    }


def compute_salience(cluster, window: int = 10, damping: float = 0.85,
                     eps: float = 1e-6, max_iter: int = 1000) -> SalienceTable:
    """Iterate TextRank to a fixed point (largest per-word change < eps).

    ``cluster`` is a Cluster or any iterable of token sequences, e.g. the
    graph's relabelled sentences so that synonyms share a score.
    """
    if window < 2:
        raise ValueError("window must be >= 2")
    if not 0.0 < damping < 1.0:
        raise ValueError("damping must be in (0, 1)")
    sentences = _sentences(cluster)
    if not sentences:
        raise ValueError("cannot compute salience of an empty cluster")
    adj = cooccurrence_graph(sentences, window)
    scores = {v: 1.0 for v in adj}
    for _ in range(max_iter):
        new = textrank_step(adj, scores, damping)
        delta = max((abs(new[v] - scores[v]) for v in adj), default=0.0)
        scores = new
        if delta < eps:
            break
    return SalienceTable(scores)


def _is_noun(tok: Token) -> bool:
    return tok.pos.startswith("NN") or tok.components > 1


def _is_adj(tok: Token) -> bool:
    return tok.pos.startswith("JJ")


def extract_keyphrases(candidate, table: SalienceTable) -> list[Keyphrase]:
    """Maximal adjective/noun runs ending in a noun, scored by summed salience / (length+1).

    ``candidate`` may be a CompressionCandidate or a token sequence.
    """
    tokens = list(getattr(candidate, "tokens", candidate))
    phrases = []
    i = 0
    while i < len(tokens):
        if tokens[i].is_stopword or not (_is_noun(tokens[i]) or _is_adj(tokens[i])):
            i += 1
            continue
        j = i
        while j < len(tokens) and not tokens[j].is_stopword and (_is_noun(tokens[j]) or _is_adj(tokens[j])):
            j += 1
        end = j
        while end > i and not _is_noun(tokens[end - 1]):
            end -= 1
        if end > i:
            run = tokens[i:end]
            length = sum(t.components for t in run)
            total = math.fsum(table[t.key] for t in run)
            phrases.append(Keyphrase(tuple(t.key for t in run), total / (length + 1), length, i))
        i = j
    return phrases


def informativity_score(candidate, keyphrases: Sequence[Keyphrase]) -> float:
    """Summed edge weight / (length x summed keyphrase score); lower is better."""
    weights = candidate.weights
    if not weights:
        raise ValueError("candidate has no edges")
    ksum = math.fsum(k.score for k in keyphrases)
    if ksum <= 0 or candidate.word_count == 0:
        return math.inf
    return math.fsum(weights) / (candidate.word_count * ksum)
