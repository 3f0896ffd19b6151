"""Enhanced word graph over a cluster of tagged sentences.

Every token of every (pre-processed) sentence is mapped onto exactly one
node. Mapping for a token tries, in order:

1. an existing node with the same lowercase word and POS that does not
   already hold a token of this sentence (ties: context overlap, then
   frequency, then creation order);
2. a node whose word is a synonym of the token (highest frequency first);
3. for a merged MWE, a new node labelled with its best one-word synonym;
4. a new node labelled with the token itself.

Tokens of a sentence are visited in three passes: unambiguous content
words, ambiguous or repeated content words, then stopwords and
punctuation. Edges follow the original word order.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus import Cluster, TaggedSentence, Token
from .lexicon import (LexiconSet, best_one_word_synonym, lemma_key, pos_compatible,
                      synonym_candidates)

START, END = 0, 1
START_LABEL, END_LABEL = "-start-", "-end-"


@dataclass
class GraphNode:
    id: int
    label: str
    pos: str
    stem: str
    is_stopword: bool = False
    components: int = 1
    map_list: list[tuple[int, int]] = field(default_factory=list)
    # surfaces absorbed through synonym mapping
    synonym_members: Counter = field(default_factory=Counter)
    member_stems: set[str] = field(default_factory=set)

    @property
    def key(self) -> tuple[str, str]:
        return (self.label.lower(), self.pos)

    @property
    def freq(self) -> int:
        return len(self.map_list)

    @property
    def is_terminal(self) -> bool:
        return self.id in (START, END)

    def as_token(self) -> Token:
        return Token(self.label, self.pos, self.stem, self.is_stopword, None,
                     self.components)

    def __str__(self):
        return f"{self.label}/{self.pos}"


class WordGraph:
    def __init__(self, n_sentences: int = 0):
        self.nodes: list[GraphNode] = [
            GraphNode(START, START_LABEL, "START", START_LABEL, True),
            GraphNode(END, END_LABEL, "END", END_LABEL, True),
        ]
        self.succ: dict[int, dict[int, None]] = {START: {}, END: {}}
        self.pred: dict[int, dict[int, None]] = {START: {}, END: {}}
        self.sentences: dict[int, TaggedSentence] = {}
        self.assignment: dict[tuple[int, int], int] = {}
        self._by_key: dict[tuple[str, str], list[int]] = {}
        self._positions: dict[int, dict[int, list[int]]] = {}
        self._weights: dict[tuple[int, int], float] = {}

    # -- structure ------------------------------------------------------------

    def __len__(self):
        return len(self.nodes)

    @property
    def n_sentences(self) -> int:
        return len(self.sentences)

    @property
    def n_edges(self) -> int:
        return sum(len(v) for v in self.succ.values())

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, targets in self.succ.items() for v in targets]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.succ.get(u, ())

    def successors(self, u: int) -> Iterable[int]:
        return self.succ.get(u, {}).keys()

    def node(self, nid: int) -> GraphNode:
        return self.nodes[nid]

    def nodes_with_key(self, key: tuple[str, str]) -> list[GraphNode]:
        return [self.nodes[i] for i in self._by_key.get(key, ())]

    def find(self, label: str, pos: str | None = None) -> list[GraphNode]:
        label = label.lower()
        return [n for n in self.nodes if n.label.lower() == label and (pos is None or n.pos == pos)]

    def add_node(self, label: str, pos: str, stem: str, is_stopword: bool = False,
                 components: int = 1) -> GraphNode:
        node = GraphNode(len(self.nodes), label, pos, stem, is_stopword, components)
        self.nodes.append(node)
        self.succ[node.id] = {}
        self.pred[node.id] = {}
        self._by_key.setdefault(node.key, []).append(node.id)
        return node

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop on node {self.nodes[u]}")
        self.succ[u][v] = None
        self.pred[v][u] = None
        self._weights.clear()

    def assign(self, node: GraphNode, sid: int, pid: int) -> None:
        if (sid, pid) in self.assignment:
            raise ValueError(f"token ({sid}, {pid}) is already mapped")
        node.map_list.append((sid, pid))
        self.assignment[(sid, pid)] = node.id
        self._positions.pop(node.id, None)
        self._weights.clear()

    def trail(self, sid: int) -> list[int]:
        """Node ids of sentence ``sid`` in word order (terminals excluded)."""
        n = len(self.sentences[sid])
        return [self.assignment[(sid, pid)] for pid in range(1, n + 1)]

    def relabeled_sentences(self) -> list[list[Token]]:
        """Each sentence with its tokens replaced by their nodes' tokens."""
        return [[self.nodes[nid].as_token() for nid in self.trail(sid)]
                for sid in sorted(self.sentences)]

    # -- weights --------------------------------------------------------------

    def freq(self, nid: int) -> int:
        if nid in (START, END):
            return self.n_sentences
        return self.nodes[nid].freq

    def positions(self, nid: int) -> dict[int, list[int]]:
        """sid -> sorted PIDs of the node; terminals sit at 0 and len+1."""
        cached = self._positions.get(nid)
        if cached is not None:
            return cached
        if nid == START:
            pos = {sid: [0] for sid in self.sentences}
        elif nid == END:
            pos = {sid: [len(s) + 1] for sid, s in self.sentences.items()}
        else:
            pos = {}
            for sid, pid in self.nodes[nid].map_list:
                pos.setdefault(sid, []).append(pid)
            for v in pos.values():
                v.sort()
        self._positions[nid] = pos
        return pos

    def inverse_diff_sum(self, i: int, j: int) -> float:
        """Sum over sentences of 1/diff(s,i,j), diff the smallest positive offset."""
        pi, pj = self.positions(i), self.positions(j)
        total = 0.0
        for sid in sorted(pi.keys() & pj.keys()):
            best = min((b - a for a in pi[sid] for b in pj[sid] if b > a), default=None)
            if best is not None:
                total += 1.0 / best
        return total

    def edge_weight(self, i: int, j: int) -> float:
        cached = self._weights.get((i, j))
        if cached is not None:
            return cached
        if not self.has_edge(i, j):
            raise KeyError(f"no edge {self.nodes[i]} -> {self.nodes[j]}")
        inv = self.inverse_diff_sum(i, j)
        if inv <= 0:
            raise ValueError(f"edge {self.nodes[i]} -> {self.nodes[j]} has no ordered occurrence")
        fi, fj = self.freq(i), self.freq(j)
        w = ((fi + fj) / inv) / (fi * fj)
        self._weights[(i, j)] = w
        return w

    def weighted_edges(self) -> dict[tuple[int, int], float]:
        return {(u, v): self.edge_weight(u, v) for u, v in self.edges()}

    # -- reporting ------------------------------------------------------------

    def dump(self) -> str:
        """Stable plain-text listing of nodes and weighted edges."""
        order = sorted(range(len(self.nodes)),
                       key=lambda i: (i != START, i == END, self.nodes[i].label.lower(),
                                      self.nodes[i].pos, sorted(self.nodes[i].map_list)))
        display = {nid: k for k, nid in enumerate(order)}
        lines = [f"# nodes={len(self.nodes)} edges={self.n_edges} "
                 f"density={density(self):.6f}"]
        for nid in order:
            n = self.nodes[nid]
            freq = self.freq(nid)
            mapped = ", ".join(f"({s}, {p})" for s, p in sorted(n.map_list))
            extra = ""
            if n.synonym_members:
                extra = " synonyms=" + ",".join(f"{w}:{c}" for w, c in sorted(n.synonym_members.items()))
            lines.append(f"[{display[nid]}] {n.label}/{n.pos} freq={freq} mapped=[{mapped}]{extra}")
        edges = sorted(self.edges(), key=lambda e: (display[e[0]], display[e[1]]))
        for u, v in edges:
            lines.append(f"[{display[u]}] -> [{display[v]}] w={self.edge_weight(u, v):.6f}")
        return "\n".join(lines) + "\n"


def density(graph: WordGraph) -> float:
    """|E| / (|V|(|V|-1)), terminals included in V."""
    v = len(graph)
    if v < 2:
        raise ValueError("density needs at least two vertices")
    return graph.n_edges / (v * (v - 1))


# -- construction -------------------------------------------------------------

def _neighbor_key(sentence: TaggedSentence, pid: int):
    if pid < 1:
        return START_LABEL
    if pid > len(sentence):
        return END_LABEL
    return sentence.token_at(pid).key


class _Builder:
    def __init__(self, graph: WordGraph, cluster: Cluster, lexicons: LexiconSet,
                 use_synonyms: bool):
        self.g = graph
        self.cluster = cluster
        self.lex = lexicons
        self.use_synonyms = use_synonyms and bool(lexicons.synonyms)

    def context_overlap(self, node: GraphNode, sent: TaggedSentence, pid: int) -> int:
        prev_key = _neighbor_key(sent, pid - 1)
        next_key = _neighbor_key(sent, pid + 1)
        score = 0
        for sid, p in node.map_list:
            other = self.g.sentences[sid]
            score += _neighbor_key(other, p - 1) == prev_key
            score += _neighbor_key(other, p + 1) == next_key
        return score

    def holds_sentence(self, node: GraphNode, sid: int) -> bool:
        return any(s == sid for s, _ in node.map_list)

    def best_same(self, tok: Token, sent: TaggedSentence, pid: int) -> GraphNode | None:
        cands = [n for n in self.g.nodes_with_key(tok.key) if not self.holds_sentence(n, sent.sid)]
        if not cands:
            return None
        return max(cands, key=lambda n: (self.context_overlap(n, sent, pid), n.freq, -n.id))

    def best_synonym(self, tok: Token, sent: TaggedSentence, pid: int) -> GraphNode | None:
        if tok.is_stopword or not self.use_synonyms:
            return None
        keys = {lemma_key(lemma) for lemma, _ in synonym_candidates(tok, self.lex.synonyms)}
        if not keys:
            return None
        sid = sent.sid
        cands = []
        for n in self.g.nodes[2:]:
            if not pos_compatible(n.pos, tok.pos):
                continue
            if n.stem not in keys and not (n.member_stems & keys):
                continue
            # adjacent tokens on one node would make a self-loop
            if (sid, pid - 1) in self.g.assignment and self.g.assignment[(sid, pid - 1)] == n.id:
                continue
            if (sid, pid + 1) in self.g.assignment and self.g.assignment[(sid, pid + 1)] == n.id:
                continue
            cands.append(n)
        if not cands:
            return None
        return max(cands, key=lambda n: (n.freq, -n.id))

    def map_token(self, sent: TaggedSentence, pid: int) -> None:
        tok = sent.token_at(pid)
        node = self.best_same(tok, sent, pid)
        if node is None:
            node = self.best_synonym(tok, sent, pid)
            if node is not None:
                node.synonym_members[tok.surface.lower()] += 1
                node.member_stems.add(tok.stem)
        if node is None and tok.mwe_id is not None and self.use_synonyms:
            word = best_one_word_synonym(tok, self.cluster, self.lex.synonyms, sid=sent.sid)
            if word is not None:
                node = self.g.add_node(word, tok.pos, lemma_key(word), False, 1)
                node.synonym_members[tok.surface.lower()] += 1
                node.member_stems.add(tok.stem)
        if node is None:
            node = self.g.add_node(tok.surface, tok.pos, tok.stem, tok.is_stopword, tok.components)
        self.g.assign(node, sent.sid, pid)

    def add_sentence(self, sent: TaggedSentence) -> None:
        self.g.sentences[sent.sid] = sent
        counts = Counter(t.key for t in sent.tokens if not t.is_stopword)
        stages: tuple[list[int], list[int], list[int]] = ([], [], [])
        for pid, tok in enumerate(sent.tokens, start=1):
            if tok.is_stopword:
                stages[2].append(pid)
            elif counts[tok.key] > 1 or len(self.g.nodes_with_key(tok.key)) > 1:
                stages[1].append(pid)
            else:
                stages[0].append(pid)
        for stage in stages:
            for pid in stage:
                self.map_token(sent, pid)
        walk = [START] + self.g.trail(sent.sid) + [END]
        for u, v in zip(walk, walk[1:]):
            if not self.g.has_edge(u, v):
                self.g.add_edge(u, v)


def build_graph(cluster: Cluster, lexicons: LexiconSet | None = None, *,
                merge_mwes: bool = True, use_synonyms: bool = True,
                preprocessed: bool = False) -> WordGraph:
    """Build the word graph of a cluster.

    ``merge_mwes`` and ``use_synonyms`` switch off MWE merging and every
    synonym-based step, which gives the plain surface-form word graph.
    """
    lexicons = lexicons if lexicons is not None else LexiconSet()
    if not preprocessed:
        cluster = lexicons.preprocess_cluster(cluster, merge=merge_mwes)
    graph = WordGraph()
    builder = _Builder(graph, cluster, lexicons, use_synonyms)
    for sent in cluster.sentences:
        builder.add_sentence(sent)
    return graph


def path_tokens(graph: WordGraph, path: Sequence[int]) -> list[Token]:
    return [graph.nodes[n].as_token() for n in path if n not in (START, END)]


def path_weights(graph: WordGraph, path: Sequence[int]) -> list[float]:
    return [graph.edge_weight(u, v) for u, v in zip(path, path[1:])]


def path_text(graph: WordGraph, path: Sequence[int]) -> str:
    return " ".join(graph.nodes[n].label for n in path if n not in (START, END))


def total_weight(weights: Sequence[float]) -> float:
    return math.fsum(weights)
