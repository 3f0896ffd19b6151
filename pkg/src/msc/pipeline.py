"""Cluster -> single compressed sentence."""
from __future__ import annotations

from dataclasses import dataclass

from .config import MSCConfig
from .corpus import Cluster
from .lexicon import LexiconSet
from .pathfinder import (CompressionCandidate, filter_candidates, k_shortest_paths,
                         lightest_average)
from .poslm import PosLanguageModel, grammaticality_score
from .reranker import NoValidCompression, RankedOutput, final_rank
from .textrank import SalienceTable, compute_salience, extract_keyphrases, informativity_score
from .wordgraph import WordGraph, build_graph


@dataclass
class CompressionResult:
    cluster_id: str
    graph: WordGraph
    candidates: list[CompressionCandidate]
    filtered: list[CompressionCandidate]
    salience: SalienceTable
    ranked: RankedOutput

    @property
    def best(self) -> CompressionCandidate:
        return self.ranked.best

    @property
    def text(self) -> str:
        return self.best.text

    @property
    def baseline(self) -> CompressionCandidate | None:
        """Lightest average edge weight among the filtered candidates."""
        return lightest_average(self.filtered)


def score_candidates(candidates, salience: SalienceTable, lm: PosLanguageModel | None,
                     pad: bool = True) -> None:
    for c in candidates:
        c.informativity = informativity_score(c, extract_keyphrases(c, salience))
        c.lm_score = grammaticality_score(lm, c, pad) if lm is not None else 1.0


def compress_cluster(cluster: Cluster, lexicons: LexiconSet | None = None,
                     lm: PosLanguageModel | None = None,
                     config: MSCConfig | None = None) -> CompressionResult:
    config = config or MSCConfig()
    lexicons = lexicons if lexicons is not None else LexiconSet()
    if lm is None and config.mu < 1.0:
        raise ValueError("a POS language model is required unless mu == 1")
    graph = build_graph(cluster, lexicons, merge_mwes=config.use_mwe,
                        use_synonyms=config.use_synonyms)
    candidates = k_shortest_paths(graph, config.k)
    filtered = filter_candidates(candidates, config.min_words, config.verb_tags)
    if not filtered:
        raise NoValidCompression(f"cluster {cluster.id!r}: no valid compression "
                                 f"({len(candidates)} paths, none kept by the filter)")
    salience = compute_salience(graph.relabeled_sentences(), config.tr_window,
                                config.tr_damping, config.tr_eps)
    score_candidates(filtered, salience, lm, config.pad)
    ranked = final_rank(filtered, config.mu)
    return CompressionResult(cluster.id, graph, candidates, filtered, salience, ranked)
