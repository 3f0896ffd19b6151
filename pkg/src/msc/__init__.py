"""Word-graph multi-sentence compression with MWE merging, synonym mapping,
TextRank informativity and a POS-tag language model for grammaticality."""
from .config import MSCConfig
from .corpus import Cluster, ClusterFormatError, TaggedSentence, Token, parse_cluster_file, parse_cluster_text
from .lexicon import LexiconSet, MweLexicon, StopwordList, SynonymSets
from .pathfinder import CompressionCandidate, filter_candidates, k_shortest_paths, yen_k_shortest
from .pipeline import CompressionResult, compress_cluster
from .poslm import PosLanguageModel, grammaticality_score
from .reranker import NoValidCompression, RankedOutput, final_rank
from .textrank import compute_salience, extract_keyphrases, informativity_score
from .wordgraph import WordGraph, build_graph, density

__version__ = "0.1.0"

__all__ = [
    "MSCConfig", "Cluster", "ClusterFormatError", "TaggedSentence", "Token",
    "parse_cluster_file", "parse_cluster_text", "LexiconSet", "MweLexicon",
    "StopwordList", "SynonymSets", "CompressionCandidate", "filter_candidates",
    "k_shortest_paths", "yen_k_shortest", "CompressionResult", "compress_cluster",
    "PosLanguageModel", "grammaticality_score", "NoValidCompression", "RankedOutput",
    "final_rank", "compute_salience", "extract_keyphrases", "informativity_score",
    "WordGraph", "build_graph", "density",
]
