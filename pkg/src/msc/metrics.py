"""ROUGE-1/2/SU4, corpus BLEU-4 and cluster diversity classification.

Inputs are plain token sequences; comparison is case-insensitive.
"""
from __future__ import annotations

import math
from collections import Counter
from typing import Iterable, Sequence

from .corpus import TaggedSentence, Token
from .lexicon import MweLexicon, SynonymSets, detect_mwes, lemma_key, merge_mwes, stem

Tokens = Sequence[str]


def _lower(tokens: Iterable[str]) -> list[str]:
    return [t.lower() for t in tokens]


def ngrams(tokens: Tokens, n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def skip_bigrams(tokens: Tokens, max_gap: int = 4) -> Counter:
    """Ordered pairs with at most ``max_gap`` words between them."""
    out = Counter()
    for i in range(len(tokens)):
        for j in range(i + 1, min(len(tokens), i + max_gap + 2)):
            out[(tokens[i], tokens[j])] += 1
    return out


def _prf(overlap: int, n_cand: int, n_ref: int) -> tuple[float, float, float]:
    p = overlap / n_cand if n_cand else 0.0
    r = overlap / n_ref if n_ref else 0.0
    f = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return p, r, f


def _overlap(a: Counter, b: Counter) -> int:
    return sum((a & b).values())


def _multi(scores: list[tuple[float, float, float]], mode: str) -> tuple[float, float, float]:
    if mode == "best":
        return max(scores, key=lambda s: (s[2], s[1], s[0]))
    if mode == "average":
        return tuple(sum(s[i] for s in scores) / len(scores) for i in range(3))
    raise ValueError(f"unknown multi-reference mode {mode!r}")


def _check_refs(references):
    if isinstance(references, (str, bytes)) or not references:
        raise ValueError("need at least one reference")
    if references and isinstance(references[0], str):
        # a single reference passed as a bare token list
        return [references]
    return references


def rouge_n(candidate: Tokens, references, n: int = 1, multi: str = "best") -> tuple[float, float, float]:
    if n < 1:
        raise ValueError("n must be >= 1")
    references = _check_refs(references)
    cand = _lower(candidate)
    if not cand:
        return (0.0, 0.0, 0.0)
    cg = ngrams(cand, n)
    scores = []
    for ref in references:
        rg = ngrams(_lower(ref), n)
        scores.append(_prf(_overlap(cg, rg), sum(cg.values()), sum(rg.values())))
    return _multi(scores, multi)


def su_units(tokens: Tokens, max_gap: int = 4) -> Counter:
    return skip_bigrams(tokens, max_gap) + Counter((t,) for t in tokens)


def rouge_su4(candidate: Tokens, references, multi: str = "best", max_gap: int = 4) -> tuple[float, float, float]:
    references = _check_refs(references)
    cand = _lower(candidate)
    if not cand:
        return (0.0, 0.0, 0.0)
    cu = su_units(cand, max_gap)
    scores = []
    for ref in references:
        ru = su_units(_lower(ref), max_gap)
        scores.append(_prf(_overlap(cu, ru), sum(cu.values()), sum(ru.values())))
    return _multi(scores, multi)


def bleu_stats(candidate: Tokens, references, max_n: int = 4):
    """Clipped matches and totals per order, plus (cand length, closest ref length)."""
    references = _check_refs(references)
    cand = _lower(candidate)
    refs = [_lower(r) for r in references]
    matches, totals = [], []
    for n in range(1, max_n + 1):
        cg = ngrams(cand, n)
        best = Counter()
        for r in refs:
            best |= ngrams(r, n)
        matches.append(_overlap(cg, best))
        totals.append(max(len(cand) - n + 1, 0))
    # closest reference length, shorter one on ties
    ref_len = min((abs(len(r) - len(cand)), len(r)) for r in refs)[1]
    return matches, totals, len(cand), ref_len


def bleu4(pairs: Iterable[tuple[Tokens, Sequence[Tokens]]], max_n: int = 4) -> float:
    """Corpus-level BLEU: pooled clipped precisions, one brevity penalty."""
    m_sum = [0] * max_n
    t_sum = [0] * max_n
    c_len = r_len = 0
    count = 0
    for cand, refs in pairs:
        m, t, c, r = bleu_stats(cand, refs, max_n)
        for i in range(max_n):
            m_sum[i] += m[i]
            t_sum[i] += t[i]
        c_len += c
        r_len += r
        count += 1
    if count == 0:
        raise ValueError("bleu needs at least one candidate/reference pair")
    if c_len == 0 or any(m == 0 for m in m_sum) or any(t == 0 for t in t_sum):
        return 0.0
    log_p = sum(math.log(m / t) for m, t in zip(m_sum, t_sum)) / max_n
    bp = 1.0 if c_len > r_len else math.exp(1.0 - r_len / c_len)
    return bp * math.exp(log_p)


def sentence_bleu4(candidate: Tokens, references) -> float:
    return bleu4([(candidate, _check_refs(references))])


def classify_cluster(density: float, threshold: float = 0.05) -> str:
    """Dense graphs mean redundant, low-diversity clusters."""
    return "normal" if density >= threshold else "diverse"


def normalize_for_eval(tokens: Tokens, mwes: MweLexicon | None = None,
                       synonyms: SynonymSets | None = None) -> list[str]:
    """Hyphenate lexicon MWEs and rewrite synonyms to their synset's first member.

    Candidates with already-hyphenated MWEs pass through unchanged, so
    candidate and reference end up in the same form.
    """
    out = [t.lower() for t in tokens]
    if not out:
        return out
    if mwes:
        sent = TaggedSentence(0, tuple(Token(t, "X", stem(t)) for t in out))
        out = [t.surface for t in merge_mwes(sent, detect_mwes(sent, mwes, match_pos=False)).tokens]
    if synonyms:
        rewritten = []
        for t in out:
            head = synonyms.canonical_of(lemma_key(t)) if any(ch.isalnum() for ch in t) else None
            rewritten.append(head.lemma.lower().replace(" ", "-") if head is not None else t)
        out = rewritten
    return out
