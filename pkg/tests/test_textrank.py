import math
import random

import pytest

from oracles import power_iteration_textrank
from msc.corpus import Token
from msc.lexicon import LexiconSet
from msc.textrank import (Keyphrase, SalienceTable, compute_salience, cooccurrence_graph,
                          extract_keyphrases, informativity_score)

POOL = [("cats", "NNS"), ("dogs", "NNS"), ("big", "JJ"), ("run", "VBP"), ("food", "NN"),
        ("the", "DT"), ("of", "IN"), ("red", "JJ"), ("eat", "VBP"), (",", ",")]
LEX = LexiconSet()


def toks(pairs):
    return [Token(w, p, is_stopword=LEX.is_stopword(Token(w, p))) for w, p in pairs]


@pytest.mark.parametrize("seed", range(20))
def test_matches_power_iteration(seed):
    rng = random.Random(seed)
    window = rng.choice([2, 3, 5, 10])
    sents = [toks(rng.choices(POOL, k=rng.randint(1, 12))) for _ in range(rng.randint(1, 5))]
    got = compute_salience(sents, window=window, eps=1e-12)
    content = [[t.key for t in s if not t.is_stopword] for s in sents]
    want = power_iteration_textrank(content, window=window, eps=1e-12)
    assert set(got) == set(want)
    for k in want:
        assert got[k] == pytest.approx(want[k], abs=1e-9)


def test_window_counts_content_words_only():
    s = toks([("cats", "NNS"), ("the", "DT"), ("of", "IN"), ("dogs", "NNS"), ("food", "NN")])
    adj = cooccurrence_graph([s], window=2)
    assert adj[("cats", "NNS")] == {("dogs", "NNS")}
    assert ("the", "DT") not in adj


def test_isolated_word_scores_one_minus_d():
    table = compute_salience([toks([("cats", "NNS")])])
    assert table[("cats", "NNS")] == pytest.approx(0.15)
    assert table[("absent", "NN")] == 0.0


def test_symmetric_pair_converges_to_one():
    table = compute_salience([toks([("cats", "NNS"), ("dogs", "NNS")])])
    assert table[("cats", "NNS")] == pytest.approx(1.0)


def test_bad_parameters():
    s = [toks([("cats", "NNS")])]
    with pytest.raises(ValueError):
        compute_salience(s, window=1)
    with pytest.raises(ValueError):
        compute_salience(s, damping=1.0)
    with pytest.raises(ValueError):
        compute_salience([])


def test_keyphrase_runs():
    table = SalienceTable({("big", "JJ"): 1.0, ("red", "JJ"): 2.0, ("food", "NN"): 3.0,
                           ("cats", "NNS"): 0.5})
    s = toks([("big", "JJ"), ("red", "JJ"), ("food", "NN"), ("run", "VBP"), ("big", "JJ"),
              ("the", "DT"), ("cats", "NNS")])
    phrases = extract_keyphrases(s, table)
    # trailing adjectives are trimmed, the lone "big" before a stopword is dropped
    assert phrases == [Keyphrase((("big", "JJ"), ("red", "JJ"), ("food", "NN")), 6.0 / 4, 3, 0),
                       Keyphrase((("cats", "NNS"),), 0.5 / 2, 1, 6)]


def test_merged_mwe_counts_as_noun_with_its_length():
    table = SalienceTable({("use-up", "VBP"): 2.0})
    mwe = Token("use-up", "VBP", components=2)
    [k] = extract_keyphrases([mwe], table)
    assert k.length == 2 and k.score == pytest.approx(2.0 / 3)


class _C:
    def __init__(self, tokens, weights):
        self.tokens, self.weights = tokens, weights

    @property
    def word_count(self):
        return sum(t.word_count for t in self.tokens)


def test_informativity():
    s = toks([("cats", "NNS"), ("run", "VBP")])
    c = _C(s, (0.5, 0.25, 0.25))
    ks = [Keyphrase((("cats", "NNS"),), 0.4, 1, 0)]
    assert informativity_score(c, ks) == pytest.approx(1.0 / (2 * 0.4))
    assert informativity_score(c, []) == math.inf
    with pytest.raises(ValueError):
        informativity_score(_C(s, ()), ks)
