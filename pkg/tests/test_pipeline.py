import math

import pytest

from msc.config import MSCConfig, read_config_file
from msc.corpus import parse_cluster_text
from msc.pipeline import compress_cluster
from msc.poslm import PosLanguageModel
from msc.reranker import NoValidCompression

TAGS = [s.split() for s in ["NNS VBP JJR JJ NN IN NNS .", "DT NN VBZ .", "JJ NNS VBP NN ."]]


def test_defaults():
    c = MSCConfig()
    assert (c.k, c.mu, c.min_words, c.order, c.tr_window, c.tr_damping, c.tr_eps) == \
        (150, 0.4, 8, 7, 10, 0.85, 1e-6)
    assert c.verb_tags == frozenset({"VB", "VBD", "VBG", "VBN", "VBP", "VBZ"})
    assert c.density_threshold == 0.05 and c.pad and c.use_mwe and c.use_synonyms


def test_validation_and_coercion(tmp_path):
    with pytest.raises(ValueError):
        MSCConfig(k=0)
    with pytest.raises(ValueError):
        MSCConfig(mu=-0.1)
    with pytest.raises(KeyError):
        MSCConfig().updated({"nope": 1})
    with pytest.raises(ValueError):
        MSCConfig().updated({"pad": "maybe"})
    c = MSCConfig().updated({"k": "20", "tr-damping": "0.5", "pad": "off"})
    assert (c.k, c.tr_damping, c.pad) == (20, 0.5, False)
    p = tmp_path / "c.cfg"
    p.write_text("k=3\n")
    assert MSCConfig.from_file(p).k == 3
    p.write_text("oops\n")
    with pytest.raises(ValueError):
        read_config_file(p)


def test_golden_pipeline(golden_cluster, golden_lexicons, small_lm):
    lm = PosLanguageModel.load(small_lm)
    res = compress_cluster(golden_cluster, golden_lexicons, lm)
    assert res.cluster_id == "golden"
    assert len(res.candidates) <= 150
    assert all(c.word_count >= 8 for c in res.filtered)
    assert res.best is res.ranked.rows[0].candidate
    assert res.text == res.best.text
    assert res.baseline in res.filtered
    assert all(c.informativity is not None and c.lm_score is not None for c in res.filtered)


def test_k_limits_candidates(golden_cluster, golden_lexicons):
    small = compress_cluster(golden_cluster, golden_lexicons, None, MSCConfig(k=40, mu=1.0))
    full = compress_cluster(golden_cluster, golden_lexicons, None, MSCConfig(mu=1.0))
    assert len(small.candidates) == 40
    # the lightest paths are a prefix of the longer list
    assert [c.path for c in small.candidates] == [c.path for c in full.candidates[:40]]


def test_no_valid_compression():
    c = parse_cluster_text("cats:NNS sleep:VBP .:.\ndogs:NNS sleep:VBP .:.\n")
    lm = PosLanguageModel.train(TAGS, 3)
    with pytest.raises(NoValidCompression):
        compress_cluster(c, None, lm)


def test_lm_required_unless_mu_one():
    c = parse_cluster_text("cats:NNS sleep:VBP .:.\n")
    with pytest.raises(ValueError):
        compress_cluster(c, None, None, MSCConfig(mu=0.5))


def test_unpadded_scoring_changes_lm_scores(golden_cluster, golden_lexicons):
    lm = PosLanguageModel.train(TAGS, 3)
    a = compress_cluster(golden_cluster, golden_lexicons, lm, MSCConfig(k=20))
    b = compress_cluster(golden_cluster, golden_lexicons, lm, MSCConfig(k=20, pad=False))
    sa = sorted(c.lm_score for c in a.filtered)
    sb = sorted(c.lm_score for c in b.filtered)
    assert sa != sb and all(math.isfinite(x) for x in sa + sb)
