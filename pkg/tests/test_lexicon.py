import pytest

from msc.corpus import Cluster, TaggedSentence, Token, parse_cluster_text, parse_sentence
from msc.lexicon import (LexiconFormatError, LexiconSet, MweLexicon, StopwordList, SynonymSets,
                         best_one_word_synonym, coarse_pos, detect_mwes, lemma_key, merge_mwes,
                         pos_compatible, stem, synonym_candidates)


# values frozen from the reference Porter tables shipped with NLTK's test data
@pytest.mark.parametrize("word,expected", [
    ("caresses", "caress"), ("ponies", "poni"), ("relational", "relat"),
    ("consumers", "consum"), ("boys", "boy"), ("a", "a"), ("marketing", "market"),
    ("hopping", "hop"), ("generalizations", "gener"),
])
def test_porter_examples(word, expected):
    assert stem(word) == expected


def test_porter_is_not_idempotent():
    # a property of the algorithm itself; see the notes on stem idempotence
    assert stem("abuse") == "abus" and stem("abus") == "abu"
    assert all(stem(stem(w)) == stem(w) for w in ("caresses", "ponies", "relational", "boys"))


def test_stem_is_case_insensitive():
    assert stem("Boys") == stem("boys")


def test_lemma_key_joins_component_stems():
    assert lemma_key("junk food") == "junk-food"
    assert lemma_key("Use Up") == "use-up"
    assert lemma_key("consumers") == "consum"


def test_coarse_pos():
    assert [coarse_pos(t) for t in ("NNS", "VBD", "MD", "JJR", "RBS", "DT")] == ["n", "v", "v", "a", "r", None]
    assert pos_compatible("NN", "NNS")
    assert not pos_compatible("NN", "VB")
    assert pos_compatible("DT", "DT") and not pos_compatible("DT", "IN")


def test_bundled_stopwords():
    sw = StopwordList.load()
    assert "the" in sw and "The" in sw
    assert "monday" in sw and "week" in sw
    assert "boys" not in sw
    # months that double as common words stay content words
    assert "may" not in sw and "march" not in sw


def test_stopword_file_comments(tmp_path):
    p = tmp_path / "sw.txt"
    p.write_text("# header\nfoo\n\nBar  # trailing\n")
    assert StopwordList.load(p).words == frozenset({"foo", "bar"})


def _sent(text):
    return LexiconSet().annotate(parse_sentence(text, 1))


def test_mwe_greedy_longest_match():
    lex = MweLexicon.from_lines(["new york", "new york city", "york city"])
    s = _sent("in:IN new:JJ york:NNP city:NN today:NN")
    occ = detect_mwes(s, lex)
    assert [(o.start, o.length, o.canonical) for o in occ] == [(2, 3, "new-york-city")]


def test_mwe_entries_may_list_stems():
    lex = MweLexicon.from_lines(["drug abus", "junk food"])
    s = _sent("drug:NN abuse:NN rises:VBZ")
    assert [o.canonical for o in detect_mwes(s, lex)] == ["drug-abus"]


def test_mwe_matches_on_stems_and_pos_prefix():
    lex = MweLexicon.from_lines(["junk food\tNN NN"])
    assert detect_mwes(_sent("junk:NN foods:NNS"), lex)
    assert not detect_mwes(_sent("junk:VB food:NN"), lex)
    assert detect_mwes(_sent("junk:VB food:NN"), lex, match_pos=False)


def test_merge_renumbers_and_keeps_components():
    lex = MweLexicon.from_lines(["junk food", "use up\t\tVBP"])
    s = _sent("boys:NNS use:VBP up:RP junk:NN food:NN .:.")
    merged = merge_mwes(s, detect_mwes(s, lex))
    assert [t.surface for t in merged.tokens] == ["boys", "use-up", "junk-food", "."]
    use_up, food = merged.token_at(2), merged.token_at(3)
    assert use_up.pos == "VBP" and use_up.components == 2
    assert food.pos == "NN" and food.stem == "junk-food" and food.mwe_id == "1:4"
    assert merged.word_count == s.word_count


def test_default_head_is_last_noun_else_last_token():
    lex = MweLexicon.from_lines(["fast food", "give up"])
    s = merge_mwes(_sent("fast:JJ food:NN"), detect_mwes(_sent("fast:JJ food:NN"), lex))
    assert s.token_at(1).pos == "NN"
    v = _sent("give:VB up:RP")
    assert merge_mwes(v, detect_mwes(v, lex)).token_at(1).pos == "RP"


def test_overlapping_occurrences_rejected():
    lex = MweLexicon.from_lines(["a b", "b c"])
    s = _sent("a:DT b:NN c:NN")
    occ = detect_mwes(s, lex)
    assert len(occ) == 1
    from msc.lexicon import MweOccurrence
    bad = [occ[0], MweOccurrence(2, 2, "b-c", lex.entries[1])]
    with pytest.raises(ValueError):
        merge_mwes(s, bad)


def test_mwe_file_errors():
    with pytest.raises(LexiconFormatError):
        MweLexicon.from_lines(["single"])
    with pytest.raises(LexiconFormatError):
        MweLexicon.from_lines(["a b\tNN"])


def test_synonym_file_parsing():
    syns = SynonymSets.from_lines(["teenage:JJ\tyoung:JJ\tadolescent:JJ", "# c", "junk food:NN\tfast food:NN"])
    assert len(syns) == 2
    assert syns.head("young", "JJ").lemma == "teenage"
    assert syns.head("junk-food", "NN") is None  # no one-word member
    assert syns.head_of("adolesc").lemma == "teenage"
    with pytest.raises(LexiconFormatError):
        SynonymSets.from_lines(["lonely:JJ"])
    with pytest.raises(LexiconFormatError):
        SynonymSets.from_lines(["a\tb:NN"])


def test_synonym_candidates():
    syns = SynonymSets.from_lines(["teenage:JJ\tyoung:JJ\tadolescent:JJ"])
    tok = Token("young", "JJ", stem("young"))
    assert synonym_candidates(tok, syns) == {("teenage", "JJ"), ("adolescent", "JJ")}
    assert synonym_candidates(Token("young", "NN", "young"), syns) == set()
    assert synonym_candidates(Token("young", "JJ", "young", is_stopword=True), syns) == set()


def test_best_one_word_synonym_prefers_cluster_usage():
    syns = SynonymSets.from_lines(["consume:VBP\teat:VBP\tuse up:VBP"])
    lexs = LexiconSet(mwes=MweLexicon.from_lines(["use up\t\tVBP"]), synonyms=syns)
    cluster = lexs.preprocess_cluster(parse_cluster_text(
        "boys:NNS use:VBP up:RP food:NN\nboys:NNS eat:VBP food:NN\ngirls:NNS eat:VBP\n"))
    mwe = cluster.sentences[0].token_at(2)
    assert mwe.surface == "use-up"
    assert best_one_word_synonym(mwe, cluster, syns, sid=1) == "eat"
    lone = lexs.preprocess_cluster(parse_cluster_text("boys:NNS use:VBP up:RP food:NN\n"))
    assert best_one_word_synonym(lone.sentences[0].token_at(2), lone, syns, sid=1) == "consume"


def test_preprocess_marks_stopwords_and_punct():
    s = LexiconSet().preprocess(parse_sentence("The:DT boys:NNS ,:, ran:VBD", 1))
    assert [t.is_stopword for t in s.tokens] == [True, False, True, False]
    assert s.token_at(2).stem == "boy"
