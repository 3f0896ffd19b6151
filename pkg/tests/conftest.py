from __future__ import annotations

from pathlib import Path

import pytest

from msc.corpus import parse_cluster_file
from msc.lexicon import LexiconSet

DATA = Path(__file__).parent / "data"
ROOT = Path(__file__).parent.parent
TAG_CORPUS = ROOT / "data" / "ptb_tags.txt.gz"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion covered by the test")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    name = marker.args[0]
    table = item.config._criteria
    failed = rep.failed or (rep.when == "call" and rep.skipped)
    if rep.when == "call" or failed:
        prev = table.get(name, True)
        table[name] = prev and not failed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    table = getattr(config, "_criteria", {})
    if not table:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in table.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")


@pytest.fixture(scope="session")
def golden_lexicons() -> LexiconSet:
    return LexiconSet.load(None, DATA / "golden.mwe.txt", DATA / "golden.syn.txt")


@pytest.fixture(scope="session")
def golden_cluster():
    return parse_cluster_file(DATA / "golden.txt")


@pytest.fixture(scope="session")
def small_lm(tmp_path_factory):
    """Order-7 model on the first 3000 tagged sentences, saved as ARPA."""
    from msc.poslm import PosLanguageModel, read_tag_corpus

    corpus = []
    for tags in read_tag_corpus(TAG_CORPUS):
        corpus.append(tags)
        if len(corpus) == 3000:
            break
    path = tmp_path_factory.mktemp("lm") / "small7.arpa"
    PosLanguageModel.train(corpus, order=7).save(path)
    return path
