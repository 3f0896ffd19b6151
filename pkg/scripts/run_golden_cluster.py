"""Compress the bundled golden cluster and show how it got there.

    python scripts/run_golden_cluster.py            # trains a small tag LM
    python scripts/run_golden_cluster.py --lm model.arpa --explain
"""
import argparse
import itertools
from pathlib import Path

from msc import LexiconSet, compress_cluster
from msc.corpus import parse_cluster_file
from msc.poslm import PosLanguageModel, read_tag_corpus
from msc.wordgraph import density

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "data" / "golden"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lm", help="ARPA tag model; default trains on the bundled tag corpus")
    ap.add_argument("--train-sentences", type=int, default=20000)
    ap.add_argument("--explain", action="store_true", help="print every ranked candidate")
    args = ap.parse_args(argv)

    cluster = parse_cluster_file(GOLDEN.with_suffix(".txt"))
    lexicons = LexiconSet.load(None, GOLDEN.with_suffix(".mwe.txt"), GOLDEN.with_suffix(".syn.txt"))
    if args.lm:
        lm = PosLanguageModel.load(args.lm)
    else:
        corpus = itertools.islice(read_tag_corpus(ROOT / "data" / "ptb_tags.txt.gz"),
                                  args.train_sentences)
        lm = PosLanguageModel.train(list(corpus), order=7)

    res = compress_cluster(cluster, lexicons, lm)
    print(res.graph.dump(), end="")
    print(f"\n# density {density(res.graph):.4f}, {len(res.candidates)} paths, "
          f"{len(res.filtered)} pass the filter")
    if args.explain:
        print(res.ranked.to_tsv(), end="")
    print(f"# baseline: {res.baseline.text}")
    print(res.text)


if __name__ == "__main__":
    main()
