"""Build a POS-tag training corpus from the Penn Treebank (Mikolov) text.

The ``treebank`` wheel ships the lowercased PTB train/valid/test text
(~1.04M words, no punctuation). Each line is tagged with TextBlob's
Brill-style PatternTagger (Penn tags, fully offline) and only the tag
sequence is kept.

    pip install treebank textblob
    python scripts/build_tag_corpus.py data/ptb_tags.txt.gz
"""
import argparse
import gzip
import sys

import treebank
from textblob.en import tag


def tag_line(line):
    words = ["1" if w == "N" else w for w in line.split()]
    if not words:
        return None
    return [t for _, t in tag(" ".join(words), tokenize=False)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out")
    args = ap.parse_args(argv)
    n_sent = n_tok = 0
    with gzip.open(args.out, "wt", encoding="utf-8") as out:
        for split in ("train", "valid", "test"):
            for line in treebank.penn[split].splitlines():
                tags = tag_line(line)
                if not tags:
                    continue
                out.write(" ".join(tags) + "\n")
                n_sent += 1
                n_tok += len(tags)
    print(f"{n_sent} sentences, {n_tok} tags -> {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
