"""Switch off graph and ranking components one at a time.

For each cluster file and variant, prints node count, density and the chosen
compression. Clusters with sibling ``<stem>.refK.txt`` references also get
ROUGE-2 and ROUGE-SU4 F1; a mean row per variant closes the report.

    python scripts/ablation.py tests/data/golden.txt \\
        --mwe-lexicon tests/data/golden.mwe.txt --synonyms tests/data/golden.syn.txt
"""
import argparse
import itertools
import statistics
from pathlib import Path

from msc import LexiconSet, MSCConfig, compress_cluster
from msc.corpus import parse_cluster_file
from msc.metrics import normalize_for_eval, rouge_n, rouge_su4
from msc.poslm import PosLanguageModel, read_tag_corpus
from msc.reranker import NoValidCompression
from msc.wordgraph import density

ROOT = Path(__file__).resolve().parents[1]

VARIANTS = {
    "full": {},
    "no-synonyms": {"use_synonyms": False},
    "no-merge": {"use_mwe": False},
    "no-pos-lm": {"mu": 1.0},
    "plain": {"use_mwe": False, "use_synonyms": False, "mu": 1.0},
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("clusters", nargs="+")
    ap.add_argument("--mwe-lexicon")
    ap.add_argument("--synonyms")
    ap.add_argument("--stopwords")
    ap.add_argument("--lm", help="ARPA tag model; default trains on the bundled tag corpus")
    ap.add_argument("--train-sentences", type=int, default=20000)
    args = ap.parse_args(argv)

    lexicons = LexiconSet.load(args.stopwords, args.mwe_lexicon, args.synonyms)
    if args.lm:
        lm = PosLanguageModel.load(args.lm)
    else:
        lm = PosLanguageModel.train(list(itertools.islice(
            read_tag_corpus(ROOT / "data" / "ptb_tags.txt.gz"), args.train_sentences)), order=7)

    clusters = [parse_cluster_file(p) for p in args.clusters]
    scores = {name: [] for name in VARIANTS}
    print("variant\tcluster\tnodes\tdensity\trouge2_f\trougesu4_f\tcompression")
    for name, overrides in VARIANTS.items():
        cfg = MSCConfig(**overrides)
        for cluster in clusters:
            try:
                res = compress_cluster(cluster, lexicons, lm if cfg.mu < 1 else None, cfg)
            except NoValidCompression:
                print(f"{name}\t{cluster.id}\t-\t-\t-\t-\t(no valid compression)")
                continue
            r2 = su4 = "-"
            if cluster.references:
                cand = normalize_for_eval([t.surface for t in res.best.tokens],
                                          lexicons.mwes, lexicons.synonyms)
                refs = [normalize_for_eval(r, lexicons.mwes, lexicons.synonyms)
                        for r in cluster.references]
                f2, fsu = rouge_n(cand, refs, 2)[2], rouge_su4(cand, refs)[2]
                scores[name].append((f2, fsu))
                r2, su4 = f"{f2:.4f}", f"{fsu:.4f}"
            print(f"{name}\t{cluster.id}\t{len(res.graph)}\t{density(res.graph):.4f}"
                  f"\t{r2}\t{su4}\t{res.text}")
    for name, rows in scores.items():
        if rows:
            print(f"{name}\tMEAN\t\t\t{statistics.fmean(r[0] for r in rows):.4f}"
                  f"\t{statistics.fmean(r[1] for r in rows):.4f}\t")


if __name__ == "__main__":
    main()
