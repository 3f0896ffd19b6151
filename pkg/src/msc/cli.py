"""Command-line entry point: compress, train-lm, evaluate, inspect-graph, density."""
from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .config import MSCConfig, read_config_file
from .corpus import ClusterFormatError, parse_cluster_file, read_reference, reference_paths
from .lexicon import LexiconFormatError, LexiconSet
from .metrics import bleu4, classify_cluster, normalize_for_eval, rouge_n, rouge_su4, sentence_bleu4
from .pipeline import compress_cluster
from .poslm import ArpaFormatError, PosLanguageModel, read_tag_corpus
from .reranker import NoValidCompression
from .wordgraph import build_graph, density

log = logging.getLogger("msc")

# flags that can also come from a --config file
_TUNABLE = ("k", "mu", "min_words", "verb_tags", "order", "tr_window", "tr_damping",
            "density_threshold")


class ConfigurationError(Exception):
    pass


def _require(path, what):
    if path is not None and not Path(path).is_file():
        raise ConfigurationError(f"{what} not found: {path}")


def resolve_config(args) -> MSCConfig:
    """Flags beat the config file, which beats the built-in defaults."""
    cfg = MSCConfig()
    if getattr(args, "config", None):
        _require(args.config, "config file")
        try:
            cfg = cfg.updated(read_config_file(args.config))
        except (KeyError, ValueError) as e:
            raise ConfigurationError(f"{args.config}: {e}") from None
    flags = {name: getattr(args, name, None) for name in _TUNABLE}
    if flags["verb_tags"] is not None:
        flags["verb_tags"] = frozenset(flags["verb_tags"].replace(",", " ").split())
    if getattr(args, "no_mwe", False):
        flags["use_mwe"] = False
    if getattr(args, "no_synonyms", False):
        flags["use_synonyms"] = False
    if getattr(args, "no_pad", False):
        flags["pad"] = False
    try:
        return cfg.updated(flags)
    except ValueError as e:
        raise ConfigurationError(str(e)) from None


def load_lexicons(args) -> LexiconSet:
    _require(args.stopwords, "stopword list")
    _require(args.mwe_lexicon, "MWE lexicon")
    _require(args.synonyms, "synonym file")
    try:
        return LexiconSet.load(args.stopwords, args.mwe_lexicon, args.synonyms)
    except LexiconFormatError as e:
        raise ConfigurationError(str(e)) from None


# worker state for the process pool
_STATE: dict = {}


def _init_worker(lexicons, lm, cfg):
    _STATE.update(lexicons=lexicons, lm=lm, cfg=cfg)


def _compress_one(path: str):
    try:
        cluster = parse_cluster_file(path)
        res = compress_cluster(cluster, _STATE["lexicons"], _STATE["lm"], _STATE["cfg"])
        return cluster.id, res.text, res.ranked.to_tsv(), None
    except (NoValidCompression, ClusterFormatError) as e:
        return Path(path).stem, None, None, str(e)


def _map(fn, items, jobs, init_args):
    """Ordered map, optionally over a bounded process pool."""
    if jobs <= 1 or len(items) <= 1:
        _init_worker(*init_args)
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker,
                             initargs=init_args) as pool:
        return list(pool.map(fn, items))


def cmd_compress(args) -> int:
    cfg = resolve_config(args)
    for p in args.clusters:
        _require(p, "cluster file")
    lexicons = load_lexicons(args)
    lm = None
    if args.lm is not None:
        _require(args.lm, "language model")
        lm = PosLanguageModel.load(args.lm)
        if cfg.order != lm.order:
            log.info("model order %d differs from configured order %d", lm.order, cfg.order)
    elif cfg.mu < 1.0:
        raise ConfigurationError("--lm is required unless --mu 1.0")
    if args.out_dir:
        Path(args.out_dir).mkdir(parents=True, exist_ok=True)

    failed = 0
    out = sys.stdout
    for cid, text, table, err in _map(_compress_one, list(args.clusters), args.jobs,
                                      (lexicons, lm, cfg)):
        if err is not None:
            failed += 1
            print(f"error: {err}", file=sys.stderr)
            continue
        out.write(text + "\n")
        if args.explain:
            out.write(f"## cluster={cid}\n{table}")
        if args.out_dir:
            Path(args.out_dir, f"{cid}.txt").write_text(text + "\n", encoding="utf-8")
    return 1 if failed else 0


def cmd_train_lm(args) -> int:
    _require(args.input, "tag corpus")
    order = resolve_config(args).order
    model = PosLanguageModel.train(read_tag_corpus(args.input), order)
    model.save(args.output)
    sizes = " ".join(f"{n}:{len(p)}" for n, p in enumerate(model.probs) if n)
    log.info("wrote order-%d model to %s (%s)", order, args.output, sizes)
    return 0


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def _surface_words(tokens) -> int:
    # hyphenated MWEs count as their component words, punctuation as none
    return sum(len(t.split("-")) for t in tokens if any(ch.isalnum() for ch in t))


def cmd_evaluate(args) -> int:
    cand_dir, ref_dir = Path(args.candidates), Path(args.references or args.candidates)
    for d in (cand_dir, ref_dir) + ((Path(args.clusters),) if args.clusters else ()):
        if not d.is_dir():
            raise ConfigurationError(f"directory not found: {d}")
    cfg = resolve_config(args)
    lexicons = load_lexicons(args)
    mwes = lexicons.mwes or None
    syns = lexicons.synonyms or None

    rows, pairs = [], []
    for cpath in sorted(p for p in cand_dir.glob("*.txt") if ".ref" not in p.name):
        refs_p = reference_paths(ref_dir / cpath.name)
        if not refs_p:
            log.warning("no references for %s; skipped", cpath.name)
            continue
        raw = read_reference(cpath)
        cand = normalize_for_eval(raw, mwes, syns)
        refs = [normalize_for_eval(read_reference(p), mwes, syns) for p in refs_p]
        vals = [rouge_n(cand, refs, 1, args.multi)[2],
                rouge_n(cand, refs, 2, args.multi)[2],
                rouge_su4(cand, refs, args.multi)[2],
                sentence_bleu4(cand, refs)]
        row = [cpath.stem] + [_fmt(v) for v in vals]
        if args.clusters:
            cl_path = Path(args.clusters) / cpath.name
            if cl_path.is_file():
                cluster = parse_cluster_file(cl_path, with_references=False)
                d = density(build_graph(cluster, lexicons, merge_mwes=cfg.use_mwe,
                                        use_synonyms=cfg.use_synonyms))
                compr = _surface_words(raw) / cluster.mean_word_count()
                row += [_fmt(compr), f"{d:.6f}", classify_cluster(d, cfg.density_threshold)]
                vals.append(compr)
            else:
                row += ["", "", ""]
        rows.append((row, vals))
        pairs.append((cand, refs))
    if not rows:
        raise ConfigurationError(f"no candidate files with references in {cand_dir}")

    header = ["cluster", "rouge1_f", "rouge2_f", "rougesu4_f", "bleu4"]
    if args.clusters:
        header += ["compr", "density", "class"]
    lines = ["\t".join(header)] + ["\t".join(r) for r, _ in rows]
    avg = ["AVERAGE"]
    for i in range(3):
        avg.append(_fmt(sum(v[i] for _, v in rows) / len(rows)))
    avg.append(_fmt(bleu4(pairs)))  # corpus-level, not a mean of sentence scores
    if args.clusters:
        comprs = [v[4] for _, v in rows if len(v) > 4]
        avg += [_fmt(sum(comprs) / len(comprs)) if comprs else "", "", ""]
    lines.append("\t".join(avg))
    report = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(report, encoding="utf-8")
    else:
        sys.stdout.write(report)
    return 0


def _graph_for(args, path):
    cfg = resolve_config(args)
    _require(path, "cluster file")
    lexicons = load_lexicons(args)
    return build_graph(parse_cluster_file(path, with_references=False), lexicons,
                       merge_mwes=cfg.use_mwe, use_synonyms=cfg.use_synonyms), cfg


def cmd_inspect_graph(args) -> int:
    graph, _ = _graph_for(args, args.cluster)
    sys.stdout.write(graph.dump())
    return 0


def cmd_density(args) -> int:
    for p in args.clusters:
        _require(p, "cluster file")
    for p in args.clusters:
        graph, cfg = _graph_for(args, p)
        d = density(graph)
        print(f"{Path(p).stem}\t{d!r}\t{classify_cluster(d, cfg.density_threshold)}")
    return 0


def _add_lexicon_flags(p):
    p.add_argument("--stopwords", help="stopword list, one word per line (default: bundled)")
    p.add_argument("--mwe-lexicon", help="MWE lexicon, tab-separated")
    p.add_argument("--synonyms", help="synset file, one synset per line")
    p.add_argument("--config", help="flat key=value configuration file")
    p.add_argument("--no-mwe", action="store_true", help="disable MWE merging")
    p.add_argument("--no-synonyms", action="store_true", help="disable synonym mapping")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="msc", description="Word-graph multi-sentence compression.")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compress", help="compress clusters to one sentence each")
    c.add_argument("clusters", nargs="+", help="cluster files (one tagged sentence per line)")
    _add_lexicon_flags(c)
    c.add_argument("--lm", help="ARPA POS-tag language model")
    c.add_argument("--k", type=int, help="number of shortest paths (default 150)")
    c.add_argument("--mu", type=float, help="informativity weight (default 0.4)")
    c.add_argument("--min-words", type=int, help="minimum words per compression (default 8)")
    c.add_argument("--verb-tags", help="comma-separated tags counting as verbs")
    c.add_argument("--order", type=int, help="expected LM order (default 7)")
    c.add_argument("--tr-window", type=int, help="TextRank co-occurrence window (default 10)")
    c.add_argument("--tr-damping", type=float, help="TextRank damping (default 0.85)")
    c.add_argument("--no-pad", action="store_true", help="score tags without <s> ... </s>")
    c.add_argument("--explain", action="store_true", help="print the full ranking table as TSV")
    c.add_argument("--out-dir", help="also write <cluster>.txt files here")
    c.add_argument("--jobs", type=int, default=1, help="worker processes")
    c.set_defaults(func=cmd_compress)

    t = sub.add_parser("train-lm", help="train a POS-tag n-gram model")
    t.add_argument("--in", dest="input", required=True, help="tag corpus, one sentence per line")
    t.add_argument("--out", dest="output", required=True, help="output ARPA file")
    t.add_argument("--order", type=int, help="n-gram order (default 7)")
    t.add_argument("--config")
    t.set_defaults(func=cmd_train_lm)

    e = sub.add_parser("evaluate", help="ROUGE/BLEU report over a directory of candidates")
    e.add_argument("candidates", help="directory of <cluster>.txt candidates")
    e.add_argument("references", nargs="?", help="directory of <cluster>.ref<k>.txt files")
    e.add_argument("--clusters", help="directory of cluster files, for CompR and density")
    _add_lexicon_flags(e)
    e.add_argument("--multi", choices=("best", "average"), default="best")
    e.add_argument("--density-threshold", type=float)
    e.add_argument("--out", help="write the report here instead of stdout")
    e.set_defaults(func=cmd_evaluate)

    g = sub.add_parser("inspect-graph", help="dump the word graph of a cluster")
    g.add_argument("cluster")
    _add_lexicon_flags(g)
    g.set_defaults(func=cmd_inspect_graph)

    d = sub.add_parser("density", help="graph density and normal/diverse class")
    d.add_argument("clusters", nargs="+")
    _add_lexicon_flags(d)
    d.add_argument("--density-threshold", type=float, help="normal if density >= this (default 0.05)")
    d.set_defaults(func=cmd_density)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ConfigurationError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2
    except (ClusterFormatError, ArpaFormatError, LexiconFormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
