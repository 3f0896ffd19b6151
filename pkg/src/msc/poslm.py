"""Order-n POS-tag language model with interpolated modified Kneser-Ney.

Counting follows the usual recipe: raw counts at the highest order (and
for n-grams anchored at ``<s>``), continuation counts (number of distinct
left extensions) for every lower order. Each order gets the three
Chen & Goodman discounts D1, D2, D3+ from its counts-of-counts. The
unigram level is interpolated with the uniform distribution over the
vocabulary, so every context distribution sums to one.

The trained model is held as ARPA back-off tables (log10 probabilities and
back-off weights); querying a freshly trained model and one read back from
disk goes through the same code.
"""
from __future__ import annotations

import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, TextIO

log = logging.getLogger(__name__)

BOS, EOS, UNK = "<s>", "</s>", "<unk>"
LOG_ZERO = -99.0
FALLBACK_DISCOUNT = 0.5

Ngram = tuple[str, ...]


class ArpaFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class NgramCounts:
    """Raw n-gram counts from padded tag sequences; ``+`` merges shards."""

    order: int
    raw: list[Counter] = field(default_factory=list)
    n_sentences: int = 0

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if not self.raw:
            self.raw = [Counter() for _ in range(self.order + 1)]

    def add_sentence(self, tags: Sequence[str]) -> None:
        padded = (BOS, *tags, EOS)
        n = self.order
        for i in range(1, len(padded)):
            g = padded[max(0, i - n + 1):i + 1]
            self.raw[len(g)][g] += 1
        self.n_sentences += 1

    def update(self, other: "NgramCounts") -> "NgramCounts":
        if other.order != self.order:
            raise ValueError("cannot merge counts of different orders")
        for mine, theirs in zip(self.raw, other.raw):
            mine.update(theirs)
        self.n_sentences += other.n_sentences
        return self

    def __add__(self, other: "NgramCounts") -> "NgramCounts":
        out = NgramCounts(self.order)
        out.update(self)
        out.update(other)
        return out

    def modified_counts(self) -> list[dict[Ngram, int]]:
        """Per-order KN counts: raw at the top and for <s>-anchored n-grams,
        distinct-left-extension counts elsewhere."""
        n = self.order
        mod: list[dict[Ngram, int]] = [dict() for _ in range(n + 1)]
        mod[n] = dict(self.raw[n])
        for m in range(n - 1, 0, -1):
            cur: dict[Ngram, int] = dict(self.raw[m])
            for g in mod[m + 1]:
                tail = g[1:]
                cur[tail] = cur.get(tail, 0) + 1
            mod[m] = cur
        return mod

    def tags(self) -> set[str]:
        seen = set()
        for g in self.raw[1]:
            seen.update(g)
        for counter in self.raw[2:]:
            for g in counter:
                seen.update(g)
        return seen


def count_of_counts(counts: dict[Ngram, int]) -> tuple[int, int, int, int]:
    n = [0, 0, 0, 0, 0]
    for c in counts.values():
        if 1 <= c <= 4:
            n[c] += 1
    return n[1], n[2], n[3], n[4]


def kn_discounts(n1: int, n2: int, n3: int, n4: int) -> tuple[float, float, float] | None:
    """Chen & Goodman D1, D2, D3+; None when the estimate is unusable."""
    if min(n1, n2, n3, n4) == 0:
        return None
    y = n1 / (n1 + 2 * n2)
    d = (1 - 2 * y * n2 / n1, 2 - 3 * y * n3 / n2, 3 - 4 * y * n4 / n3)
    if not all(0 < dk < k for k, dk in enumerate(d, start=1)):
        return None
    return d


def _discount(d: tuple[float, float, float], c: int) -> float:
    if c <= 0:
        return 0.0
    return d[min(c, 3) - 1]


class PosLanguageModel:
    def __init__(self, order: int, probs: list[dict[Ngram, float]], bows: list[dict[Ngram, float]],
                 discounts: list[tuple[float, float, float] | None] | None = None):
        self.order = order
        # probs[m][ngram] = log10 p, bows[m][ngram] = log10 back-off weight; index 0 unused
        self.probs = probs
        self.bows = bows
        self.discounts = discounts
        self.vocab = frozenset(g[0] for g in probs[1] if g[0] != BOS)

    # -- training -------------------------------------------------------------

    @classmethod
    def from_counts(cls, counts: NgramCounts) -> "PosLanguageModel":
        n = counts.order
        mod = counts.modified_counts()
        if mod[1].get((UNK,), 0) < 1:
            mod[1][(UNK,)] = 1
        vocab = sorted({g[0] for g in mod[1]} | {EOS, UNK})
        discounts: list = [None]
        for m in range(1, n + 1):
            d = kn_discounts(*count_of_counts(mod[m]))
            if d is None:
                log.info("order %d: counts-of-counts unusable for modified KN, "
                            "falling back to D=%.1f", m, FALLBACK_DISCOUNT)
                d = (FALLBACK_DISCOUNT,) * 3
            discounts.append(d)

        probs: list[dict[Ngram, float]] = [dict() for _ in range(n + 1)]
        bows: list[dict[Ngram, float]] = [dict() for _ in range(n + 1)]
        model = cls(n, probs, bows, discounts)

        for m in range(1, n + 1):
            d = discounts[m]
            # per context: total, and how many successors have count 1, 2, 3+
            stats: dict[Ngram, list[int]] = defaultdict(lambda: [0, 0, 0, 0])
            for g, c in mod[m].items():
                st = stats[g[:-1]]
                st[0] += c
                st[min(c, 3)] += 1
            gammas = {}
            for h, (total, k1, k2, k3) in stats.items():
                gammas[h] = (d[0] * k1 + d[1] * k2 + d[2] * k3) / total
            if m == 1:
                total, *_ = stats[()]
                uniform = 1.0 / len(vocab)
                for w in vocab:
                    c = mod[1].get((w,), 0)
                    p = max(c - _discount(d, c), 0.0) / total + gammas[()] * uniform
                    probs[1][(w,)] = math.log10(p)
                probs[1][(BOS,)] = LOG_ZERO
            else:
                for g, c in mod[m].items():
                    h = g[:-1]
                    lower = 10.0 ** model._logprob(g[1:-1], g[-1])
                    p = (c - _discount(d, c)) / stats[h][0] + gammas[h] * lower
                    probs[m][g] = math.log10(p)
            for h, gamma in gammas.items():
                if h:
                    bows[m - 1][h] = math.log10(gamma)
        model.vocab = frozenset(vocab)
        return model

    @classmethod
    def train(cls, corpus: Iterable[Sequence[str]], order: int = 7) -> "PosLanguageModel":
        if order < 2:
            raise ValueError("order must be >= 2")
        counts = NgramCounts(order)
        for tags in corpus:
            if tags:
                counts.add_sentence(list(tags))
        if counts.n_sentences == 0:
            raise ValueError("training corpus is empty")
        return cls.from_counts(counts)

    # -- queries --------------------------------------------------------------

    def map_tag(self, tag: str) -> str:
        return tag if tag in self.vocab or tag == BOS else UNK

    def _logprob(self, history: Ngram, word: str) -> float:
        while True:
            g = history + (word,)
            lp = self.probs[len(g)].get(g)
            if lp is not None:
                return lp
            if not history:
                return LOG_ZERO
            bow = self.bows[len(history)].get(history, 0.0)
            # back off one order, accumulating the weight
            return bow + self._logprob(history[1:], word)

    def logprob(self, word: str, history: Sequence[str] = ()) -> float:
        """log10 p(word | history), history truncated to order-1 tags."""
        word = self.map_tag(word)
        hist = tuple(self.map_tag(t) for t in history)
        if self.order > 1:
            hist = hist[-(self.order - 1):]
        else:
            hist = ()
        # nothing precedes <s>
        if BOS in hist:
            hist = hist[max(i for i, t in enumerate(hist) if t == BOS):]
        return self._logprob(hist, word)

    def prob(self, word: str, history: Sequence[str] = ()) -> float:
        return 10.0 ** self.logprob(word, history)

    def predictable(self) -> list[str]:
        """Vocabulary over which every conditional distribution is normalised."""
        return sorted(self.vocab)

    def contexts(self, order: int) -> list[Ngram]:
        """Histories of length order-1 that carry their own statistics."""
        if order == 1:
            return [()]
        return sorted(self.bows[order - 1])

    def sequence_log_probability(self, tags: Sequence[str], pad: bool = True) -> float:
        if not tags:
            raise ValueError("empty tag sequence")
        hist: list[str] = [BOS] if pad else []
        total = 0.0
        seq = list(tags) + ([EOS] if pad else [])
        for t in seq:
            t = self.map_tag(t) if t != EOS else t
            total += self.logprob(t, hist)
            hist.append(t)
        return total

    # -- serialisation --------------------------------------------------------

    def write_arpa(self, fh: TextIO) -> None:
        if self.discounts:
            for m in range(1, self.order + 1):
                d = self.discounts[m]
                fh.write(f"# order {m} discounts D1={d[0]!r} D2={d[1]!r} D3+={d[2]!r}\n")
            fh.write("\n")
        fh.write("\\data\\\n")
        for m in range(1, self.order + 1):
            fh.write(f"ngram {m}={len(self.probs[m])}\n")
        for m in range(1, self.order + 1):
            fh.write(f"\n\\{m}-grams:\n")
            bows = self.bows[m] if m < self.order else {}
            missing = set(bows) - set(self.probs[m])
            if missing:
                raise ValueError(f"back-off weights for absent {m}-grams: {sorted(missing)[:3]}")
            for g in sorted(self.probs[m]):
                line = f"{self.probs[m][g]!r}\t{' '.join(g)}"
                if g in bows:
                    line += f"\t{bows[g]!r}"
                fh.write(line + "\n")
        fh.write("\n\\end\\\n")

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            self.write_arpa(fh)

    @classmethod
    def read_arpa(cls, lines: Iterable[str]) -> "PosLanguageModel":
        declared: dict[int, int] = {}
        probs: list[dict[Ngram, float]] = []
        bows: list[dict[Ngram, float]] = []
        state = "preamble"
        current = 0
        lineno = 0
        for lineno, raw in enumerate(lines, start=1):
            line = raw.strip()
            if state == "preamble":
                if line == "\\data\\":
                    state = "header"
                continue
            if not line:
                continue
            if state == "header":
                if line.startswith("ngram "):
                    try:
                        m, c = line[6:].split("=")
                        m, c = int(m), int(c)
                    except ValueError:
                        raise ArpaFormatError(f"bad header line {line!r}", lineno) from None
                    if m != len(declared) + 1:
                        raise ArpaFormatError(f"header declares order {m} out of sequence", lineno)
                    declared[m] = c
                    continue
                state = "body"
                probs = [dict() for _ in range(len(declared) + 1)]
                bows = [dict() for _ in range(len(declared) + 1)]
            if line == "\\end\\":
                state = "end"
                break
            if line.startswith("\\") and line.endswith("-grams:"):
                try:
                    m = int(line[1:-7])
                except ValueError:
                    raise ArpaFormatError(f"bad section line {line!r}", lineno) from None
                if m != current + 1 or m not in declared:
                    raise ArpaFormatError(f"section {m}-grams does not match the header order", lineno)
                if current and len(probs[current]) != declared[current]:
                    raise ArpaFormatError(f"{current}-grams: header says {declared[current]}, "
                                          f"found {len(probs[current])}", lineno)
                current = m
                continue
            if current == 0:
                raise ArpaFormatError(f"n-gram line before any section: {line!r}", lineno)
            parts = line.split()
            if len(parts) not in (current + 1, current + 2):
                raise ArpaFormatError(f"expected a {current}-gram, got {line!r}", lineno)
            words = parts[1:current + 1]
            try:
                lp = float(parts[0])
                bw = float(parts[-1]) if len(parts) == current + 2 else None
            except ValueError:
                raise ArpaFormatError(f"bad number in {line!r}", lineno) from None
            g = tuple(words)
            probs[current][g] = lp
            if bw is not None:
                bows[current][g] = bw
        if state != "end":
            raise ArpaFormatError("missing \\data\\ or \\end\\ marker", lineno)
        if current != len(declared):
            raise ArpaFormatError(f"header declares {len(declared)} orders, body has {current}", lineno)
        if len(probs[current]) != declared[current]:
            raise ArpaFormatError(f"{current}-grams: header says {declared[current]}, "
                                  f"found {len(probs[current])}", lineno)
        return cls(len(declared), probs, bows)

    @classmethod
    def load(cls, path: str | Path) -> "PosLanguageModel":
        with open(path, encoding="utf-8") as fh:
            return cls.read_arpa(fh)


def train(corpus: Iterable[Sequence[str]], order: int = 7) -> PosLanguageModel:
    return PosLanguageModel.train(corpus, order)


def read_tag_corpus(path: str | Path) -> Iterable[list[str]]:
    """One sentence of space-separated tags per line; ``.gz`` is fine."""
    path = Path(path)
    if path.suffix == ".gz":
        import gzip
        fh = gzip.open(path, "rt", encoding="utf-8")
    else:
        fh = open(path, encoding="utf-8")
    with fh:
        for line in fh:
            tags = line.split()
            if tags:
                yield tags


def sequence_log_probability(model: PosLanguageModel, tags: Sequence[str], pad: bool = True) -> float:
    return model.sequence_log_probability(tags, pad)


def grammaticality_score(model: PosLanguageModel, candidate, pad: bool = True) -> float:
    """Per-word geometric-mean probability 10**(log10 p / #words); higher is better."""
    tags = list(getattr(candidate, "tags", candidate))
    if not tags:
        raise ValueError("candidate has no tokens")
    return 10.0 ** (model.sequence_log_probability(tags, pad) / len(tags))


def save_model(model: PosLanguageModel, path: str | Path) -> None:
    model.save(path)


def load_model(path: str | Path) -> PosLanguageModel:
    return PosLanguageModel.load(path)
