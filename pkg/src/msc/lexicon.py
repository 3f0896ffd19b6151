"""Stemming, stopwords, MWE detection/merging and synonym lookup.

All three lexicons are plain text files:

* stopwords: one word per line, ``#`` starts a comment.
* MWE lexicon: ``word1 word2 ...<TAB>POS1 POS2 ...<TAB>head-POS``; the POS
  fields are optional (an empty second field is allowed so a head POS can be
  given alone). Words are stemmed on load, so either surfaces or stems work.
* synonyms: one synset per line, tab-separated ``lemma:POS`` members in
  descending frequency rank. Multiword lemmas use spaces, ``_`` or ``-``.
  POS is a Penn tag or a WordNet class letter (``n``, ``v``, ``a``, ``r``).
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from nltk.stem.porter import PorterStemmer

from .corpus import Cluster, TaggedSentence, Token

log = logging.getLogger(__name__)

_porter = PorterStemmer(mode=PorterStemmer.NLTK_EXTENSIONS)


class LexiconFormatError(ValueError):
    pass


@lru_cache(maxsize=65536)
def stem(surface: str) -> str:
    """Lowercase Porter stem."""
    if not surface:
        raise ValueError("cannot stem an empty string")
    return _porter.stem(surface.lower())


def lemma_key(lemma: str) -> str:
    """Stem key of a possibly multiword lemma: component stems joined by ``-``."""
    parts = [p for p in re.split(r"[\s_\-]+", lemma.strip()) if p]
    if not parts:
        raise ValueError(f"empty lemma {lemma!r}")
    return "-".join(stem(p) for p in parts)


_COARSE = (("NN", "n"), ("VB", "v"), ("MD", "v"), ("JJ", "a"), ("RB", "r"))


def coarse_pos(tag: str) -> str | None:
    """WordNet class of a Penn tag (or a class letter itself)."""
    if tag in ("n", "v", "a", "r", "s"):
        return "a" if tag == "s" else tag
    for prefix, cls in _COARSE:
        if tag.startswith(prefix):
            return cls
    return None


def pos_compatible(a: str, b: str) -> bool:
    if a == b:
        return True
    ca, cb = coarse_pos(a), coarse_pos(b)
    return ca is not None and ca == cb


# -- stopwords ----------------------------------------------------------------

@dataclass(frozen=True)
class StopwordList:
    words: frozenset = frozenset()

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.words

    def __len__(self):
        return len(self.words)

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "StopwordList":
        words = set()
        for line in lines:
            line = line.split("#", 1)[0].strip()
            if line:
                words.add(line.lower())
        return cls(frozenset(words))

    @classmethod
    def load(cls, path: str | Path | None = None) -> "StopwordList":
        if path is None:
            text = resources.files("msc").joinpath("data/stopwords.en.txt").read_text("utf-8")
        else:
            text = Path(path).read_text(encoding="utf-8")
        return cls.from_lines(text.splitlines())


# -- multiword expressions ----------------------------------------------------

@dataclass(frozen=True)
class MweEntry:
    stems: tuple[str, ...]
    canonical: str
    pos: tuple[str, ...] | None = None
    head_pos: str | None = None
    # lowercased entry words as written; entries may list stems already and
    # Porter is not idempotent, so a component matches either form
    forms: tuple[str, ...] | None = None

    def __post_init__(self):
        if len(self.stems) < 2:
            raise ValueError(f"MWE entry {self.canonical!r} needs at least two components")
        if self.pos is not None and len(self.pos) != len(self.stems):
            raise ValueError(f"MWE entry {self.canonical!r}: POS count differs from word count")

    def __len__(self):
        return len(self.stems)

    def matches(self, tokens: Sequence[Token], match_pos: bool = True) -> bool:
        if len(tokens) != len(self.stems):
            return False
        for i, (tok, st) in enumerate(zip(tokens, self.stems)):
            ts = tok.stem or stem(tok.surface)
            if ts != st and (self.forms is None or ts != self.forms[i]):
                return False
            # an entry tag matches any tag it prefixes (NN matches NNS)
            if match_pos and self.pos is not None and not tok.pos.startswith(self.pos[i]):
                return False
        return True


@dataclass(frozen=True)
class MweOccurrence:
    start: int  # 1-based PID of the first component
    length: int
    canonical: str
    entry: MweEntry = field(compare=False, repr=False)

    @property
    def end(self) -> int:
        return self.start + self.length - 1


class MweLexicon:
    def __init__(self, entries: Iterable[MweEntry] = ()):
        self.entries: tuple[MweEntry, ...] = tuple(dict.fromkeys(entries))
        self._by_first: dict[str, list[MweEntry]] = {}
        for e in self.entries:
            firsts = {e.stems[0]} | ({e.forms[0]} if e.forms else set())
            for f in sorted(firsts):
                self._by_first.setdefault(f, []).append(e)
        for bucket in self._by_first.values():
            # longest first, file order among equals
            bucket.sort(key=lambda e: -len(e))

    def __len__(self):
        return len(self.entries)

    def __bool__(self):
        return bool(self.entries)

    def candidates(self, first_stem: str) -> list[MweEntry]:
        return self._by_first.get(first_stem, [])

    @classmethod
    def from_lines(cls, lines: Iterable[str], source: str = "<mwe>") -> "MweLexicon":
        entries = []
        for lineno, line in enumerate(lines, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            words = fields[0].split()
            if len(words) < 2:
                raise LexiconFormatError(f"{source}:{lineno}: MWE needs at least two words")
            pos = tuple(fields[1].split()) if len(fields) > 1 and fields[1].strip() else None
            head = fields[2].strip() if len(fields) > 2 and fields[2].strip() else None
            try:
                entries.append(MweEntry(tuple(stem(w) for w in words),
                                        "-".join(w.lower() for w in words), pos, head,
                                        tuple(w.lower() for w in words)))
            except ValueError as exc:
                raise LexiconFormatError(f"{source}:{lineno}: {exc}") from None
        return cls(entries)

    @classmethod
    def load(cls, path: str | Path) -> "MweLexicon":
        return cls.from_lines(Path(path).read_text(encoding="utf-8").splitlines(), str(path))


def detect_mwes(sentence: TaggedSentence, lexicon: MweLexicon,
                match_pos: bool = True) -> list[MweOccurrence]:
    """Greedy left-to-right longest match of lexicon entries on stems."""
    tokens = sentence.tokens
    found = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        hit = None
        for entry in lexicon.candidates(tok.stem or stem(tok.surface)):
            if entry.matches(tokens[i:i + len(entry)], match_pos):
                hit = entry
                break
        if hit is not None:
            found.append(MweOccurrence(i + 1, len(hit), hit.canonical, hit))
            i += len(hit)
        else:
            i += 1
    return found


def _head_pos(entry: MweEntry, tokens: Sequence[Token]) -> str:
    if entry.head_pos:
        return entry.head_pos
    for tok in reversed(tokens):
        if tok.pos.startswith("NN"):
            return tok.pos
    return tokens[-1].pos


def merge_mwes(sentence: TaggedSentence, occurrences: Sequence[MweOccurrence]) -> TaggedSentence:
    """Collapse each occurrence into one hyphenated token; PIDs are renumbered."""
    if not occurrences:
        return sentence
    occs = sorted(occurrences, key=lambda o: o.start)
    for a, b in zip(occs, occs[1:]):
        if b.start <= a.end:
            raise ValueError(f"overlapping MWE occurrences at PIDs {a.start} and {b.start}")
    if occs[0].start < 1 or occs[-1].end > len(sentence):
        raise ValueError("MWE occurrence outside the sentence")
    out: list[Token] = []
    pid = 1
    for occ in occs:
        out.extend(sentence.tokens[pid - 1:occ.start - 1])
        parts = sentence.tokens[occ.start - 1:occ.end]
        out.append(Token(
            surface=occ.canonical,
            pos=_head_pos(occ.entry, parts),
            stem="-".join(t.stem or stem(t.surface) for t in parts),
            is_stopword=False,
            mwe_id=f"{sentence.sid}:{occ.start}",
            components=sum(t.components for t in parts),
        ))
        pid = occ.end + 1
    out.extend(sentence.tokens[pid - 1:])
    return sentence.with_tokens(out)


# -- synonyms -----------------------------------------------------------------

@dataclass(frozen=True)
class SynonymMember:
    lemma: str
    pos: str
    rank: int  # 0 = most frequent in its synset
    key: str   # stem key, see lemma_key

    @property
    def is_one_word(self) -> bool:
        return "-" not in self.key


class SynonymSets:
    def __init__(self, synsets: Iterable[Sequence[SynonymMember]] = ()):
        self.synsets: tuple[tuple[SynonymMember, ...], ...] = tuple(tuple(g) for g in synsets)
        for g in self.synsets:
            if len(g) < 2:
                raise ValueError("every synset needs at least two members")
        self._index: dict[str, list[tuple[int, SynonymMember]]] = {}
        for gi, group in enumerate(self.synsets):
            for m in group:
                self._index.setdefault(m.key, []).append((gi, m))

    def __len__(self):
        return len(self.synsets)

    def __bool__(self):
        return bool(self.synsets)

    def groups_of(self, key: str, pos: str) -> list[int]:
        """Synset indices (file order) containing key with a compatible POS."""
        out = []
        for gi, m in self._index.get(key, ()):
            if pos_compatible(m.pos, pos) and gi not in out:
                out.append(gi)
        return out

    def head(self, key: str, pos: str) -> SynonymMember | None:
        """Designated one-word head of the first synset holding (key, pos)."""
        for gi in self.groups_of(key, pos):
            for m in self.synsets[gi]:
                if m.is_one_word and pos_compatible(m.pos, pos):
                    return m
        return None

    def head_of(self, key: str) -> SynonymMember | None:
        """One-word head of the first synset containing ``key``, any POS."""
        for gi, _ in self._index.get(key, ()):
            for m in self.synsets[gi]:
                if m.is_one_word:
                    return m
        return None

    def canonical_of(self, key: str) -> SynonymMember | None:
        """First-listed member of the first synset containing ``key``."""
        hits = self._index.get(key)
        return self.synsets[hits[0][0]][0] if hits else None

    @classmethod
    def from_lines(cls, lines: Iterable[str], source: str = "<synonyms>") -> "SynonymSets":
        groups = []
        for lineno, line in enumerate(lines, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            members = []
            for rank, item in enumerate(f for f in line.split("\t") if f.strip()):
                lemma, sep, pos = item.strip().rpartition(":")
                if not sep or not lemma or not pos:
                    raise LexiconFormatError(f"{source}:{lineno}: bad member {item!r}, "
                                             "expected lemma:POS")
                members.append(SynonymMember(lemma, pos, rank, lemma_key(lemma)))
            if len(members) < 2:
                raise LexiconFormatError(f"{source}:{lineno}: synset needs two members")
            groups.append(members)
        return cls(groups)

    @classmethod
    def load(cls, path: str | Path) -> "SynonymSets":
        return cls.from_lines(Path(path).read_text(encoding="utf-8").splitlines(), str(path))


def _token_key(token: Token) -> str:
    return token.stem or lemma_key(token.surface)


def synonym_candidates(token: Token, syns: SynonymSets) -> set[tuple[str, str]]:
    """Same-POS lemmas sharing a synset with ``token``, minus the token itself."""
    if token.is_stopword:
        return set()
    key = _token_key(token)
    out = set()
    for gi in syns.groups_of(key, token.pos):
        for m in syns.synsets[gi]:
            if m.key != key and pos_compatible(m.pos, token.pos):
                out.add((m.lemma, m.pos))
    return out


def best_one_word_synonym(mwe: Token, cluster: Cluster, syns: SynonymSets,
                          sid: int | None = None) -> str | None:
    """Pick the one-word replacement for a merged MWE, or None to keep it.

    Prefers the member seen most often in the other sentences of the
    cluster, then the synset's most frequent one-word member.
    """
    key = _token_key(mwe)
    groups = syns.groups_of(key, mwe.pos)
    options: list[SynonymMember] = []
    for gi in groups:
        for m in syns.synsets[gi]:
            if m.is_one_word and m.key != key and pos_compatible(m.pos, mwe.pos):
                if all(o.key != m.key for o in options):
                    options.append(m)
    if not options:
        return None
    counts = {m.key: 0 for m in options}
    pos_of = {m.key: m.pos for m in options}
    for sent in cluster.sentences:
        if sid is not None and sent.sid == sid:
            continue
        for tok in sent.tokens:
            k = tok.stem or stem(tok.surface)
            if k in counts and pos_compatible(pos_of[k], tok.pos):
                counts[k] += 1
    # options are already in (synset order, rank) order, so max() keeps the first best
    best = max(options, key=lambda m: counts[m.key])
    return best.lemma.lower()


# -- bundle -------------------------------------------------------------------

@dataclass
class LexiconSet:
    stopwords: StopwordList = field(default_factory=StopwordList.load)
    mwes: MweLexicon = field(default_factory=MweLexicon)
    synonyms: SynonymSets = field(default_factory=SynonymSets)

    @classmethod
    def load(cls, stopwords=None, mwe_lexicon=None, synonyms=None) -> "LexiconSet":
        return cls(
            StopwordList.load(stopwords),
            MweLexicon.load(mwe_lexicon) if mwe_lexicon else MweLexicon(),
            SynonymSets.load(synonyms) if synonyms else SynonymSets(),
        )

    def is_stopword(self, token: Token) -> bool:
        return token.is_punct or token.surface in self.stopwords

    def annotate(self, sentence: TaggedSentence) -> TaggedSentence:
        """Fill in stems and stopword flags."""
        return sentence.with_tokens(
            Token(t.surface, t.pos, t.stem or stem(t.surface), self.is_stopword(t),
                  t.mwe_id, t.components)
            for t in sentence.tokens
        )

    def preprocess(self, sentence: TaggedSentence, merge: bool = True) -> TaggedSentence:
        sent = self.annotate(sentence)
        if merge and self.mwes:
            sent = merge_mwes(sent, detect_mwes(sent, self.mwes))
        return sent

    def preprocess_cluster(self, cluster: Cluster, merge: bool = True) -> Cluster:
        return cluster.with_sentences(self.preprocess(s, merge) for s in cluster.sentences)
