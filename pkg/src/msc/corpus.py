"""Clusters of POS-tagged sentences and their on-disk format.

A cluster file holds one sentence per line, tokens separated by spaces, each
token written ``surface:POS``. A literal colon or backslash inside a surface
is escaped as ``\\:`` or ``\\\\``. Reference summaries sit next to the
cluster file as untagged plain text files named ``<cluster>.ref<k>.txt``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence


class ClusterFormatError(ValueError):
    """Raised for malformed cluster files; carries the offending position."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None,
                 column: int | None = None):
        self.path = path
        self.line = line
        self.column = column
        where = ":".join(str(p) for p in (path, line, column) if p is not None)
        super().__init__(f"{where}: {message}" if where else message)


@dataclass(frozen=True)
class Token:
    surface: str
    pos: str
    stem: str = ""
    is_stopword: bool = False
    mwe_id: str | None = None
    # number of original words behind this token (>1 for merged MWEs)
    components: int = 1

    def __post_init__(self):
        if not self.surface or any(ch.isspace() for ch in self.surface):
            raise ValueError(f"token surface {self.surface!r} must be non-empty, without whitespace")
        if not self.pos or any(ch.isspace() for ch in self.pos):
            raise ValueError(f"token POS {self.pos!r} must be non-empty, without whitespace")
        if self.components < 1:
            raise ValueError("components must be >= 1")

    @property
    def key(self) -> tuple[str, str]:
        """Case-insensitive word/POS identity used for node mapping."""
        return (self.surface.lower(), self.pos)

    @property
    def is_punct(self) -> bool:
        return not any(ch.isalnum() for ch in self.surface)

    @property
    def word_count(self) -> int:
        """Words this token stands for; punctuation counts as zero."""
        return 0 if self.is_punct else self.components

    def to_field(self) -> str:
        return self.surface.replace("\\", "\\\\").replace(":", "\\:") + ":" + self.pos


@dataclass(frozen=True)
class TaggedSentence:
    sid: int
    tokens: tuple[Token, ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError(f"sentence {self.sid} has no tokens")
        object.__setattr__(self, "tokens", tuple(self.tokens))

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def token_at(self, pid: int) -> Token:
        """Token at 1-based position ``pid``."""
        if not 1 <= pid <= len(self.tokens):
            raise IndexError(pid)
        return self.tokens[pid - 1]

    @property
    def word_count(self) -> int:
        return sum(t.word_count for t in self.tokens)

    def text(self) -> str:
        return " ".join(t.surface for t in self.tokens)

    def to_line(self) -> str:
        return " ".join(t.to_field() for t in self.tokens)

    def with_tokens(self, tokens: Iterable[Token]) -> "TaggedSentence":
        return replace(self, tokens=tuple(tokens))


@dataclass(frozen=True)
class Cluster:
    id: str
    sentences: tuple[TaggedSentence, ...]
    references: tuple[tuple[str, ...], ...] = field(default=())

    def __post_init__(self):
        if not self.sentences:
            raise ValueError(f"cluster {self.id!r} has no sentences")
        sids = [s.sid for s in self.sentences]
        if len(set(sids)) != len(sids):
            raise ValueError(f"cluster {self.id!r} has duplicate sentence ids")
        object.__setattr__(self, "sentences", tuple(self.sentences))
        object.__setattr__(self, "references", tuple(tuple(r) for r in self.references))

    def __len__(self):
        return len(self.sentences)

    def sentence(self, sid: int) -> TaggedSentence:
        for s in self.sentences:
            if s.sid == sid:
                return s
        raise KeyError(sid)

    def mean_word_count(self) -> float:
        return sum(s.word_count for s in self.sentences) / len(self.sentences)

    def with_sentences(self, sentences: Iterable[TaggedSentence]) -> "Cluster":
        return replace(self, sentences=tuple(sentences))

    def dumps(self) -> str:
        return "".join(s.to_line() + "\n" for s in self.sentences)


def _split_field(text: str) -> tuple[str, str] | None:
    """Unescape the surface up to the first bare colon; the rest is the POS."""
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            out.append(text[i + 1])
            i += 2
            continue
        if ch == ":":
            return "".join(out), text[i + 1:]
        out.append(ch)
        i += 1
    return None


def parse_token(field_text: str, *, path=None, line=None, column=None) -> Token:
    # surface colons and backslashes are escaped, so the first bare colon is
    # the separator; the POS may itself be ":" (PTB colon tag)
    parts = _split_field(field_text)
    if parts is None:
        raise ClusterFormatError(f"token {field_text!r} lacks a ':' separator",
                                 path, line, column)
    surface, pos = parts
    if not surface or not pos:
        raise ClusterFormatError(f"token {field_text!r} has an empty surface or POS",
                                 path, line, column)
    return Token(surface, pos)


def parse_sentence(text: str, sid: int, *, path=None, line=None) -> TaggedSentence:
    tokens = []
    column = 1
    for piece in re.split(r"( +)", text):
        if piece and not piece.isspace():
            tokens.append(parse_token(piece, path=path, line=line, column=column))
        column += len(piece)
    return TaggedSentence(sid, tuple(tokens))


def parse_cluster_text(text: str, cluster_id: str = "cluster", path: str | None = None,
                       references: Sequence[Sequence[str]] = ()) -> Cluster:
    sentences = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        raw = raw.rstrip("\r").strip("\t ")
        if not raw:
            continue
        sentences.append(parse_sentence(raw, len(sentences) + 1, path=path, line=lineno))
    if not sentences:
        raise ClusterFormatError("cluster file is empty", path)
    return Cluster(cluster_id, tuple(sentences), tuple(tuple(r) for r in references))


def reference_paths(path: str | Path) -> list[Path]:
    """Sibling ``<stem>.ref<k>.txt`` files, ordered by k."""
    path = Path(path)
    found = []
    for p in path.parent.glob(f"{path.stem}.ref*.txt"):
        m = re.fullmatch(re.escape(path.stem) + r"\.ref(\d+)\.txt", p.name)
        if m:
            found.append((int(m.group(1)), p))
    return [p for _, p in sorted(found)]


def read_reference(path: str | Path) -> tuple[str, ...]:
    return tuple(Path(path).read_text(encoding="utf-8").split())


def parse_cluster_file(path: str | Path, with_references: bool = True) -> Cluster:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    refs = [read_reference(p) for p in reference_paths(path)] if with_references else []
    return parse_cluster_text(text, cluster_id=path.stem, path=str(path), references=refs)


def write_cluster_file(cluster: Cluster, path: str | Path) -> None:
    Path(path).write_text(cluster.dumps(), encoding="utf-8")


def word_count(tokens: Iterable[Token]) -> int:
    return sum(t.word_count for t in tokens)


def compression_ratio(candidate: Sequence[Token], cluster: Cluster) -> float:
    """Candidate word count over the mean input-sentence word count.

    Merged MWE tokens count as their number of component words and
    punctuation tokens are not words.
    """
    if cluster is None or not cluster.sentences:
        raise ValueError("compression ratio needs a non-empty cluster")
    n = word_count(candidate)
    if n == 0:
        raise ValueError("candidate has no words")
    mean = cluster.mean_word_count()
    if mean == 0:
        raise ValueError("cluster sentences contain no words")
    return n / mean
