"""Fusion of informativity and grammaticality into one ranking.

Informativity is a cost (lower is better) while the LM score is a fitness
(higher is better). Both are rescaled to [0, 1] per cluster; the cost is
flipped to ``1 - normalised cost`` and the two are mixed with weight ``mu``.
The highest final score wins.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .pathfinder import CompressionCandidate


class NoValidCompression(ValueError):
    pass


def normalize_unity(values: Sequence[float]) -> list[float]:
    """Min-max rescale to [0, 1]; a constant list maps to 0.5 everywhere."""
    if not values:
        raise ValueError("cannot normalise an empty list")
    finite = [v for v in values if math.isfinite(v)]
    if not finite:
        return [0.5] * len(values)
    lo, hi = min(finite), max(finite)
    out = []
    for v in values:
        if v == math.inf:
            out.append(1.0)
        elif v == -math.inf:
            out.append(0.0)
        elif hi == lo:
            out.append(0.5)
        else:
            out.append((v - lo) / (hi - lo))
    return out


@dataclass
class RankedRow:
    candidate: CompressionCandidate
    informativity: float
    lm_score: float
    informativity_fitness: float
    lm_fitness: float
    final: float
    rank: int = 0


@dataclass
class RankedOutput:
    rows: list[RankedRow]
    mu: float

    @property
    def best(self) -> CompressionCandidate:
        return self.rows[0].candidate

    def to_tsv(self) -> str:
        head = "rank\tfinal\tinfo_cost\tinfo_fit\tlm_score\tlm_fit\twords\ttotal_weight\ttext"
        lines = [head]
        for r in self.rows:
            c = r.candidate
            lines.append(f"{r.rank}\t{r.final:.6f}\t{r.informativity:.6g}\t{r.informativity_fitness:.6f}"
                         f"\t{r.lm_score:.6g}\t{r.lm_fitness:.6f}\t{c.word_count}"
                         f"\t{c.total_weight:.6f}\t{c.text}")
        return "\n".join(lines) + "\n"


def final_rank(candidates: Sequence[CompressionCandidate], mu: float = 0.4) -> RankedOutput:
    """Rank candidates carrying ``informativity`` and ``lm_score``."""
    if not 0.0 <= mu <= 1.0:
        raise ValueError("mu must be in [0, 1]")
    if not candidates:
        raise NoValidCompression("no valid compression")
    for c in candidates:
        if c.informativity is None or c.lm_score is None:
            raise ValueError("candidates need informativity and lm_score before ranking")
    info = [c.informativity for c in candidates]
    lm = [c.lm_score for c in candidates]
    info_fit = [1.0 - v for v in normalize_unity(info)]
    lm_fit = normalize_unity(lm)
    rows = []
    for c, i, g, fi, fg in zip(candidates, info, lm, info_fit, lm_fit):
        final = mu * fi + (1.0 - mu) * fg
        c.final_score = final
        rows.append(RankedRow(c, i, g, fi, fg, final))
    rows.sort(key=lambda r: (-r.final, r.informativity, r.candidate.word_count, r.candidate.text))
    for k, r in enumerate(rows, start=1):
        r.rank = k
    return RankedOutput(rows, mu)
