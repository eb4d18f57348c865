"""Sentence similarity measures and abstract-to-body matching."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from ._validation import check_measures, check_threshold
from .imrad import SectionLabel
from .text import Sentence

MEASURES = ("E", "C", "L", "Dice", "Jaccard")
DEFAULT_MEASURES = frozenset({"E", "C", "L"})

_FIELD = {"E": "e", "C": "c", "L": "l", "Dice": "dice", "Jaccard": "jaccard"}


@dataclass(frozen=True)
class MatchConfig:
    """Matching threshold and the set of measures that take part in the maximum.

    ``empty_set_similarity`` is the Dice/Jaccard value for two empty term sets.
    """

    threshold: float = 0.6
    measures: frozenset[str] = DEFAULT_MEASURES
    empty_set_similarity: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "threshold", check_threshold(self.threshold))
        object.__setattr__(self, "measures", check_measures(self.measures))
        if self.empty_set_similarity not in (0.0, 1.0):
            raise ValueError("empty_set_similarity must be 0 or 1")

    def ordered_measures(self) -> list[str]:
        return [m for m in MEASURES if m in self.measures]

    def to_dict(self) -> dict:
        return {
            "threshold": self.threshold,
            "measures": self.ordered_measures(),
            "empty_set_similarity": self.empty_set_similarity,
        }


@dataclass(frozen=True)
class SimilarityScore:
    e: Optional[int] = None
    c: Optional[float] = None
    l: Optional[float] = None
    dice: Optional[float] = None
    jaccard: Optional[float] = None
    max: float = 0.0

    def get(self, measure: str) -> Optional[float]:
        if measure == "max":
            return self.max
        return getattr(self, _FIELD[measure])

    def to_dict(self) -> dict:
        out = {"e": self.e, "c": self.c, "l": self.l}
        if self.dice is not None:
            out["dice"] = self.dice
        if self.jaccard is not None:
            out["jaccard"] = self.jaccard
        out["max"] = self.max
        return out


@dataclass(frozen=True)
class MatchRecord:
    abstract_sentence_index: int
    body_sentence_index: int
    section_label: SectionLabel
    body_normalized_position: Optional[float]
    score: SimilarityScore
    source: str = "abstract"

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "abstract_sentence_index": self.abstract_sentence_index,
            "body_sentence_index": self.body_sentence_index,
            "section_label": self.section_label.value,
            "body_normalized_position": self.body_normalized_position,
            "score": self.score.to_dict(),
        }


def sim_exact(a: Sentence, b: Sentence) -> int:
    x, y = a.norm_text, b.norm_text
    if not x or not y:
        return 0
    return int(x in y or y in x)


def sim_cosine(a: Sentence, b: Sentence) -> float:
    if not a.terms or not b.terms:
        return 0.0
    small, large = (a.terms, b.terms) if len(a.terms) <= len(b.terms) else (b.terms, a.terms)
    dot = sum(count * large.get(term, 0) for term, count in small.items())
    if dot == 0:
        return 0.0
    return min(1.0, dot / math.sqrt(a.sq_norm * b.sq_norm))


def token_edit_distance(a: Sequence[str], b: Sequence[str]) -> int:
    """Levenshtein distance over token sequences with unit costs."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ta in enumerate(a, 1):
        current = [i]
        for j, tb in enumerate(b, 1):
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (ta != tb)))
        previous = current
    return previous[-1]


def sim_levenshtein(a: Sentence, b: Sentence) -> float:
    n = max(len(a.tokens), len(b.tokens))
    if n == 0:
        return 1.0
    if not a.tokens or not b.tokens:
        return 0.0
    return (n - token_edit_distance(a.tokens, b.tokens)) / n


def _set_measure(a: Sentence, b: Sentence, empty: float, dice: bool) -> float:
    x, y = a.terms.keys(), b.terms.keys()
    if not x and not y:
        return empty
    common = len(x & y)
    if dice:
        return 2 * common / (len(x) + len(y))
    return common / (len(x) + len(y) - common)


def sim_dice(a: Sentence, b: Sentence, empty: float = 0.0) -> float:
    return _set_measure(a, b, empty, dice=True)


def sim_jaccard(a: Sentence, b: Sentence, empty: float = 0.0) -> float:
    return _set_measure(a, b, empty, dice=False)


def score_pair(a: Sentence, b: Sentence, cfg: MatchConfig = MatchConfig()) -> SimilarityScore:
    m = cfg.measures
    values = {}
    if "E" in m:
        values["e"] = sim_exact(a, b)
    if "C" in m:
        values["c"] = sim_cosine(a, b)
    if "L" in m:
        values["l"] = sim_levenshtein(a, b)
    if "Dice" in m:
        values["dice"] = sim_dice(a, b, cfg.empty_set_similarity)
    if "Jaccard" in m:
        values["jaccard"] = sim_jaccard(a, b, cfg.empty_set_similarity)
    return SimilarityScore(**values, max=float(max(values.values())))


def is_match(score: SimilarityScore, cfg: MatchConfig = MatchConfig()) -> bool:
    return score.max >= cfg.threshold


def levenshtein_upper_bound(a: Sentence, b: Sentence) -> float:
    """Cheap upper bound on ``sim_levenshtein``.

    The edit distance is at least ``max(|a|, |b|)`` minus the size of the
    token multiset intersection, which also covers the length difference.
    """
    n = max(len(a.tokens), len(b.tokens))
    if n == 0:
        return 1.0
    if not a.tokens or not b.tokens:
        return 0.0
    ca, cb = a.token_counts, b.token_counts
    if len(ca) > len(cb):
        ca, cb = cb, ca
    common = sum(min(k, cb.get(t, 0)) for t, k in ca.items())
    return common / n


@dataclass(frozen=True)
class BodyScan:
    """Result of comparing one abstract sentence against a whole body.

    ``score`` holds, per measure, the maximum over body sentences, and
    ``max`` the maximum over measures; ``argmax`` is the smallest body index
    reaching ``score.max``. ``matched`` lists body indices whose pair score
    reaches the threshold.
    """

    score: SimilarityScore
    argmax: int
    matched: tuple[int, ...]


def scan_body(a_k: Sentence, body: Sequence[Sentence], cfg: MatchConfig = MatchConfig(), prune: bool = True) -> BodyScan:
    """Score ``a_k`` against every body sentence.

    With ``prune`` the term-level edit distance is skipped for a pair whose
    Levenshtein upper bound can neither raise the running per-measure
    maximum nor decide a match on its own. The result is identical to the
    unpruned scan.
    """
    if not body:
        raise ValueError("body has no sentences")
    m = cfg.measures
    keys = [_FIELD[x] for x in cfg.ordered_measures()]
    best = {k: -1.0 for k in keys}
    best_max, argmax = -1.0, -1
    matched = []
    T = cfg.threshold
    for j, s in enumerate(body):
        values = {}
        if "E" in m:
            values["e"] = sim_exact(a_k, s)
        if "C" in m:
            values["c"] = sim_cosine(a_k, s)
        if "Dice" in m:
            values["dice"] = sim_dice(a_k, s, cfg.empty_set_similarity)
        if "Jaccard" in m:
            values["jaccard"] = sim_jaccard(a_k, s, cfg.empty_set_similarity)
        if "L" in m:
            others = max(values.values(), default=-1.0)
            if prune:
                bound = levenshtein_upper_bound(a_k, s)
                needed = bound > best["l"] or bound > best_max or (bound >= T and others < T)
            else:
                needed = True
            if needed:
                values["l"] = sim_levenshtein(a_k, s)
        pair_max = float(max(values.values(), default=-1.0))
        for k, v in values.items():
            if v > best[k]:
                best[k] = v
        if pair_max > best_max:
            best_max, argmax = pair_max, j
        if pair_max >= T:
            matched.append(j)
    score = SimilarityScore(**{k: (int(v) if k == "e" else float(v)) for k, v in best.items()}, max=best_max)
    return BodyScan(score, argmax, tuple(matched))


def abstract_sentence_max(
    a_k: Sentence, body: Sequence[Sentence], cfg: MatchConfig = MatchConfig(), prune: bool = True
) -> tuple[SimilarityScore, int]:
    scan = scan_body(a_k, body, cfg, prune)
    return scan.score, scan.argmax
