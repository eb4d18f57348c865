"""IMRaD section labels, canonical ordering and normalized text positions."""

from __future__ import annotations

import enum
import hashlib
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from .jats import RawArticle
from .text import DEFAULT_STOPWORDS, Sentence, StopWordList, split_sentences


class SectionLabel(str, enum.Enum):
    INTRODUCTION = "Introduction"
    METHODS = "Methods"
    RESULTS = "Results"
    DISCUSSION = "Discussion"
    OTHER = "Other"

    @property
    def short(self) -> str:
        return self.value[0]


IMRAD_ORDER = (
    SectionLabel.INTRODUCTION,
    SectionLabel.METHODS,
    SectionLabel.RESULTS,
    SectionLabel.DISCUSSION,
)
_RANK = {label: i for i, label in enumerate(IMRAD_ORDER)}

DEFAULT_KEYWORDS: tuple[tuple[str, SectionLabel], ...] = (
    ("introduction", SectionLabel.INTRODUCTION),
    ("background", SectionLabel.INTRODUCTION),
    ("method", SectionLabel.METHODS),
    ("materials", SectionLabel.METHODS),
    ("procedure", SectionLabel.METHODS),
    ("experimental", SectionLabel.METHODS),
    ("result", SectionLabel.RESULTS),
    ("finding", SectionLabel.RESULTS),
    ("discussion", SectionLabel.DISCUSSION),
    ("conclusion", SectionLabel.DISCUSSION),
)


class NotFullImradError(ValueError):
    """Raised when canonical ordering is requested for an article that lacks
    one of the four IMRaD section types."""


@dataclass(frozen=True)
class TitleClassifier:
    """Keyword table mapping section titles to labels.

    A keyword matches at the start of a word, so ``method`` hits
    "Methods" and "Methodology". When several keywords occur, the one
    appearing first in the title wins.
    """

    keywords: tuple[tuple[str, SectionLabel], ...] = DEFAULT_KEYWORDS
    _pattern: re.Pattern = field(init=False, repr=False, compare=False)
    _lookup: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ordered = sorted({k.lower() for k, _ in self.keywords}, key=len, reverse=True)
        pattern = re.compile(r"\b(" + "|".join(map(re.escape, ordered)) + ")") if ordered else None
        object.__setattr__(self, "_pattern", pattern)
        object.__setattr__(self, "_lookup", {k.lower(): label for k, label in self.keywords})

    def __call__(self, title: str) -> SectionLabel:
        if self._pattern is None:
            return SectionLabel.OTHER
        m = self._pattern.search(title.lower())
        return self._lookup[m.group(1)] if m else SectionLabel.OTHER

    def __getstate__(self):
        return {"keywords": self.keywords}

    def __setstate__(self, state):
        object.__setattr__(self, "keywords", state["keywords"])
        self.__post_init__()

    def digest(self) -> str:
        blob = "\n".join(f"{k}\t{label.value}" for k, label in self.keywords)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()

    @classmethod
    def load(cls, path: str | Path, extend: bool = True) -> TitleClassifier:
        """Read ``keyword<TAB>label`` lines. Entries override defaults with
        the same keyword; ``extend=False`` uses the file alone."""
        table = dict(DEFAULT_KEYWORDS) if extend else {}
        for n, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
            line = line.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            try:
                keyword, label = line.split("\t")
                table[keyword.strip().lower()] = SectionLabel(label.strip().capitalize())
            except ValueError:
                raise ValueError(f"{path}:{n}: expected 'keyword<TAB>label', got {line!r}") from None
        return cls(tuple(table.items()))


DEFAULT_CLASSIFIER = TitleClassifier()


def classify_section(title: str) -> SectionLabel:
    return DEFAULT_CLASSIFIER(title)


@dataclass(frozen=True)
class Section:
    label: SectionLabel
    title: str
    sentences: tuple[Sentence, ...]


@dataclass(frozen=True)
class StructuredArticle:
    article_id: str
    journal: str
    abstract: tuple[Sentence, ...]
    author_summary: Optional[tuple[Sentence, ...]]
    sections: tuple[Section, ...]

    @property
    def has_full_imrad(self) -> bool:
        present = {s.label for s in self.sections}
        return all(label in present for label in IMRAD_ORDER)

    @property
    def body(self) -> list[Sentence]:
        return [s for sec in self.sections for s in sec.sentences]

    def labeled_body(self) -> list[tuple[SectionLabel, Sentence]]:
        return [(sec.label, s) for sec in self.sections for s in sec.sentences]

    def to_dict(self) -> dict:
        return {
            "article_id": self.article_id,
            "journal": self.journal,
            "has_full_imrad": self.has_full_imrad,
            "abstract": [s.text for s in self.abstract],
            "author_summary": None if self.author_summary is None else [s.text for s in self.author_summary],
            "sections": [
                {"label": sec.label.value, "title": sec.title, "sentences": [s.text for s in sec.sentences]}
                for sec in self.sections
            ],
        }


def structure_article(
    raw: RawArticle,
    stops: StopWordList = DEFAULT_STOPWORDS,
    classifier: TitleClassifier = DEFAULT_CLASSIFIER,
) -> StructuredArticle:
    """Segment a parsed article into sentences and label its sections."""
    sections = []
    for title, paragraphs in raw.sections:
        sentences = [s for p in paragraphs for s in split_sentences(p, stops)]
        sections.append(Section(classifier(title), title, tuple(sentences)))
    summary = None
    if raw.author_summary_text is not None:
        summary = tuple(split_sentences(raw.author_summary_text, stops))
    return StructuredArticle(
        article_id=raw.article_id,
        journal=raw.journal,
        abstract=tuple(split_sentences(raw.abstract_text, stops)),
        author_summary=summary,
        sections=tuple(sections),
    )


def canonicalize(article: StructuredArticle, require_full: bool = True) -> StructuredArticle:
    """Stable reorder of the labeled sections into I, M, R, D; Other
    sections are dropped."""
    if require_full and not article.has_full_imrad:
        missing = [l.value for l in IMRAD_ORDER if l not in {s.label for s in article.sections}]
        raise NotFullImradError(f"{article.article_id or '<article>'}: missing {', '.join(missing)}")
    kept = [s for s in article.sections if s.label is not SectionLabel.OTHER]
    kept.sort(key=lambda s: _RANK[s.label])
    return replace(article, sections=tuple(kept))


def normalized_position(sentence_index: int, total_sentences: int) -> float:
    if total_sentences < 1 or not 0 <= sentence_index < total_sentences:
        raise ValueError(f"sentence index {sentence_index} out of range for {total_sentences} sentences")
    return (sentence_index + 0.5) / total_sentences


def position_bin(sentence_index: int, total_sentences: int, bins: int) -> int:
    """Bin of the midpoint position, computed in integers so bin edges are exact."""
    if total_sentences < 1 or not 0 <= sentence_index < total_sentences:
        raise ValueError(f"sentence index {sentence_index} out of range for {total_sentences} sentences")
    return ((2 * sentence_index + 1) * bins) // (2 * total_sentences)


def section_counts(article: StructuredArticle) -> list[int]:
    counts = {label: 0 for label in IMRAD_ORDER}
    for sec in article.sections:
        if sec.label in counts:
            counts[sec.label] += len(sec.sentences)
    return [counts[label] for label in IMRAD_ORDER]


def section_boundary_counts(article: StructuredArticle) -> tuple[list[int], int]:
    """Cumulative sentence counts at the I/M, M/R and R/D boundaries plus the total."""
    counts = section_counts(article)
    total = sum(counts)
    return [counts[0], counts[0] + counts[1], counts[0] + counts[1] + counts[2]], total


def section_boundaries(article: StructuredArticle) -> list[float]:
    cumulative, total = section_boundary_counts(article)
    if total == 0:
        raise ValueError("article body has no IMRaD sentences")
    return [c / total for c in cumulative]
