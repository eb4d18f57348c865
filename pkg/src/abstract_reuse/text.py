"""Sentence segmentation, tokenization and stop-word filtered term vectors."""

from __future__ import annotations

import hashlib
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

_TOKEN_RE = re.compile(r"[^\W_]+")
_WS_RE = re.compile(r"\s+")

# Candidate boundary: terminal punctuation, optional closing quotes/brackets,
# whitespace, then an uppercase letter or digit.
_BOUNDARY_RE = re.compile(r"[.!?][\"'’”)\]]*\s+(?=[A-Z0-9])")

ABBREVIATIONS = frozenset(
    {
        "al", "fig", "figs", "e.g", "i.e", "eq", "eqs", "ref", "refs", "vs",
        "cf", "approx", "ca", "dr", "mr", "mrs", "ms", "prof", "st", "no",
        "nos", "vol", "p", "pp", "sp", "spp", "resp", "suppl", "tab", "sect",
        "ch", "chap", "inc", "ltd", "co", "corp", "jr", "sr", "dept", "univ",
        "viz", "var", "subsp", "ed", "eds", "est", "min", "max", "mol", "wt",
    }
)

# Fragments with fewer tokens are merged into a neighbouring sentence.
MIN_SENTENCE_TOKENS = 2


def tokenize(text: str) -> list[str]:
    """Lowercased alphanumeric tokens; any non-alphanumeric character separates."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class StopWordList:
    """Immutable set of stop-words with a version tag for report metadata."""

    words: frozenset[str]
    version_tag: str

    def __post_init__(self):
        object.__setattr__(self, "words", frozenset(w.lower() for w in self.words))

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def from_lines(cls, lines: Iterable[str], version_tag: str) -> StopWordList:
        words = set()
        for line in lines:
            line = line.split("#", 1)[0].strip()
            if line:
                words.add(line.lower())
        return cls(frozenset(words), version_tag)

    @classmethod
    def load(cls, path: str | Path) -> StopWordList:
        """Read a one-word-per-line file; ``#`` starts a comment."""
        raw = Path(path).read_bytes()
        digest = hashlib.sha256(raw).hexdigest()[:12]
        text = raw.decode("utf-8", errors="replace")
        return cls.from_lines(text.splitlines(), f"file:{Path(path).name}:{digest}")

    @classmethod
    def empty(cls) -> StopWordList:
        return cls(frozenset(), "empty")


DEFAULT_STOPWORDS_VERSION = "en-33core-fw-1"


def default_stopwords() -> StopWordList:
    text = resources.files("abstract_reuse").joinpath("data/stopwords_en.txt").read_text("utf-8")
    return StopWordList.from_lines(text.splitlines(), DEFAULT_STOPWORDS_VERSION)


DEFAULT_STOPWORDS = default_stopwords()


def term_vector(tokens: Iterable[str], stops: StopWordList) -> dict[str, int]:
    return dict(Counter(t for t in tokens if t not in stops))


def normalize_text(text: str) -> str:
    """Case-fold and collapse whitespace; used for substring comparison."""
    return _WS_RE.sub(" ", text).strip().casefold()


@dataclass(frozen=True, eq=False)
class Sentence:
    """One sentence with its token sequence and term vector.

    ``word_len`` counts tokens before stop-word removal. ``norm_text``,
    ``sq_norm`` and ``token_counts`` are cached for the similarity measures.
    """

    text: str
    tokens: tuple[str, ...]
    terms: Mapping[str, int]
    norm_text: str = field(init=False, repr=False)
    sq_norm: int = field(init=False, repr=False)
    token_counts: Mapping[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "norm_text", normalize_text(self.text))
        object.__setattr__(self, "token_counts", Counter(self.tokens))
        object.__setattr__(self, "sq_norm", sum(c * c for c in self.terms.values()))

    @property
    def char_len(self) -> int:
        return len(self.text)

    @property
    def word_len(self) -> int:
        return len(self.tokens)

    @property
    def term_set(self) -> frozenset[str]:
        return frozenset(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Sentence):
            return NotImplemented
        return self.text == other.text and self.tokens == other.tokens and self.terms == other.terms

    def __hash__(self):
        return hash((self.text, self.tokens))

    @classmethod
    def from_text(cls, text: str, stops: StopWordList = DEFAULT_STOPWORDS) -> Sentence:
        tokens = tuple(tokenize(text))
        return cls(text, tokens, term_vector(tokens, stops))

    def to_dict(self) -> dict:
        return {"text": self.text, "word_len": self.word_len, "char_len": self.char_len}


def _is_abbreviation(text: str, period_pos: int) -> bool:
    start = period_pos
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    word = text[start:period_pos].lstrip("([{\"'").lower()
    if not word:
        return False
    if word in ABBREVIATIONS:
        return True
    # single initial such as "J." in "J. Smith"
    return len(word) == 1 and word.isalpha() and text[period_pos - 1].isupper()


def _raw_segments(text: str) -> list[tuple[int, int]]:
    spans = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        if text[m.start()] == "." and _is_abbreviation(text, m.start()):
            continue
        end = m.end()
        # keep trailing whitespace out of the sentence
        stop = end
        while stop > start and text[stop - 1].isspace():
            stop -= 1
        spans.append((start, stop))
        start = end
    spans.append((start, len(text)))
    return spans


def split_sentences(
    text: str, stops: StopWordList = DEFAULT_STOPWORDS, min_tokens: int = MIN_SENTENCE_TOKENS
) -> list[Sentence]:
    """Split running text into sentences.

    Splits at ``.``, ``!`` or ``?`` followed by whitespace and an uppercase
    letter or digit, unless the word before the period is a known
    abbreviation or a single capital initial. Segments with fewer than
    ``min_tokens`` tokens are merged into the preceding sentence (the first
    segment merges forward), so no token is ever dropped.
    """
    if not text or text.isspace():
        return []
    spans = [(s, e) for s, e in _raw_segments(text) if s < e]
    merged: list[list[int]] = []
    pending_start = None
    for s, e in spans:
        n_tokens = len(tokenize(text[s:e]))
        if pending_start is not None:
            s = pending_start
            n_tokens = len(tokenize(text[s:e]))
            pending_start = None
        if n_tokens < min_tokens:
            if merged:
                merged[-1][1] = e
            else:
                pending_start = s
            continue
        merged.append([s, e])
    if pending_start is not None:
        merged.append([pending_start, spans[-1][1]])

    sentences = []
    for s, e in merged:
        chunk = text[s:e].strip()
        sentence = Sentence.from_text(chunk, stops)
        if sentence.tokens:
            sentences.append(sentence)
    return sentences
