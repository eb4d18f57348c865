"""Per-article analysis and the mergeable corpus aggregate behind every table."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ._validation import check_bins
from .imrad import IMRAD_ORDER, SectionLabel, StructuredArticle, normalized_position, position_bin
from .similarity import MEASURES, MatchConfig, MatchRecord, SimilarityScore, scan_body, score_pair

logger = logging.getLogger(__name__)

SOURCES = ("abstract", "summary")
BAND_LABELS = ("SIM = 1", "1 > SIM >= 0.8", "0.8 > SIM >= 0.6", "0.6 > SIM")
MATCH_COUNT_LABELS = ("0 sentences", "1 sentence", "2 or 3 sentences", "More than 3 sentences")
REUSE_LABELS = (
    "No text re-use",
    "0%-25% text re-use",
    "25%-50% text re-use",
    "50%-75% text re-use",
    "75%-100% text re-use",
)
SECTION_COLUMNS = ("I", "M", "R", "D", "Total")
TOTAL = "Total"
UNKNOWN_JOURNAL = "Unknown"


class ArticleSkipped(ValueError):
    """The article cannot be analyzed; ``reason`` is a short machine-friendly tag."""

    def __init__(self, article_id: str, reason: str):
        super().__init__(f"{article_id or '<article>'}: {reason}")
        self.article_id = article_id
        self.reason = reason


@dataclass
class ArticleResult:
    article_id: str
    journal: str
    abstract_scores: list[SimilarityScore]
    abstract_argmax: list[int]
    abstract_word_lens: list[int]
    summary_scores: Optional[list[SimilarityScore]]
    summary_word_lens: Optional[list[int]]
    matches: list[MatchRecord]
    body_len: int
    has_full_imrad: bool
    # Positional analysis, populated only for articles included in it.
    positional: bool = False
    section_totals: list[int] = field(default_factory=lambda: [0, 0, 0, 0])
    section_matched: list[int] = field(default_factory=lambda: [0, 0, 0, 0])
    canonical_len: int = 0
    canonical_matched: list[int] = field(default_factory=list)
    boundary_counts: Optional[list[int]] = None

    @property
    def abstract_len(self) -> int:
        return len(self.abstract_scores)

    @property
    def summary_len(self) -> Optional[int]:
        return None if self.summary_scores is None else len(self.summary_scores)

    def matched_abstract_sentences(self, threshold: float) -> int:
        return sum(1 for s in self.abstract_scores if s.max >= threshold)

    def matched_positions(self) -> list[float]:
        return [normalized_position(i, self.canonical_len) for i in self.canonical_matched]

    def section_boundaries(self) -> Optional[list[float]]:
        if self.boundary_counts is None:
            return None
        return [c / self.canonical_len for c in self.boundary_counts]

    def to_dict(self) -> dict:
        return {
            "article_id": self.article_id,
            "journal": self.journal,
            "abstract_len": self.abstract_len,
            "summary_len": self.summary_len,
            "body_len": self.body_len,
            "has_full_imrad": self.has_full_imrad,
            "abstract_sim_max": [s.max for s in self.abstract_scores],
            "summary_sim_max": None if self.summary_scores is None else [s.max for s in self.summary_scores],
            "matches": [m.to_dict() for m in self.matches],
            "section_totals": dict(zip("IMRD", self.section_totals)) if self.positional else None,
            "section_matched": dict(zip("IMRD", self.section_matched)) if self.positional else None,
            "matched_positions": self.matched_positions(),
            "section_boundaries": self.section_boundaries(),
        }


def analyze_article(
    article: StructuredArticle,
    cfg: MatchConfig = MatchConfig(),
    full_imrad_only: bool = True,
    prune: bool = True,
) -> ArticleResult:
    """Match every abstract (and author-summary) sentence against the body.

    A body sentence counts as matched once, however many abstract
    sentences it matches. Section tallies and positions use the canonical
    I, M, R, D order; with ``full_imrad_only`` only articles holding all
    four section types contribute to them.
    """
    if not article.abstract:
        raise ArticleSkipped(article.article_id, "empty abstract")
    labeled = article.labeled_body()
    body = [s for _, s in labeled]
    if not body:
        raise ArticleSkipped(article.article_id, "empty body")

    # canonical position of each body sentence; None for Other sections
    rank = {label: i for i, label in enumerate(IMRAD_ORDER)}
    order = sorted(
        (rank[label], j) for j, (label, _) in enumerate(labeled) if label is not SectionLabel.OTHER
    )
    canonical = {j: pos for pos, (_, j) in enumerate(order)}
    positional = article.has_full_imrad if full_imrad_only else bool(order)
    n_canonical = len(order)

    def position_of(j: int) -> Optional[float]:
        if not positional or j not in canonical:
            return None
        return normalized_position(canonical[j], n_canonical)

    matches = []
    matched_body: set[int] = set()
    abstract_scores, abstract_argmax = [], []
    for k, a in enumerate(article.abstract):
        scan = scan_body(a, body, cfg, prune)
        abstract_scores.append(scan.score)
        abstract_argmax.append(scan.argmax)
        for j in scan.matched:
            matched_body.add(j)
            matches.append(MatchRecord(k, j, labeled[j][0], position_of(j), score_pair(a, body[j], cfg)))

    summary_scores = summary_lens = None
    if article.author_summary:
        summary_scores, summary_lens = [], []
        for k, a in enumerate(article.author_summary):
            scan = scan_body(a, body, cfg, prune)
            summary_scores.append(scan.score)
            summary_lens.append(a.word_len)
            for j in scan.matched:
                matches.append(
                    MatchRecord(k, j, labeled[j][0], position_of(j), score_pair(a, body[j], cfg), "summary")
                )

    result = ArticleResult(
        article_id=article.article_id,
        journal=article.journal or UNKNOWN_JOURNAL,
        abstract_scores=abstract_scores,
        abstract_argmax=abstract_argmax,
        abstract_word_lens=[a.word_len for a in article.abstract],
        summary_scores=summary_scores,
        summary_word_lens=summary_lens,
        matches=matches,
        body_len=len(body),
        has_full_imrad=article.has_full_imrad,
    )
    if positional:
        result.positional = True
        result.canonical_len = n_canonical
        result.canonical_matched = sorted(canonical[j] for j in matched_body if j in canonical)
        for j, (label, _) in enumerate(labeled):
            if label is SectionLabel.OTHER:
                continue
            result.section_totals[rank[label]] += 1
            if j in matched_body:
                result.section_matched[rank[label]] += 1
        c = result.section_totals
        result.boundary_counts = [c[0], c[0] + c[1], c[0] + c[1] + c[2]]
    return result


def band_index(value: float) -> int:
    if value >= 1.0:
        return 0
    if value >= 0.8:
        return 1
    if value >= 0.6:
        return 2
    return 3


@dataclass
class JournalTally:
    """Integer and exact-rational counters for one journal."""

    bins: int
    articles: int = 0
    full_imrad: int = 0
    positional_articles: int = 0
    # "<source>:<measure>" -> counts per band
    bands: dict[str, list[int]] = field(default_factory=dict)
    # (matched sentences, abstract length) -> number of abstracts
    abstract_matches: Counter = field(default_factory=Counter)
    summary_matches: Counter = field(default_factory=Counter)
    abstract_lengths: Counter = field(default_factory=Counter)
    summary_lengths: Counter = field(default_factory=Counter)
    abstract_words: int = 0
    summary_words: int = 0
    section_total: list[int] = field(default_factory=lambda: [0, 0, 0, 0])
    section_matched: list[int] = field(default_factory=lambda: [0, 0, 0, 0])
    pos_total: list[int] = field(default_factory=list)
    pos_matched: list[int] = field(default_factory=list)
    pos_rate_sum: list[Fraction] = field(default_factory=list)
    pos_rate_n: list[int] = field(default_factory=list)
    boundary_sum: list[Fraction] = field(default_factory=lambda: [Fraction(0)] * 3)

    def __post_init__(self):
        for name in ("pos_total", "pos_matched", "pos_rate_n"):
            if not getattr(self, name):
                setattr(self, name, [0] * self.bins)
        if not self.pos_rate_sum:
            self.pos_rate_sum = [Fraction(0)] * self.bins

    def _count_bands(self, source: str, scores: Sequence[SimilarityScore]):
        for score in scores:
            for measure in MEASURES + ("max",):
                value = score.get(measure)
                if value is None:
                    continue
                key = f"{source}:{measure}"
                counts = self.bands.setdefault(key, [0, 0, 0, 0])
                counts[band_index(value)] += 1

    def add(self, result: ArticleResult, threshold: float):
        self.articles += 1
        self.full_imrad += result.has_full_imrad
        self._count_bands("abstract", result.abstract_scores)
        self.abstract_matches[(result.matched_abstract_sentences(threshold), result.abstract_len)] += 1
        self.abstract_lengths[result.abstract_len] += 1
        self.abstract_words += sum(result.abstract_word_lens)
        if result.summary_scores is not None:
            self._count_bands("summary", result.summary_scores)
            matched = sum(1 for s in result.summary_scores if s.max >= threshold)
            self.summary_matches[(matched, result.summary_len)] += 1
            self.summary_lengths[result.summary_len] += 1
            self.summary_words += sum(result.summary_word_lens)
        if not result.positional:
            return
        self.positional_articles += 1
        for i in range(4):
            self.section_total[i] += result.section_totals[i]
            self.section_matched[i] += result.section_matched[i]
        n = result.canonical_len
        if n == 0:
            return
        matched = set(result.canonical_matched)
        art_total = Counter()
        art_matched = Counter()
        for i in range(n):
            b = position_bin(i, n, self.bins)
            art_total[b] += 1
            if i in matched:
                art_matched[b] += 1
        for b, t in art_total.items():
            self.pos_total[b] += t
            self.pos_matched[b] += art_matched[b]
            self.pos_rate_sum[b] += Fraction(art_matched[b], t)
            self.pos_rate_n[b] += 1
        for i, c in enumerate(result.boundary_counts):
            self.boundary_sum[i] += Fraction(c, n)

    def merge(self, other: JournalTally) -> JournalTally:
        out = JournalTally(self.bins)
        out.articles = self.articles + other.articles
        out.full_imrad = self.full_imrad + other.full_imrad
        out.positional_articles = self.positional_articles + other.positional_articles
        for key in sorted(set(self.bands) | set(other.bands)):
            a = self.bands.get(key, [0, 0, 0, 0])
            b = other.bands.get(key, [0, 0, 0, 0])
            out.bands[key] = [x + y for x, y in zip(a, b)]
        for name in ("abstract_matches", "summary_matches", "abstract_lengths", "summary_lengths"):
            setattr(out, name, getattr(self, name) + getattr(other, name))
        out.abstract_words = self.abstract_words + other.abstract_words
        out.summary_words = self.summary_words + other.summary_words
        for name in (
            "section_total", "section_matched", "pos_total", "pos_matched",
            "pos_rate_sum", "pos_rate_n", "boundary_sum",
        ):
            setattr(out, name, [x + y for x, y in zip(getattr(self, name), getattr(other, name))])
        return out

    def to_dict(self) -> dict:
        return {
            "articles": self.articles,
            "full_imrad": self.full_imrad,
            "positional_articles": self.positional_articles,
            "bands": {k: self.bands[k] for k in sorted(self.bands)},
            "abstract_matches": [[m, n, c] for (m, n), c in sorted(self.abstract_matches.items())],
            "summary_matches": [[m, n, c] for (m, n), c in sorted(self.summary_matches.items())],
            "abstract_lengths": {str(k): v for k, v in sorted(self.abstract_lengths.items())},
            "summary_lengths": {str(k): v for k, v in sorted(self.summary_lengths.items())},
            "abstract_words": self.abstract_words,
            "summary_words": self.summary_words,
            "section_total": self.section_total,
            "section_matched": self.section_matched,
            "pos_total": self.pos_total,
            "pos_matched": self.pos_matched,
        }


@dataclass
class CorpusAggregate:
    """Mergeable accumulator over analyzed articles, keyed by journal.

    All counters are integers or exact fractions, so merging in any order
    or grouping produces identical aggregates.
    """

    bins: int = 100
    threshold: float = 0.6
    measures: tuple[str, ...] = ("E", "C", "L")
    journals: dict[str, JournalTally] = field(default_factory=dict)

    def __post_init__(self):
        self.bins = check_bins(self.bins)
        self.measures = tuple(m for m in MEASURES if m in set(self.measures))

    @classmethod
    def for_config(cls, cfg: MatchConfig, bins: int = 100) -> CorpusAggregate:
        return cls(bins, cfg.threshold, tuple(cfg.ordered_measures()))

    def add(self, result: ArticleResult) -> CorpusAggregate:
        tally = self.journals.get(result.journal)
        if tally is None:
            tally = self.journals[result.journal] = JournalTally(self.bins)
        tally.add(result, self.threshold)
        return self

    def _check_compatible(self, other: CorpusAggregate):
        mine = (self.bins, self.threshold, self.measures)
        theirs = (other.bins, other.threshold, other.measures)
        if mine != theirs:
            raise ValueError(f"cannot merge aggregates with configurations {mine} and {theirs}")

    def merge(self, other: CorpusAggregate) -> CorpusAggregate:
        self._check_compatible(other)
        out = CorpusAggregate(self.bins, self.threshold, self.measures)
        for name in sorted(set(self.journals) | set(other.journals)):
            a, b = self.journals.get(name), other.journals.get(name)
            if a is None or b is None:
                out.journals[name] = (a or b).merge(JournalTally(self.bins))
            else:
                out.journals[name] = a.merge(b)
        return out

    @property
    def journal_names(self) -> list[str]:
        return sorted(self.journals)

    @property
    def articles(self) -> int:
        return sum(t.articles for t in self.journals.values())

    def total(self) -> JournalTally:
        out = JournalTally(self.bins)
        for name in self.journal_names:
            out = out.merge(self.journals[name])
        return out

    def tally(self, journal: Optional[str] = None) -> JournalTally:
        if journal is None or journal == TOTAL:
            return self.total()
        return self.journals[journal]

    def to_dict(self) -> dict:
        return {
            "bins": self.bins,
            "threshold": self.threshold,
            "measures": list(self.measures),
            "journals": {name: self.journals[name].to_dict() for name in self.journal_names},
        }


def merge(a: CorpusAggregate, b: CorpusAggregate) -> CorpusAggregate:
    return a.merge(b)


# ---------------------------------------------------------------------------
# Tables


@dataclass
class Table:
    """Labelled rows of exact percentages; ``None`` marks an undefined cell."""

    index: tuple[str, ...]
    columns: tuple[str, ...]
    rows: list[tuple[tuple[str, ...], list[Optional[Fraction]]]]

    def get(self, *labels: str) -> list[Optional[Fraction]]:
        for key, values in self.rows:
            if key == labels:
                return values
        raise KeyError(labels)

    def as_floats(self) -> list[dict]:
        out = []
        for key, values in self.rows:
            row = dict(zip(self.index, key))
            row.update({c: None if v is None else float(v) for c, v in zip(self.columns, values)})
            out.append(row)
        return out


def percent(num: int, den: int) -> Optional[Fraction]:
    return None if den == 0 else Fraction(100 * num, den)


def _band_rows(tally: JournalTally, source: str, measures: Sequence[str]):
    rows = []
    for measure in list(measures) + ["max"]:
        counts = tally.bands.get(f"{source}:{measure}")
        if counts is None:
            continue
        n = sum(counts)
        values = [percent(c, n) for c in counts]
        if measure == "E":
            # binary measure: only the SIM = 1 and below-0.6 bands exist
            values[1] = values[2] = None
        rows.append(((source, f"SIM_{measure}"), values))
    return rows


def band_distribution(
    aggregate: CorpusAggregate, sources: Sequence[str] = SOURCES, journal: Optional[str] = None
) -> Table:
    """Percentage of abstract (and author-summary) sentences per similarity band.

    Sentences from all journals are pooled. Sources without sentences are
    left out; an aggregate with no abstract sentence at all is an error.
    """
    tally = aggregate.tally(journal)
    if not tally.bands.get("abstract:max"):
        raise ValueError("aggregate holds no abstract sentences")
    rows = []
    for source in sources:
        rows.extend(_band_rows(tally, source, aggregate.measures))
    return Table(("Source", "Measure"), BAND_LABELS, rows)


def _journal_rows(aggregate: CorpusAggregate, fn, require=lambda t: t.articles > 0):
    rows = []
    for name in aggregate.journal_names:
        tally = aggregate.journals[name]
        if require(tally):
            rows.append(((name,), fn(tally)))
    total = aggregate.total()
    if require(total):
        rows.append(((TOTAL,), fn(total)))
    return rows


def _match_count_row(tally: JournalTally) -> list[Optional[Fraction]]:
    counts = [0, 0, 0, 0]
    for (matched, _), c in tally.abstract_matches.items():
        counts[0 if matched == 0 else 1 if matched == 1 else 2 if matched <= 3 else 3] += c
    n = sum(counts)
    return [percent(c, n) for c in counts]


def match_count_bands(aggregate: CorpusAggregate) -> Table:
    if aggregate.articles == 0:
        raise ValueError("aggregate holds no abstracts")
    return Table(("Journal",), MATCH_COUNT_LABELS, _journal_rows(aggregate, _match_count_row))


def reuse_band(matched: int, length: int) -> int:
    """0 for no re-use, then (0,25%], (25,50%], (50,75%], (75,100%]."""
    if matched == 0:
        return 0
    for band, quarter in enumerate((1, 2, 3), 1):
        if 4 * matched <= quarter * length:
            return band
    return 4


def _reuse_row(tally: JournalTally) -> list[Optional[Fraction]]:
    counts = [0] * 5
    for (matched, length), c in tally.abstract_matches.items():
        counts[reuse_band(matched, length)] += c
    n = sum(counts)
    return [percent(c, n) for c in counts]


def reuse_fraction_bands(aggregate: CorpusAggregate) -> Table:
    if aggregate.articles == 0:
        raise ValueError("aggregate holds no abstracts")
    return Table(("Journal",), REUSE_LABELS, _journal_rows(aggregate, _reuse_row))


def _section_row(tally: JournalTally) -> list[Optional[Fraction]]:
    values = [percent(m, t) for m, t in zip(tally.section_matched, tally.section_total)]
    values.append(percent(sum(tally.section_matched), sum(tally.section_total)))
    return values


def section_match_rates(aggregate: CorpusAggregate) -> Table:
    """Matched body sentences over all body sentences, per IMRaD section type."""
    return Table(
        ("Journal",),
        SECTION_COLUMNS,
        _journal_rows(aggregate, _section_row, require=lambda t: t.positional_articles > 0),
    )


def _sentence_threshold_row(tally: JournalTally) -> list[Optional[Fraction]]:
    counts = tally.bands.get("abstract:max", [0, 0, 0, 0])
    n = sum(counts)
    return [percent(counts[0] + counts[1], n), percent(counts[0] + counts[1] + counts[2], n)]


def journal_match_percentages(aggregate: CorpusAggregate) -> Table:
    """Share of abstract sentences whose SIM_max reaches 0.8 and 0.6, per journal."""
    return Table(
        ("Journal",), ("SIM_max >= 0.8", "SIM_max >= 0.6"), _journal_rows(aggregate, _sentence_threshold_row)
    )


@dataclass
class PositionalCurve:
    bins: int
    mode: str
    rates: dict[str, list[Optional[Fraction]]]
    matched: dict[str, list[int]]
    totals: dict[str, list[int]]
    boundaries: dict[str, list[Fraction]]

    def edges(self) -> list[tuple[Fraction, Fraction]]:
        return [(Fraction(b, self.bins), Fraction(b + 1, self.bins)) for b in range(self.bins)]

    @property
    def overall(self) -> list[Optional[Fraction]]:
        return self.rates[TOTAL]


def _rebin(values: list, factor: int) -> list:
    return [sum(values[i : i + factor]) for i in range(0, len(values), factor)]


def positional_distribution(
    aggregate: CorpusAggregate, bins: Optional[int] = None, mode: str = "pooled"
) -> PositionalCurve:
    """Matched-sentence rate per normalized-position bin, per journal and overall.

    ``pooled`` divides matched by total sentences falling in a bin across
    the corpus; ``article-mean`` averages per-article bin rates. Bins with
    no sentences are ``None``. ``bins`` may coarsen the aggregate's bins by
    an integer factor (pooled mode only).
    """
    if mode not in ("pooled", "article-mean"):
        raise ValueError(f"unknown positional mode {mode!r}")
    bins = aggregate.bins if bins is None else check_bins(bins)
    if aggregate.bins % bins:
        raise ValueError(f"{bins} bins do not evenly divide the aggregate's {aggregate.bins}")
    factor = aggregate.bins // bins
    if factor != 1 and mode != "pooled":
        raise ValueError("re-binning is only exact in pooled mode")

    curve = PositionalCurve(bins, mode, {}, {}, {}, {})
    tallies = [(n, aggregate.journals[n]) for n in aggregate.journal_names]
    tallies.append((TOTAL, aggregate.total()))
    for name, tally in tallies:
        if tally.positional_articles == 0:
            continue
        matched = _rebin(tally.pos_matched, factor)
        totals = _rebin(tally.pos_total, factor)
        if mode == "pooled":
            rates = [None if t == 0 else Fraction(m, t) for m, t in zip(matched, totals)]
        else:
            rates = [None if n == 0 else s / n for s, n in zip(tally.pos_rate_sum, tally.pos_rate_n)]
        curve.rates[name] = rates
        curve.matched[name] = matched
        curve.totals[name] = totals
        curve.boundaries[name] = [s / tally.positional_articles for s in tally.boundary_sum]
    return curve


@dataclass(frozen=True)
class Zones:
    """Zone boundaries on a positional curve, or the reason none exist."""

    found: bool
    boundaries: tuple[float, ...] = ()
    boundary_bins: tuple[int, ...] = ()
    reason: str = ""

    def intervals(self) -> dict[str, tuple[float, float]]:
        if not self.found:
            return {}
        b1, b2, b3 = self.boundaries
        return {"A": (0.0, b1), "B": (b1, b2), "C": (b2, b3), "D": (b3, 1.0)}


def smooth(values: Sequence[Optional[float]], window: int = 5) -> list[Optional[float]]:
    """Centered moving average, truncated at the ends; ``None`` entries are ignored."""
    half = window // 2
    out = []
    for i in range(len(values)):
        chunk = [v for v in values[max(0, i - half) : i + half + 1] if v is not None]
        out.append(sum(chunk) / len(chunk) if chunk else None)
    return out


def detect_zones(curve: Sequence[Optional[float]], window: int = 5) -> Zones:
    """Locate the A/B/C/D zone boundaries of a positional curve.

    After smoothing: the first interior local minimum, the first local
    maximum after it, and the start of the monotone rise that ends the
    curve. Each feature is then moved to the matching extremum of the raw
    curve within half a window. Boundaries are the left edges of their
    bins. Any missing feature
    yields ``found=False`` rather than an invented boundary.
    """
    n = len(curve)
    if n < 50:
        raise ValueError(f"zone detection needs at least 50 bins, got {n}")
    smoothed = smooth([None if v is None else float(v) for v in curve], window)
    points = [(i, v) for i, v in enumerate(smoothed) if v is not None]
    if len(points) < 3:
        return Zones(False, reason="curve has fewer than three defined bins")
    idx = [i for i, _ in points]
    val = [v for _, v in points]

    def first_min(start):
        for k in range(max(start, 1), len(val) - 1):
            if val[k] < val[k - 1]:
                # walk across a plateau to see whether it rises afterwards
                r = k
                while r + 1 < len(val) and val[r + 1] == val[k]:
                    r += 1
                if r + 1 < len(val) and val[r + 1] > val[k]:
                    return k
        return None

    def first_max(start):
        for k in range(max(start, 1), len(val) - 1):
            if val[k] > val[k - 1]:
                r = k
                while r + 1 < len(val) and val[r + 1] == val[k]:
                    r += 1
                if r + 1 < len(val) and val[r + 1] < val[k]:
                    return k
        return None

    k1 = first_min(1)
    if k1 is None:
        return Zones(False, reason="no interior local minimum")
    k2 = first_max(k1 + 1)
    if k2 is None:
        return Zones(False, reason="no local maximum after the first minimum")
    k3 = len(val) - 1
    while k3 > 0 and val[k3 - 1] < val[k3]:
        k3 -= 1
    if k3 == len(val) - 1:
        return Zones(False, reason="curve does not end with a rise")
    if k3 <= k2:
        return Zones(False, reason="terminal rise starts before the first local maximum")
    raw = [None if v is None else float(v) for v in curve]
    half = window // 2

    def refine(i, pick):
        # smoothing shifts features by up to half a window; settle on the raw extremum nearby
        near = [(raw[j], j) for j in range(max(0, i - half), min(n, i + half + 1)) if raw[j] is not None]
        return pick(near)[1] if near else i

    b1 = refine(idx[k1], lambda c: min(c, key=lambda t: (t[0], t[1])))
    b2 = refine(idx[k2], lambda c: max(c, key=lambda t: (t[0], -t[1])))
    b3 = refine(idx[k3], lambda c: min(c, key=lambda t: (t[0], -t[1])))
    if not b1 < b2 < b3:
        b1, b2, b3 = idx[k1], idx[k2], idx[k3]
    bins = (b1, b2, b3)
    return Zones(True, tuple(b / n for b in bins), bins)


def length_distributions(aggregate: CorpusAggregate) -> dict:
    """Sentence-count histograms and means for abstracts and author summaries.

    Returns ``{source: {journal: {"histogram": {len: pct}, "mean_length":
    Fraction, "mean_words_per_sentence": Fraction, "count": int}}}``.
    """
    out: dict = {}
    tallies = [(n, aggregate.journals[n]) for n in aggregate.journal_names]
    tallies.append((TOTAL, aggregate.total()))
    for source in SOURCES:
        per_journal = {}
        for name, tally in tallies:
            lengths = tally.abstract_lengths if source == "abstract" else tally.summary_lengths
            words = tally.abstract_words if source == "abstract" else tally.summary_words
            count = sum(lengths.values())
            if count == 0:
                continue
            sentences = sum(k * v for k, v in lengths.items())
            per_journal[name] = {
                "count": count,
                "histogram": {k: percent(v, count) for k, v in sorted(lengths.items())},
                "mean_length": Fraction(sentences, count),
                "mean_words_per_sentence": Fraction(words, sentences) if sentences else None,
            }
        out[source] = per_journal
    return out


def summary_statistics(aggregate: CorpusAggregate) -> dict:
    """Headline shares at the configured threshold."""
    total = aggregate.total()
    abstracts = sum(total.abstract_matches.values())
    with_match = sum(c for (m, _), c in total.abstract_matches.items() if m > 0)
    sentences = sum(n * c for (_, n), c in total.abstract_matches.items())
    matched = sum(m * c for (m, _), c in total.abstract_matches.items())
    s_sentences = sum(n * c for (_, n), c in total.summary_matches.items())
    s_matched = sum(m * c for (m, _), c in total.summary_matches.items())
    return {
        "articles": total.articles,
        "full_imrad_articles": total.full_imrad,
        "positional_articles": total.positional_articles,
        "abstracts_with_match_pct": percent(with_match, abstracts),
        "abstract_sentences_matched_pct": percent(matched, sentences),
        "summary_sentences_matched_pct": percent(s_matched, s_sentences),
    }
