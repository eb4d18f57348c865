"""Corpus run: ingestion, structuring, scoring and aggregation over a worker pool."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from . import __version__
from ._validation import check_bins, check_measures, check_positive_int, check_threshold
from .analytics import ArticleSkipped, CorpusAggregate, analyze_article
from .imrad import DEFAULT_CLASSIFIER, TitleClassifier, structure_article
from .jats import RawArticle, list_corpus_files, read_article
from .report import build_report, build_tables, render_csvs, write_report
from .similarity import MatchConfig
from .text import DEFAULT_STOPWORDS, StopWordList

logger = logging.getLogger(__name__)

JOURNAL_SOURCES = ("meta", "dirname")
POSITION_MODES = ("pooled", "article-mean")


@dataclass
class RunConfig:
    input_root: str
    output_dir: str = "reuse-report"
    threshold: float = 0.6
    measures: tuple[str, ...] = ("E", "C", "L")
    bins: int = 100
    full_imrad_only: bool = True
    stopwords_path: Optional[str] = None
    title_map_path: Optional[str] = None
    journal_from: str = "meta"
    workers: int = 1
    position_mode: str = "pooled"
    smoothing_window: int = 5
    empty_set_similarity: float = 0.0
    pattern: str = "*.xml"

    def __post_init__(self):
        self.input_root = str(self.input_root)
        self.output_dir = str(self.output_dir)
        self.threshold = check_threshold(self.threshold)
        self.measures = tuple(MatchConfig(measures=check_measures(self.measures)).ordered_measures())
        self.bins = check_bins(self.bins)
        self.workers = check_positive_int(self.workers, "workers")
        self.smoothing_window = check_positive_int(self.smoothing_window, "smoothing_window")
        if self.journal_from not in JOURNAL_SOURCES:
            raise ValueError(f"journal_from must be one of {JOURNAL_SOURCES}")
        if self.position_mode not in POSITION_MODES:
            raise ValueError(f"position_mode must be one of {POSITION_MODES}")
        if self.empty_set_similarity not in (0.0, 1.0):
            raise ValueError("empty_set_similarity must be 0 or 1")

    def match_config(self) -> MatchConfig:
        return MatchConfig(self.threshold, frozenset(self.measures), self.empty_set_similarity)

    def load_stopwords(self) -> StopWordList:
        return StopWordList.load(self.stopwords_path) if self.stopwords_path else DEFAULT_STOPWORDS

    def load_classifier(self) -> TitleClassifier:
        return TitleClassifier.load(self.title_map_path) if self.title_map_path else DEFAULT_CLASSIFIER

    def to_dict(self) -> dict:
        """Settings that determine the output; worker count and output
        location are left out so they cannot change report bytes."""
        return {
            "input_root": self.input_root,
            "pattern": self.pattern,
            "threshold": self.threshold,
            "measures": list(self.measures),
            "bins": self.bins,
            "full_imrad_only": self.full_imrad_only,
            "stopwords_path": self.stopwords_path,
            "title_map_path": self.title_map_path,
            "journal_from": self.journal_from,
            "position_mode": self.position_mode,
            "smoothing_window": self.smoothing_window,
            "empty_set_similarity": self.empty_set_similarity,
        }


@dataclass
class _Settings:
    root: Path
    cfg: MatchConfig
    bins: int
    full_imrad_only: bool
    journal_from: str
    stops: StopWordList
    classifier: TitleClassifier


@dataclass
class RunResult:
    aggregate: CorpusAggregate
    analyzed: int = 0
    skipped: list[dict] = field(default_factory=list)

    def merge(self, other: RunResult) -> RunResult:
        return RunResult(self.aggregate.merge(other.aggregate), self.analyzed + other.analyzed, self.skipped + other.skipped)


def _journal_for(raw: RawArticle, path: Path, settings: _Settings) -> str:
    dirname = path.parent.relative_to(settings.root).as_posix()
    dirname = "" if dirname == "." else dirname.split("/")[0]
    if settings.journal_from == "dirname":
        return dirname or raw.journal
    return raw.journal or dirname


def _process(paths: list[Path], settings: _Settings) -> RunResult:
    result = RunResult(CorpusAggregate.for_config(settings.cfg, settings.bins))
    for path in paths:
        rel = path.relative_to(settings.root).as_posix()
        raw = read_article(path)
        if not isinstance(raw, RawArticle):
            logger.warning("skip %s: %s", rel, raw)
            result.skipped.append({"path": rel, "reason": type(raw).__name__, "detail": str(raw)})
            continue
        journal = _journal_for(raw, path, settings)
        article = structure_article(raw, settings.stops, settings.classifier)
        if journal != article.journal or not article.article_id:
            article = replace(article, journal=journal, article_id=article.article_id or rel)
        try:
            analyzed = analyze_article(article, settings.cfg, settings.full_imrad_only)
        except ArticleSkipped as exc:
            logger.warning("skip %s: %s", rel, exc.reason)
            result.skipped.append({"path": rel, "reason": exc.reason, "detail": str(exc)})
            continue
        result.aggregate.add(analyzed)
        result.analyzed += 1
        logger.info("analyzed %s", rel)
    return result


def _chunks(items: list, n: int) -> list[list]:
    size, extra = divmod(len(items), n)
    out, start = [], 0
    for i in range(n):
        stop = start + size + (i < extra)
        if stop > start:
            out.append(items[start:stop])
        start = stop
    return out


def analyze_corpus(config: RunConfig) -> RunResult:
    """Analyze every article below ``config.input_root``.

    Workers each fold a contiguous slice of the sorted file list into a
    private aggregate; slices are merged in file order, so the result does
    not depend on the worker count.
    """
    root = Path(config.input_root)
    paths = list_corpus_files(root, config.pattern)
    settings = _Settings(
        root,
        config.match_config(),
        config.bins,
        config.full_imrad_only,
        config.journal_from,
        config.load_stopwords(),
        config.load_classifier(),
    )
    logger.info("found %d files under %s", len(paths), root)
    if config.workers == 1 or len(paths) < 2:
        return _process(paths, settings)
    chunks = _chunks(paths, min(len(paths), config.workers * 4))
    result = RunResult(CorpusAggregate.for_config(settings.cfg, settings.bins))
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        for part in pool.map(_process, chunks, [settings] * len(chunks)):
            result = result.merge(part)
    return result


def run_metadata(config: RunConfig) -> dict:
    stops = config.load_stopwords()
    classifier = config.load_classifier()
    return {
        "tool": "abstract-reuse",
        "tool_version": __version__,
        "stopwords_version": stops.version_tag,
        "threshold": config.threshold,
        "measures": list(config.measures),
        "bins": config.bins,
        "title_map_sha256": classifier.digest(),
        "run_config": config.to_dict(),
        "notes": {
            "table3_pooling": "sentences pooled over all journals",
            "case_folding": "exact-substring test case-folds and collapses whitespace; tokens are lowercased",
            "structured_abstract_headers": "stripped before sentence segmentation",
            "exact_measure_bands": "binary measure reported only in the SIM = 1 and 0.6 > SIM bands",
            "per_measure_maxima": "each measure row holds the maximum of that measure over body sentences",
            "positional_analysis": "full-IMRaD articles only" if config.full_imrad_only else "all articles with labeled sections",
            "positional_mode": config.position_mode,
            "smoothing_window_bins": config.smoothing_window,
            "empty_set_similarity": config.empty_set_similarity,
            "position_convention": "(index + 0.5) / sentences, canonical I-M-R-D order",
        },
    }


def run_analyze(config: RunConfig) -> tuple[int, Optional[dict]]:
    """Run the full analysis and write ``report.json`` plus CSV tables.

    Returns ``(exit_status, report)``; status 2 means nothing was analyzable.
    """
    result = analyze_corpus(config)
    if result.analyzed == 0:
        reasons = sorted({s["reason"] for s in result.skipped})
        logger.error("no analyzable articles (%d skipped: %s)", len(result.skipped), ", ".join(reasons) or "no input files")
        return 2, None
    tables = build_tables(result.aggregate, config.position_mode, config.smoothing_window)
    report = build_report(result.aggregate, tables, run_metadata(config), result.skipped)
    report["summary"]["skipped"] = len(result.skipped)
    paths = write_report(config.output_dir, report, render_csvs(tables, config.threshold))
    logger.info("wrote %d files to %s", len(paths), config.output_dir)
    return 0, report
