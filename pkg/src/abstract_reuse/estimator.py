"""scikit-learn style front end for corpus re-use analysis."""

from __future__ import annotations

import logging
from typing import Iterable, Union

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_bins, check_measures, check_positive_int, check_threshold
from .analytics import ArticleSkipped, CorpusAggregate, analyze_article
from .imrad import DEFAULT_CLASSIFIER, StructuredArticle, structure_article
from .jats import RawArticle, parse_article
from .report import build_tables
from .similarity import MatchConfig
from .text import DEFAULT_STOPWORDS

logger = logging.getLogger(__name__)

ArticleLike = Union[StructuredArticle, RawArticle, bytes]


class TextReuseAnalyzer(TransformerMixin, BaseEstimator):
    """Measure how much of each abstract is re-used from its article body.

    Parameters
    ----------
    threshold : float, default=0.6
        A sentence pair matches when its best measure reaches this value.
    measures : tuple of str, default=("E", "C", "L")
        Measures entering the maximum; any of E, C, L, Dice, Jaccard.
    bins : int, default=100
        Number of positional bins over the normalized body.
    full_imrad_only : bool, default=True
        Restrict section and positional statistics to articles holding all
        four IMRaD section types.
    position_mode : {"pooled", "article-mean"}, default="pooled"
    smoothing_window : int, default=5
        Moving-average window used before zone detection.
    stop_words : StopWordList, optional
        Defaults to the bundled English list.
    title_classifier : TitleClassifier, optional
        Defaults to the bundled keyword table.
    empty_set_similarity : float, default=0.0
        Dice/Jaccard value for two empty term sets.

    Attributes
    ----------
    aggregate_ : CorpusAggregate
    n_articles_ : int
    skipped_ : list of (article_id, reason)
    """

    def __init__(
        self,
        threshold=0.6,
        measures=("E", "C", "L"),
        bins=100,
        full_imrad_only=True,
        position_mode="pooled",
        smoothing_window=5,
        stop_words=None,
        title_classifier=None,
        empty_set_similarity=0.0,
    ):
        self.threshold = threshold
        self.measures = measures
        self.bins = bins
        self.full_imrad_only = full_imrad_only
        self.position_mode = position_mode
        self.smoothing_window = smoothing_window
        self.stop_words = stop_words
        self.title_classifier = title_classifier
        self.empty_set_similarity = empty_set_similarity

    def _match_config(self) -> MatchConfig:
        return MatchConfig(check_threshold(self.threshold), check_measures(self.measures), self.empty_set_similarity)

    def _validate_params(self):
        check_bins(self.bins)
        check_positive_int(self.smoothing_window, "smoothing_window")
        if self.position_mode not in ("pooled", "article-mean"):
            raise ValueError(f"position_mode must be 'pooled' or 'article-mean', got {self.position_mode!r}")
        return self._match_config()

    def _structure(self, item: ArticleLike) -> StructuredArticle:
        if isinstance(item, StructuredArticle):
            return item
        if isinstance(item, (bytes, bytearray)):
            item = parse_article(bytes(item))
        if isinstance(item, RawArticle):
            stops = DEFAULT_STOPWORDS if self.stop_words is None else self.stop_words
            classifier = DEFAULT_CLASSIFIER if self.title_classifier is None else self.title_classifier
            return structure_article(item, stops, classifier)
        raise TypeError(f"expected StructuredArticle, RawArticle or JATS bytes, got {type(item).__name__}")

    def _fold(self, X: Iterable[ArticleLike], cfg: MatchConfig, aggregate: CorpusAggregate):
        for item in X:
            article = self._structure(item)
            try:
                aggregate.add(analyze_article(article, cfg, self.full_imrad_only))
            except ArticleSkipped as exc:
                logger.info("skipping %s", exc)
                self.skipped_.append((exc.article_id, exc.reason))
                continue
            self.n_articles_ += 1

    def fit(self, X: Iterable[ArticleLike], y=None):
        """Analyze a corpus and accumulate its aggregate; ``y`` is ignored."""
        cfg = self._validate_params()
        self.aggregate_ = CorpusAggregate.for_config(cfg, self.bins)
        self.n_articles_ = 0
        self.skipped_ = []
        self._fold(X, cfg, self.aggregate_)
        if self.n_articles_ == 0:
            raise ValueError("no analyzable article in X (every article lacked an abstract or a body)")
        return self

    def partial_fit(self, X: Iterable[ArticleLike], y=None):
        cfg = self._validate_params()
        if not hasattr(self, "aggregate_"):
            self.aggregate_ = CorpusAggregate.for_config(cfg, self.bins)
            self.n_articles_ = 0
            self.skipped_ = []
        self._fold(X, cfg, self.aggregate_)
        return self

    def transform(self, X: Iterable[ArticleLike]) -> list[np.ndarray]:
        """Per-article arrays of SIM_max, one value per abstract sentence.

        Articles that cannot be analyzed map to an empty array.
        """
        cfg = self._validate_params()
        out = []
        for item in X:
            try:
                result = analyze_article(self._structure(item), cfg, self.full_imrad_only)
            except ArticleSkipped:
                out.append(np.empty(0))
                continue
            out.append(np.array([s.max for s in result.abstract_scores], dtype=float))
        return out

    def predict(self, X: Iterable[ArticleLike]) -> np.ndarray:
        """Number of abstract sentences matched in each article."""
        cfg = self._match_config()
        return np.array([int((v >= cfg.threshold).sum()) for v in self.transform(X)], dtype=int)

    def tables(self) -> dict:
        check_is_fitted(self, "aggregate_")
        return build_tables(self.aggregate_, self.position_mode, self.smoothing_window)

    def merge(self, other: TextReuseAnalyzer) -> TextReuseAnalyzer:
        """Combine two fitted analyzers with identical parameters."""
        check_is_fitted(self, "aggregate_")
        check_is_fitted(other, "aggregate_")
        if self.get_params() != other.get_params():
            raise ValueError("cannot merge analyzers with different parameters")
        merged = TextReuseAnalyzer(**self.get_params())
        merged.aggregate_ = self.aggregate_.merge(other.aggregate_)
        merged.n_articles_ = self.n_articles_ + other.n_articles_
        merged.skipped_ = self.skipped_ + other.skipped_
        return merged

