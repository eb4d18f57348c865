"""Sentence-level text re-use between scientific abstracts and article bodies."""

__version__ = "0.1.0"

from .analytics import (  # noqa: E402
    ArticleResult,
    CorpusAggregate,
    analyze_article,
    band_distribution,
    detect_zones,
    length_distributions,
    match_count_bands,
    merge,
    positional_distribution,
    reuse_fraction_bands,
    section_match_rates,
)
from .estimator import TextReuseAnalyzer  # noqa: E402
from .imrad import (  # noqa: E402
    SectionLabel,
    StructuredArticle,
    TitleClassifier,
    canonicalize,
    classify_section,
    normalized_position,
    section_boundaries,
    structure_article,
)
from .jats import RawArticle, parse_article, scan_corpus  # noqa: E402
from .similarity import (  # noqa: E402
    MatchConfig,
    SimilarityScore,
    abstract_sentence_max,
    is_match,
    score_pair,
    sim_cosine,
    sim_dice,
    sim_exact,
    sim_jaccard,
    sim_levenshtein,
)
from .text import Sentence, StopWordList, split_sentences, term_vector, tokenize  # noqa: E402

__all__ = [
    "ArticleResult", "CorpusAggregate", "analyze_article", "band_distribution", "detect_zones",
    "length_distributions", "match_count_bands", "merge", "positional_distribution",
    "reuse_fraction_bands", "section_match_rates", "TextReuseAnalyzer", "SectionLabel",
    "StructuredArticle", "TitleClassifier", "canonicalize", "classify_section",
    "normalized_position", "section_boundaries", "structure_article", "RawArticle",
    "parse_article", "scan_corpus", "MatchConfig", "SimilarityScore", "abstract_sentence_max",
    "is_match", "score_pair", "sim_cosine", "sim_dice", "sim_exact", "sim_jaccard",
    "sim_levenshtein", "Sentence", "StopWordList", "split_sentences", "term_vector", "tokenize",
]
