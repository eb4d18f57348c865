"""Command-line entry point: ``analyze``, ``score-pair`` and ``inspect``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from ._validation import check_measures
from .analytics import ArticleSkipped, analyze_article
from .imrad import DEFAULT_CLASSIFIER, TitleClassifier, structure_article
from .jats import JatsError, parse_article
from .pipeline import JOURNAL_SOURCES, POSITION_MODES, RunConfig, run_analyze
from .similarity import MatchConfig, score_pair
from .text import DEFAULT_STOPWORDS, Sentence, StopWordList

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_INPUT = 2

logger = logging.getLogger("abstract_reuse")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _measures(value: str) -> tuple[str, ...]:
    try:
        return tuple(sorted(check_measures(value)))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_match_options(p: argparse.ArgumentParser):
    p.add_argument("--threshold", type=float, default=0.6, help="matching threshold (default: 0.6)")
    p.add_argument(
        "--measures", type=_measures, default=("C", "E", "L"),
        help="comma-separated measures among E,C,L,Dice,Jaccard (default: E,C,L)",
    )
    p.add_argument("--stopwords", metavar="FILE", help="stop-word file, one word per line")
    p.add_argument(
        "--empty-set-similarity", type=float, choices=(0.0, 1.0), default=0.0,
        help="Dice/Jaccard value for two empty term sets (default: 0)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="abstract-reuse", description="Quantify text re-use between abstracts and article bodies.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug output on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="analyze a directory of JATS XML files")
    p.add_argument("input", help="root directory, searched recursively for *.xml")
    p.add_argument("-o", "--output", default="reuse-report", help="output directory (default: reuse-report)")
    _add_match_options(p)
    p.add_argument("--bins", type=int, default=100, help="positional bins (default: 100)")
    p.add_argument(
        "--all-articles", action="store_true",
        help="include articles lacking a full IMRaD structure in section and positional statistics",
    )
    p.add_argument("--title-map", metavar="FILE", help="section title overrides, 'keyword<TAB>label' per line")
    p.add_argument("--journal-from", choices=JOURNAL_SOURCES, default="meta", help="journal attribution source")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default: 1)")
    p.add_argument("--position-mode", choices=POSITION_MODES, default="pooled")
    p.add_argument("--smoothing-window", type=int, default=5, help="zone-detection smoothing window in bins")
    p.add_argument("--pattern", default="*.xml", help="file name pattern (default: *.xml)")

    p = sub.add_parser("score-pair", help="print the similarity scores of two sentences as JSON")
    p.add_argument("sentence_a")
    p.add_argument("sentence_b")
    _add_match_options(p)

    p = sub.add_parser("inspect", help="dump one article's structure and per-sentence SIM_max as JSON")
    p.add_argument("file")
    _add_match_options(p)
    p.add_argument("--title-map", metavar="FILE")
    p.add_argument("--all-articles", action="store_true")
    return parser


def _stops(args) -> StopWordList:
    return StopWordList.load(args.stopwords) if args.stopwords else DEFAULT_STOPWORDS


def _match_config(args) -> MatchConfig:
    try:
        return MatchConfig(args.threshold, frozenset(args.measures), args.empty_set_similarity)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def cmd_analyze(args) -> int:
    try:
        config = RunConfig(
            input_root=args.input,
            output_dir=args.output,
            threshold=args.threshold,
            measures=args.measures,
            bins=args.bins,
            full_imrad_only=not args.all_articles,
            stopwords_path=args.stopwords,
            title_map_path=args.title_map,
            journal_from=args.journal_from,
            workers=args.workers,
            position_mode=args.position_mode,
            smoothing_window=args.smoothing_window,
            empty_set_similarity=args.empty_set_similarity,
            pattern=args.pattern,
        )
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if not Path(config.input_root).is_dir():
        raise UsageError(f"input directory not found: {config.input_root}")
    status, _ = run_analyze(config)
    return status


def cmd_score_pair(args) -> int:
    cfg = _match_config(args)
    stops = _stops(args)
    a = Sentence.from_text(args.sentence_a, stops)
    b = Sentence.from_text(args.sentence_b, stops)
    score = score_pair(a, b, cfg)
    out = score.to_dict()
    out["match"] = score.max >= cfg.threshold
    out["threshold"] = cfg.threshold
    print(json.dumps(out))
    return EXIT_OK


def cmd_inspect(args) -> int:
    cfg = _match_config(args)
    classifier = TitleClassifier.load(args.title_map) if args.title_map else DEFAULT_CLASSIFIER
    try:
        raw = parse_article(Path(args.file).read_bytes())
    except (OSError, JatsError) as exc:
        logger.error("%s: %s", args.file, exc)
        return EXIT_NO_INPUT
    article = structure_article(raw, _stops(args), classifier)
    out = article.to_dict()
    try:
        result = analyze_article(article, cfg, not args.all_articles)
    except ArticleSkipped as exc:
        out["analysis"] = {"skipped": exc.reason}
    else:
        out["analysis"] = result.to_dict()
        out["analysis"]["abstract"] = [
            {"text": s.text, "score": sc.to_dict(), "argmax_body_index": j}
            for s, sc, j in zip(article.abstract, result.abstract_scores, result.abstract_argmax)
        ]
    print(json.dumps(out, indent=2))
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "score-pair": cmd_score_pair, "inspect": cmd_inspect}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
