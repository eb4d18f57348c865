"""Extract abstract, author summary and body sections from JATS XML."""

from __future__ import annotations

import logging
import os
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional, Union

logger = logging.getLogger(__name__)

FORMULA_PLACEHOLDER = "FORMULA"

# Subtrees that never contribute running text.
_SKIP_TAGS = frozenset(
    {
        "fig", "fig-group", "table-wrap", "table-wrap-group", "table", "caption",
        "supplementary-material", "ref-list", "fn-group", "boxed-text",
        "graphic", "media", "alternatives", "object-id", "label",
    }
)
_TITLE_TAGS = frozenset({"title", "label", "sec-meta"})
_DISPLAY_MATH = frozenset({"disp-formula", "disp-formula-group"})

_WS_RE = re.compile(r"\s+")
_SUMMARY_RE = re.compile(r"summary", re.IGNORECASE)


class JatsError(Exception):
    """Base class for article ingestion failures."""


class ArticleParseError(JatsError):
    """The input is not well-formed XML."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (byte offset {offset})")
        self.offset = offset


class ArticleStructureError(JatsError):
    """Well-formed XML that lacks a required JATS element."""


@dataclass(frozen=True)
class RawArticle:
    article_id: str
    journal: str
    abstract_text: str
    author_summary_text: Optional[str] = None
    sections: tuple[tuple[str, tuple[str, ...]], ...] = field(default_factory=tuple)

    def body_text(self) -> str:
        return " ".join(p for _, paras in self.sections for p in paras)


def _local(tag) -> str:
    if not isinstance(tag, str):
        return ""
    return tag.rsplit("}", 1)[-1]


def _clean(text: str) -> str:
    return _WS_RE.sub(" ", text).strip()


def _text(el: ET.Element, skip_titles: bool = False) -> str:
    """Concatenated text content with figures/tables dropped and display math
    replaced by a placeholder."""
    parts: list[str] = []

    def walk(node):
        tag = _local(node.tag)
        if tag in _DISPLAY_MATH:
            parts.append(f" {FORMULA_PLACEHOLDER} ")
        elif tag in _SKIP_TAGS or (skip_titles and tag in _TITLE_TAGS):
            pass
        else:
            if node.text:
                parts.append(node.text)
            for child in node:
                walk(child)
                if child.tail:
                    parts.append(child.tail)
            # block-level children must not glue words across elements
            if tag in ("p", "list-item", "sec", "title"):
                parts.append(" ")

    walk(el)
    return _clean("".join(parts))


def _paragraphs(el: ET.Element) -> list[str]:
    """Paragraph texts under ``el`` in document order; nested sections are
    flattened and their titles dropped."""
    out = []
    for child in el:
        tag = _local(child.tag)
        if tag == "p":
            text = _text(child)
            if text:
                out.append(text)
        elif tag in _DISPLAY_MATH:
            out.append(FORMULA_PLACEHOLDER)
        elif tag in _SKIP_TAGS or tag in _TITLE_TAGS:
            continue
        else:
            out.extend(_paragraphs(child))
    return out


def _find(el: ET.Element, *path: str) -> ET.Element | None:
    node = el
    for name in path:
        node = next((c for c in node if _local(c.tag) == name), None)
        if node is None:
            return None
    return node


def _iter_local(el: ET.Element, name: str) -> Iterator[ET.Element]:
    return (n for n in el.iter() if _local(n.tag) == name)


def _byte_offset(data: bytes, line: int, column: int) -> int:
    offset = 0
    for _ in range(line - 1):
        nl = data.find(b"\n", offset)
        if nl < 0:
            break
        offset = nl + 1
    return offset + column


def _parse_root(xml_bytes: bytes) -> ET.Element:
    try:
        xml_bytes.decode("utf-8")
        source: Union[bytes, str] = xml_bytes
    except UnicodeDecodeError:
        logger.debug("invalid UTF-8, decoding lossily")
        text = xml_bytes.decode("utf-8", errors="replace")
        source = re.sub(r"^(<\?xml[^>]*?)\s+encoding=(['\"])[^'\"]*\2", r"\1", text)
    try:
        return ET.fromstring(source)
    except ET.ParseError as exc:
        line, column = exc.position
        data = source if isinstance(source, bytes) else source.encode("utf-8")
        raise ArticleParseError(str(exc), _byte_offset(data, line, column)) from None


def _is_summary(abstract: ET.Element) -> bool:
    kind = abstract.get("abstract-type", "")
    if _SUMMARY_RE.search(kind):
        return True
    title = _find(abstract, "title")
    return title is not None and bool(_SUMMARY_RE.search(_text(title)))


def _journal(front: ET.Element | None) -> str:
    if front is None:
        return ""
    meta = _find(front, "journal-meta")
    if meta is None:
        return ""
    title = next(_iter_local(meta, "journal-title"), None)
    if title is not None and _text(title):
        return _text(title)
    ids = list(_iter_local(meta, "journal-id"))
    for jid in ids:
        if jid.get("journal-id-type") == "nlm-ta" and _text(jid):
            return _text(jid)
    return _text(ids[0]) if ids else ""


def _article_id(meta: ET.Element | None) -> str:
    if meta is None:
        return ""
    ids = [n for n in meta if _local(n.tag) == "article-id"]
    for preferred in ("doi", "pmcid", "pmc", "pmid", "publisher-id"):
        for n in ids:
            if n.get("pub-id-type") == preferred and _text(n):
                return _text(n)
    return _text(ids[0]) if ids else ""


def parse_article(xml_bytes: bytes) -> RawArticle:
    """Parse one JATS article.

    Raises ArticleParseError on malformed XML and ArticleStructureError when
    the document has no ``article`` root or no ``body``. A missing abstract
    yields an empty ``abstract_text``.
    """
    root = _parse_root(xml_bytes)
    if _local(root.tag) != "article":
        article = next(_iter_local(root, "article"), None)
        if article is None:
            raise ArticleStructureError(f"no <article> element (root is <{_local(root.tag)}>)")
        root = article

    front = _find(root, "front")
    meta = _find(front, "article-meta") if front is not None else None
    body = _find(root, "body")
    if body is None:
        raise ArticleStructureError("no <body> element")

    abstract_text = ""
    summary_text = None
    if meta is not None:
        for abstract in (n for n in meta if _local(n.tag) == "abstract"):
            paras = _paragraphs(abstract)
            text = "\n".join(paras) if paras else _text(abstract, skip_titles=True)
            if _is_summary(abstract):
                if summary_text is None:
                    summary_text = text
            elif abstract.get("abstract-type") is None and not abstract_text:
                abstract_text = text

    sections: list[tuple[str, tuple[str, ...]]] = []
    loose: list[str] = []
    for child in body:
        tag = _local(child.tag)
        if tag == "sec":
            if loose:
                sections.append(("", tuple(loose)))
                loose = []
            title = _find(child, "title")
            sections.append((_text(title) if title is not None else "", tuple(_paragraphs(child))))
        elif tag == "p":
            text = _text(child)
            if text:
                loose.append(text)
        elif tag in _SKIP_TAGS or tag in _TITLE_TAGS:
            continue
        else:
            loose.extend(_paragraphs(child))
    if loose:
        sections.append(("", tuple(loose)))

    return RawArticle(
        article_id=_article_id(meta),
        journal=_journal(front),
        abstract_text=abstract_text,
        author_summary_text=summary_text,
        sections=tuple(sections),
    )


def list_corpus_files(root_path: str | Path, pattern: str = "*.xml") -> list[Path]:
    """Files under ``root_path`` matching ``pattern``, sorted by relative path."""
    root = Path(root_path)
    if not root.is_dir():
        raise NotADirectoryError(f"not a directory: {root}")
    os.listdir(root)  # surfaces PermissionError for an unreadable root
    paths = [p for p in root.rglob(pattern) if p.is_file()]
    return sorted(paths, key=lambda p: p.relative_to(root).as_posix())


def read_article(path: str | Path) -> RawArticle | JatsError | OSError:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        return exc
    try:
        return parse_article(data)
    except JatsError as exc:
        return exc


def scan_corpus(
    root_path: str | Path, pattern: str = "*.xml"
) -> Iterator[tuple[Path, RawArticle | JatsError | OSError]]:
    """Yield ``(path, article_or_error)`` for every matching file below
    ``root_path``, sorted by relative path. Per-file failures are yielded,
    not raised."""
    for path in list_corpus_files(root_path, pattern):
        yield path, read_article(path)
