"""Synthetic 12-article JATS corpus with planted re-use, and the oracle that
derives every expected table from the construction alone.

Every body sentence uses words that occur nowhere else in its article, so
the only similarities are the planted ones and their scores follow in
closed form:

* ``copy``   verbatim copy                  E=1, C=1, L=1
* ``near k`` k of 10 tokens replaced        E=0, C=L=(10-k)/10
* ``sub``    last 4 tokens of a 16-token    E=1, C=1/2, L=1/4
  body sentence
* ``orig``   fresh sentence                 all 0

Regenerate the XML files and golden CSVs with
``python tests/fixture_corpus.py``.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

HERE = Path(__file__).parent
CORPUS_DIR = HERE / "data" / "corpus"
GOLDEN_DIR = HERE / "data" / "golden"
THRESHOLD = Fraction(3, 5)
BINS = 100

LABEL_RANK = {"I": 0, "M": 1, "R": 2, "D": 3}

_CONS = "bdfgklmnprstvz"
_VOWELS = "aeiou"
_FORBIDDEN = {"before", "bebede"}


def _words():
    syllables = [c + v for c in _CONS for v in _VOWELS]
    for a, b, c in itertools.product(syllables, repeat=3):
        w = a + b + c
        if w not in _FORBIDDEN:
            yield w


@dataclass
class Sec:
    title: str
    label: str  # I, M, R, D or O
    size: int
    subsections: tuple[int, ...] = ()  # sizes of nested subsections, summing to size
    figure: bool = False
    xref: bool = False
    long_last: bool = False  # last sentence has 16 tokens (substring source)


@dataclass
class Art:
    name: str
    journal: str
    sections: list[Sec]
    abstract: list[tuple]  # ("copy", sec, idx) | ("near", sec, idx, k) | ("sub", sec) | ("orig",)
    summary: list[tuple] | None = None
    structured_abstract: bool = False


ALPHA, BETA, GAMMA = "Journal Alpha", "Journal Beta", "Journal Gamma"


def _orig(n):
    return [("orig",)] * n


ARTICLES = [
    Art("alpha/a01", ALPHA,
        [Sec("Introduction", "I", 8), Sec("Methods", "M", 10), Sec("Results", "R", 12), Sec("Discussion", "D", 10)],
        [("copy", 0, 0)] + _orig(3) + [("copy", 3, 9)] + _orig(3), structured_abstract=True),
    Art("alpha/a02", ALPHA,
        [Sec("Introduction", "I", 6), Sec("Materials and Methods", "M", 8), Sec("Results", "R", 10), Sec("Discussion", "D", 8)],
        _orig(7)),
    Art("alpha/a03", ALPHA,
        [Sec("Introduction", "I", 7), Sec("Results", "R", 9), Sec("Discussion", "D", 8), Sec("Materials and Methods", "M", 9)],
        [("copy", 0, 1), ("near", 2, 7, 1)] + _orig(2) + [("near", 1, 2, 3)] + _orig(3)),
    Art("alpha/a04", ALPHA,
        [Sec("Introduction", "I", 10), Sec("Methods and Model", "M", 10, subsections=(5, 5)),
         Sec("Results", "R", 10), Sec("Discussion", "D", 8, long_last=True), Sec("Acknowledgments", "O", 3)],
        [("copy", 0, 0), ("copy", 0, 2), ("near", 0, 5, 2), ("orig",), ("sub", 3), ("near", 2, 3, 4)] + _orig(2)),
    Art("beta/b05", BETA,
        [Sec("Introduction", "I", 9), Sec("Methods", "M", 12), Sec("Results", "R", 11), Sec("Discussion", "D", 9)],
        [("copy", 0, 0)] + _orig(8),
        summary=[("copy", 3, 8)] + _orig(6)),
    Art("beta/b06", BETA,
        [Sec("Introduction", "I", 8), Sec("Methods", "M", 10), Sec("Results", "R", 10), Sec("Discussion", "D", 10)],
        [("near", 0, 1, 5)] + _orig(9),
        summary=_orig(7)),
    Art("beta/b07", BETA,
        [Sec("Background", "I", 8), Sec("Results and Discussion", "R", 14), Sec("Conclusions", "D", 4)],
        [("copy", 0, 0)] + _orig(4) + [("copy", 1, 13)] + _orig(4),
        summary=[("near", 2, 3, 1)] + _orig(7)),
    Art("beta/b08", BETA,
        [Sec("Introduction", "I", 12), Sec("Experimental Procedures", "M", 10),
         Sec("Results", "R", 12, figure=True, xref=True), Sec("Discussion", "D", 10)],
        [("copy", 0, 0), ("copy", 0, 1), ("near", 2, 0, 2)] + _orig(4) + [("copy", 0, 11), ("copy", 3, 8), ("copy", 3, 9)],
        summary=_orig(8)),
    Art("gamma/g09", GAMMA,
        [Sec("Introduction", "I", 7), Sec("Methods", "M", 9), Sec("Results", "R", 10), Sec("Discussion", "D", 8)],
        [("copy", 0, 0)] + _orig(7) + [("near", 3, 7, 3)]),
    Art("gamma/g10", GAMMA,
        [Sec("Introduction", "I", 9), Sec("Methods", "M", 11), Sec("Results", "R", 9), Sec("Discussion", "D", 12),
         Sec("Supporting Information", "O", 2)],
        _orig(9) + [("copy", 3, 11)]),
    Art("gamma/g11", GAMMA,
        [Sec("Introduction", "I", 8), Sec("Methods", "M", 8), Sec("Results", "R", 8), Sec("Discussion", "D", 8)],
        [("copy", 0, 0), ("copy", 0, 1), ("near", 0, 2, 1)] + _orig(10) + [("near", 3, 7, 2)]),
    Art("gamma/g12", GAMMA,
        [Sec("Introduction", "I", 10), Sec("Methods", "M", 10), Sec("Results", "R", 10), Sec("Discussion", "D", 10)],
        [("copy", 0, 0), ("near", 0, 0, 1), ("copy", 1, 5), ("orig",), ("copy", 2, 5), ("near", 3, 0, 3), ("copy", 3, 9)]),
]


# ---------------------------------------------------------------------------
# XML generation


def _sentence(words: list[str]) -> str:
    return " ".join([words[0].capitalize()] + words[1:]) + "."


def _paragraphs(sentences: list[str], size: int = 4) -> list[str]:
    return [" ".join(sentences[i : i + size]) for i in range(0, len(sentences), size)]


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def build_article_xml(art: Art, words, index: int) -> str:
    body_words: list[list[list[str]]] = []
    for sec in art.sections:
        sec_words = []
        for i in range(sec.size):
            n = 16 if (sec.long_last and i == sec.size - 1) else 10
            sec_words.append([next(words) for _ in range(n)])
        body_words.append(sec_words)

    def derived(item):
        kind = item[0]
        if kind == "orig":
            return _sentence([next(words) for _ in range(10)])
        if kind == "copy":
            return _sentence(body_words[item[1]][item[2]])
        if kind == "near":
            src = list(body_words[item[1]][item[2]])
            for p in range(1, item[3] + 1):
                src[p] = next(words)
            return _sentence(src)
        if kind == "sub":
            return _sentence(body_words[item[1]][-1][-4:])
        raise ValueError(kind)

    abstract = [derived(it) for it in art.abstract]
    summary = None if art.summary is None else [derived(it) for it in art.summary]

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<!DOCTYPE article PUBLIC "-//NLM//DTD JATS (Z39.96) Journal Publishing DTD v1.1 20151215//EN" '
        '"JATS-journalpublishing1.dtd">',
        '<article xmlns:xlink="http://www.w3.org/1999/xlink" xmlns:mml="http://www.w3.org/1998/Math/MathML" '
        'article-type="research-article">',
        "<front>",
        "<journal-meta>",
        f'<journal-id journal-id-type="publisher-id">{art.journal.split()[1].lower()}</journal-id>',
        f"<journal-title-group><journal-title>{art.journal}</journal-title></journal-title-group>",
        "</journal-meta>",
        "<article-meta>",
        f'<article-id pub-id-type="doi">10.9999/fixture.{index:03d}</article-id>',
        f"<title-group><article-title>Fixture article {index}</article-title></title-group>",
    ]
    if art.structured_abstract:
        heads = ["Background", "Methodology/Principal Findings", "Conclusions/Significance"]
        thirds = [abstract[:3], abstract[3:6], abstract[6:]]
        out.append("<abstract>")
        for head, part in zip(heads, thirds):
            out.append(f"<sec><title>{head}</title><p>{' '.join(part)}</p></sec>")
        out.append("</abstract>")
    else:
        out.append("<abstract>" + "".join(f"<p>{p}</p>" for p in _paragraphs(abstract, 5)) + "</abstract>")
    if summary is not None:
        out.append(
            '<abstract abstract-type="summary"><title>Author Summary</title>'
            + "".join(f"<p>{p}</p>" for p in _paragraphs(summary, 5))
            + "</abstract>"
        )
    out += ["</article-meta>", "</front>", "<body>"]

    for s_idx, (sec, sec_words) in enumerate(zip(art.sections, body_words)):
        sentences = [_sentence(w) for w in sec_words]
        if s_idx == 0 and sentences:
            # inline markup inside a copied sentence must not change its text
            w = sec_words[0]
            sentences[0] = _sentence(w).replace(
                f" {w[1]} ", f" <italic>{w[1]}</italic> ", 1
            )
        if sec.xref:
            # citation markers only in sentences that are never copied
            last = len(sentences) - 1
            sentences[last] = sentences[last][:-1] + ' <xref ref-type="bibr" rid="r1">[1]</xref>.'
        out.append(f'<sec id="s{s_idx + 1}"><title>{sec.title}</title>')
        if sec.subsections:
            start = 0
            for k, size in enumerate(sec.subsections):
                out.append(f"<sec><title>Subsection {k + 1}</title>")
                out += [f"<p>{p}</p>" for p in _paragraphs(sentences[start : start + size])]
                out.append("</sec>")
                start += size
        else:
            paras = _paragraphs(sentences)
            for p_idx, p in enumerate(paras):
                out.append(f"<p>{p}</p>")
                if sec.figure and p_idx == 0:
                    cap = _sentence([next(words) for _ in range(8)])
                    out.append(
                        f'<fig id="f1"><label>Figure 1</label><caption><title>Figure title words here.</title>'
                        f"<p>{cap} {cap}</p></caption></fig>"
                    )
        out.append("</sec>")
    out += [
        "</body>",
        '<back><ref-list><ref id="r1"><mixed-citation>Reference text that is never analyzed.</mixed-citation></ref></ref-list></back>',
        "</article>",
    ]
    return "\n".join(out) + "\n"


def write_corpus(directory: Path = CORPUS_DIR):
    words = _words()
    for i, art in enumerate(ARTICLES, 1):
        path = directory / f"{art.name}.xml"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(build_article_xml(art, words, i), encoding="utf-8")


# ---------------------------------------------------------------------------
# Oracle


def item_scores(item) -> dict[str, Fraction]:
    kind = item[0]
    if kind == "copy":
        e, c, l = 1, Fraction(1), Fraction(1)
    elif kind == "near":
        e, c = 0, Fraction(10 - item[3], 10)
        l = c
    elif kind == "sub":
        e, c, l = 1, Fraction(1, 2), Fraction(1, 4)
    else:
        e, c, l = 0, Fraction(0), Fraction(0)
    return {"E": Fraction(e), "C": c, "L": l, "max": max(Fraction(e), c, l)}


def band(v: Fraction) -> int:
    return 0 if v == 1 else 1 if v >= Fraction(4, 5) else 2 if v >= Fraction(3, 5) else 3


def fmt(value: Fraction | None, places: int = 2) -> str:
    from decimal import ROUND_HALF_UP, Decimal, localcontext

    if value is None:
        return ""
    with localcontext() as ctx:
        ctx.prec = 50
        d = Decimal(value.numerator) / Decimal(value.denominator)
        return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP))


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _pct(n, d):
    return None if d == 0 else Fraction(100 * n, d)


@dataclass
class _ArticleTruth:
    journal: str
    full: bool
    canonical_sizes: list[int]
    abstract: list[dict]
    summary: list[dict] | None
    matched_canonical: set = field(default_factory=set)


def _truth(art: Art) -> _ArticleTruth:
    labels = {s.label for s in art.sections}
    full = all(x in labels for x in "IMRD")
    order = sorted((LABEL_RANK[s.label], i) for i, s in enumerate(art.sections) if s.label != "O")
    offset, start_of = 0, {}
    for _, i in order:
        start_of[i] = offset
        offset += art.sections[i].size
    sizes = [sum(art.sections[i].size for r, i in order if r == k) for k in range(4)]

    def canonical(item):
        if item[0] == "copy" or item[0] == "near":
            return start_of[item[1]] + item[2]
        if item[0] == "sub":
            return start_of[item[1]] + art.sections[item[1]].size - 1
        return None

    t = _ArticleTruth(
        art.journal, full, sizes,
        [item_scores(it) for it in art.abstract],
        None if art.summary is None else [item_scores(it) for it in art.summary],
    )
    for it, sc in zip(art.abstract, t.abstract):
        if sc["max"] >= THRESHOLD:
            t.matched_canonical.add(canonical(it))
    return t


def expected_csvs() -> dict[str, str]:
    truths = [_truth(a) for a in ARTICLES]
    journals = sorted({t.journal for t in truths})
    groups = [(j, [t for t in truths if t.journal == j]) for j in journals] + [("Total", truths)]
    T = "T=0.6"

    # Table 3: pooled sentence bands
    rows3 = []
    for source in ("abstract", "summary"):
        scores = [s for t in truths for s in (t.abstract if source == "abstract" else (t.summary or []))]
        if not scores:
            continue
        for m in ("E", "C", "L", "max"):
            counts = [0, 0, 0, 0]
            for s in scores:
                counts[band(s[m])] += 1
            vals = [_pct(c, len(scores)) for c in counts]
            if m == "E":
                vals[1] = vals[2] = None
            rows3.append([source, f"SIM_{m}"] + [fmt(v) for v in vals])
    table3 = _csv([f"Source ({T})", "Measure", "SIM = 1", "1 > SIM >= 0.8", "0.8 > SIM >= 0.6", "0.6 > SIM"], rows3)

    def n_matched(t):
        return sum(1 for s in t.abstract if s["max"] >= THRESHOLD)

    rows4, rows5 = [], []
    for name, ts in groups:
        c4 = [0, 0, 0, 0]
        c5 = [0] * 5
        for t in ts:
            m, n = n_matched(t), len(t.abstract)
            c4[{0: 0, 1: 1, 2: 2, 3: 2}.get(m, 3)] += 1
            if m == 0:
                c5[0] += 1
            else:
                frac = Fraction(m, n)
                c5[1 if frac <= Fraction(1, 4) else 2 if frac <= Fraction(1, 2) else 3 if frac <= Fraction(3, 4) else 4] += 1
        rows4.append([name] + [fmt(_pct(c, len(ts))) for c in c4])
        rows5.append([name] + [fmt(_pct(c, len(ts))) for c in c5])
    table4 = _csv([f"Journal ({T})", "0 sentences", "1 sentence", "2 or 3 sentences", "More than 3 sentences"], rows4)
    table5 = _csv(
        [f"Journal ({T})", "No text re-use", "0%-25% text re-use", "25%-50% text re-use",
         "50%-75% text re-use", "75%-100% text re-use"],
        rows5,
    )

    # Table 6, Figure 3 and boundaries: full-IMRaD articles only
    rows6, rows_b = [], []
    curves = {}
    for name, ts in groups:
        full = [t for t in ts if t.full]
        if not full:
            continue
        tot, mat = [0] * 4, [0] * 4
        pos_t, pos_m = [0] * BINS, [0] * BINS
        bsum = [Fraction(0)] * 3
        for t in full:
            N = sum(t.canonical_sizes)
            edges = list(itertools.accumulate(t.canonical_sizes))
            for i in range(N):
                sec = next(k for k, e in enumerate(edges) if i < e)
                tot[sec] += 1
                b = int(Fraction(2 * i + 1, 2 * N) * BINS)
                pos_t[b] += 1
                if i in t.matched_canonical:
                    mat[sec] += 1
                    pos_m[b] += 1
            for k in range(3):
                bsum[k] += Fraction(edges[k], N)
        rows6.append([name] + [fmt(_pct(m, n)) for m, n in zip(mat, tot)] + [fmt(_pct(sum(mat), sum(tot)))])
        rows_b.append([name] + [fmt(b / len(full), 4) for b in bsum])
        curves[name] = [None if n == 0 else _pct(m, n) for m, n in zip(pos_m, pos_t)]
    table6 = _csv([f"Journal ({T})", "I", "M", "R", "D", "Total"], rows6)
    names = list(curves)
    fig3 = _csv(
        [f"Bin start ({T})", "Bin end"] + names,
        [[fmt(Fraction(b, BINS), 4), fmt(Fraction(b + 1, BINS), 4)] + [fmt(curves[n][b], 4) for n in names]
         for b in range(BINS)],
    )
    fig3_b = _csv(["Journal", "I/M", "M/R", "R/D"], rows_b)

    # Figure 1: length histograms
    rows1 = []
    for source in ("abstract", "summary"):
        for name, ts in groups:
            lengths = [len(t.abstract if source == "abstract" else t.summary) for t in ts
                       if source == "abstract" or t.summary is not None]
            if not lengths:
                continue
            for length in sorted(set(lengths)):
                rows1.append([source, name, str(length), fmt(_pct(lengths.count(length), len(lengths)))])
    fig1 = _csv(["Source", "Journal", "Length (sentences)", "Percentage"], rows1)

    # Figure 2: share of abstract sentences with SIM_max >= 0.8 / >= 0.6
    rows2 = []
    for name, ts in groups:
        scores = [s["max"] for t in ts for s in t.abstract]
        rows2.append([name, fmt(_pct(sum(v >= Fraction(4, 5) for v in scores), len(scores))),
                      fmt(_pct(sum(v >= THRESHOLD for v in scores), len(scores)))])
    fig2 = _csv([f"Journal ({T})", "SIM_max >= 0.8", "SIM_max >= 0.6"], rows2)

    return {
        "table3.csv": table3,
        "table4.csv": table4,
        "table5.csv": table5,
        "table6.csv": table6,
        "fig1.csv": fig1,
        "fig2.csv": fig2,
        "fig3.csv": fig3,
        "fig3_boundaries.csv": fig3_b,
    }


def expected_article_facts() -> list[dict]:
    """Per-article matched abstract sentences and matched body sentences."""
    out = []
    for art in ARTICLES:
        t = _truth(art)
        out.append({
            "name": art.name,
            "journal": art.journal,
            "full_imrad": t.full,
            "abstract_len": len(art.abstract),
            "abstract_matched": sum(1 for s in t.abstract if s["max"] >= THRESHOLD),
            "body_matched": len(t.matched_canonical),
            "sim_max": [float(s["max"]) for s in t.abstract],
        })
    return out


def write_golden(directory: Path = GOLDEN_DIR):
    directory.mkdir(parents=True, exist_ok=True)
    for name, text in expected_csvs().items():
        (directory / name).write_text(text, encoding="utf-8", newline="")
    (directory / "articles.json").write_text(json.dumps(expected_article_facts(), indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    write_corpus()
    write_golden()
    print(f"wrote {len(ARTICLES)} articles to {CORPUS_DIR} and golden files to {GOLDEN_DIR}", file=sys.stderr)
