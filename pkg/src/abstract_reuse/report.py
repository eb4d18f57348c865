"""JSON and CSV report emission."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .analytics import (
    TOTAL,
    CorpusAggregate,
    PositionalCurve,
    Table,
    Zones,
    band_distribution,
    detect_zones,
    journal_match_percentages,
    length_distributions,
    match_count_bands,
    positional_distribution,
    reuse_fraction_bands,
    section_match_rates,
    summary_statistics,
)

SCHEMA_VERSION = "1.0"

CSV_FILES = (
    "table3.csv",
    "table4.csv",
    "table5.csv",
    "table6.csv",
    "fig1.csv",
    "fig2.csv",
    "fig3.csv",
    "fig3_boundaries.csv",
    "zones.csv",
)

# Published values on the full PLOS corpus (85,660 articles up to
# September 2013). Carried for comparison only; never recomputed.
REFERENCE_VALUES = {
    "corpus": "PLOS, 7 journals, 85,660 research articles published up to September 2013",
    "threshold": 0.6,
    "abstracts_with_match_pct": 84.0,
    "abstract_sentences_matched_pct": 23.0,
    "summary_sentences_matched_pct": 12.0,
    "full_imrad_pct": 97.94,
    "mean_abstract_length_sentences": 9.917,
    "mean_summary_length_sentences": 7.772,
    "mean_words_per_abstract_sentence": 23.55,
    "mean_words_per_summary_sentence": 23.35,
    "table3_abstract": {
        "SIM_E": [1.66, None, None, 98.34],
        "SIM_C": [1.06, 4.53, 16.91, 77.50],
        "SIM_L": [0.64, 1.40, 2.92, 95.03],
        "SIM_max": [2.02, 4.80, 16.93, 76.26],
    },
    "table3_summary": {
        "SIM_E": [0.70, None, None, 99.30],
        "SIM_C": [0.66, 1.97, 8.82, 88.56],
        "SIM_L": [0.36, 0.78, 1.60, 97.26],
        "SIM_max": [0.90, 2.53, 10.44, 86.13],
    },
    "table4_total": [16.04, 18.85, 31.47, 33.64],
    "table5_total": [16.04, 39.83, 29.63, 12.07, 2.42],
    "table6_total": {"I": 4.24, "M": 0.56, "R": 2.61, "D": 3.24, "Total": 2.36},
    "zone_boundaries": [0.04, 0.09, 0.95],
}


def format_fixed(value: Optional[Fraction], places: int = 2) -> str:
    """Exact decimal rendering with round-half-up; ``None`` renders empty."""
    if value is None:
        return ""
    value = Fraction(value)
    scale = 10**places
    sign = "-" if value < 0 else ""
    n = (abs(value) * scale * 2 + 1) // 2
    whole, frac = divmod(int(n), scale)
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"


def _as_float(value):
    if value is None:
        return None
    return float(value)


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _table_csv(table: Table, threshold: float, places: int = 2) -> str:
    header = list(table.index)
    header[0] = f"{header[0]} (T={threshold:g})"
    header += list(table.columns)
    rows = [list(key) + [format_fixed(v, places) for v in values] for key, values in table.rows]
    return _csv_text(header, rows)


def fig1_csv(lengths: dict) -> str:
    rows = []
    for source, per_journal in lengths.items():
        for journal, data in per_journal.items():
            for length, pct in data["histogram"].items():
                rows.append([source, journal, str(length), format_fixed(pct)])
    return _csv_text(["Source", "Journal", "Length (sentences)", "Percentage"], rows)


def fig3_csv(curve: PositionalCurve, threshold: float) -> str:
    names = list(curve.rates)
    header = [f"Bin start (T={threshold:g})", "Bin end"] + names
    rows = []
    for b, (lo, hi) in enumerate(curve.edges()):
        rows.append([format_fixed(lo, 4), format_fixed(hi, 4)] + [format_fixed(100 * v, 4) if v is not None else "" for v in (curve.rates[n][b] for n in names)])
    return _csv_text(header, rows)


def fig3_boundaries_csv(curve: PositionalCurve) -> str:
    rows = [[name] + [format_fixed(b, 4) for b in curve.boundaries[name]] for name in curve.rates]
    return _csv_text(["Journal", "I/M", "M/R", "R/D"], rows)


def zones_csv(zones: Zones) -> str:
    if not zones.found:
        return _csv_text(["Zone", "Start", "End", "Note"], [["", "", "", f"no zones: {zones.reason}"]])
    rows = [[name, format_fixed(Fraction(lo).limit_denominator(10**6), 4), format_fixed(Fraction(hi).limit_denominator(10**6), 4), ""] for name, (lo, hi) in zones.intervals().items()]
    return _csv_text(["Zone", "Start", "End", "Note"], rows)


def build_tables(aggregate: CorpusAggregate, mode: str = "pooled", window: int = 5) -> dict:
    """Compute every table and figure series from an aggregate."""
    curve = positional_distribution(aggregate, mode=mode)
    if TOTAL in curve.rates and curve.bins >= 50:
        zones = detect_zones(curve.overall, window)
    else:
        zones = Zones(False, reason="no article eligible for positional analysis")
    return {
        "table3": band_distribution(aggregate),
        "table4": match_count_bands(aggregate),
        "table5": reuse_fraction_bands(aggregate),
        "table6": section_match_rates(aggregate),
        "fig1": length_distributions(aggregate),
        "fig2": journal_match_percentages(aggregate),
        "fig3": curve,
        "zones": zones,
    }


def render_csvs(tables: dict, threshold: float) -> dict[str, str]:
    return {
        "table3.csv": _table_csv(tables["table3"], threshold),
        "table4.csv": _table_csv(tables["table4"], threshold),
        "table5.csv": _table_csv(tables["table5"], threshold),
        "table6.csv": _table_csv(tables["table6"], threshold),
        "fig1.csv": fig1_csv(tables["fig1"]),
        "fig2.csv": _table_csv(tables["fig2"], threshold),
        "fig3.csv": fig3_csv(tables["fig3"], threshold),
        "fig3_boundaries.csv": fig3_boundaries_csv(tables["fig3"]),
        "zones.csv": zones_csv(tables["zones"]),
    }


def _lengths_json(lengths: dict) -> dict:
    return {
        source: {
            journal: {
                "count": data["count"],
                "histogram": {str(k): _as_float(v) for k, v in data["histogram"].items()},
                "mean_length": _as_float(data["mean_length"]),
                "mean_words_per_sentence": _as_float(data["mean_words_per_sentence"]),
            }
            for journal, data in per_journal.items()
        }
        for source, per_journal in lengths.items()
    }


def build_report(
    aggregate: CorpusAggregate,
    tables: dict,
    metadata: dict,
    skipped: list[dict],
) -> dict:
    curve: PositionalCurve = tables["fig3"]
    zones: Zones = tables["zones"]
    return {
        "schema_version": SCHEMA_VERSION,
        "metadata": metadata,
        "summary": {k: (_as_float(v) if isinstance(v, Fraction) else v) for k, v in summary_statistics(aggregate).items()},
        "tables": {
            "table3": tables["table3"].as_floats(),
            "table4": tables["table4"].as_floats(),
            "table5": tables["table5"].as_floats(),
            "table6": tables["table6"].as_floats(),
            "fig1": _lengths_json(tables["fig1"]),
            "fig2": tables["fig2"].as_floats(),
            "fig3": {
                "bins": curve.bins,
                "mode": curve.mode,
                "rates": {k: [_as_float(v) for v in vals] for k, vals in curve.rates.items()},
                "matched": curve.matched,
                "totals": curve.totals,
                "mean_boundaries": {k: [_as_float(v) for v in vals] for k, vals in curve.boundaries.items()},
            },
            "zones": {
                "found": zones.found,
                "reason": zones.reason or None,
                "boundaries": list(zones.boundaries),
                "boundary_bins": list(zones.boundary_bins),
                "intervals": {k: list(v) for k, v in zones.intervals().items()},
            },
        },
        "aggregate": aggregate.to_dict(),
        "reference_values": REFERENCE_VALUES,
        "skipped": skipped,
    }


def write_report(out_dir: str | Path, report: dict, csvs: dict[str, str]) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    path = out / "report.json"
    path.write_text(json.dumps(report, indent=2, sort_keys=False) + "\n", encoding="utf-8")
    written.append(path)
    for name, text in csvs.items():
        path = out / name
        path.write_text(text, encoding="utf-8", newline="")
        written.append(path)
    return written
