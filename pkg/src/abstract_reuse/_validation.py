"""Parameter validation shared by the config objects and the estimator."""

from __future__ import annotations

import numbers
from typing import Iterable

_KNOWN_MEASURES = ("E", "C", "L", "Dice", "Jaccard")
_ALIASES = {m.lower(): m for m in _KNOWN_MEASURES}


def check_threshold(threshold) -> float:
    if isinstance(threshold, bool) or not isinstance(threshold, numbers.Real):
        raise TypeError(f"threshold must be a number, got {type(threshold).__name__}")
    threshold = float(threshold)
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must satisfy 0 < threshold <= 1, got {threshold}")
    return threshold


def check_measures(measures: Iterable[str] | str) -> frozenset[str]:
    """Normalize a measure selection such as ``"E,C,L"`` or ``["e", "dice"]``."""
    if isinstance(measures, str):
        measures = [m for m in measures.split(",") if m.strip()]
    out = set()
    for m in measures:
        key = str(m).strip().lower()
        if key not in _ALIASES:
            raise ValueError(f"unknown similarity measure {m!r}; expected one of {', '.join(_KNOWN_MEASURES)}")
        out.add(_ALIASES[key])
    if not out:
        raise ValueError("at least one similarity measure must be enabled")
    return frozenset(out)


def check_bins(bins) -> int:
    if isinstance(bins, bool) or not isinstance(bins, numbers.Integral):
        raise TypeError(f"bins must be an integer, got {type(bins).__name__}")
    if bins < 20:
        raise ValueError(f"bins must be >= 20, got {bins}")
    return int(bins)


def check_positive_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)
