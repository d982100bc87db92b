"""Deterministic JSON report documents.

Every report carries the same six top-level keys (morphism, classification,
letters, factors, parameters, version), with nulls where a command has
nothing to say. Numeric fields appear as exact "p/q" strings next to float
approximations, so exactness survives serialization; output is byte-stable
across runs.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .frequency import FactorFrequencyReport
from .intervals import Interval
from .morphism import (
    LetterClassification,
    Morphism,
    is_primitive,
    prolongable_letters,
    serialize_morphism,
)
from .spectrum import BoundedMass, FrequencyVector
from .stream import EmpiricalSeries

TOOL_VERSION = "0.1.0"


def rational_json(x: Fraction | int) -> dict[str, Any]:
    x = Fraction(x)
    return {"exact": f"{x.numerator}/{x.denominator}", "decimal": float(x)}


def parse_rational(encoded: dict[str, Any]) -> Fraction:
    num, den = encoded["exact"].split("/")
    return Fraction(int(num), int(den))


def interval_json(iv: Interval) -> dict[str, Any]:
    return {
        "lo": rational_json(iv.lo),
        "hi": rational_json(iv.hi),
        "midpoint": rational_json(iv.midpoint),
        "width": rational_json(iv.width),
    }


def morphism_json(phi: Morphism) -> dict[str, Any]:
    return {
        "text": serialize_morphism(phi),
        "alphabet": list(phi.alphabet),
        "rules": {a: list(img) for a, img in zip(phi.alphabet, phi.images)},
        "start": phi.start,
    }


def classification_json(phi: Morphism, cls: LetterClassification) -> dict[str, Any]:
    return {
        "bounded": sorted(cls.bounded),
        "unbounded": sorted(cls.unbounded),
        "k1": cls.k1,
        "orbit_lengths": {a: cls.orbit_lengths[a] for a in sorted(cls.orbit_lengths)},
        "primitive": is_primitive(phi),
        "prolongable": prolongable_letters(phi),
    }


def letters_json(freqs: FrequencyVector, mass: BoundedMass) -> dict[str, Any]:
    return {
        "method": freqs.method,
        "diagnostic": freqs.diagnostic,
        "iterations": freqs.iterations,
        "frequencies": {a: interval_json(freqs.intervals[a]) for a in freqs.alphabet},
        "bounded_mass": interval_json(mass.interval),
    }


def empirical_json(series: EmpiricalSeries) -> dict[str, Any]:
    return {
        "burn_in": series.burn_in,
        "checkpoints": [
            {"n": n, "count": c, "ratio": rational_json(r)}
            for n, c, r in series.checkpoints
        ],
        "min_ratio": None if series.min_ratio is None else rational_json(series.min_ratio),
        "max_ratio": None if series.max_ratio is None else rational_json(series.max_ratio),
        "spread": None if series.spread is None else rational_json(series.spread),
    }


def factor_report_json(rep: FactorFrequencyReport) -> dict[str, Any]:
    levels = []
    for rec in rep.levels:
        entry: dict[str, Any] = {
            "level": rec.level,
            "ratio": interval_json(rec.ratio),
        }
        if rec.bound is None:
            entry["bound"] = None
        else:
            entry["bound"] = {
                "spread_limit": rational_json(rec.bound.spread_limit),
                "deviation": rational_json(rec.bound.deviation),
                "min_image_length": rec.bound.min_image_length,
                "vacuous": rec.bound.vacuous,
            }
        levels.append(entry)
    return {
        "factor": list(rep.factor),
        "start": rep.start,
        "verdict": rep.verdict,
        "estimate": interval_json(rep.estimate),
        "bound_based": rep.bound_based,
        "degenerate_alpha": rep.degenerate_alpha,
        "freq_method": rep.freq_method,
        "freq_diagnostic": rep.freq_diagnostic,
        "levels": levels,
        "empirical": None if rep.empirical is None else empirical_json(rep.empirical),
        "empirical_consistent": rep.empirical_consistent,
    }


def build_report(
    *,
    phi: Morphism,
    parameters: dict[str, Any],
    classification: dict[str, Any] | None = None,
    letters: dict[str, Any] | None = None,
    factors: list[dict[str, Any]] | None = None,
) -> dict[str, Any]:
    return {
        "morphism": morphism_json(phi),
        "classification": classification,
        "letters": letters,
        "factors": factors,
        "parameters": parameters,
        "version": TOOL_VERSION,
    }


def dumps_report(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads_report(text: str) -> dict[str, Any]:
    return json.loads(text)
