"""Fractional country crediting and collaboration classification.

Credits are accumulated as exact rationals (``fractions.Fraction``) and only
converted to floats on the way out, so conservation holds exactly and the
ledger is identical no matter how the input records are ordered.
"""

from __future__ import annotations

import csv
import enum
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .corpus import BiblioRecord


class Collaboration(enum.Enum):
    SINGLE_COUNTRY = "single_country"
    INTERNATIONAL = "international"
    UNATTRIBUTED = "unattributed"


def country_fractions(record: BiblioRecord) -> dict[str, Fraction]:
    """Per-country share of one paper: resolved authors in c / resolved authors.

    Sums to exactly 1 when at least one author resolved; empty otherwise.
    """
    resolved = record.resolved_countries()
    if not resolved:
        return {}
    total = len(resolved)
    counts: dict[str, int] = defaultdict(int)
    for code in resolved:
        counts[code] += 1
    return {c: Fraction(n, total) for c, n in sorted(counts.items())}


def classify_collaboration(record: BiblioRecord) -> Collaboration:
    distinct = record.distinct_countries()
    if len(distinct) >= 2:
        return Collaboration.INTERNATIONAL
    if len(distinct) == 1:
        return Collaboration.SINGLE_COUNTRY
    return Collaboration.UNATTRIBUTED


@dataclass(frozen=True)
class CreditLedger:
    pub_credit: dict[str, float]
    cite_credit: dict[str, float]
    paper_count: dict[str, int]     # whole-paper: country appears on the paper
    icp_count: dict[str, int]       # whole-paper: internationally collaborative
    uncited_count: dict[str, int]   # whole-paper: zero citations
    collab_class: dict[str, Collaboration]  # record id -> class
    attributed_papers: int          # records with >= 1 resolved country
    attributed_citations: int       # their citation total

    @property
    def countries(self) -> list[str]:
        return sorted(self.pub_credit)


def build_ledger(records: list[BiblioRecord]) -> CreditLedger:
    pub: dict[str, Fraction] = defaultdict(Fraction)
    cite: dict[str, Fraction] = defaultdict(Fraction)
    papers: dict[str, int] = defaultdict(int)
    icp: dict[str, int] = defaultdict(int)
    uncited: dict[str, int] = defaultdict(int)
    collab: dict[str, Collaboration] = {}
    attributed = 0
    attributed_cites = 0
    for rec in records:
        kind = classify_collaboration(rec)
        collab[rec.id] = kind
        fractions = country_fractions(rec)
        if not fractions:
            continue
        attributed += 1
        attributed_cites += rec.citations
        for code, frac in fractions.items():
            pub[code] += frac
            cite[code] += rec.citations * frac
            papers[code] += 1
            if kind is Collaboration.INTERNATIONAL:
                icp[code] += 1
            if rec.citations == 0:
                uncited[code] += 1
    order = sorted(pub)
    return CreditLedger(
        pub_credit={c: float(pub[c]) for c in order},
        cite_credit={c: float(cite[c]) for c in order},
        paper_count={c: papers[c] for c in order},
        icp_count={c: icp[c] for c in order},
        uncited_count={c: uncited[c] for c in order},
        collab_class=collab,
        attributed_papers=attributed,
        attributed_citations=attributed_cites,
    )


def export_ledger(ledger: CreditLedger, path: str | Path) -> None:
    """Write the per-country ledger as CSV, credits to 4 decimal places."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["country", "pub_credit", "cite_credit", "paper_count", "icp_count", "uncited_count"]
        )
        for code in ledger.countries:
            writer.writerow(
                [
                    code,
                    f"{ledger.pub_credit[code]:.4f}",
                    f"{ledger.cite_credit[code]:.4f}",
                    ledger.paper_count[code],
                    ledger.icp_count[code],
                    ledger.uncited_count[code],
                ]
            )
