"""Subject-area spread of the corpus and its Simpson diversity."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .corpus import BiblioRecord
from .indicators import simpson_diversity


@dataclass(frozen=True)
class SubjectDistribution:
    counts: dict[str, int]   # subject area -> paper-assignment count
    total_assignments: int

    def count_vector(self) -> list[int]:
        return list(self.counts.values())


def subject_distribution(
    records: list[BiblioRecord], allow_list: set[str] | None = None
) -> SubjectDistribution:
    """Tally each (paper, subject) assignment once; optional subject allow-list."""
    counts: dict[str, int] = {}
    for rec in records:
        for subject in rec.subject_areas:
            if allow_list is not None and subject not in allow_list:
                continue
            counts[subject] = counts.get(subject, 0) + 1
    ordered = dict(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])))
    return SubjectDistribution(counts=ordered, total_assignments=sum(ordered.values()))


def corpus_sid(dist: SubjectDistribution) -> float:
    """Simpson Index of Diversity over the subject assignment counts."""
    return simpson_diversity(dist.count_vector())


def export_distribution(dist: SubjectDistribution, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["subject_area", "count"])
        for subject, count in dist.counts.items():
            writer.writerow([subject, count])


def load_allow_list(path: str | Path) -> set[str]:
    """Subject labels, one per line; blank lines and '#' comments ignored."""
    subjects: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                subjects.add(line)
    return subjects
