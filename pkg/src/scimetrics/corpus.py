"""Bibliographic corpus ingestion: CSV parsing, deduplication, completeness stats.

Input schema (UTF-8 CSV, header required)::

    id,year,doc_type,citations,author_affiliations,subject_areas

``author_affiliations`` holds authors separated by ``;``; each author is
``Name|affiliation 1|affiliation 2|...`` where an affiliation is free text
like ``Tsinghua University, Beijing, China``. ``subject_areas`` holds labels
separated by ``;``. Quoting follows RFC 4180 (the stdlib csv dialect).
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path

DOC_TYPES = ("article", "conference_paper", "review", "other")
DEFAULT_WINDOW = (1998, 2012)


class CorpusError(Exception):
    """Base class for fatal corpus-file problems."""


class MissingColumn(CorpusError):
    pass


class EmptyFile(CorpusError):
    pass


@dataclass(frozen=True)
class AffiliationEntry:
    """One affiliation string of one author.

    ``country`` is filled in by the cleaning stage; ``None`` means the entry
    is (still) unresolved.
    """

    raw_text: str
    institution: str = ""
    country: str | None = None


@dataclass(frozen=True)
class BiblioRecord:
    id: str
    year: int
    doc_type: str
    citations: int
    author_names: tuple[str, ...]
    author_affils: tuple[tuple[AffiliationEntry, ...], ...]
    subject_areas: frozenset[str]
    # one entry per author, set by cleaning; None = author unresolved
    author_countries: tuple[str | None, ...] | None = None

    def resolved_countries(self) -> list[str]:
        """Per-author country codes (cleaning output), unresolved authors dropped."""
        if self.author_countries is None:
            return []
        return [c for c in self.author_countries if c is not None]

    def distinct_countries(self) -> set[str]:
        return set(self.resolved_countries())


@dataclass(frozen=True)
class CorpusStats:
    total_records: int
    records_with_country: int
    duplicate_count: int
    year_histogram: dict[int, int]


@dataclass(frozen=True)
class CorpusSchema:
    """Delimiters and column names of the corpus CSV layout."""

    columns: tuple[str, ...] = (
        "id",
        "year",
        "doc_type",
        "citations",
        "author_affiliations",
        "subject_areas",
    )
    author_sep: str = ";"
    affil_sep: str = "|"
    subject_sep: str = ";"


DEFAULT_SCHEMA = CorpusSchema()


@dataclass(frozen=True)
class RowIssue:
    row: int  # 1-based line position in the file (header = row 1)
    message: str


@dataclass
class ParsedCorpus:
    records: list[BiblioRecord] = field(default_factory=list)
    skipped: list[RowIssue] = field(default_factory=list)


def _normalize_doc_type(raw: str) -> str:
    value = raw.strip().lower().replace(" ", "_")
    return value if value in DOC_TYPES[:3] else "other"


def _parse_author_field(value: str, schema: CorpusSchema):
    names: list[str] = []
    affils: list[tuple[AffiliationEntry, ...]] = []
    for author_token in value.split(schema.author_sep):
        author_token = author_token.strip()
        if not author_token:
            continue
        parts = [p.strip() for p in author_token.split(schema.affil_sep)]
        names.append(parts[0])
        entries = []
        for raw in parts[1:]:
            if not raw:
                continue
            institution = raw.split(",", 1)[0].strip()
            entries.append(AffiliationEntry(raw_text=raw, institution=institution))
        affils.append(tuple(entries))
    return tuple(names), tuple(affils)


def parse_corpus(file_path: str | Path, schema: CorpusSchema = DEFAULT_SCHEMA) -> ParsedCorpus:
    """Parse a corpus CSV into records, collecting row-numbered diagnostics.

    Raises MissingColumn when the header does not match the schema and
    EmptyFile when the file holds no data rows. Rows with malformed numeric
    fields are skipped and reported in ``ParsedCorpus.skipped``.
    """
    result = ParsedCorpus()
    with open(file_path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise EmptyFile(f"{file_path}: file is empty")
        got = tuple(c.strip() for c in header)
        if got != schema.columns:
            missing = set(schema.columns) - set(got)
            raise MissingColumn(
                f"{file_path}: header mismatch, missing columns {sorted(missing)}"
                if missing
                else f"{file_path}: header mismatch, got {got}"
            )
        n_cols = len(schema.columns)
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != n_cols:
                result.skipped.append(RowIssue(row_no, f"expected {n_cols} fields, got {len(row)}"))
                continue
            rec_id, year_s, doc_type, cites_s, authors_s, subjects_s = row
            try:
                year = int(year_s.strip())
            except ValueError:
                result.skipped.append(RowIssue(row_no, f"invalid year {year_s!r}"))
                continue
            try:
                citations = int(cites_s.strip())
            except ValueError:
                result.skipped.append(RowIssue(row_no, f"invalid citations {cites_s!r}"))
                continue
            if citations < 0:
                result.skipped.append(RowIssue(row_no, f"negative citations {citations}"))
                continue
            names, affils = _parse_author_field(authors_s, schema)
            subjects = frozenset(
                s.strip() for s in subjects_s.split(schema.subject_sep) if s.strip()
            )
            result.records.append(
                BiblioRecord(
                    id=rec_id.strip(),
                    year=year,
                    doc_type=_normalize_doc_type(doc_type),
                    citations=citations,
                    author_names=names,
                    author_affils=affils,
                    subject_areas=subjects,
                )
            )
    if not result.records and not result.skipped:
        raise EmptyFile(f"{file_path}: no data rows")
    return result


def write_corpus(records: list[BiblioRecord], file_path: str | Path,
                 schema: CorpusSchema = DEFAULT_SCHEMA) -> None:
    """Serialize records back to the canonical CSV layout (round-trip safe)."""
    with open(file_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(schema.columns)
        for rec in records:
            authors = schema.author_sep.join(
                schema.affil_sep.join([name, *(e.raw_text for e in entries)])
                for name, entries in zip(rec.author_names, rec.author_affils)
            )
            writer.writerow(
                [
                    rec.id,
                    rec.year,
                    rec.doc_type,
                    rec.citations,
                    authors,
                    schema.subject_sep.join(sorted(rec.subject_areas)),
                ]
            )


def deduplicate(records: list[BiblioRecord]) -> tuple[list[BiblioRecord], int]:
    """Collapse records sharing an id to the first occurrence (input order)."""
    seen: set[str] = set()
    unique: list[BiblioRecord] = []
    for rec in records:
        if rec.id in seen:
            continue
        seen.add(rec.id)
        unique.append(rec)
    return unique, len(records) - len(unique)


def filter_records(
    records: list[BiblioRecord],
    window: tuple[int, int] = DEFAULT_WINDOW,
    doc_types: tuple[str, ...] = ("article", "conference_paper", "review"),
) -> list[BiblioRecord]:
    """Keep records inside the study window and of the requested document types."""
    lo, hi = window
    allowed = set(doc_types)
    return [r for r in records if lo <= r.year <= hi and r.doc_type in allowed]


def corpus_stats(records: list[BiblioRecord], duplicate_count: int = 0) -> CorpusStats:
    histogram = Counter(r.year for r in records)
    with_country = sum(1 for r in records if r.distinct_countries())
    return CorpusStats(
        total_records=len(records),
        records_with_country=with_country,
        duplicate_count=duplicate_count,
        year_histogram=dict(sorted(histogram.items())),
    )


def with_author_countries(rec: BiblioRecord, countries: tuple[str | None, ...]) -> BiblioRecord:
    return replace(rec, author_countries=countries)
