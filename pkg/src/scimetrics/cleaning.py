"""Affiliation cleaning: resolve each author to exactly one country.

The protocol, applied per author in this fixed order:

1. discard affiliation entries that look like professional societies;
2. the first surviving entry is the primary affiliation (others ignored);
3. normalize its trailing country text (alias table, then canonical names);
4. apply correction rules (institution pattern + claimed country -> fix);
5. if still unresolved, try the institution lookup table;
6. otherwise the author stays unresolved (counted, never guessed).

Rules live in a single sectioned text file, see ``docs/rules_format.md``.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, replace
from pathlib import Path

from .corpus import AffiliationEntry, BiblioRecord
from .countries import CountryTable, default_country_table


class RulesFileInvalid(Exception):
    pass


@dataclass(frozen=True)
class CorrectionRule:
    pattern: str        # case-insensitive substring of the affiliation text
    claimed: str        # country code the dirty record claims
    corrected: str      # country code to use instead


@dataclass(frozen=True)
class CleaningRules:
    country_aliases: dict[str, str]             # casefolded raw text -> code
    country_corrections: tuple[CorrectionRule, ...]
    society_patterns: tuple[str, ...]
    institution_lookup: tuple[tuple[str, str], ...]  # (pattern, code)

    @staticmethod
    def empty() -> "CleaningRules":
        return CleaningRules({}, (), (), ())


class Action(enum.Enum):
    DIRECT = "direct"
    CORRECTED = "corrected"
    LOOKUP = "lookup"
    UNRESOLVED = "unresolved"


@dataclass
class CleaningReport:
    resolved: int = 0
    corrected: int = 0
    discarded_society: int = 0
    lookup_resolved: int = 0
    unresolved: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "resolved": self.resolved,
            "corrected": self.corrected,
            "discarded_society": self.discarded_society,
            "lookup_resolved": self.lookup_resolved,
            "unresolved": self.unresolved,
        }


_SECTIONS = ("aliases", "corrections", "societies", "lookup")
_HEADERS = {
    "aliases": ["text", "code"],
    "corrections": ["pattern", "claimed", "code"],
    "societies": ["pattern"],
    "lookup": ["pattern", "code"],
}


def load_rules(path: str | Path, countries: CountryTable | None = None) -> CleaningRules:
    """Parse and validate the sectioned rules file."""
    countries = countries or default_country_table()
    sections: dict[str, list[list[str]]] = {s: [] for s in _SECTIONS}
    current: str | None = None
    problems: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if stripped.startswith("[") and stripped.endswith("]"):
                name = stripped[1:-1].strip().lower()
                if name not in _SECTIONS:
                    problems.append(f"line {line_no}: unknown section [{name}]")
                    current = None
                else:
                    current = name
                continue
            if current is None:
                problems.append(f"line {line_no}: data outside any section")
                continue
            row = next(csv.reader([stripped]))
            sections[current].append([c.strip() for c in row])

    def check_code(code: str, where: str) -> str:
        code = code.upper()
        if code not in countries:
            problems.append(f"{where}: unknown country code {code!r}")
        return code

    aliases: dict[str, str] = {}
    corrections: list[CorrectionRule] = []
    societies: list[str] = []
    lookup: list[tuple[str, str]] = []
    for section, rows in sections.items():
        expected = _HEADERS[section]
        if rows and [c.lower() for c in rows[0]] == expected:
            rows = rows[1:]
        for row in rows:
            if len(row) != len(expected) or not all(row):
                problems.append(f"[{section}]: malformed row {row!r}")
                continue
            if section == "aliases":
                aliases[normalize_country_text(row[0])] = check_code(row[1], f"[aliases] {row[0]!r}")
            elif section == "corrections":
                corrections.append(
                    CorrectionRule(
                        pattern=row[0],
                        claimed=check_code(row[1], f"[corrections] {row[0]!r}"),
                        corrected=check_code(row[2], f"[corrections] {row[0]!r}"),
                    )
                )
            elif section == "societies":
                societies.append(row[0])
            else:
                lookup.append((row[0], check_code(row[1], f"[lookup] {row[0]!r}")))
    if problems:
        raise RulesFileInvalid(f"{path}: " + "; ".join(problems))
    return CleaningRules(aliases, tuple(corrections), tuple(societies), tuple(lookup))


def normalize_country_text(text: str) -> str:
    """Canonical key for country text: collapsed spaces, no edge dots, casefolded."""
    return " ".join(text.split()).strip(" .").casefold()


def is_society(entry: AffiliationEntry, rules: CleaningRules) -> bool:
    text = entry.raw_text.lower()
    return any(p.lower() in text for p in rules.society_patterns)


def _country_text(raw: str) -> str:
    # trailing comma-segment carries the country in SCOPUS-style affiliations
    return raw.rsplit(",", 1)[-1].strip() if "," in raw else raw.strip()


def _resolve_text(text: str, rules: CleaningRules, countries: CountryTable) -> str | None:
    cleaned = normalize_country_text(text)
    if not cleaned:
        return None
    alias = rules.country_aliases.get(cleaned)
    if alias:
        return alias
    return countries.resolve_text(text)


def clean_author(
    entries: tuple[AffiliationEntry, ...] | list[AffiliationEntry],
    rules: CleaningRules,
    countries: CountryTable | None = None,
) -> tuple[str | None, Action]:
    """Resolve one author's affiliation list to a country code (or None)."""
    countries = countries or default_country_table()
    surviving = [e for e in entries if not is_society(e, rules)]
    if not surviving:
        return None, Action.UNRESOLVED
    primary = surviving[0]
    code = _resolve_text(_country_text(primary.raw_text), rules, countries)
    text = primary.raw_text.lower()
    for rule in rules.country_corrections:
        if rule.claimed == code and rule.pattern.lower() in text:
            return rule.corrected, Action.CORRECTED
    if code is not None:
        return code, Action.DIRECT
    for pattern, target in rules.institution_lookup:
        if pattern.lower() in text:
            return target, Action.LOOKUP
    return None, Action.UNRESOLVED


def _society_discards(rec: BiblioRecord, rules: CleaningRules) -> int:
    return sum(
        1 for entries in rec.author_affils for e in entries if is_society(e, rules)
    )


def clean_record(
    rec: BiblioRecord, rules: CleaningRules, countries: CountryTable
) -> tuple[BiblioRecord, list[Action]]:
    actions: list[Action] = []
    author_countries: list[str | None] = []
    new_affils: list[tuple[AffiliationEntry, ...]] = []
    for entries in rec.author_affils:
        code, action = clean_author(entries, rules, countries)
        actions.append(action)
        author_countries.append(code)
        if code is None:
            new_affils.append(entries)
            continue
        # stamp the resolved code on the primary (first non-society) entry
        marked = []
        stamped = False
        for e in entries:
            if not stamped and not is_society(e, rules):
                marked.append(replace(e, country=code))
                stamped = True
            else:
                marked.append(replace(e, country=None))
        new_affils.append(tuple(marked))
    cleaned = replace(
        rec,
        author_affils=tuple(new_affils),
        author_countries=tuple(author_countries),
    )
    return cleaned, actions


def clean_corpus(
    records: list[BiblioRecord],
    rules: CleaningRules,
    countries: CountryTable | None = None,
) -> tuple[list[BiblioRecord], CleaningReport]:
    """Apply the cleaning protocol to every author of every record."""
    countries = countries or default_country_table()
    report = CleaningReport()
    cleaned: list[BiblioRecord] = []
    for rec in records:
        new_rec, actions = clean_record(rec, rules, countries)
        cleaned.append(new_rec)
        report.discarded_society += _society_discards(rec, rules)
        for action in actions:
            if action is Action.UNRESOLVED:
                report.unresolved += 1
                continue
            report.resolved += 1
            if action is Action.CORRECTED:
                report.corrected += 1
            elif action is Action.LOOKUP:
                report.lookup_resolved += 1
    return cleaned, report
