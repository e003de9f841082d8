"""Country grouping schemes (regions, income bands, ad-hoc sets) and their tables."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .crediting import CreditLedger
from .indicators import IndicatorError, cpp, gini, ncrr, ricr, sicp
from .countries import CountryTable, default_country_table


class SchemeError(Exception):
    pass


class DuplicateAssignment(SchemeError):
    pass


class UnknownCountryCode(SchemeError):
    pass


@dataclass(frozen=True)
class GroupScheme:
    name: str
    assignment: dict[str, str]  # country code -> group label
    exhaustive: bool = False

    def groups(self) -> list[str]:
        return sorted(set(self.assignment.values()))

    def members(self, group: str) -> set[str]:
        return {c for c, g in self.assignment.items() if g == group}

    def is_country_set(self) -> bool:
        """True when every row carries the same label (an ad-hoc country set)."""
        return len(set(self.assignment.values())) == 1


def load_scheme(
    file_path: str | Path,
    countries: CountryTable | None = None,
    name: str | None = None,
    exhaustive: bool = False,
) -> GroupScheme:
    """Read a two-column ``country,group`` CSV; '#' lines are comments."""
    countries = countries or default_country_table()
    assignment: dict[str, str] = {}
    with open(file_path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if len(row) < 2:
                raise SchemeError(f"{file_path}: malformed row {row!r}")
            code, group = row[0].strip().upper(), row[1].strip()
            if (code, group.lower()) == ("COUNTRY", "group"):
                continue  # literal header
            if not group:
                raise SchemeError(f"{file_path}: empty group label for {code}")
            if code not in countries:
                raise UnknownCountryCode(f"{file_path}: unknown country code {code!r}")
            if code in assignment:
                raise DuplicateAssignment(f"{file_path}: {code} assigned twice")
            assignment[code] = group
    return GroupScheme(
        name=name or Path(file_path).stem,
        assignment=assignment,
        exhaustive=exhaustive,
    )


@dataclass(frozen=True)
class GroupRow:
    group: str
    member_count: int          # scheme members present in the ledger
    tp: float
    tc: float
    cpp: float | None
    world_share: float
    gini_within: float | None
    leading_country: str | None


def aggregate_by_group(ledger: CreditLedger, scheme: GroupScheme) -> list[GroupRow]:
    """Sum ledger credits into one row per group, ordered by output (TP) descending.

    Countries absent from the scheme are pooled into an ``Unclassified`` row
    unless the scheme is exhaustive (then they would violate loading).
    """
    world_tp = sum(ledger.pub_credit.values())
    buckets: dict[str, list[str]] = {}
    for code in ledger.countries:
        group = scheme.assignment.get(code)
        if group is None:
            group = "Unclassified"
        buckets.setdefault(group, []).append(code)
    rows = []
    for group, members in buckets.items():
        tp = sum(ledger.pub_credit[c] for c in members)
        tc = sum(ledger.cite_credit[c] for c in members)
        credits = [ledger.pub_credit[c] for c in members]
        try:
            spread = gini(credits) if len(credits) > 1 else 0.0
        except IndicatorError:
            spread = None
        best = max(ledger.pub_credit[c] for c in members)
        leading = min(c for c in members if ledger.pub_credit[c] == best)
        rows.append(
            GroupRow(
                group=group,
                member_count=len(members),
                tp=tp,
                tc=tc,
                cpp=cpp(tc, tp) if tp > 0 else None,
                world_share=100.0 * tp / world_tp if world_tp else 0.0,
                gini_within=spread,
                leading_country=leading,
            )
        )
    rows.sort(key=lambda r: (-r.tp, r.group))
    return rows


@dataclass(frozen=True)
class MemberRow:
    country: str
    tp: float
    tc: float
    world_share: float
    cpp: float | None
    sicp: float | None
    ricr: float | None
    ncrr: float | None


@dataclass(frozen=True)
class WorldRates:
    """World baselines the relative indicators divide by."""

    total_pub_credit: float
    sicp: float | None
    uncited_pct: float | None


def world_rates(ledger: CreditLedger, world_sicp: float | None,
                world_uncited_pct: float | None) -> WorldRates:
    return WorldRates(
        total_pub_credit=sum(ledger.pub_credit.values()),
        sicp=world_sicp,
        uncited_pct=world_uncited_pct,
    )


def group_country_table(
    ledger: CreditLedger, members: set[str], world: WorldRates
) -> list[MemberRow]:
    """Per-member indicator rows (Tables 11-14 shape); absent members are omitted.

    The trailing total row aggregates TP/share/CPP over the listed members.
    """
    rows: list[MemberRow] = []
    for code in sorted(members):
        if code not in ledger.pub_credit:
            continue
        tp = ledger.pub_credit[code]
        tc = ledger.cite_credit[code]
        papers = ledger.paper_count[code]
        share_icp = sicp(ledger.icp_count[code], papers) if papers else None
        uncited_pct = 100.0 * ledger.uncited_count[code] / papers if papers else None
        rows.append(
            MemberRow(
                country=code,
                tp=tp,
                tc=tc,
                world_share=100.0 * tp / world.total_pub_credit if world.total_pub_credit else 0.0,
                cpp=cpp(tc, tp) if tp > 0 else None,
                sicp=share_icp,
                ricr=ricr(share_icp, world.sicp) if share_icp is not None and world.sicp else None,
                ncrr=ncrr(uncited_pct, world.uncited_pct)
                if uncited_pct is not None and world.uncited_pct
                else None,
            )
        )
    rows.sort(key=lambda r: (-r.tp, r.country))
    if rows:
        tp = sum(r.tp for r in rows)
        tc = sum(r.tc for r in rows)
        rows.append(
            MemberRow(
                country="Total",
                tp=tp,
                tc=tc,
                world_share=100.0 * tp / world.total_pub_credit if world.total_pub_credit else 0.0,
                cpp=cpp(tc, tp) if tp > 0 else None,
                sicp=None,
                ricr=None,
                ncrr=None,
            )
        )
    return rows
