"""Scalar impact and inequality indicators.

All rates are returned as plain ratios (CAGR 0.0794 = 7.94%/yr); percentages
(sicp) are returned on the 0-100 scale. Formatting to table precision happens
only at report time.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass

from .crediting import Collaboration, CreditLedger
from .corpus import BiblioRecord
from .kernels import abs_diff_total


class IndicatorError(ValueError):
    pass


class ZeroBaseline(IndicatorError):
    pass


class ZeroWorldRate(IndicatorError):
    pass


class EmptyDenominator(IndicatorError):
    pass


class EmptyList(IndicatorError):
    pass


class AllZero(IndicatorError):
    pass


class InsufficientSample(IndicatorError):
    pass


def cagr(begin: float, end: float, n_years: int) -> float:
    """Compound annual growth rate over an inclusive n-year window."""
    if begin <= 0:
        raise ZeroBaseline("growth is undefined for a zero or negative baseline")
    if n_years < 2:
        raise IndicatorError("window must span at least two years")
    return (end / begin) ** (1.0 / (n_years - 1)) - 1.0


def rgi(country_rate: float, world_rate: float) -> float:
    """Relative growth: 1 means the country grows at the world rate."""
    if world_rate == 0:
        raise ZeroWorldRate("world growth rate is zero")
    return country_rate / world_rate


def sicp(icp: float, tp: float) -> float:
    """Share of internationally collaborative papers, in percent."""
    if tp <= 0:
        raise EmptyDenominator("no papers")
    if icp > tp:
        raise IndicatorError(f"icp {icp} exceeds tp {tp}")
    return 100.0 * icp / tp


def ricr(country_sicp: float, world_sicp: float) -> float:
    """Relative international collaboration rate (country SICP over world SICP)."""
    if world_sicp <= 0:
        raise ZeroWorldRate("world collaboration share is zero")
    return country_sicp / world_sicp


def cpp(tc: float, tp: float) -> float:
    """Citations per paper."""
    if tp <= 0:
        raise EmptyDenominator("no papers")
    return tc / tp


def paper_age(year: int, census_year: int) -> int:
    """Age of a paper at the census date, floored at one year."""
    return max(1, census_year - year)


def cppy(tc: float, paper_ages: list[int]) -> float:
    """Citations per paper per year: TC over the summed paper ages."""
    if not paper_ages:
        raise EmptyDenominator("no papers")
    if any(a < 1 for a in paper_ages):
        raise IndicatorError("ages must be >= 1")
    return tc / sum(paper_ages)


def ncrr(country_uncited_pct: float, world_uncited_pct: float) -> float:
    """Non-citation relative rate: 1 = world-average uncitedness, 0 = none."""
    if world_uncited_pct <= 0:
        raise ZeroWorldRate("world uncited share is zero")
    return country_uncited_pct / world_uncited_pct


def gini(values) -> float:
    """Gini coefficient as half the relative mean absolute pairwise difference.

    G = sum_ij |x_i - x_j| / (2 n^2 mean) on non-negative values; 0 is perfect
    equality, (n-1)/n a single holder.
    """
    vals = array("d", (float(v) for v in values))
    n = len(vals)
    if n == 0:
        raise EmptyList("gini of an empty list")
    if any(v < 0 for v in vals):
        raise IndicatorError("values must be non-negative")
    total = sum(vals, 0.0)
    if total == 0:
        raise AllZero("gini undefined when every value is zero")
    return abs_diff_total(vals) / (2.0 * n * total)


def simpson_diversity(category_counts) -> float:
    """Simpson Index of Diversity: 1 - sum n(n-1) / (N(N-1))."""
    counts = [int(c) for c in category_counts]
    if any(c < 0 for c in counts):
        raise IndicatorError("counts must be non-negative")
    total = sum(counts)
    if total < 2:
        raise InsufficientSample("need at least two assignments")
    repeat_pairs = sum(c * (c - 1) for c in counts)
    return 1.0 - repeat_pairs / (total * (total - 1))


@dataclass(frozen=True)
class WorldSummary:
    """The corpus-level overview table (one value per line of the report)."""

    total_papers: int
    cagr: float | None               # None when undefined (zero baseline / 1-year window)
    countries_involved: int
    papers_with_country: int
    icp_papers: int
    sicp: float | None               # % of attributed papers
    total_citations: int
    cited_papers: int
    pct_cited: float | None
    cpp: float | None
    cppy: float | None
    gini_publications: float | None
    gini_citations: float | None


def world_summary(
    records: list[BiblioRecord],
    ledger: CreditLedger,
    window: tuple[int, int],
    census_year: int,
) -> WorldSummary:
    """Assemble the corpus summary (yearly growth, shares, impact, inequality)."""
    total = len(records)
    by_year: dict[int, int] = {}
    for rec in records:
        by_year[rec.year] = by_year.get(rec.year, 0) + 1
    begin, end = by_year.get(window[0], 0), by_year.get(window[1], 0)
    n_years = window[1] - window[0] + 1
    try:
        growth = cagr(begin, end, n_years)
    except IndicatorError:
        growth = None
    icp_papers = sum(
        1 for rec in records
        if ledger.collab_class.get(rec.id) is Collaboration.INTERNATIONAL
    )
    total_citations = sum(r.citations for r in records)
    cited = sum(1 for r in records if r.citations > 0)
    pub_values = list(ledger.pub_credit.values())
    cite_values = list(ledger.cite_credit.values())

    def safe_gini(vals):
        try:
            return gini(vals)
        except IndicatorError:
            return None

    return WorldSummary(
        total_papers=total,
        cagr=growth,
        countries_involved=len(ledger.pub_credit),
        papers_with_country=ledger.attributed_papers,
        icp_papers=icp_papers,
        sicp=sicp(icp_papers, ledger.attributed_papers) if ledger.attributed_papers else None,
        total_citations=total_citations,
        cited_papers=cited,
        pct_cited=100.0 * cited / total if total else None,
        cpp=cpp(total_citations, total) if total else None,
        cppy=cppy(total_citations, [paper_age(r.year, census_year) for r in records]) if total else None,
        gini_publications=safe_gini(pub_values) if pub_values else None,
        gini_citations=safe_gini(cite_values) if cite_values else None,
    )
