"""End-to-end analysis pipeline: corpus file in, report bundle out.

Every output is rendered in memory first and written in one final step, so a
failing run leaves no partial bundle behind. Nothing in the bundle depends on
wall-clock time: identical config + inputs + seed give identical bytes.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from . import cleaning, corpus, crediting, grouping, indicators, subjects
from .countries import CountryTable, default_country_table
from .network import (
    betweenness,
    build_graph,
    filter_by_degree,
    fit_unit_square,
    kamada_kawai_layout,
    louvain,
    render_graphml,
    render_pajek,
)
from .network.graph import with_attributes
from .tables import NA, Table, fmt2, fmt3

DEFAULT_DOC_TYPES = ("article", "conference_paper", "review")


class InputError(Exception):
    """Bad or missing input (exit code 1)."""


class InternalInvariantViolation(Exception):
    """A pipeline consistency check failed (exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    corpus_path: Path
    rules_path: Path | None = None
    scheme_paths: tuple[tuple[str, Path], ...] = ()
    study_window: tuple[int, int] = (1998, 2012)
    census_year: int = 2013
    doc_type_filter: tuple[str, ...] = DEFAULT_DOC_TYPES
    min_degree: int = 12
    seed: int = 0
    output_dir: Path = Path("out")
    output_format: str = "csv"
    top_threshold: float = 1000.0
    subjects_filter: Path | None = None

    def validate(self) -> None:
        start, end = self.study_window
        if start > end:
            raise InputError(f"window start {start} after end {end}")
        if self.census_year < end:
            raise InputError(f"census year {self.census_year} before window end {end}")
        if self.output_format not in ("csv", "markdown"):
            raise InputError(f"unknown output format {self.output_format!r}")
        if self.min_degree < 0:
            raise InputError("min-degree must be >= 0")

    def echo(self) -> dict:
        return {
            "corpus_path": str(self.corpus_path),
            "rules_path": str(self.rules_path) if self.rules_path else None,
            "scheme_paths": {name: str(path) for name, path in self.scheme_paths},
            "study_window": list(self.study_window),
            "census_year": self.census_year,
            "doc_type_filter": list(self.doc_type_filter),
            "min_degree": self.min_degree,
            "seed": self.seed,
            "output_dir": str(self.output_dir),
            "output_format": self.output_format,
            "top_threshold": self.top_threshold,
            "subjects_filter": str(self.subjects_filter) if self.subjects_filter else None,
        }


@dataclass
class RunResult:
    output_dir: Path
    files: list[Path] = field(default_factory=list)
    summary: indicators.WorldSummary | None = None
    ledger: crediting.CreditLedger | None = None


def _pct_or_none(num: int, den: int) -> float | None:
    return 100.0 * num / den if den else None


def yearly_table(records: list[corpus.BiblioRecord], window: tuple[int, int]) -> Table:
    """Whole-count output and citation impact per year (one row per window year)."""
    tp = Counter(r.year for r in records)
    tc: Counter = Counter()
    cited: Counter = Counter()
    for r in records:
        tc[r.year] += r.citations
        if r.citations > 0:
            cited[r.year] += 1
    rows = []
    for year in range(window[0], window[1] + 1):
        n = tp.get(year, 0)
        rows.append(
            (
                str(year),
                str(n),
                str(tc.get(year, 0)),
                fmt2(tc.get(year, 0) / n if n else None),
                fmt2(_pct_or_none(cited.get(year, 0), n)),
            )
        )
    return Table("yearly", ("year", "tp", "tc", "cpp", "pct_cited"), tuple(rows))


def five_year_blocks(
    records: list[corpus.BiblioRecord],
    ledger: crediting.CreditLedger,
    window: tuple[int, int],
) -> Table:
    """ICP/TP shares over five-year blocks; a short final block takes the remainder."""
    start, end = window
    rows = []
    block_start = start
    while block_start <= end:
        block_end = min(block_start + 4, end)
        in_block = [r for r in records if block_start <= r.year <= block_end]
        icp = sum(
            1
            for r in in_block
            if ledger.collab_class.get(r.id) is crediting.Collaboration.INTERNATIONAL
        )
        rows.append(
            (
                f"{block_start}-{block_end}",
                str(icp),
                str(len(in_block)),
                fmt2(_pct_or_none(icp, len(in_block))),
            )
        )
        block_start = block_end + 1
    return Table("blocks", ("block", "icp", "tp", "icp_pct"), tuple(rows))


def collab_split(records: list[corpus.BiblioRecord], ledger: crediting.CreditLedger) -> Table:
    """International vs single-country output; unattributed papers excluded."""
    buckets = {
        crediting.Collaboration.INTERNATIONAL: [],
        crediting.Collaboration.SINGLE_COUNTRY: [],
    }
    for r in records:
        kind = ledger.collab_class.get(r.id)
        if kind in buckets:
            buckets[kind].append(r)
    rows = []
    for label, kind in (
        ("International Collaboration", crediting.Collaboration.INTERNATIONAL),
        ("Single Country", crediting.Collaboration.SINGLE_COUNTRY),
    ):
        group = buckets[kind]
        tp = len(group)
        tc = sum(r.citations for r in group)
        cited = sum(1 for r in group if r.citations > 0)
        rows.append(
            (label, str(tp), str(tc), fmt2(tc / tp if tp else None), fmt2(_pct_or_none(cited, tp)))
        )
    return Table("collab_vs_national", ("type", "tp", "tc", "cpp", "pct_cited"), tuple(rows))


def _country_yearly_counts(records: list[corpus.BiblioRecord]) -> dict[str, Counter]:
    counts: dict[str, Counter] = defaultdict(Counter)
    for r in records:
        for code in r.distinct_countries():
            counts[code][r.year] += 1
    return counts


def country_growth(
    yearly: Counter, window: tuple[int, int]
) -> float | None:
    """CAGR between the country's first and last active years inside the window."""
    years = sorted(y for y, n in yearly.items() if n > 0 and window[0] <= y <= window[1])
    if len(years) < 2 or years[0] == years[-1]:
        return None
    try:
        return indicators.cagr(yearly[years[0]], yearly[years[-1]], years[-1] - years[0] + 1)
    except indicators.IndicatorError:
        return None


def top_country_tables(
    records: list[corpus.BiblioRecord],
    ledger: crediting.CreditLedger,
    summary: indicators.WorldSummary,
    window: tuple[int, int],
    threshold: float,
    countries: CountryTable,
) -> tuple[Table, Table]:
    """Output and citation-impact tables for countries with TP above the threshold."""
    world_tp = sum(ledger.pub_credit.values())
    world_tc = sum(ledger.cite_credit.values())
    world_uncited = 100.0 - summary.pct_cited if summary.pct_cited is not None else None
    yearly = _country_yearly_counts(records)
    chosen = [c for c in ledger.countries if ledger.pub_credit[c] > threshold]
    chosen.sort(key=lambda c: (-ledger.pub_credit[c], c))
    out_rows = []
    cite_rows = []
    for code in chosen:
        tp = ledger.pub_credit[code]
        tc = ledger.cite_credit[code]
        papers = ledger.paper_count[code]
        share_icp = indicators.sicp(ledger.icp_count[code], papers) if papers else None
        rate = country_growth(yearly[code], window)
        rel_growth = None
        if rate is not None and summary.cagr:
            rel_growth = indicators.rgi(rate, summary.cagr)
        rel_collab = None
        if share_icp is not None and summary.sicp:
            rel_collab = indicators.ricr(share_icp, summary.sicp)
        uncited_pct = _pct_or_none(ledger.uncited_count[code], papers)
        non_cite_rate = None
        if uncited_pct is not None and world_uncited:
            non_cite_rate = indicators.ncrr(uncited_pct, world_uncited)
        name = countries.name(code)
        out_rows.append(
            (
                name,
                fmt2(tp),
                fmt2(100.0 * tp / world_tp if world_tp else None),
                str(ledger.icp_count[code]),
                fmt2(share_icp),
                fmt2(rel_collab),
                fmt2(rate * 100.0 if rate is not None else None),
                fmt2(rel_growth),
            )
        )
        cite_rows.append(
            (
                name,
                fmt2(tc),
                fmt2(100.0 * tc / world_tc if world_tc else None),
                fmt2(tc / tp if tp else None),
                fmt2(non_cite_rate),
            )
        )
    output = Table(
        "top_countries",
        ("country", "tp", "world_share", "icp", "sicp", "ricr", "growth_pct", "rgi"),
        tuple(out_rows),
    )
    impact = Table(
        "top_countries_citations",
        ("country", "tc", "citation_share", "cpp", "ncrr"),
        tuple(cite_rows),
    )
    return output, impact


def summary_table(summary: indicators.WorldSummary, sid: float | None = None) -> Table:
    rows = (
        ("total_papers", str(summary.total_papers)),
        ("cagr_pct", fmt2(summary.cagr * 100.0 if summary.cagr is not None else None)),
        ("countries_involved", str(summary.countries_involved)),
        ("papers_with_country", str(summary.papers_with_country)),
        (
            "papers_with_country_pct",
            fmt2(_pct_or_none(summary.papers_with_country, summary.total_papers)),
        ),
        ("international_papers", str(summary.icp_papers)),
        ("sicp_pct", fmt2(summary.sicp)),
        ("total_citations", str(summary.total_citations)),
        ("cited_papers", str(summary.cited_papers)),
        ("cited_papers_pct", fmt2(summary.pct_cited)),
        ("cpp", fmt2(summary.cpp)),
        ("cppy", fmt2(summary.cppy)),
        ("gini_publications", fmt3(summary.gini_publications)),
        ("gini_citations", fmt3(summary.gini_citations)),
        ("simpson_diversity", fmt3(sid)),
    )
    return Table("summary", ("metric", "value"), rows)


def group_table(scheme: grouping.GroupScheme, ledger: crediting.CreditLedger,
                world: grouping.WorldRates, countries: CountryTable) -> Table:
    """Aggregate table for multi-group schemes, member table for country sets."""
    if scheme.is_country_set():
        members = set(scheme.assignment)
        rows = tuple(
            (
                countries.name(r.country) if r.country != "Total" else "Total",
                fmt2(r.tp),
                fmt2(r.world_share),
                fmt2(r.cpp),
                fmt2(r.sicp),
                fmt2(r.ricr),
                fmt2(r.ncrr),
            )
            for r in grouping.group_country_table(ledger, members, world)
        )
        return Table(
            f"group_{scheme.name}",
            ("country", "tp", "world_share", "cpp", "sicp", "ricr", "ncrr"),
            rows,
        )
    rows = tuple(
        (
            r.group,
            str(r.member_count),
            fmt2(r.tp),
            fmt2(r.tc),
            fmt2(r.cpp),
            fmt2(r.world_share),
            fmt3(r.gini_within),
            countries.name(r.leading_country) if r.leading_country else NA,
        )
        for r in grouping.aggregate_by_group(ledger, scheme)
    )
    return Table(
        f"group_{scheme.name}",
        ("group", "countries", "tp", "tc", "cpp", "world_share", "gini_publications", "leading_country"),
        rows,
    )


def _analyze_network(records, ledger, config):
    graph = build_graph(records)
    filtered = filter_by_degree(graph, config.min_degree)
    if filtered.n_vertices:
        scores = betweenness(filtered)
        communities = louvain(filtered, seed=config.seed)
        layout = fit_unit_square(kamada_kawai_layout(filtered, seed=config.seed))
    else:
        scores, communities, layout = {}, {}, {}
    return with_attributes(
        filtered, betweenness=scores, community=communities, position=layout
    )


def _check_conservation(records, ledger) -> None:
    attributed = [r for r in records if r.distinct_countries()]
    pub_total = sum(ledger.pub_credit.values())
    cite_total = sum(ledger.cite_credit.values())
    if abs(pub_total - len(attributed)) > 1e-9:
        raise InternalInvariantViolation(
            f"publication credit {pub_total!r} != attributed papers {len(attributed)}"
        )
    expected_cites = sum(r.citations for r in attributed)
    if abs(cite_total - expected_cites) > 1e-9:
        raise InternalInvariantViolation(
            f"citation credit {cite_total!r} != attributed citations {expected_cites}"
        )


def run_pipeline(config: RunConfig) -> RunResult:
    """Execute the full analysis and write the report bundle.

    Raises InputError for unusable inputs and InternalInvariantViolation when
    a consistency check fails; in both cases nothing is written.
    """
    config.validate()
    if not Path(config.corpus_path).is_file():
        raise InputError(f"corpus file not found: {config.corpus_path}")
    countries = default_country_table()

    try:
        parsed = corpus.parse_corpus(config.corpus_path)
    except corpus.CorpusError as exc:
        raise InputError(str(exc)) from exc
    deduped, duplicates = corpus.deduplicate(parsed.records)
    records = corpus.filter_records(deduped, config.study_window, config.doc_type_filter)

    if config.rules_path is not None:
        if not Path(config.rules_path).is_file():
            raise InputError(f"rules file not found: {config.rules_path}")
        try:
            rules = cleaning.load_rules(config.rules_path, countries)
        except cleaning.RulesFileInvalid as exc:
            raise InputError(str(exc)) from exc
    else:
        rules = cleaning.CleaningRules.empty()
    records, cleaning_report = cleaning.clean_corpus(records, rules, countries)

    ledger = crediting.build_ledger(records)
    _check_conservation(records, ledger)
    summary = indicators.world_summary(records, ledger, config.study_window, config.census_year)
    world = grouping.world_rates(
        ledger,
        summary.sicp,
        100.0 - summary.pct_cited if summary.pct_cited is not None else None,
    )

    allow = None
    if config.subjects_filter is not None:
        if not Path(config.subjects_filter).is_file():
            raise InputError(f"subjects filter not found: {config.subjects_filter}")
        allow = subjects.load_allow_list(config.subjects_filter)
    dist = subjects.subject_distribution(records, allow)
    try:
        sid = subjects.corpus_sid(dist)
    except indicators.IndicatorError:
        sid = None

    tables: list[Table] = [
        summary_table(summary, sid),
        yearly_table(records, config.study_window),
        five_year_blocks(records, ledger, config.study_window),
        collab_split(records, ledger),
    ]
    for name, path in config.scheme_paths:
        if not Path(path).is_file():
            raise InputError(f"scheme file not found: {path}")
        try:
            scheme = grouping.load_scheme(path, countries, name=name)
        except grouping.SchemeError as exc:
            raise InputError(str(exc)) from exc
        tables.append(group_table(scheme, ledger, world, countries))
    out_tbl, cite_tbl = top_country_tables(
        records, ledger, summary, config.study_window, config.top_threshold, countries
    )
    tables.extend([out_tbl, cite_tbl])

    subject_rows = tuple((s, str(n)) for s, n in dist.counts.items())
    tables.append(Table("subjects", ("subject_area", "count"), subject_rows))

    graph = _analyze_network(records, ledger, config)

    # render everything before touching the filesystem
    outputs: dict[str, str] = {}
    for table in tables:
        outputs[f"{table.name}.csv"] = table.to_csv()
        if config.output_format == "markdown":
            outputs[f"{table.name}.md"] = table.to_markdown()
    ledger_rows = "\n".join(
        f"{c},{ledger.pub_credit[c]:.4f},{ledger.cite_credit[c]:.4f},"
        f"{ledger.paper_count[c]},{ledger.icp_count[c]},{ledger.uncited_count[c]}"
        for c in ledger.countries
    )
    outputs["ledger.csv"] = (
        "country,pub_credit,cite_credit,paper_count,icp_count,uncited_count\n"
        + (ledger_rows + "\n" if ledger_rows else "")
    )
    outputs["network.net"] = render_pajek(graph)
    outputs["network.graphml"] = render_graphml(graph)

    manifest = {
        "config": config.echo(),
        "diagnostics": {
            "rows_skipped": len(parsed.skipped),
            "duplicates_removed": duplicates,
            "records_analyzed": len(records),
            "cleaning": cleaning_report.as_dict(),
        },
        "outputs": {
            name: hashlib.sha256(content.encode("utf-8")).hexdigest()
            for name, content in sorted(outputs.items())
        },
    }
    outputs["manifest.json"] = json.dumps(manifest, indent=2, sort_keys=True) + "\n"

    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    result = RunResult(output_dir=out_dir, summary=summary, ledger=ledger)
    written: list[Path] = []
    try:
        for name in sorted(outputs):
            path = out_dir / name
            path.write_text(outputs[name], encoding="utf-8", newline="\n")
            written.append(path)
    except OSError:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    result.files = written
    return result
