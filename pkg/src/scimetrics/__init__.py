"""scimetrics: macro-level bibliometric analysis of publication corpora.

Pipeline: parse bibliographic records, clean author affiliations to country
codes, assign fractional country credit, compute output/impact/inequality
indicators, aggregate by country groups, and analyze the country
co-authorship network (betweenness, communities, force-directed layout).
"""

from .cleaning import CleaningReport, CleaningRules, clean_author, clean_corpus, load_rules
from .corpus import (
    BiblioRecord,
    CorpusStats,
    corpus_stats,
    deduplicate,
    filter_records,
    parse_corpus,
    write_corpus,
)
from .crediting import (
    Collaboration,
    CreditLedger,
    build_ledger,
    classify_collaboration,
    country_fractions,
    export_ledger,
)
from .grouping import GroupScheme, aggregate_by_group, group_country_table, load_scheme
from .indicators import (
    cagr,
    cpp,
    cppy,
    gini,
    ncrr,
    rgi,
    ricr,
    sicp,
    simpson_diversity,
    world_summary,
)
from .pipeline import RunConfig, run_pipeline
from .subjects import corpus_sid, subject_distribution

__version__ = "0.1.0"
