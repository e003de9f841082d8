from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from conftest import golden
from scimetrics.corpus import AffiliationEntry, BiblioRecord
from scimetrics.crediting import (
    Collaboration,
    build_ledger,
    classify_collaboration,
    country_fractions,
    export_ledger,
)


def record(rec_id, countries, citations=0, year=2005):
    """Record whose authors resolve to the given country codes (None = unresolved)."""
    return BiblioRecord(
        id=rec_id,
        year=year,
        doc_type="article",
        citations=citations,
        author_names=tuple(f"A{i}" for i in range(len(countries))),
        author_affils=tuple((AffiliationEntry(f"Uni {i}"),) for i in range(len(countries))),
        subject_areas=frozenset(),
        author_countries=tuple(countries),
    )


def test_fractions_split_by_author_share():
    assert country_fractions(record("P", ["CN", "CN", "US"])) == {
        "CN": Fraction(2, 3),
        "US": Fraction(1, 3),
    }


def test_fraction_single_author():
    assert country_fractions(record("P", ["JP"])) == {"JP": Fraction(1)}


def test_fraction_unresolved_only_is_empty():
    assert country_fractions(record("P", [None, None])) == {}


def test_unresolved_authors_not_in_denominator():
    assert country_fractions(record("P", ["CN", None])) == {"CN": Fraction(1)}


@given(st.lists(st.sampled_from(["CN", "US", "JP", "DE", None]), min_size=1, max_size=12))
def test_fractions_sum_to_one_exactly(countries):
    fractions = country_fractions(record("P", countries))
    if any(c is not None for c in countries):
        assert sum(fractions.values()) == 1
    else:
        assert fractions == {}


def test_classification():
    assert classify_collaboration(record("P", ["CN", "US"])) is Collaboration.INTERNATIONAL
    assert classify_collaboration(record("P", ["CN", "CN"])) is Collaboration.SINGLE_COUNTRY
    assert classify_collaboration(record("P", [None])) is Collaboration.UNATTRIBUTED


def test_build_ledger_hand_arithmetic():
    ledger = build_ledger(
        [record("P1", ["CN"], citations=10), record("P2", ["CN", "US"], citations=4)]
    )
    assert ledger.pub_credit == {"CN": 1.5, "US": 0.5}
    assert ledger.cite_credit == {"CN": 12.0, "US": 2.0}
    assert ledger.paper_count == {"CN": 2, "US": 1}
    assert ledger.icp_count == {"CN": 1, "US": 1}
    assert ledger.attributed_papers == 2
    assert ledger.attributed_citations == 14


def test_build_ledger_empty():
    ledger = build_ledger([])
    assert ledger.pub_credit == {}
    assert ledger.attributed_papers == 0


def test_uncited_counts_whole_papers():
    ledger = build_ledger([record("P1", ["CN", "US"], citations=0), record("P2", ["CN"], citations=3)])
    assert ledger.uncited_count == {"CN": 1, "US": 1}


def test_ledger_matches_oracle_golden(ledger):
    expected = golden("ledger.csv").splitlines()[1:]
    got = [
        f"{c},{ledger.pub_credit[c]:.4f},{ledger.cite_credit[c]:.4f},"
        f"{ledger.paper_count[c]},{ledger.icp_count[c]},{ledger.uncited_count[c]}"
        for c in ledger.countries
    ]
    assert got == expected


def test_conservation_exact(analyzed_records, ledger):
    attributed = [r for r in analyzed_records if r.distinct_countries()]
    assert abs(sum(ledger.pub_credit.values()) - len(attributed)) < 1e-9
    assert abs(
        sum(ledger.cite_credit.values()) - sum(r.citations for r in attributed)
    ) < 1e-9


def test_ledger_order_independent(analyzed_records, ledger):
    for seed in (1, 2, 3):
        shuffled = list(analyzed_records)
        random.Random(seed).shuffle(shuffled)
        other = build_ledger(shuffled)
        assert other.pub_credit == ledger.pub_credit  # bit-identical floats
        assert other.cite_credit == ledger.cite_credit
        assert other.paper_count == ledger.paper_count
        assert other.icp_count == ledger.icp_count
        assert other.uncited_count == ledger.uncited_count


def test_international_iff_multi_country_icp(analyzed_records, ledger):
    for rec in analyzed_records:
        contributes = sum(
            1 for c in rec.distinct_countries() if ledger.icp_count.get(c, 0) > 0
        )
        if ledger.collab_class[rec.id] is Collaboration.INTERNATIONAL:
            assert len(rec.distinct_countries()) >= 2
            assert contributes >= 2


def test_export_ledger_format(tmp_path, ledger):
    out = tmp_path / "ledger.csv"
    export_ledger(ledger, out)
    lines = out.read_text().splitlines()
    assert lines[0] == "country,pub_credit,cite_credit,paper_count,icp_count,uncited_count"
    assert lines[1:] == golden("ledger.csv").splitlines()[1:]
