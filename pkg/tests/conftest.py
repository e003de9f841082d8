from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).resolve().parent
sys.path.insert(0, str(TESTS_DIR))  # for `import oracles`

from scimetrics import clean_corpus, deduplicate, filter_records, load_rules, parse_corpus
from scimetrics.countries import bundled_data_path, default_country_table
from scimetrics.crediting import build_ledger

GOLDEN_DIR = TESTS_DIR / "data" / "golden"


@pytest.fixture(scope="session")
def corpus_path() -> Path:
    return bundled_data_path("sample_corpus.csv")


@pytest.fixture(scope="session")
def rules_path() -> Path:
    return bundled_data_path("sample_rules.txt")


@pytest.fixture(scope="session")
def country_table():
    return default_country_table()


@pytest.fixture(scope="session")
def raw_records(corpus_path):
    return parse_corpus(corpus_path).records


@pytest.fixture(scope="session")
def analyzed_records(corpus_path, rules_path, country_table):
    """Deduplicated, filtered, cleaned records of the bundled corpus."""
    records, _ = deduplicate(parse_corpus(corpus_path).records)
    records = filter_records(records)
    rules = load_rules(rules_path, country_table)
    cleaned, _ = clean_corpus(records, rules, country_table)
    return cleaned


@pytest.fixture(scope="session")
def ledger(analyzed_records):
    return build_ledger(analyzed_records)


def golden(name: str):
    path = GOLDEN_DIR / name
    if name.endswith(".json"):
        return json.loads(path.read_text())
    return path.read_text()
