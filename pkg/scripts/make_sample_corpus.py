#!/usr/bin/env python3
"""Regenerate the bundled sample corpus and cleaning rules (seeded, reproducible).

Writes src/scimetrics/data/sample_corpus.csv and sample_rules.txt. The corpus
is synthetic but deliberately messy: alias country spellings, a wrong-country
affiliation needing correction, society memberships, institutions without a
country, duplicate ids, malformed rows, out-of-window years, and document
types outside the default filter.
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "scimetrics" / "data"
SEED = 42
N_GENERATED = 190

COUNTRY_WEIGHTS = {
    "CN": 28, "US": 20, "JP": 14, "DE": 11, "GB": 9, "FR": 8, "IN": 8,
    "KR": 7, "IT": 6, "RU": 6, "ES": 5, "CA": 5, "CH": 4, "AU": 4,
    "SE": 3, "NL": 3, "PL": 3, "TR": 3, "BR": 3, "IR": 3, "TW": 3,
    "AT": 2, "SG": 2, "MY": 2, "TH": 2, "UA": 2, "VN": 1, "ID": 1,
    "EG": 1, "MX": 1, "ZA": 1, "NG": 1, "PK": 1, "BD": 1, "CO": 1,
    "AR": 1, "CL": 1, "EC": 1, "GR": 1, "PT": 1,
}

INSTITUTIONS = {
    "CN": ["Tsinghua University, Beijing", "Lanzhou Institute of Chemical Physics, Lanzhou",
           "Wuhan University of Technology, Wuhan", "Harbin Institute of Technology, Harbin"],
    "US": ["Northwestern University, Evanston, IL", "University of California, Berkeley, CA",
           "Argonne National Laboratory, Argonne, IL", "Georgia Institute of Technology, Atlanta, GA"],
    "JP": ["Tohoku University, Sendai", "Kyoto University, Kyoto", "Tokyo Institute of Technology, Tokyo"],
    "DE": ["Karlsruhe Institute of Technology, Karlsruhe", "RWTH Aachen University, Aachen",
           "Fraunhofer IWM, Freiburg"],
    "GB": ["Imperial College London, London", "University of Leeds, Leeds", "University of Sheffield, Sheffield"],
    "FR": ["Ecole Centrale de Lyon, Ecully", "INSA Lyon, Villeurbanne"],
    "IN": ["Indian Institute of Technology Madras, Chennai", "Indian Institute of Science, Bangalore"],
    "KR": ["KAIST, Daejeon", "Seoul National University, Seoul"],
    "IT": ["Politecnico di Torino, Turin", "University of Bologna, Bologna"],
    "RU": ["Moscow State University, Moscow", "Institute for Problems in Mechanics RAS, Moscow"],
    "ES": ["Universidad Carlos III de Madrid, Madrid", "CSIC Institute of Materials, Sevilla"],
    "CA": ["University of Waterloo, Waterloo, ON", "University of British Columbia, Vancouver"],
    "CH": ["ETH Zurich, Zurich", "EMPA, Duebendorf"],
    "AU": ["University of New South Wales, Sydney", "Monash University, Melbourne"],
    "SE": ["Lulea University of Technology, Lulea", "Uppsala University, Uppsala"],
    "NL": ["University of Twente, Enschede", "Delft University of Technology, Delft"],
    "PL": ["Gdansk University of Technology, Gdansk", "AGH University, Krakow"],
    "TR": ["Istanbul Technical University, Istanbul", "Middle East Technical University, Ankara"],
    "BR": ["University of Sao Paulo, Sao Paulo", "Federal University of Santa Catarina, Florianopolis"],
    "IR": ["Sharif University of Technology, Tehran", "University of Tehran, Tehran"],
    "TW": ["National Taiwan University, Taipei", "National Cheng Kung University, Tainan"],
    "AT": ["Graz University of Technology, Graz", "AC2T Research GmbH, Wiener Neustadt"],
    "SG": ["National University of Singapore, Singapore", "Nanyang Technological University, Singapore"],
    "MY": ["University of Malaya, Kuala Lumpur", "Universiti Teknologi Malaysia, Johor Bahru"],
    "TH": ["Chulalongkorn University, Bangkok", "King Mongkut's University of Technology, Bangkok"],
    "UA": ["National Technical University KhPI, Kharkiv", "Sumy State University, Sumy"],
    "VN": ["Hanoi University of Science and Technology, Hanoi"],
    "ID": ["Institut Teknologi Bandung, Bandung"],
    "EG": ["Cairo University, Giza", "Minia University, Minia"],
    "MX": ["UNAM, Mexico City", "CINVESTAV, Queretaro"],
    "ZA": ["University of Cape Town, Cape Town", "University of Pretoria, Pretoria"],
    "NG": ["University of Lagos, Lagos"],
    "PK": ["NUST, Islamabad"],
    "BD": ["Bangladesh University of Engineering and Technology, Dhaka"],
    "CO": ["Universidad Nacional de Colombia, Bogota"],
    "AR": ["Universidad Nacional de La Plata, La Plata"],
    "CL": ["Universidad de Chile, Santiago"],
    "EC": ["Escuela Politecnica Nacional, Quito"],
    "GR": ["Aristotle University of Thessaloniki, Thessaloniki"],
    "PT": ["University of Coimbra, Coimbra", "Instituto Superior Tecnico, Lisbon"],
}

# country text as it appears at the end of the affiliation; non-canonical
# spellings are resolved through the [aliases] section of the rules file
COUNTRY_TEXTS = {
    "CN": ["China", "China", "China", "P.R. China"],
    "US": ["United States", "USA", "USA", "U.S.A."],
    "GB": ["United Kingdom", "UK", "England"],
    "KR": ["South Korea", "Republic of Korea"],
    "RU": ["Russian Federation", "Russia"],
    "VN": ["Vietnam", "Viet Nam"],
}

SUBJECT_POOL = [
    ("Engineering", 48),
    ("Materials Science", 40),
    ("Physics and Astronomy", 18),
    ("Chemistry", 12),
    ("Chemical Engineering", 10),
    ("Energy", 6),
    ("Computer Science", 4),
    ("Mathematics", 2),
]

SURNAMES = [
    "Wang", "Li", "Zhang", "Chen", "Liu", "Smith", "Johnson", "Brown", "Mueller",
    "Schmidt", "Tanaka", "Suzuki", "Kim", "Park", "Kumar", "Singh", "Rossi",
    "Ivanov", "Petrov", "Garcia", "Martinez", "Dubois", "Martin", "Silva",
    "Santos", "Novak", "Kowalski", "Yilmaz", "Nguyen", "Hansen", "Larsson",
]

YEAR_WEIGHTS = {
    1998: 5, 1999: 5, 2000: 6, 2001: 6, 2002: 7, 2003: 8, 2004: 9, 2005: 10,
    2006: 11, 2007: 12, 2008: 14, 2009: 16, 2010: 18, 2011: 19, 2012: 17,
}


def weighted_choice(rng: random.Random, table: dict) -> str:
    items = list(table.items())
    total = sum(w for _, w in items)
    pick = rng.uniform(0, total)
    acc = 0.0
    for key, weight in items:
        acc += weight
        if pick <= acc:
            return key
    return items[-1][0]


def country_text(rng: random.Random, code: str, names: dict[str, str]) -> str:
    variants = COUNTRY_TEXTS.get(code)
    return rng.choice(variants) if variants else names[code]


def affiliation(rng: random.Random, code: str, names: dict[str, str]) -> str:
    return f"{rng.choice(INSTITUTIONS[code])}, {country_text(rng, code, names)}"


def pick_countries(rng: random.Random) -> list[str]:
    if rng.random() < 0.36:  # internationally collaborative paper
        k = rng.choice([2, 2, 2, 3, 3, 4])
        chosen: list[str] = []
        while len(chosen) < k:
            code = weighted_choice(rng, COUNTRY_WEIGHTS)
            if code not in chosen:
                chosen.append(code)
        return chosen
    return [weighted_choice(rng, COUNTRY_WEIGHTS)]


def citations_for(rng: random.Random, year: int) -> int:
    if rng.random() < 0.24:
        return 0
    age = 2013 - year
    return min(rng.randrange(1, 4 + 3 * age), 120)


def subjects_for(rng: random.Random) -> str:
    n = rng.choice([1, 2, 2, 2, 3])
    chosen: list[str] = []
    while len(chosen) < n:
        s = weighted_choice(rng, dict(SUBJECT_POOL))
        if s not in chosen:
            chosen.append(s)
    return ";".join(chosen)


def load_names() -> dict[str, str]:
    names = {}
    with open(DATA_DIR / "countries.csv", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        next(reader)
        for code, name in reader:
            names[code] = name
    return names


def generated_rows(rng: random.Random, names: dict[str, str]) -> list[list[str]]:
    rows = []
    for i in range(1, N_GENERATED + 1):
        year = weighted_choice(rng, YEAR_WEIGHTS)
        countries = pick_countries(rng)
        n_authors = rng.choice([1, 2, 2, 3, 3, 3, 4, 5, 6])
        n_authors = max(n_authors, len(countries))
        authors = []
        for a in range(n_authors):
            code = countries[a] if a < len(countries) else rng.choice(countries)
            name = f"{rng.choice(SURNAMES)}, {chr(65 + rng.randrange(26))}."
            authors.append(f"{name}|{affiliation(rng, code, names)}")
        doc_type = rng.choices(
            ["article", "conference_paper", "review"], weights=[70, 25, 5]
        )[0]
        rows.append(
            [
                f"T{i:04d}",
                str(year),
                doc_type,
                str(citations_for(rng, year)),
                ";".join(authors),
                subjects_for(rng),
            ]
        )
    return rows


def special_rows() -> list[list[str]]:
    """Hand-written rows exercising each cleaning rule and parser edge case."""
    return [
        # multi-affiliation author: primary wins, secondary discarded
        ["SP001", "2006", "article", "14",
         "Maier, M.|Institute for Materials Science, Graz University of Technology, Graz, Austria"
         "|Department of Materials Engineering, University of British Columbia, Vancouver, Canada",
         "Engineering;Materials Science"],
        # wrong country on the affiliation, fixed by a correction rule
        ["SP002", "2004", "article", "22",
         "Lowell, M.|Department of Industrial Engineering, University of Wisconsin-Milwaukee, Milwaukee, WI 53201, India",
         "Engineering"],
        # professional association listed second, discarded
        ["SP003", "2008", "article", "9",
         "Sasaki, S.|National Institute of Advanced Industrial Science and Technology (AIST), Tsukuba, Japan"
         "|American Ceramic Society, United States;Chen, W.|Tsinghua University, Beijing, China",
         "Materials Science;Chemistry"],
        # no country text at all, resolved through the institution lookup
        ["SP004", "2010", "article", "5",
         "Nakamura, E.|Toyota Motor Corporation;Tanaka, H.|Tohoku University, Sendai, Japan",
         "Engineering;Energy"],
        # society listed FIRST, real affiliation second
        ["SP005", "2009", "conference_paper", "3",
         "Greene, P.|Institution of Mechanical Engineers, Park Ridge, IL, USA"
         "|Northwestern University, Evanston, IL, USA",
         "Engineering"],
        # unresolvable affiliation: counted as authored, no country credit
        ["SP006", "2011", "article", "1",
         "Doe, J.|Independent Researcher;Wang, F.|Tsinghua University, Beijing, China",
         "Engineering;Materials Science"],
        # society-only author stays unresolved; co-author carries the paper
        ["SP007", "2007", "review", "30",
         "Hardy, K.|ASME International, New York, NY, USA;Novak, J.|Czech Technical University, Prague, Czech Republic",
         "Engineering;Physics and Astronomy"],
        # no author resolves: the paper counts toward world totals only
        ["UNA01", "2003", "article", "6", "Doe, R.|Independent Researcher", "Engineering"],
        ["UNA02", "2010", "conference_paper", "0",
         "Poe, E.|Private Engineering Consultancy;Grey, B.|Friction Testing Services",
         "Engineering;Materials Science"],
        ["UNA03", "2012", "article", "2", "Nameonly, A.", "Materials Science"],
    ]


def defect_rows() -> list[list[str]]:
    return [
        # malformed: skipped by the parser with diagnostics
        ["BAD01", "19x9", "article", "4", "Kim, J.|KAIST, Daejeon, South Korea", "Engineering"],
        ["BAD02", "2005", "article", "seven", "Li, Q.|Tsinghua University, Beijing, China", "Engineering"],
        ["BAD03", "2006", "article", "-3", "Roy, A.|Indian Institute of Science, Bangalore, India", "Engineering"],
        # outside the study window: parsed, then filtered
        ["OLD01", "1996", "article", "40", "Smith, T.|University of Leeds, Leeds, UK", "Engineering"],
        ["NEW01", "2013", "article", "0", "Park, S.|Seoul National University, Seoul, South Korea", "Engineering"],
        # document types outside the default filter: parsed as 'other'
        ["DOC01", "2005", "book_chapter", "8", "Mueller, K.|RWTH Aachen University, Aachen, Germany", "Engineering"],
        ["DOC02", "2009", "editorial", "0", "Rossi, L.|Politecnico di Torino, Turin, Italy", "Engineering"],
    ]


RULES_TEXT = """\
# Affiliation cleaning rules for the bundled sample corpus.
# Grammar: docs/rules_format.md. Four CSV sections, '#' starts a comment.

[aliases]
text,code
USA,US
U.S.A.,US
UK,GB
England,GB
P.R. China,CN
Republic of Korea,KR
Russia,RU
Viet Nam,VN
Czech Republic,CZ

[corrections]
pattern,claimed,code
University of Wisconsin-Milwaukee,IN,US

[societies]
pattern
American Ceramic Society
Institution of Mechanical Engineers
ASME International
Institute of Physics

[lookup]
pattern,code
Toyota Motor,JP
Robert Bosch,DE
"""


def main() -> None:
    rng = random.Random(SEED)
    names = load_names()
    rows = generated_rows(rng, names)
    rows.extend(special_rows())
    # duplicates: re-emit three earlier rows verbatim
    rows.append(rows[10])
    rows.append(rows[57])
    rows.append(rows[123])
    rows.extend(defect_rows())
    corpus_path = DATA_DIR / "sample_corpus.csv"
    with open(corpus_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "year", "doc_type", "citations", "author_affiliations", "subject_areas"])
        writer.writerows(rows)
    (DATA_DIR / "sample_rules.txt").write_text(RULES_TEXT, encoding="utf-8")
    print(f"wrote {corpus_path} ({len(rows)} data rows)")


if __name__ == "__main__":
    main()
