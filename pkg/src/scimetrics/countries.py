"""Master country table: ISO 3166-1 alpha-2 codes and display names.

Every country code that appears in cleaning rules, grouping schemes, or a
cleaned corpus must exist here; the bundled ``data/countries.csv`` is the
reference copy and can be extended by pointing loaders at another file.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path


@dataclass(frozen=True)
class CountryTable:
    name_by_code: dict[str, str]
    code_by_name: dict[str, str]  # casefolded name -> code

    @property
    def codes(self) -> frozenset[str]:
        return frozenset(self.name_by_code)

    def __contains__(self, code: str) -> bool:
        return code in self.name_by_code

    def name(self, code: str) -> str:
        return self.name_by_code.get(code, code)

    def resolve_text(self, text: str) -> str | None:
        """Map free country text to a code: canonical name or the code itself."""
        cleaned = " ".join(text.split()).strip(" .").casefold()
        if not cleaned:
            return None
        code = self.code_by_name.get(cleaned)
        if code:
            return code
        upper = cleaned.upper()
        if len(upper) == 2 and upper in self.name_by_code:
            return upper
        return None


def load_country_table(path: str | Path) -> CountryTable:
    name_by_code: dict[str, str] = {}
    code_by_name: dict[str, str] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [c.strip().lower() for c in header] != ["code", "name"]:
            raise ValueError(f"{path}: expected header 'code,name'")
        for row in reader:
            if not row or row[0].lstrip().startswith("#"):
                continue
            code, name = row[0].strip().upper(), row[1].strip()
            name_by_code[code] = name
            code_by_name[name.casefold()] = code
    return CountryTable(name_by_code, code_by_name)


def bundled_data_path(filename: str) -> Path:
    return Path(str(resources.files("scimetrics.data").joinpath(filename)))


_default: CountryTable | None = None


def default_country_table() -> CountryTable:
    global _default
    if _default is None:
        _default = load_country_table(bundled_data_path("countries.csv"))
    return _default
