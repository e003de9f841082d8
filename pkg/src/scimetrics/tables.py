"""Report table rendering: CSV always, aligned Markdown on request.

Formatting conventions (fixed at report time only): credits and rates to two
decimals, Gini/SID to three, missing values as ``n/a``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

NA = "n/a"


def fmt2(value: float | None) -> str:
    return NA if value is None else f"{value:.2f}"


def fmt3(value: float | None) -> str:
    return NA if value is None else f"{value:.3f}"


@dataclass(frozen=True)
class Table:
    name: str                 # output file stem, e.g. "yearly"
    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        writer.writerows(self.rows)
        return buf.getvalue()

    def to_markdown(self) -> str:
        widths = [len(h) for h in self.header]
        for row in self.rows:
            for i, cell in enumerate(row):
                widths[i] = max(widths[i], len(cell))
        def line(cells):
            return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"
        out = [line(self.header), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
        out.extend(line(row) for row in self.rows)
        return "\n".join(out) + "\n"
