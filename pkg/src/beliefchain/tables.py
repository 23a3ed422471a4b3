"""Rendering of belief reports as text, CSV and JSON.

Numbers are rounded half-to-even at display time only.
"""

from __future__ import annotations

import csv
import io
import json
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Sequence

from .propagation import BeliefReport


def fmt(x: float, precision: int) -> str:
    q = Decimal(repr(float(x))).quantize(Decimal(1).scaleb(-precision), rounding=ROUND_HALF_EVEN)
    if q == 0:
        q = abs(q)
    return f"{q:.{precision}f}"


def rounded(x: float, precision: int) -> float:
    return float(fmt(x, precision))


def _align(rows: list[list[str]], right_from: int = 1) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    out = []
    for r in rows:
        cells = [c.ljust(w) if i < right_from else c.rjust(w) for i, (c, w) in enumerate(zip(r, widths))]
        out.append("  ".join(cells).rstrip())
    return "\n".join(out) + "\n"


def report_text(rep: BeliefReport, precision: int, title: str | None = None) -> str:
    rows = [["subset", "m", "bel", "pl"]]
    for r in rep.rows:
        rows.append([str(r.subset), fmt(r.m, precision), fmt(r.bel, precision), fmt(r.pl, precision)])
    head = f"# {title}\n" if title else ""
    return head + _align(rows)


def report_csv(reports: Sequence[tuple[str | None, BeliefReport]], precision: int, lead: str | None = None) -> str:
    """CSV rows ``subset,m,bel,pl``, optionally prefixed by a ``lead`` column."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(([lead] if lead else []) + ["subset", "m", "bel", "pl"])
    for key, rep in reports:
        for r in rep.rows:
            prefix = [key] if lead else []
            w.writerow(prefix + [str(r.subset), fmt(r.m, precision), fmt(r.bel, precision), fmt(r.pl, precision)])
    return buf.getvalue()


def report_obj(rep: BeliefReport, method: str, precision: int) -> dict:
    return {
        "frame": list(rep.frame.names),
        "method": method,
        "conflict": rounded(rep.conflict, precision),
        "rows": [
            {
                "subset": r.subset.labels(),
                "m": rounded(r.m, precision),
                "bel": rounded(r.bel, precision),
                "pl": rounded(r.pl, precision),
            }
            for r in rep.rows
        ],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def compare_text(methods: Sequence[str], reports: Sequence[BeliefReport], differs: Sequence[bool], precision: int) -> str:
    header = ["", "subset"]
    for meth in methods:
        header += [f"{meth}:m", "bel", "pl"]
    rows = [header]
    for i, flag in enumerate(differs):
        row = ["*" if flag else "", str(reports[0].rows[i].subset)]
        for rep in reports:
            r = rep.rows[i]
            row += [fmt(r.m, precision), fmt(r.bel, precision), fmt(r.pl, precision)]
        rows.append(row)
    return _align(rows, right_from=2)


def compare_obj(methods: Sequence[str], reports: Sequence[BeliefReport], differs: Sequence[bool], precision: int) -> dict:
    rows = []
    for i, flag in enumerate(differs):
        row = {"subset": reports[0].rows[i].subset.labels(), "differs": flag}
        for meth, rep in zip(methods, reports):
            r = rep.rows[i]
            row[meth] = {"m": rounded(r.m, precision), "bel": rounded(r.bel, precision), "pl": rounded(r.pl, precision)}
        rows.append(row)
    return {
        "frame": list(reports[0].frame.names),
        "methods": list(methods),
        "conflict": {meth: rounded(rep.conflict, precision) for meth, rep in zip(methods, reports)},
        "rows": rows,
    }
