"""CSV tables: writing command output and reading reference datasets.

Every table starts with ``#`` comment lines (provenance and notes), then a
header row, then data rows. Numbers are written with ``repr`` so they
round-trip exactly and never depend on the locale.

Column names carry their unit as the last underscore-separated token when it
is a known unit (``g_m``, ``l_m_H``, ``v_rotor_V``); other columns are
dimensionless (``n_adjusted``, ``gap_share``).
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path

from .analysis import ReferenceDataset

UNITS = {"m", "mm", "H", "mH", "uH", "V", "Hz", "ohm", "deg", "dB"}
DIMENSIONLESS = "1"


def parse_column(name):
    """Split a column name into ``(quantity, unit)``."""
    head, sep, tail = name.rpartition("_")
    if sep and head and tail in UNITS:
        return head, tail
    return name, DIMENSIONLESS


def format_value(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (int,)) and not isinstance(v, bool):
        return str(v)
    v = float(v)
    if math.isnan(v):
        return ""
    return repr(v)


def render_csv(header, rows, comments=()):
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def write_csv(path, header, rows, comments=()):
    text = render_csv(header, rows, comments)
    Path(path).write_text(text, encoding="utf-8", newline="")
    return text


def _data_lines(text):
    comments, data = [], []
    for line in text.splitlines():
        if line.startswith("#"):
            comments.append(line[1:].strip())
        elif line.strip():
            data.append(line)
    return comments, data


def read_reference_csv(path):
    """Load every value column of a CSV table as a :class:`ReferenceDataset`.

    The first column is the abscissa. Returns a dict keyed by quantity name.
    Empty cells are skipped; a column left without points is dropped.
    """
    path = Path(path)
    comments, data = _data_lines(path.read_text(encoding="utf-8"))
    if not data:
        raise ValueError(f"{path}: no header row")
    reader = csv.reader(data)
    header = next(reader)
    rows = list(reader)
    x_qty, x_unit = parse_column(header[0])
    provenance = "; ".join(c for c in comments if not c.startswith("skipped"))
    out = {}
    for j, name in enumerate(header[1:], start=1):
        qty, unit = parse_column(name)
        xs, vs = [], []
        for row in rows:
            if j < len(row) and row[0].strip() and row[j].strip():
                xs.append(float(row[0]))
                vs.append(float(row[j]))
        if xs:
            out[qty] = ReferenceDataset(label=f"{path.stem}:{qty}", x=xs, values=vs,
                                        unit=unit, x_unit=x_unit, provenance=provenance)
    return out
