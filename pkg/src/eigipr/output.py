"""CSV and SVG export with locale-independent, round-trip precision.

Numeric fields are printed with 17 significant digits so parsing them back
recovers the exact double.  Writers remove their partial file when the write
fails; the path ``'-'`` means standard output.
"""

from __future__ import annotations

import csv
import sys
from contextlib import contextmanager
from pathlib import Path

from .core import EigRecord, double_factorial_odd, factorial

__all__ = [
    "read_records_csv",
    "write_density_csv",
    "write_records_csv",
    "write_svg_scatter",
]


def _fmt(v):
    return format(float(v), ".17g")


@contextmanager
def _sink(path):
    if path == "-":
        yield sys.stdout
        return
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh
    except BaseException:
        path.unlink(missing_ok=True)
        raise


def _record_header(q_set):
    head = ["trial", "idx", "re_lambda", "im_lambda", "is_real"]
    head += [f"ipr_q{q}" for q in q_set]
    head.append("residual")
    return head


def write_records_csv(records, path, q_set=None):
    """Write eigenvalue records as CSV.

    Header: ``trial,idx,re_lambda,im_lambda,is_real,ipr_q<q>...,residual``
    with one ``ipr_q<q>`` column per requested order.  ``q_set`` defaults to
    the orders stored in the first record.
    """
    if q_set is None:
        q_set = sorted(records[0].ipr) if records else ()
    q_set = tuple(sorted(int(q) for q in q_set))
    with _sink(path) as fh:
        writer = csv.writer(fh)
        writer.writerow(_record_header(q_set))
        for rec in records:
            row = [
                rec.trial_id,
                rec.idx,
                _fmt(rec.re_lambda),
                _fmt(rec.im_lambda),
                1 if rec.is_real_eig else 0,
            ]
            row += [_fmt(rec.ipr[q]) for q in q_set]
            row.append(_fmt(rec.residual))
            writer.writerow(row)


def read_records_csv(path):
    """Parse a records CSV back into `EigRecord` objects."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        q_cols = [(i, int(name[len("ipr_q") :])) for i, name in enumerate(header) if name.startswith("ipr_q")]
        records = []
        for row in reader:
            records.append(
                EigRecord(
                    trial_id=int(row[0]),
                    idx=int(row[1]),
                    re_lambda=float(row[2]),
                    im_lambda=float(row[3]),
                    is_real_eig=row[4] == "1",
                    ipr={q: float(row[i]) for i, q in q_cols},
                    residual=float(row[-1]),
                )
            )
    return records


def write_density_csv(grid, values, path, value_name="density"):
    """Write a ``x,density`` (or ``x,<value_name>``) table as CSV."""
    with _sink(path) as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", value_name])
        for x, v in zip(grid, values):
            writer.writerow([_fmt(x), _fmt(v)])


def write_column_csv(values, path, name="value"):
    """Write a single-column CSV of samples."""
    with _sink(path) as fh:
        writer = csv.writer(fh)
        writer.writerow([name])
        for v in values:
            writer.writerow([_fmt(v)])


def write_table_csv(columns, rows, path):
    """Write a list of dict rows as CSV with the given column order."""
    with _sink(path) as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow(
                [row[c] if isinstance(row[c], int) else _fmt(row[c]) for c in columns]
            )


# Three-stop linear color map (dark violet -> teal -> yellow); cosmetic only.
_STOPS = ((68, 1, 84), (33, 145, 140), (253, 231, 37))


def _color(t):
    t = min(max(t, 0.0), 1.0)
    if t <= 0.5:
        lo, hi, u = _STOPS[0], _STOPS[1], 2.0 * t
    else:
        lo, hi, u = _STOPS[1], _STOPS[2], 2.0 * t - 1.0
    return "#%02x%02x%02x" % tuple(round(a + (b - a) * u) for a, b in zip(lo, hi))


def write_svg_scatter(records, q, path, size=640, point_radius=2.0):
    """Self-contained SVG scatter of eigenvalues colored by their order-``q`` IPR.

    The color scale is linear in the IPR, clipped to ``[q!, (2q-1)!!]``: the
    delocalized floor maps to dark violet, the real-axis ceiling to yellow.
    """
    q = int(q)
    lo, hi = factorial(q), double_factorial_odd(q)
    pts = [(rec.re_lambda, rec.im_lambda, rec.ipr[q]) for rec in records]
    if not pts:
        raise ValueError("no records to plot")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-30) * 1.05
    cx = 0.5 * (max(xs) + min(xs))
    cy = 0.5 * (max(ys) + min(ys))
    margin = 20.0
    scale = (size - 2 * margin) / span

    def to_px(x, y):
        return (
            0.5 * size + (x - cx) * scale,
            0.5 * size - (y - cy) * scale,
        )

    with _sink(path) as fh:
        fh.write(
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">\n'
            f'<rect width="{size}" height="{size}" fill="white"/>\n'
        )
        y0 = to_px(0.0, 0.0)[1]
        if 0.0 <= y0 <= size:
            fh.write(
                f'<line x1="0" y1="{y0:.2f}" x2="{size}" y2="{y0:.2f}" '
                'stroke="#cccccc" stroke-width="1"/>\n'
            )
        for x, y, val in pts:
            px, py = to_px(x, y)
            col = _color((val - lo) / (hi - lo))
            fh.write(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="{point_radius}" fill="{col}"/>\n')
        fh.write(
            f'<rect x="0.5" y="0.5" width="{size - 1}" height="{size - 1}" '
            'fill="none" stroke="#444444"/>\n'
        )
        fh.write("</svg>\n")
