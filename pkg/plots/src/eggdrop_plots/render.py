"""Render method-comparison curves from the analysis CSV, headlessly.

Input schema (fixed): k,l_exact,T1,T2,T3,T4,sign. The figure shows the
selected series against k with a horizontal zero line; when enabled, the
first sign flip of the exact curve is annotated. Batch tool, no display.
"""

from __future__ import annotations

import argparse
import csv
import pathlib
import sys
from dataclasses import dataclass, field
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .errors import SchemaError  # noqa: E402

EXPECTED_HEADER = ["k", "l_exact", "T1", "T2", "T3", "T4", "sign"]
SERIES_COLUMNS = ("l_exact", "T1", "T2", "T3", "T4")
VALID_SIGNS = {"MethodOneBetter", "MethodTwoBetter", "Tie"}
STYLE_PATH = pathlib.Path(__file__).with_name("style.mplstyle")


@dataclass(frozen=True)
class PlotSpec:
    csv_path: str
    output_path: str
    series: tuple[str, ...] = ("l_exact",)
    x_label: str = "eggs k"
    y_label: str = "bound difference"
    annotate_crossover: bool = True

    def __post_init__(self):
        unknown = [s for s in self.series if s not in SERIES_COLUMNS]
        if unknown:
            raise SchemaError(f"unknown series {unknown}; "
                              f"available: {', '.join(SERIES_COLUMNS)}")
        if not self.series:
            raise SchemaError("at least one series is required")


@dataclass(frozen=True)
class RenderResult:
    output_path: str
    rows: int
    annotation: Optional[str] = None


@dataclass(frozen=True)
class _Table:
    k: list[int] = field(default_factory=list)
    columns: dict = field(default_factory=dict)
    signs: list[str] = field(default_factory=list)


def load_table(csv_path: str) -> _Table:
    """Parse and validate a comparison CSV."""
    try:
        with open(csv_path, newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            rows = list(reader)
    except OSError as exc:
        raise SchemaError(f"cannot read {csv_path}: {exc}") from exc
    if not rows:
        raise SchemaError(f"{csv_path} is empty")
    if rows[0] != EXPECTED_HEADER:
        raise SchemaError(
            f"unexpected header {rows[0]!r}; expected {EXPECTED_HEADER!r}")
    if len(rows) < 2:
        raise SchemaError(f"{csv_path} has no data rows")
    table = _Table(columns={name: [] for name in SERIES_COLUMNS})
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(EXPECTED_HEADER):
            raise SchemaError(f"line {line_no}: expected "
                              f"{len(EXPECTED_HEADER)} cells, got {len(row)}")
        try:
            table.k.append(int(row[0]))
            for name, cell in zip(SERIES_COLUMNS, row[1:6]):
                table.columns[name].append(float(cell))
        except ValueError as exc:
            raise SchemaError(f"line {line_no}: {exc}") from exc
        if row[6] not in VALID_SIGNS:
            raise SchemaError(f"line {line_no}: bad sign {row[6]!r}")
        table.signs.append(row[6])
    if table.k != sorted(table.k):
        raise SchemaError("k column must be increasing")
    return table


def crossover_annotation(table: _Table) -> Optional[str]:
    """Text for the first sign flip, or None (e.g. single-row input)."""
    for previous, current, k in zip(table.signs, table.signs[1:], table.k[1:]):
        if previous != current:
            return f"zero crossing at k={k}"
    return None


def render(spec: PlotSpec) -> RenderResult:
    """Write the figure; returns the annotation actually drawn."""
    table = load_table(spec.csv_path)
    annotation = crossover_annotation(table) if spec.annotate_crossover else None

    with plt.style.context(str(STYLE_PATH)):
        fig, ax = plt.subplots()
        single = len(table.k) == 1
        for name in spec.series:
            values = table.columns[name]
            marker = "o" if single else None
            ax.plot(table.k, values, marker=marker, label=name)
        ax.axhline(0.0, linewidth=0.8, color="#666666", linestyle="--")
        if annotation is not None:
            flip_k = int(annotation.rsplit("=", 1)[1])
            index = table.k.index(flip_k)
            y = table.columns[spec.series[0]][index]
            ax.annotate(annotation, xy=(flip_k, y),
                        xytext=(flip_k, y + 0.6),
                        arrowprops={"arrowstyle": "->"})
        ax.set_xlabel(spec.x_label)
        ax.set_ylabel(spec.y_label)
        ax.legend()
        fig.savefig(spec.output_path)
        plt.close(fig)
    return RenderResult(spec.output_path, rows=len(table.k),
                        annotation=annotation)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="eggdrop-plots",
        description="Render comparison curves from an analysis CSV")
    parser.add_argument("--csv", required=True, help="input comparison CSV")
    parser.add_argument("--out", required=True,
                        help="output image (extension picks the format; "
                             "vector formats like .svg recommended)")
    parser.add_argument("--series", default="l_exact",
                        help="comma-separated: l_exact,T1,T2,T3,T4")
    parser.add_argument("--no-crossover", action="store_true",
                        help="disable the sign-flip annotation")
    args = parser.parse_args(argv)
    try:
        spec = PlotSpec(
            csv_path=args.csv,
            output_path=args.out,
            series=tuple(s.strip() for s in args.series.split(",")),
            annotate_crossover=not args.no_crossover,
        )
        result = render(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    note = result.annotation or "no crossover annotated"
    print(f"{result.output_path}: {result.rows} rows, {note}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
