"""File ingestion and report serialization.

Constituent universes arrive as CSV with one of two headers:
``id,market_cap`` or ``id,price,shares``. Rebalance reports are written
as CSV (``# key=value`` summary comments, then one row per constituent)
or JSON (a single object with schema_version, method, params, summary
and rows). All file-bound numbers are rendered at full precision so
reports round-trip exactly; rounding to 6 significant digits is a
console concern only.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import IO, Any, Iterator

from .diagnostics import DiagnosticsReport
from .errors import (
    DuplicateIdentifierError,
    MalformedHeaderError,
    MalformedRowError,
    NonFiniteNumberError,
    WeightSumError,
)
from .weights import Constituent, WeightVector, normalize

SCHEMA_VERSION = 1

UNIVERSE_HEADERS = {
    ("id", "market_cap"): "market_cap",
    ("id", "price", "shares"): "price_shares",
}
REPORT_HEADER = ("id", "weight_before", "weight_after", "delta")
BARE_WEIGHT_HEADER = ("id", "weight")

# External weight files may carry rounded values; renormalize while the
# sum is within this window of 1, reject beyond it.
RENORMALIZE_WINDOW = 1e-3


def _read_text(source: str | Path | IO[str]) -> str:
    if hasattr(source, "read"):
        return source.read()
    return Path(source).read_text(encoding="utf-8")


def _header_cells(row: list[str]) -> tuple[str, ...]:
    return tuple(c.strip().lstrip("﻿").lower() for c in row)


def _parse_number(field: str, row_num: int, column: str) -> float:
    try:
        value = float(field)
    except ValueError:
        raise MalformedRowError(
            f"row {row_num}: {column} value {field!r} is not a number"
        ) from None
    if not math.isfinite(value):
        raise NonFiniteNumberError(
            f"row {row_num}: {column} value {field!r} is not finite"
        )
    return value


def _data_rows(reader: Iterator[list[str]]) -> Iterator[tuple[int, list[str]]]:
    """Non-blank, non-comment rows with their 1-based file row numbers."""
    for row_num, row in enumerate(reader, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if row[0].lstrip().startswith("#"):
            continue
        yield row_num, row


def parse_universe(source: str | Path | IO[str]) -> list[Constituent]:
    """Read a constituent CSV, auto-detecting which schema the header
    declares. Market caps are computed from price and shares when the
    file carries those instead."""
    reader = csv.reader(io.StringIO(_read_text(source)))
    rows = _data_rows(reader)
    try:
        _, header_row = next(rows)
    except StopIteration:
        raise MalformedHeaderError("input is empty; expected a header row") from None
    header = _header_cells(header_row)
    schema = UNIVERSE_HEADERS.get(header)
    if schema is None:
        raise MalformedHeaderError(
            f"unrecognized header {','.join(header)!r}; expected "
            "'id,market_cap' or 'id,price,shares'"
        )

    constituents: list[Constituent] = []
    seen: set[str] = set()
    for row_num, row in rows:
        if len(row) != len(header):
            raise MalformedRowError(
                f"row {row_num}: expected {len(header)} fields, got {len(row)}"
            )
        ident = row[0].strip()
        if not ident:
            raise MalformedRowError(f"row {row_num}: empty identifier")
        if ident in seen:
            raise DuplicateIdentifierError(
                f"row {row_num}: duplicate identifier {ident!r}"
            )
        seen.add(ident)
        if schema == "market_cap":
            cap = _parse_number(row[1], row_num, "market_cap")
            if cap < 0:
                raise MalformedRowError(
                    f"row {row_num}: market_cap must be nonnegative, got {cap!r}"
                )
            constituents.append(Constituent(ident, market_cap=cap))
        else:
            price = _parse_number(row[1], row_num, "price")
            shares = _parse_number(row[2], row_num, "shares")
            if price <= 0:
                raise MalformedRowError(
                    f"row {row_num}: price must be positive, got {price!r}"
                )
            if shares <= 0:
                raise MalformedRowError(
                    f"row {row_num}: shares must be positive, got {shares!r}"
                )
            constituents.append(
                Constituent(ident, price=price, shares_outstanding=shares)
            )
    return constituents


def _fmt(value: Any) -> str:
    """Full-precision rendering for file output."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def report_payload(
    method: str,
    params: dict[str, float],
    mu: WeightVector,
    eta: WeightVector,
    report: DiagnosticsReport,
) -> dict[str, Any]:
    """Assemble the serializable report object, stable field order."""
    after = eta.as_dict()
    rows = [
        {
            "id": ident,
            "weight_before": float(before),
            "weight_after": float(after[ident]),
            "delta": float(after[ident]) - float(before),
        }
        for ident, before in mu.entries
    ]
    summary = {
        "turnover": report.turnover,
        "max_before": report.max_before,
        "max_after": report.max_after,
        "max_increased": report.max_increased,
        "order_violation_count": len(report.order_violations),
        "hhi_before": report.hhi_before,
        "hhi_after": report.hhi_after,
        "top_k_sums": {
            str(k): [b, a] for k, (b, a) in sorted(report.top_k_sums.items())
        },
        "diversity_before": report.diversity_before,
        "diversity_after": report.diversity_after,
    }
    return {
        "schema_version": SCHEMA_VERSION,
        "method": method,
        "params": dict(params),
        "summary": summary,
        "rows": rows,
    }


def render_report_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2) + "\n"


def render_report_csv(payload: dict[str, Any]) -> str:
    buf = io.StringIO()
    buf.write(f"# schema_version={payload['schema_version']}\n")
    buf.write(f"# method={payload['method']}\n")
    for key, value in payload["params"].items():
        buf.write(f"# {key}={_fmt(value)}\n")
    summary = payload["summary"]
    for key, value in summary.items():
        if key == "top_k_sums":
            for k, (before, after) in value.items():
                buf.write(f"# top{k}_before={_fmt(before)}\n")
                buf.write(f"# top{k}_after={_fmt(after)}\n")
        else:
            buf.write(f"# {key}={_fmt(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_HEADER)
    for row in payload["rows"]:
        writer.writerow(
            [
                row["id"],
                _fmt(row["weight_before"]),
                _fmt(row["weight_after"]),
                _fmt(row["delta"]),
            ]
        )
    return buf.getvalue()


def write_report(path: str | Path, payload: dict[str, Any], fmt: str) -> None:
    if fmt == "json":
        text = render_report_json(payload)
    elif fmt == "csv":
        text = render_report_csv(payload)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    Path(path).write_text(text, encoding="utf-8")


def _weights_to_vector(ids: list[str], values: list[float]) -> WeightVector:
    total = sum(values)
    if abs(total - 1.0) >= RENORMALIZE_WINDOW:
        raise WeightSumError(
            f"weights sum to {total!r}; more than {RENORMALIZE_WINDOW} from 1, "
            "refusing to renormalize"
        )
    return WeightVector(tuple(ids), normalize(values))


def _weights_from_report_json(text: str) -> WeightVector:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedHeaderError(f"not valid report JSON: {exc}") from exc
    rows = payload.get("rows") if isinstance(payload, dict) else None
    if not isinstance(rows, list) or not rows:
        raise MalformedHeaderError("report JSON carries no rows")
    ids: list[str] = []
    values: list[float] = []
    for pos, row in enumerate(rows, start=1):
        if not isinstance(row, dict) or "id" not in row or "weight_after" not in row:
            raise MalformedRowError(
                f"report row {pos}: expected 'id' and 'weight_after' fields"
            )
        ids.append(str(row["id"]))
        values.append(float(row["weight_after"]))
    return _weights_to_vector(ids, values)


def read_weight_file(source: str | Path | IO[str]) -> WeightVector:
    """Read per-constituent weights from a report file or a bare CSV.

    Accepts a JSON rebalance report (the weight_after column is used), a
    CSV rebalance report, or a bare ``id,weight`` CSV. Sums within
    ``RENORMALIZE_WINDOW`` of 1 are renormalized; anything further off is
    rejected as a real error rather than rounding noise.
    """
    text = _read_text(source)
    name = str(source) if not hasattr(source, "read") else ""
    stripped = text.lstrip()
    if name.endswith(".json") or stripped.startswith("{"):
        return _weights_from_report_json(text)

    reader = csv.reader(io.StringIO(text))
    rows = _data_rows(reader)
    try:
        _, header_row = next(rows)
    except StopIteration:
        raise MalformedHeaderError("input is empty; expected a header row") from None
    header = _header_cells(header_row)
    if header == REPORT_HEADER:
        weight_col = 2
    elif header == BARE_WEIGHT_HEADER:
        weight_col = 1
    else:
        raise MalformedHeaderError(
            f"unrecognized weight-file header {','.join(header)!r}; expected "
            "'id,weight' or 'id,weight_before,weight_after,delta'"
        )
    ids: list[str] = []
    values: list[float] = []
    seen: set[str] = set()
    for row_num, row in rows:
        if len(row) != len(header):
            raise MalformedRowError(
                f"row {row_num}: expected {len(header)} fields, got {len(row)}"
            )
        ident = row[0].strip()
        if not ident:
            raise MalformedRowError(f"row {row_num}: empty identifier")
        if ident in seen:
            raise DuplicateIdentifierError(
                f"row {row_num}: duplicate identifier {ident!r}"
            )
        seen.add(ident)
        value = _parse_number(row[weight_col], row_num, "weight")
        if value < 0:
            raise MalformedRowError(
                f"row {row_num}: weight must be nonnegative, got {value!r}"
            )
        ids.append(ident)
        values.append(value)
    if not ids:
        raise MalformedHeaderError("weight file carries no rows")
    return _weights_to_vector(ids, values)
