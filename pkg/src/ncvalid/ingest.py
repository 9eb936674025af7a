"""Delimited-file loading, z-scoring and the RFM transform for transaction logs."""
from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from datetime import datetime, timedelta
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .core import Dataset, Partition

logger = logging.getLogger(__name__)

DEFAULT_DATE_FORMAT = "%m/%d/%Y %H:%M"
TRANSACTION_COLUMNS = ("InvoiceNo", "CustomerID", "InvoiceDate", "Quantity", "UnitPrice")


class DataError(ValueError):
    """Input data is unreadable or malformed."""


@dataclass(frozen=True)
class TransactionRecord:
    customer_id: str
    invoice_id: str
    invoice_date: datetime
    quantity: int
    unit_price: float

    @property
    def amount(self) -> float:
        return self.quantity * self.unit_price


@dataclass(frozen=True)
class RFMRow:
    customer_id: str
    recency: int
    frequency: int
    monetary: float


@dataclass(frozen=True)
class RFMTable:
    rows: tuple[RFMRow, ...]
    reference_date: datetime
    dropped_records: int = 0
    dropped_customers: int = 0

    @property
    def customer_ids(self) -> list[str]:
        return [r.customer_id for r in self.rows]

    def to_dataset(self) -> Dataset:
        pts = np.array([[r.recency, r.frequency, r.monetary] for r in self.rows], dtype=np.float64)
        return Dataset(pts, names=("recency", "frequency", "monetary"))


def _read_rows(path, delimiter, encoding="utf-8"):
    path = Path(path)
    if not path.is_file():
        raise DataError(f"no such file: {path}")
    with path.open(newline="", encoding=encoding) as fh:
        return [row for row in csv.reader(fh, delimiter=delimiter) if row and any(c.strip() for c in row)]


def _column_index(spec, header, ncols):
    if isinstance(spec, int):
        if not 0 <= spec < ncols:
            raise DataError(f"column index {spec} out of range (file has {ncols} columns)")
        return spec
    if header is None:
        if str(spec).isdigit():
            return _column_index(int(spec), header, ncols)
        raise DataError(f"column {spec!r} named but the file has no header")
    try:
        return header.index(spec)
    except ValueError:
        raise DataError(f"no column named {spec!r}; have {header}") from None


def load_csv(path, delimiter: str = ",", header: bool = True,
             columns: Sequence[str | int] | None = None,
             label_column: str | int | None = None) -> tuple[Dataset, Partition | None]:
    """Read a numeric point table.

    Returns the dataset and, when ``label_column`` is given, the truth
    partition built from that column (ids in order of first appearance).
    Without ``columns`` every column except the label column is used.
    """
    rows = _read_rows(path, delimiter)
    names = None
    if header:
        if not rows:
            raise DataError(f"{path}: empty file")
        names = [c.strip() for c in rows[0]]
        rows = rows[1:]
    if not rows:
        raise DataError(f"{path}: no data rows")
    ncols = len(names) if names is not None else len(rows[0])
    for lineno, row in enumerate(rows, start=2 if header else 1):
        if len(row) != ncols:
            raise DataError(f"{path}: line {lineno} has {len(row)} fields, expected {ncols}")
    label_idx = None if label_column is None else _column_index(label_column, names, ncols)
    if columns is None:
        idx = [j for j in range(ncols) if j != label_idx]
    else:
        idx = [_column_index(c, names, ncols) for c in columns]
    if not idx:
        raise DataError(f"{path}: no numeric columns selected")

    pts = np.empty((len(rows), len(idx)))
    bad = []
    for r, row in enumerate(rows):
        for c, j in enumerate(idx):
            try:
                pts[r, c] = float(row[j])
            except ValueError:
                bad.append(r + (2 if header else 1))
                break
    if bad:
        shown = ", ".join(map(str, bad[:10])) + (" ..." if len(bad) > 10 else "")
        raise DataError(f"{path}: non-numeric values on line(s) {shown}")
    if not np.all(np.isfinite(pts)):
        raise DataError(f"{path}: non-finite values")
    col_names = tuple(names[j] for j in idx) if names is not None else None
    truth = None
    if label_idx is not None:
        truth = Partition.from_values([row[label_idx].strip() for row in rows])
    return Dataset(pts, names=col_names), truth


def write_csv(path, dataset: Dataset, labels=None, label_name: str = "label", precision: int | None = None):
    """Write points (and optionally one label column) with a header row."""
    names = list(dataset.names or [f"x{j}" for j in range(dataset.p)])
    fmt = repr if precision is None else (lambda v: f"{v:.{precision}g}")
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(names + ([label_name] if labels is not None else []))
        for i, row in enumerate(dataset.points):
            vals = [fmt(float(v)) for v in row]
            if labels is not None:
                vals.append(str(labels[i]))
            w.writerow(vals)


def load_iris() -> tuple[Dataset, Partition]:
    """The bundled 150-point iris table with species as truth."""
    with resources.as_file(resources.files("ncvalid") / "data" / "iris.csv") as p:
        ds, truth = load_csv(p, label_column="species")
    return ds, truth


def standardize(dataset: Dataset) -> Dataset:
    """Column z-scores with the n-1 variance divisor."""
    if dataset.n < 2:
        raise DataError("standardizing needs at least 2 points")
    sd = dataset.points.std(axis=0, ddof=1)
    flat = np.flatnonzero(sd == 0)
    if flat.size:
        raise DataError(f"cannot standardize: {dataset.column_name(int(flat[0]))} is constant")
    return Dataset((dataset.points - dataset.points.mean(axis=0)) / sd, names=dataset.names)


def read_transactions(path, delimiter: str = ",", date_format: str = DEFAULT_DATE_FORMAT,
                      encoding: str = "utf-8") -> tuple[list[TransactionRecord], int]:
    """Parse a transaction log; rows without a customer id are dropped and counted."""
    rows = _read_rows(path, delimiter, encoding)
    if not rows:
        raise DataError(f"{path}: empty file")
    header = [c.strip() for c in rows[0]]
    missing = [c for c in TRANSACTION_COLUMNS if c not in header]
    if missing:
        raise DataError(f"{path}: missing column(s) {missing}")
    inv, cust, date, qty, price = (header.index(c) for c in TRANSACTION_COLUMNS)
    records, dropped = [], 0
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise DataError(f"{path}: line {lineno} has {len(row)} fields, expected {len(header)}")
        cid = row[cust].strip()
        if not cid:
            dropped += 1
            continue
        if cid.endswith(".0"):
            cid = cid[:-2]
        try:
            records.append(TransactionRecord(
                customer_id=cid,
                invoice_id=row[inv].strip(),
                invoice_date=datetime.strptime(row[date].strip(), date_format),
                quantity=int(float(row[qty])),
                unit_price=float(row[price]),
            ))
        except ValueError as exc:
            raise DataError(f"{path}: line {lineno}: {exc}") from None
    if dropped:
        logger.info("dropped %d record(s) without a customer id", dropped)
    return records, dropped


def _customer_key(cid: str):
    # numeric ids sort numerically, anything else lexically after them
    try:
        return (0, float(cid), cid)
    except ValueError:
        return (1, 0.0, cid)


def rfm_transform(records: Iterable[TransactionRecord], reference_date: datetime | None = None,
                  drop_cancellations: bool = False, frequency: str = "invoices") -> RFMTable:
    """Aggregate transactions into one recency/frequency/monetary row per customer.

    Recency is whole calendar days from the customer's last purchase to
    ``reference_date`` (default: the latest date in the log plus one day).
    ``frequency="invoices"`` counts distinct invoices with a positive
    quantity; ``"rows"`` counts purchase lines instead. Monetary sums
    quantity x price over every kept record, cancellations included unless
    ``drop_cancellations``. Customers with no positive purchase are dropped.
    """
    if frequency not in ("invoices", "rows"):
        raise ValueError(f"frequency must be 'invoices' or 'rows', got {frequency!r}")
    records = list(records)
    dropped_records = 0
    if drop_cancellations:
        kept = [r for r in records if r.quantity >= 0]
        dropped_records = len(records) - len(kept)
        records = kept
    if not records:
        raise DataError("no valid transaction records")
    if reference_date is None:
        reference_date = max(r.invoice_date for r in records) + timedelta(days=1)

    last: dict[str, datetime] = {}
    invoices: dict[str, set] = {}
    lines: dict[str, int] = {}
    spend: dict[str, float] = {}
    for r in records:
        c = r.customer_id
        spend[c] = spend.get(c, 0.0) + r.amount
        if r.quantity > 0:
            invoices.setdefault(c, set()).add(r.invoice_id)
            lines[c] = lines.get(c, 0) + 1
            if c not in last or r.invoice_date > last[c]:
                last[c] = r.invoice_date

    rows = []
    for c in sorted(spend, key=_customer_key):
        if c not in last:
            continue
        rec = (reference_date.date() - last[c].date()).days
        if rec < 0:
            raise DataError(f"reference date precedes purchases of customer {c}")
        freq = len(invoices[c]) if frequency == "invoices" else lines[c]
        rows.append(RFMRow(customer_id=c, recency=rec, frequency=freq, monetary=spend[c]))
    dropped_customers = len(spend) - len(rows)
    if dropped_customers:
        logger.info("dropped %d customer(s) with no positive purchase", dropped_customers)
    if not rows:
        raise DataError("no customer has a positive purchase")
    return RFMTable(tuple(rows), reference_date, dropped_records, dropped_customers)


def write_rfm(path, table: RFMTable):
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["customer_id", "recency", "frequency", "monetary"])
        for r in table.rows:
            w.writerow([r.customer_id, r.recency, r.frequency, repr(r.monetary)])
