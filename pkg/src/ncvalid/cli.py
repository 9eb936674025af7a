"""Command-line driver: ``ncvalid generate|sweep|rfm|cost``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical
degeneracy (NC, and with it NCI1/NCI2, undefined for every swept k).
"""
from __future__ import annotations

import csv
import logging
import sys
from datetime import datetime
from pathlib import Path

import click

from . import __version__
from .core import ContractError, Dataset
from .cost import INDEX_NAMES, LINEAR, cost_table, time_indices
from .datagen import SCENARIOS
from .ingest import DataError, load_csv, load_iris, read_transactions, rfm_transform, standardize, write_csv, write_rfm
from .kmeans import KMeansConfig
from .projection import project_pca2
from .report import build_report, config_hash
from .sweep import SERIES, SweepConfig, recommend, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_DEGENERATE = 0, 1, 2, 3

logger = logging.getLogger("ncvalid")


class DegeneracyError(RuntimeError):
    """Nothing defined came out of a sweep."""


def _seed_option(f):
    return click.option("--seed", type=int, default=0, show_default=True, help="Master seed.")(f)


@click.group()
@click.version_option(__version__, prog_name="ncvalid")
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def cli(verbose):
    """Correlation-based cluster validity analysis."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(levelname)s %(message)s")


@cli.command()
@click.argument("scenario", type=click.Choice(sorted(SCENARIOS)))
@_seed_option
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="CSV to write.")
def generate(scenario, seed, out):
    """Write a synthetic SCENARIO dataset with its truth labels."""
    ld = SCENARIOS[scenario](seed=seed)
    ds = ld.dataset
    names = ("x", "y") if ds.p == 2 else None
    if names:
        ds = Dataset(ds.points, names=names)
    write_csv(out, ds, labels=ld.truth.labels, label_name="label")
    click.echo(f"{scenario}: n={ds.n} p={ds.p} sizes={[int(s) for s in ld.truth.sizes]} seed={seed} -> {out}")


def _load_points(data, delimiter, no_header, columns, label_column):
    if data == "iris" and not Path(data).exists():
        ds, _ = load_iris()
        return ds
    cols = [c.strip() for c in columns.split(",")] if columns else None
    if cols and no_header:
        cols = [int(c) for c in cols]
    ds, _ = load_csv(data, delimiter=delimiter, header=not no_header, columns=cols, label_column=label_column)
    return ds


def _write_series(out_dir: Path, table):
    names = ("NC",) + SERIES
    with (out_dir / "series.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k"] + list(names))
        for k in table.k_values:
            w.writerow([k] + [repr(table.get(n, k).value) if table.get(n, k).defined else "" for n in names])
    sdir = out_dir / "series"
    sdir.mkdir(exist_ok=True)
    for name in names:
        fname = name.replace("*", "star").lower()
        with (sdir / f"{fname}.csv").open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["k", "value"])
            for k in table.k_values:
                v = table.get(name, k)
                w.writerow([k, repr(v.value) if v.defined else ""])


def _write_labels(out_dir: Path, table):
    ldir = out_dir / "labels"
    ldir.mkdir(exist_ok=True)
    for k, res in sorted(table.clusterings.items()):
        with (ldir / f"k{k}.csv").open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["point", "label"])
            w.writerows(enumerate(res.partition.labels.tolist()))


def _write_pca(out_dir: Path, ds):
    proj = project_pca2(ds)
    with (out_dir / "pca.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["pc1", "pc2"])
        w.writerows([repr(float(a)), repr(float(b))] for a, b in proj.coords)
    return proj


@cli.command()
@click.argument("data")
@_seed_option
@click.option("--kmin", type=int, default=2, show_default=True)
@click.option("--kmax", type=int, default=9, show_default=True)
@click.option("--restarts", type=int, default=50, show_default=True, help="k-means restarts per k.")
@click.option("--corr", type=click.Choice(["pearson", "spearman", "kendall"]), default="pearson", show_default=True)
@click.option("--standardize", "do_standardize", is_flag=True, help="z-score columns (n-1 divisor) first.")
@click.option("--nc-threshold", type=float, default=0.8, show_default=True)
@click.option("--index", "rank_index", type=click.Choice(["NCI1", "NCI2"]), default="NCI1", show_default=True)
@click.option("--out", type=click.Path(file_okay=False), required=True, help="Output directory.")
@click.option("--delimiter", default=",", show_default=True)
@click.option("--no-header", is_flag=True, help="The file has no header row.")
@click.option("--columns", default=None, help="Comma-separated feature columns (default: all but the label).")
@click.option("--label-column", default=None, help="Column to exclude from features (e.g. truth labels).")
@click.option("--jobs", type=int, default=1, show_default=True, help="Worker threads.")
def sweep(data, seed, kmin, kmax, restarts, corr, do_standardize, nc_threshold, rank_index, out,
          delimiter, no_header, columns, label_column, jobs):
    """Cluster DATA (a CSV path, or 'iris') for every k and score all indices."""
    try:
        cfg = SweepConfig(kmin=kmin, kmax=kmax, method=corr, nc_threshold=nc_threshold, n_jobs=jobs,
                          kmeans=KMeansConfig(k=2, restarts=restarts, seed=seed))
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    ds = _load_points(data, delimiter, no_header, columns, label_column)
    if do_standardize:
        ds = standardize(ds)
    if kmax + 1 > ds.n:
        raise click.UsageError(f"kmax+1={kmax + 1} exceeds the {ds.n} points in {data}")

    table = run_sweep(ds, cfg)
    rec = recommend(table, rank_index, nc_threshold)
    if not any(table.nc[k].defined for k in table.k_values):
        # SC and SF keep convention values on coincident data, so gate on NC
        raise DegeneracyError("NC is undefined for every k (all points coincide?)")

    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    doc = build_report(ds, cfg, table, rec, source=str(data))
    (out_dir / "report.json").write_text(doc.to_json())
    _write_series(out_dir, table)
    _write_labels(out_dir, table)
    if ds.p >= 2:
        _write_pca(out_dir, ds)

    click.echo(f"seed={seed} config_hash={config_hash(cfg)} n={ds.n} p={ds.p}")
    click.echo(f"{'k':>3} {'NC':>8} {rank_index:>10}")
    for k in table.k_values:
        v = table.get(rank_index, k)
        click.echo(f"{k:>3} {table.nc[k].value:8.3f} {v.value if v.defined else float('nan'):10.3f}")
    for c in rec.candidates:
        gate = "ok" if c.nc_ok else f"below {nc_threshold}"
        click.echo(f"candidate k={c.k} {rank_index}={c.value:.3f} NC={c.nc:.3f} ({gate})")
    click.echo(f"report -> {out_dir / 'report.json'}")


@cli.command()
@click.argument("transactions", type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="RFM CSV to write.")
@click.option("--delimiter", default=",", show_default=True)
@click.option("--date-format", default="%m/%d/%Y %H:%M", show_default=True)
@click.option("--reference-date", default=None, help="YYYY-MM-DD (default: last invoice date + 1 day).")
@click.option("--drop-cancellations", is_flag=True, help="Ignore negative-quantity rows entirely.")
@click.option("--frequency", type=click.Choice(["invoices", "rows"]), default="invoices", show_default=True)
def rfm(transactions, out, delimiter, date_format, reference_date, drop_cancellations, frequency):
    """Aggregate a TRANSACTIONS log into one RFM row per customer."""
    ref = None
    if reference_date:
        try:
            ref = datetime.strptime(reference_date, "%Y-%m-%d")
        except ValueError:
            raise click.UsageError(f"--reference-date must be YYYY-MM-DD, got {reference_date!r}") from None
    records, dropped = read_transactions(transactions, delimiter=delimiter, date_format=date_format)
    table = rfm_transform(records, reference_date=ref, drop_cancellations=drop_cancellations, frequency=frequency)
    write_rfm(out, table)
    click.echo(f"{len(table.rows)} customers; dropped {dropped} record(s) without id, "
               f"{table.dropped_customers} customer(s) without purchases -> {out}")


@cli.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--p", "p", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--timing", is_flag=True, help="Also time each index on random data of that size.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="CSV to write (default stdout).")
def cost(n, p, k, timing, out):
    """Operation counts for every index at (n, p, k)."""
    try:
        rows = cost_table(n, p, k)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    secs = time_indices(n, p, k) if timing else None
    fh = open(out, "w", newline="") if out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "multiplications", "square_roots", "exponentials", "growth"]
                   + (["seconds"] if timing else []))
        for name in INDEX_NAMES:
            c = rows[name]
            row = [name, f"{c.multiplications:g}", f"{c.square_roots:g}", f"{c.exponentials:g}",
                   "linear" if name in LINEAR else "quadratic"]
            if timing:
                row.append(f"{secs[name]:.6g}")
            w.writerow(row)
    finally:
        if out:
            fh.close()


def main(argv=None) -> int:
    """Run the CLI and map failures to exit codes."""
    try:
        cli.main(args=argv, prog_name="ncvalid", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except (DataError, ContractError, ValueError) as exc:
        click.echo(f"data error: {exc}", err=True)
        return EXIT_DATA
    except DegeneracyError as exc:
        click.echo(f"degenerate: {exc}", err=True)
        return EXIT_DEGENERATE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
