"""Versioned JSON sweep reports.

The layout is documented in ``docs/report_schema.md``. Floats are written
with Python's shortest round-trip repr, and undefined entries carry
``"value": null`` plus a note, so ``from_json(to_json(doc)) == doc``.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from .core import Dataset
from .indices import IndexValue
from .sweep import SERIES, KSweepTable, Recommendation, SweepConfig

SCHEMA = "ncvalid.sweep-report"
SCHEMA_VERSION = 1


def dataset_hash(dataset: Dataset) -> str:
    """sha256 over the shape and the little-endian float64 coordinates."""
    h = hashlib.sha256()
    h.update(f"{dataset.n}x{dataset.p}".encode())
    h.update(np.ascontiguousarray(dataset.points, dtype="<f8").tobytes())
    return h.hexdigest()


def config_dict(config: SweepConfig) -> dict[str, Any]:
    out = asdict(config)
    out["method"] = str(config.method)
    return out


def config_hash(config: SweepConfig) -> str:
    blob = json.dumps(config_dict(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _entry(v: IndexValue) -> dict[str, Any]:
    return {"value": v.value if v.defined else None, "defined": v.defined, "note": v.note}


@dataclass
class ReportDocument:
    """Everything a sweep produced, keyed for machine reading.

    ``nc`` and ``series`` map ``str(k)`` to value entries; ``peaks`` maps
    each index name to ``[k, value]`` pairs, best first.
    """

    tool_version: str
    dataset: dict[str, Any]
    config: dict[str, Any]
    config_hash: str
    seed: int
    k_values: list[int]
    nc: dict[str, dict[str, Any]]
    series: dict[str, dict[str, dict[str, Any]]]
    peaks: dict[str, list[list[Any]]]
    optima: dict[str, int | None]
    recommendation: dict[str, Any]
    clusterings: dict[str, dict[str, Any]] = field(default_factory=dict)
    schema: str = SCHEMA
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, allow_nan=False)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ReportDocument":
        if data.get("schema") != SCHEMA:
            raise ValueError(f"not a sweep report (schema={data.get('schema')!r})")
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report version {data.get('schema_version')!r}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))

    def value(self, name: str, k: int) -> float:
        """One entry as a float (nan when undefined)."""
        e = (self.nc if name == "NC" else self.series[name])[str(k)]
        return math.nan if e["value"] is None else e["value"]


def build_report(dataset: Dataset, config: SweepConfig, table: KSweepTable,
                 recommendation: Recommendation, source: str | None = None) -> ReportDocument:
    from . import __version__

    names = ("NC",) + SERIES
    return ReportDocument(
        tool_version=__version__,
        dataset={
            "n": dataset.n,
            "p": dataset.p,
            "columns": list(dataset.names) if dataset.names else None,
            "sha256": dataset_hash(dataset),
            "source": source,
        },
        config=config_dict(config),
        config_hash=config_hash(config),
        seed=config.kmeans.seed,
        k_values=list(table.k_values),
        nc={str(k): _entry(v) for k, v in sorted(table.nc.items())},
        series={name: {str(k): _entry(v) for k, v in sorted(table.series[name].items())} for name in SERIES},
        peaks={name: [[k, v] for k, v in table.peaks(name)] for name in names},
        optima={name: table.optimum(name) for name in names},
        recommendation={
            "index": recommendation.index,
            "nc_threshold": recommendation.nc_threshold,
            "candidates": [asdict(c) for c in recommendation.candidates],
        },
        clusterings={
            str(k): {
                "sse": r.sse,
                "iterations": r.iterations,
                "restart_id": r.restart_id,
                "sizes": [int(s) for s in r.partition.sizes],
            }
            for k, r in sorted(table.clusterings.items())
        },
    )


__all__ = ["SCHEMA", "SCHEMA_VERSION", "ReportDocument", "build_report", "config_dict",
           "config_hash", "dataset_hash"]
