"""Seeded synthetic scenarios: near pairs, triads, density contrasts, mixed shapes.

Every scenario is a list of :class:`ClusterSpec` sampled in order from one
``numpy.random.default_rng(seed)`` stream. Pass ``specs=`` to override the
default geometry.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Dataset, Partition


@dataclass(frozen=True)
class ClusterSpec:
    """One generated cluster.

    ``shape="disk"`` uses ``radius``; ``shape="ellipse"`` uses ``semi_axes``
    rotated by ``angle`` radians. ``law="uniform"`` fills the shape evenly;
    ``law="gaussian"`` draws normals whose per-axis standard deviation is
    ``spread`` times the radius / semi-axis.
    """

    center: tuple[float, ...]
    count: int
    shape: str = "disk"
    radius: float = 1.0
    semi_axes: tuple[float, float] | None = None
    angle: float = 0.0
    law: str = "uniform"
    spread: float = 0.5

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("cluster count must be >= 1")
        if self.shape not in ("disk", "ellipse"):
            raise ValueError(f"unknown shape {self.shape!r}")
        if self.law not in ("uniform", "gaussian"):
            raise ValueError(f"unknown law {self.law!r}")
        if self.shape == "disk" and not self.radius > 0:
            raise ValueError("radius must be > 0")
        if self.shape == "ellipse":
            if self.semi_axes is None or min(self.semi_axes) <= 0:
                raise ValueError("ellipse needs positive semi_axes")
            if len(self.center) != 2:
                raise ValueError("ellipses are two-dimensional")

    @property
    def axes(self) -> np.ndarray:
        p = len(self.center)
        if self.shape == "disk":
            return np.full(p, float(self.radius))
        return np.asarray(self.semi_axes, dtype=np.float64)

    def rotation(self) -> np.ndarray:
        p = len(self.center)
        if self.shape != "ellipse":
            return np.eye(p)
        c, s = math.cos(self.angle), math.sin(self.angle)
        return np.array([[c, -s], [s, c]])

    def contains(self, points, slack: float = 1e-12) -> np.ndarray:
        """Whether points fall inside the (rotated) shape."""
        local = (np.asarray(points) - np.asarray(self.center)) @ self.rotation()
        return ((local / self.axes) ** 2).sum(axis=1) <= 1.0 + slack


@dataclass(frozen=True)
class LabeledDataset:
    dataset: Dataset
    truth: Partition
    specs: tuple[ClusterSpec, ...] = ()


def _unit_ball(rng, count, p):
    # rejection from the bounding cube
    out = np.empty((0, p))
    while out.shape[0] < count:
        need = count - out.shape[0]
        cand = rng.uniform(-1.0, 1.0, size=(2 * need + 8, p))
        cand = cand[(cand ** 2).sum(axis=1) <= 1.0]
        out = np.vstack([out, cand[:need]])
    return out


def sample_cluster(spec: ClusterSpec, rng: np.random.Generator) -> np.ndarray:
    p = len(spec.center)
    if spec.law == "uniform":
        local = _unit_ball(rng, spec.count, p) * spec.axes
    else:
        local = rng.normal(0.0, 1.0, size=(spec.count, p)) * (spec.spread * spec.axes)
    return local @ spec.rotation().T + np.asarray(spec.center, dtype=np.float64)


def generate(specs: Sequence[ClusterSpec], seed: int = 0) -> LabeledDataset:
    rng = np.random.default_rng(seed)
    blocks = [sample_cluster(s, rng) for s in specs]
    labels = np.repeat(np.arange(len(specs)), [s.count for s in specs])
    return LabeledDataset(Dataset(np.vstack(blocks)), Partition(labels, len(specs)), tuple(specs))


def scenario1_specs(pair_gap: float = 2.2, pair_distance: float = 3.0) -> list[ClusterSpec]:
    # two horizontal pairs stacked vertically; with unit disks the Dunn
    # values at k=2 and k=4 are about 0.24 and 0.1
    g, G = pair_gap, pair_distance
    centers = [(0.0, 0.0), (g, 0.0), (0.0, G), (g, G)]
    return [ClusterSpec(center=c, count=250) for c in centers]


def scenario2_specs(spacing: float = 3.8, hub_distance: float = 22.0) -> list[ClusterSpec]:
    # three collinear triads on an equilateral triangle, each pointing away
    # from the triangle's centre
    H = hub_distance
    hubs = [(0.0, 0.0), (H, 0.0), (H / 2, H * math.sqrt(3) / 2)]
    cx, cy = H / 2, H * math.sqrt(3) / 6
    out = []
    for hx, hy in hubs:
        a = math.atan2(hy - cy, hx - cx)
        for t in (-spacing, 0.0, spacing):
            out.append(ClusterSpec(center=(hx + t * math.cos(a), hy + t * math.sin(a)), count=50))
    return out


def scenario3a_specs() -> list[ClusterSpec]:
    return [ClusterSpec(center=(x, 0.0), count=c) for x, c in ((0.0, 300), (4.0, 50), (8.0, 300))]


def scenario3b_specs() -> list[ClusterSpec]:
    return [
        ClusterSpec(center=(0.0, 0.0), count=300),
        ClusterSpec(center=(4.0, 0.0), count=20, radius=0.5),
        ClusterSpec(center=(8.0, 0.0), count=300),
    ]


def scenario4_specs() -> list[ClusterSpec]:
    return [
        ClusterSpec(center=(0.0, 0.0), count=100, law="gaussian", radius=1.0, spread=0.4),
        ClusterSpec(center=(6.0, 0.0), count=100, law="gaussian", radius=1.5, spread=0.4),
        ClusterSpec(center=(0.0, 7.0), count=100, shape="ellipse", semi_axes=(2.5, 0.8), angle=math.pi / 6),
        ClusterSpec(center=(7.0, 7.0), count=100, shape="ellipse", semi_axes=(2.0, 0.6), angle=-math.pi / 4),
        ClusterSpec(center=(3.5, 13.0), count=100, radius=1.2),
    ]


def scenario1(seed: int = 0, specs=None) -> LabeledDataset:
    """Four uniform disks of 250 points: two near pairs far apart."""
    return generate(scenario1_specs() if specs is None else specs, seed)


def scenario2(seed: int = 0, specs=None) -> LabeledDataset:
    """Nine uniform disks of 50 points grouped in three distant triads."""
    return generate(scenario2_specs() if specs is None else specs, seed)


def scenario3a(seed: int = 0, specs=None) -> LabeledDataset:
    """Three equal disks with 300, 50 and 300 points."""
    return generate(scenario3a_specs() if specs is None else specs, seed)


def scenario3b(seed: int = 0, specs=None) -> LabeledDataset:
    """Three disks with 300, 20 and 300 points; the sparse one has half the radius."""
    return generate(scenario3b_specs() if specs is None else specs, seed)


def scenario4(seed: int = 0, specs=None) -> LabeledDataset:
    """Five groups of 100: gaussian blobs, rotated ellipses and a uniform disk."""
    return generate(scenario4_specs() if specs is None else specs, seed)


SCENARIOS = {
    "scenario1": scenario1,
    "scenario2": scenario2,
    "scenario3a": scenario3a,
    "scenario3b": scenario3b,
    "scenario4": scenario4,
}
