"""Two-component PCA for plot-ready coordinates."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Dataset


@dataclass(frozen=True)
class Projection:
    coords: np.ndarray
    explained: np.ndarray
    components: np.ndarray


def project_pca2(dataset: Dataset) -> Projection:
    """Project onto the top two eigenvectors of the sample covariance.

    The covariance uses the n-1 divisor. Each component is signed so its
    largest-magnitude loading is positive. ``explained`` holds the share of
    total variance per component (zeros when the data are constant).
    """
    if dataset.p < 2:
        raise ValueError(f"PCA projection needs p >= 2, got p={dataset.p}")
    if dataset.n < 2:
        raise ValueError("PCA projection needs at least 2 points")
    X = dataset.points - dataset.points.mean(axis=0)
    cov = X.T @ X / (dataset.n - 1)
    evals, evecs = np.linalg.eigh(cov)
    order = np.argsort(evals)[::-1][:2]
    evals = np.clip(evals[order], 0.0, None)
    comps = evecs[:, order].T.copy()
    for row in comps:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1
    total = float(np.clip(np.linalg.eigvalsh(cov), 0.0, None).sum())
    explained = evals / total if total > 0 else np.zeros(2)
    return Projection(coords=X @ comps.T, explained=explained, components=comps)


__all__ = ["Projection", "project_pca2"]
