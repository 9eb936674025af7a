"""Correlation-based cluster validity: NC, NCI1, NCI2 and nine baselines."""
__version__ = "0.1.0"

from .core import ContractError, Dataset, Partition, centroids, condensed_index
from .cost import OperationCounts, cost_estimate
from .indices import IndexValue, baseline_indices, nc, nci1, nci2
from .kernels import BACKEND
from .kmeans import KMeansConfig, KMeansResult, kmeans_multistart
from .metrics import CorrelationMethod, centroid_pair_vector, correlate, pairwise_distances
from .sweep import KSweepTable, PeakList, Recommendation, SweepConfig, find_peaks, recommend, run_sweep

__all__ = [
    "__version__",
    "BACKEND",
    "ContractError",
    "CorrelationMethod",
    "Dataset",
    "IndexValue",
    "KMeansConfig",
    "KMeansResult",
    "KSweepTable",
    "OperationCounts",
    "Partition",
    "PeakList",
    "Recommendation",
    "SweepConfig",
    "baseline_indices",
    "centroid_pair_vector",
    "centroids",
    "condensed_index",
    "correlate",
    "cost_estimate",
    "find_peaks",
    "kmeans_multistart",
    "nc",
    "nci1",
    "nci2",
    "pairwise_distances",
    "recommend",
    "run_sweep",
]
