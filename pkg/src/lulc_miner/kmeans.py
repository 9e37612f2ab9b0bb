"""Lloyd-style K-means on RGB feature points.

Minimizes the within-cluster sum of squares by alternating nearest-mean
assignment (lowest-index ties) and centroid updates. Initialization comes
from the user's seed colors; there is no random restart, so results are
fully deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError

DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 100


@dataclass(frozen=True)
class KMeansResult:
    means: np.ndarray  # (k, 3)
    assignments: np.ndarray  # (n,) int32
    wcss: float
    iterations: int
    converged: bool


def wcss(points: np.ndarray, assignments: np.ndarray, means: np.ndarray) -> float:
    """Sum over clusters of squared distances from members to their mean."""
    points = np.asarray(points, dtype=np.float64)
    assignments = np.asarray(assignments)
    means = np.asarray(means, dtype=np.float64)
    if points.ndim != 2 or means.ndim != 2 or points.shape[1] != means.shape[1]:
        raise ValueError("points and means must be (n, d) and (k, d)")
    if assignments.shape != (points.shape[0],):
        raise ValueError("assignments length must match point count")
    if assignments.size and (assignments.min() < 0 or assignments.max() >= means.shape[0]):
        raise ValueError("assignment index out of range")
    diffs = points - means[assignments]
    return float((diffs * diffs).sum())


def _assign(points: np.ndarray, means: np.ndarray) -> np.ndarray:
    d2 = ((points[:, None, :] - means[None, :, :]) ** 2).sum(axis=2)
    return np.argmin(d2, axis=1).astype(np.int32)


def _repair_empty(points: np.ndarray, means: np.ndarray, assignments: np.ndarray) -> np.ndarray:
    """Re-seed each empty cluster at the point farthest from its nearest mean.

    Repaired means are pulled onto data points, so a stray initial mean far
    outside the data cube lands back on the cloud within one iteration.
    """
    means = means.copy()
    k = means.shape[0]
    counts = np.bincount(assignments, minlength=k)
    for i in np.flatnonzero(counts == 0):
        d2 = ((points[:, None, :] - means[None, :, :]) ** 2).sum(axis=2)
        farthest = int(np.argmax(d2.min(axis=1)))
        means[i] = points[farthest]
        assignments = _assign(points, means)
        counts = np.bincount(assignments, minlength=k)
    return means


def lloyd(
    points: np.ndarray,
    initial_means: np.ndarray,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
) -> KMeansResult:
    """Run Lloyd iterations from the given means until the maximum mean
    displacement drops below tol or max_iter is reached.

    WCSS is non-increasing across iterations; identical inputs give
    bitwise-identical assignments.
    """
    points = np.asarray(points, dtype=np.float64)
    means = np.asarray(initial_means, dtype=np.float64).copy()
    if points.ndim != 2 or points.shape[0] == 0:
        raise ValueError("points must be a nonempty (n, d) array")
    if means.ndim != 2 or means.shape[1] != points.shape[1]:
        raise ValueError("initial means must be (k, d)")
    k = means.shape[0]
    if k > points.shape[0]:
        raise InfeasibleError(f"k={k} exceeds point count n={points.shape[0]}")
    if len({tuple(row) for row in means.tolist()}) != k:
        raise ValueError("initial means must be pairwise distinct")

    assignments = _assign(points, means)
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        assignments = _assign(points, means)
        means_new = means.copy()
        for i in range(k):
            members = points[assignments == i]
            if members.shape[0] > 0:
                means_new[i] = members.mean(axis=0)
        assignments_new = _assign(points, means_new)
        if np.bincount(assignments_new, minlength=k).min() == 0:
            means_new = _repair_empty(points, means_new, assignments_new)
        shift = np.abs(means_new - means).max()
        means = means_new
        if shift < tol:
            converged = True
            break
    assignments = _assign(points, means)
    return KMeansResult(
        means=means,
        assignments=assignments,
        wcss=wcss(points, assignments, means),
        iterations=iterations,
        converged=converged,
    )
