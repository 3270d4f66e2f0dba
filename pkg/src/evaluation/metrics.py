import numpy as np
import scipy.optimize
from scipy import sparse

from core.exceptions import EvaluationError


def contingency_table(predicted: np.ndarray, truth: np.ndarray) -> np.ndarray:
    """Counts of pixels per (predicted label, true label) pair."""
    predicted = np.asarray(predicted)
    truth = np.asarray(truth)
    if predicted.shape != truth.shape or predicted.ndim != 1:
        raise EvaluationError(
            "label sequences must be one-dimensional and equally long",
            details={"predicted": predicted.shape, "truth": truth.shape},
        )
    if len(predicted) == 0:
        return np.zeros((0, 0), dtype=np.int64)
    _, rows = np.unique(predicted, return_inverse=True)
    _, cols = np.unique(truth, return_inverse=True)
    table = sparse.coo_matrix(
        (np.ones(len(rows), dtype=np.int64), (rows, cols)),
        shape=(int(rows.max(initial=-1)) + 1, int(cols.max(initial=-1)) + 1),
    )
    return np.asarray(table.todense())


def _pairs(counts: np.ndarray) -> float:
    counts = counts.astype(float)
    return float(np.sum(counts * (counts - 1.0) / 2.0))


def rand_index(predicted: np.ndarray, truth: np.ndarray) -> float:
    """Fraction of pixel pairs on which both labelings agree (same vs different)."""
    table = contingency_table(predicted, truth)
    n = int(table.sum())
    if n < 2:
        return 1.0
    total = n * (n - 1) / 2.0
    together = _pairs(table)
    agreements = total + 2.0 * together - _pairs(table.sum(axis=1)) - _pairs(table.sum(axis=0))
    return agreements / total


def matched_accuracy(predicted: np.ndarray, truth: np.ndarray) -> float:
    """Pixel accuracy under the best one-to-one matching of predicted to true labels."""
    table = contingency_table(predicted, truth)
    n = int(table.sum())
    if n == 0:
        raise EvaluationError("no labelled pixels to compare")
    rows, cols = scipy.optimize.linear_sum_assignment(table, maximize=True)
    return float(table[rows, cols].sum()) / n
