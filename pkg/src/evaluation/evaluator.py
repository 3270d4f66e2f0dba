import logging
from pathlib import Path

import pandas as pd

from core.exceptions import EvaluationError
from evaluation.metrics import matched_accuracy, rand_index
from models.evaluation import EvaluationResult
from models.image import BACKGROUND

logger = logging.getLogger(__name__)

_LABEL_COLUMNS = ["x", "y", "label"]


def _read_labels(path: Path) -> pd.DataFrame:
    try:
        table = pd.read_csv(path)
    except (OSError, ValueError) as exc:
        raise EvaluationError(f"Failed to load label file {path}") from exc
    missing = set(_LABEL_COLUMNS) - set(table.columns)
    if missing:
        raise EvaluationError(f"Label file {path} lacks columns", {"missing": sorted(missing)})
    return table[_LABEL_COLUMNS]


def evaluate_labels(predicted: pd.DataFrame, truth: pd.DataFrame) -> EvaluationResult:
    """Score two ``x,y,label`` tables over the pixels labelled in both."""
    joined = predicted.merge(truth, on=["x", "y"], suffixes=("_pred", "_true"))
    joined = joined[(joined["label_pred"] != BACKGROUND) & (joined["label_true"] != BACKGROUND)]
    if joined.empty:
        raise EvaluationError("predicted and true labels share no labelled pixels")

    pred = joined["label_pred"].to_numpy()
    true = joined["label_true"].to_numpy()
    result = EvaluationResult(
        rand_index=rand_index(pred, true),
        matched_accuracy=matched_accuracy(pred, true),
        pixels=len(joined),
        predicted_regions=int(joined["label_pred"].nunique()),
        truth_regions=int(joined["label_true"].nunique()),
    )
    logger.info("Rand index:       %.4f", result.rand_index)
    logger.info("Matched accuracy: %.4f", result.matched_accuracy)
    return result


def evaluate_from_files(predicted_path: Path, truth_path: Path) -> EvaluationResult:
    return evaluate_labels(_read_labels(predicted_path), _read_labels(truth_path))
