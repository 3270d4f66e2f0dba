from pydantic import BaseModel


class EvaluationResult(BaseModel):
    rand_index: float
    matched_accuracy: float
    pixels: int
    predicted_regions: int
    truth_regions: int
