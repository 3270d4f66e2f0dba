from http import HTTPStatus

from fastapi import APIRouter, HTTPException
from pydantic import ValidationError

from analysis.segmentation import segment_image
from api.deps import SettingsDep
from core.exceptions import BuildError, SegmentationError
from models.requests import SegmentRequest, SegmentResponse

router = APIRouter(prefix="/api/v1", tags=["segmentation"])


@router.post("/segment", response_model=SegmentResponse)
def segment(body: SegmentRequest, settings: SettingsDep) -> SegmentResponse:
    try:
        img = body.image.to_image()
    except ValidationError as exc:
        raise HTTPException(
            status_code=HTTPStatus.UNPROCESSABLE_ENTITY, detail="Image samples must lie in [0, 255]"
        ) from exc

    try:
        result = segment_image(
            img,
            threshold=body.threshold or settings.similarity_threshold,
            radius=body.radius or settings.radius,
            method=body.method or settings.community_method,
            seed=settings.seed if body.seed is None else body.seed,
            min_size=body.min_size,
        )
    except (BuildError, SegmentationError) as exc:
        raise HTTPException(status_code=HTTPStatus.BAD_REQUEST, detail=exc.message) from exc

    return SegmentResponse(
        labels=result.label_image.labels.ravel().tolist(),
        communities=result.partition.community_count,
        modularity=result.modularity,
    )
