from http import HTTPStatus

import numpy as np
from fastapi import APIRouter, HTTPException
from pydantic import ValidationError

from analysis.saliency import compute_saliency
from api.deps import SettingsDep
from core.exceptions import BuildError, ConvergenceError, StochasticMatrixError
from models.requests import SaliencyRequest, SaliencyResponse

router = APIRouter(prefix="/api/v1", tags=["saliency"])


@router.post("/saliency", response_model=SaliencyResponse)
def saliency(body: SaliencyRequest, settings: SettingsDep) -> SaliencyResponse:
    try:
        img = body.image.to_image()
    except ValidationError as exc:
        raise HTTPException(
            status_code=HTTPStatus.UNPROCESSABLE_ENTITY, detail="Image samples must lie in [0, 255]"
        ) from exc

    try:
        result = compute_saliency(
            img,
            contrast=body.contrast or settings.contrast,
            mode=body.mode or settings.line_mode,
            tol=body.tol or settings.tol,
            max_iter=body.max_iter or settings.max_iter,
        )
    except (BuildError, StochasticMatrixError) as exc:
        raise HTTPException(status_code=HTTPStatus.BAD_REQUEST, detail=exc.message) from exc
    except ConvergenceError as exc:
        raise HTTPException(
            status_code=HTTPStatus.UNPROCESSABLE_ENTITY, detail=exc.message
        ) from exc

    return SaliencyResponse(
        edge_pixels=[(x, y) for x, y in result.edges.coords.tolist()],
        q=result.q.tolist(),
        saliency_map=np.rint(result.image.samples).astype(int).ravel().tolist(),
        iterations=result.occupancy.iterations,
    )
