from functools import cache
from typing import Annotated

from fastapi import Depends

from core.config import Settings, get_settings
from pipeline.runner import SweepPipeline

SettingsDep = Annotated[Settings, Depends(get_settings)]


@cache
def _pipeline() -> SweepPipeline:
    return SweepPipeline(get_settings())


def get_pipeline() -> SweepPipeline:
    return _pipeline()
