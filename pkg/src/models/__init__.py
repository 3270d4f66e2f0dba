from models.evaluation import EvaluationResult
from models.features import (
    DegreeHistogram,
    NodeFeatureVector,
    RegionFeature,
    SimilarityFeatures,
)
from models.image import BACKGROUND, EdgePixelSet, GradientField, GrayImage, LabelImage
from models.pipeline import JobStatus, SweepConfig, SweepJobState
from models.run import RunConfig
from models.saliency import OccupancyVector, SaliencyIndexVector
from models.segmentation import Partition
from models.simulation import (
    ArrivalMode,
    SimResult,
    SimulationConfig,
    TopologyModel,
    TopologySpec,
    TopologyStats,
    Workload,
)

__all__ = [
    "BACKGROUND",
    "ArrivalMode",
    "DegreeHistogram",
    "EdgePixelSet",
    "EvaluationResult",
    "GradientField",
    "GrayImage",
    "JobStatus",
    "LabelImage",
    "NodeFeatureVector",
    "OccupancyVector",
    "Partition",
    "RegionFeature",
    "RunConfig",
    "SaliencyIndexVector",
    "SimResult",
    "SimilarityFeatures",
    "SimulationConfig",
    "SweepConfig",
    "SweepJobState",
    "TopologyModel",
    "TopologySpec",
    "TopologyStats",
    "Workload",
]
