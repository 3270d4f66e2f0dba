import math

import numpy as np
import pytest
from pydantic import ValidationError

from models.features import RegionFeature
from models.image import BACKGROUND, EdgePixelSet, GrayImage, LabelImage
from models.pipeline import JobStatus, SweepConfig, SweepJobState
from models.requests import ImagePayload
from models.run import RunConfig
from models.saliency import OccupancyVector, SaliencyIndexVector
from models.segmentation import Partition
from models.simulation import SimulationConfig, Workload


class TestGrayImage:
    def test_from_array(self) -> None:
        img = GrayImage.from_array([[0, 255], [10, 20], [1, 2]])
        assert img.shape == (3, 2)
        assert img.samples.dtype == float

    def test_samples_are_read_only(self) -> None:
        img = GrayImage.from_array(np.zeros((2, 2)))
        with pytest.raises(ValueError):
            img.samples[0, 0] = 1.0

    @pytest.mark.parametrize("samples", [[[300.0]], [[-1.0]], [[math.nan]]])
    def test_rejects_bad_samples(self, samples: list[list[float]]) -> None:
        with pytest.raises(ValidationError):
            GrayImage.from_array(samples)

    def test_rejects_shape_mismatch(self) -> None:
        with pytest.raises(ValidationError):
            GrayImage(width=3, height=2, samples=np.zeros((2, 2)))


class TestEdgePixelSet:
    def test_rejects_duplicates(self) -> None:
        with pytest.raises(ValidationError):
            EdgePixelSet(
                coords=np.array([(1, 1), (1, 1)]), orientation=np.zeros(2), magnitude=np.ones(2)
            )

    def test_rejects_pixels_below_threshold(self) -> None:
        with pytest.raises(ValidationError):
            EdgePixelSet(
                coords=np.array([(0, 0)]),
                orientation=np.zeros(1),
                magnitude=np.array([0.5]),
                threshold=1.0,
            )


class TestLabelImage:
    def test_region_count_ignores_background(self) -> None:
        image = LabelImage(width=3, height=1, labels=np.array([[BACKGROUND, 4, 4]]))
        assert image.region_count == 1


class TestPartition:
    def test_from_labels_densifies_by_first_appearance(self) -> None:
        p = Partition.from_labels([7, 3, 7, 9])
        assert p.labels.tolist() == [0, 1, 0, 2]
        assert p.community_count == 3
        assert p.communities() == [[0, 2], [1], [3]]

    def test_rejects_gaps(self) -> None:
        with pytest.raises(ValidationError):
            Partition(labels=np.array([0, 2]))


class TestSaliencyModels:
    def test_occupancy_must_sum_to_one(self) -> None:
        with pytest.raises(ValidationError):
            OccupancyVector(values=np.array([0.5, 0.6]))

    def test_indices_must_be_positive(self) -> None:
        with pytest.raises(ValidationError):
            SaliencyIndexVector(values=np.array([1.0, 0.0]))
        assert SaliencyIndexVector.uniform(3).values.tolist() == [1.0, 1.0, 1.0]


class TestRegionFeature:
    def test_array_layout(self) -> None:
        feature = RegionFeature(means=(1.0, 2.0, 3.0, 4.0, 5.0), stds=(0.1, 0.2, 0.3, 0.4, 0.5))
        values = feature.as_array()
        assert values.tolist()[:4] == [1.0, 0.1, 2.0, 0.2]
        assert RegionFeature.from_array(values) == feature

    def test_rejects_negative_spread(self) -> None:
        with pytest.raises(ValidationError):
            RegionFeature(means=(0.0,) * 5, stds=(-1.0, 0.0, 0.0, 0.0, 0.0))


class TestWorkload:
    def test_transfer_time(self) -> None:
        w = Workload(frames=1, t_proc=1.0, t_hop=0.25, frame_bits=8.0, bandwidth=4.0)
        assert w.transfer_time(2) == 2.5
        assert w.serial_time() == 1.0

    def test_infinite_bandwidth_string(self) -> None:
        w = Workload(frames=1, t_proc=1.0, bandwidth="inf")  # type: ignore[arg-type]
        assert w.bandwidth == math.inf

    def test_interval_required(self) -> None:
        with pytest.raises(ValidationError):
            Workload(frames=1, t_proc=1.0, arrival="interval")  # type: ignore[arg-type]

    def test_positive_processing_time(self) -> None:
        with pytest.raises(ValidationError):
            Workload(frames=1, t_proc=0.0)


class TestSimulationConfig:
    def test_from_flat_ignores_blank_values(self) -> None:
        config = SimulationConfig.from_flat(
            {"model": "scale_free", "N": "20", "m": "2", "frames": "5", "t_proc": "1", "p": ""}
        )
        assert config.topology.m == 2
        assert config.topology.p is None

    def test_from_flat_rejects_unknown_keys(self) -> None:
        with pytest.raises(ValueError, match="unknown config keys"):
            SimulationConfig.from_flat({"model": "random", "speed": "9"})


class TestSweepModels:
    def test_defaults_cover_every_model(self) -> None:
        config = SweepConfig()
        assert [str(m) for m in config.models] == ["random", "small_world", "scale_free", "lattice"]
        assert config.retry is True

    def test_seed_count_bounds(self) -> None:
        with pytest.raises(ValidationError):
            SweepConfig(seeds=0)

    def test_job_defaults(self) -> None:
        job = SweepJobState(job_id="abc")
        assert job.status == JobStatus.QUEUED
        assert job.created_at is not None
        assert job.progress == 0.0

    def test_job_progress(self) -> None:
        job = SweepJobState(job_id="abc", runs_total=8, runs_done=2)
        assert job.progress == 0.25
        assert job.model_dump()["progress"] == 0.25

    def test_runs_order(self) -> None:
        config = SweepConfig(
            models=["lattice", "random"], seeds=2, base_seed=5  # type: ignore[list-item]
        )
        assert [(str(m), s) for m, s in config.runs()] == [
            ("lattice", 5),
            ("lattice", 6),
            ("random", 5),
            ("random", 6),
        ]


class TestRequestModels:
    def test_payload_to_image(self) -> None:
        payload = ImagePayload(width=2, height=1, samples=[3.0, 4.0])
        assert payload.to_image().samples.tolist() == [[3.0, 4.0]]

    def test_payload_length_checked(self) -> None:
        with pytest.raises(ValidationError):
            ImagePayload(width=2, height=2, samples=[1.0])


class TestRunConfig:
    def test_defaults(self) -> None:
        config = RunConfig(subcommand="segment")
        assert config.threshold == 0.5
        assert config.method == "greedy_modularity"

    def test_rejects_blank_paths(self) -> None:
        with pytest.raises(ValidationError):
            RunConfig(subcommand="build", inputs={"in": " "})  # type: ignore[dict-item]

    def test_threshold_range(self) -> None:
        with pytest.raises(ValidationError):
            RunConfig(subcommand="segment", threshold=0.0)
