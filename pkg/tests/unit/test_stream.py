import pytest

from core.exceptions import SimulationError
from graphs.spatial_graph import SpatialGraph
from models.simulation import SimResult, TopologyModel, TopologySpec, Workload
from simulation.stream import select_master, simulate_stream, speedup
from simulation.topology import generate_connected_topology, generate_topology
from tests.conftest import make_graph


class TestMasterSelection:
    def test_highest_degree(self, star5: SpatialGraph) -> None:
        assert select_master(star5) == 0

    def test_ties_go_to_lowest_id(self, path3: SpatialGraph) -> None:
        assert select_master(make_graph(4, [(0, 1), (2, 3)])) == 0
        assert select_master(path3) == 1


class TestSimulateStream:
    def test_single_processor_is_serial(self) -> None:
        result = simulate_stream(make_graph(1, []), Workload(frames=10, t_proc=1.0))
        assert result.makespan == 10.0
        assert result.speedup == 1.0
        assert result.frames_per_node == [10]

    def test_two_processors_halve_the_makespan(self) -> None:
        result = simulate_stream(make_graph(2, [(0, 1)]), Workload(frames=10, t_proc=1.0))
        assert result.makespan == 5.0
        assert result.speedup == 2.0
        assert result.frames_per_node == [5, 5]

    def test_star_without_communication(self, star5: SpatialGraph) -> None:
        result = simulate_stream(star5, Workload(frames=10, t_proc=1.0))
        assert result.makespan == 2.0
        assert result.speedup == 5.0
        assert result.busy_time == [2.0] * 5

    def test_star_with_hop_latency(self, star5: SpatialGraph) -> None:
        result = simulate_stream(star5, Workload(frames=10, t_proc=1.0, t_hop=0.5))
        assert result.master == 0
        assert result.makespan == 3.0
        assert result.frames_per_node == [3, 2, 2, 2, 1]
        assert result.speedup == pytest.approx(10 / 3)

    def test_bandwidth_term(self) -> None:
        w = Workload(frames=2, t_proc=1.0, frame_bits=8.0, bandwidth=16.0)
        result = simulate_stream(make_graph(2, [(0, 1)]), w, master=0)
        assert result.makespan == 1.5

    def test_interval_arrivals(self) -> None:
        w = Workload(
            frames=3, t_proc=1.0, arrival="interval", interval=2.0  # type: ignore[arg-type]
        )
        assert simulate_stream(make_graph(1, []), w).makespan == 5.0

    def test_communication_limits_speedup(self) -> None:
        topology = generate_topology(
            TopologySpec(model=TopologyModel.SMALL_WORLD, n=16, k=4, p_rew=0.1, seed=1)
        )
        free = simulate_stream(topology, Workload(frames=100, t_proc=1.0))
        costly = simulate_stream(topology, Workload(frames=100, t_proc=1.0, t_hop=0.05))
        assert costly.makespan > 100 / 16
        assert costly.makespan >= free.makespan
        assert costly.speedup < 16
        assert sum(costly.frames_per_node) == 100

    def test_explicit_master(self, path3: SpatialGraph) -> None:
        result = simulate_stream(path3, Workload(frames=3, t_proc=1.0, t_hop=1.0), master=0)
        assert result.master == 0

    def test_busy_time_includes_transfer(self) -> None:
        """A worker one hop away is busy for the hop plus the processing."""
        # Arrange
        w = Workload(frames=4, t_proc=1.0, t_hop=1.0)

        # Act
        result = simulate_stream(make_graph(2, [(0, 1)]), w)

        # Assert
        assert result.makespan == 3.0
        assert result.frames_per_node == [3, 1]
        assert result.busy_time == [3.0, 2.0]

    def test_busy_time_within_makespan(self, star5: SpatialGraph) -> None:
        result = simulate_stream(star5, Workload(frames=10, t_proc=1.0, t_hop=0.5))
        assert all(busy <= result.makespan for busy in result.busy_time)

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_makespan_does_not_grow_as_hops_get_cheaper(self, seed: int) -> None:
        """Lowering t_hop never lengthens the schedule."""
        # Arrange
        spec = TopologySpec(model=TopologyModel.SMALL_WORLD, n=12, k=4, p_rew=0.2, seed=seed)
        topology, _ = generate_connected_topology(spec, retry=True)

        # Act
        makespans = [
            simulate_stream(topology, Workload(frames=60, t_proc=1.0, t_hop=t_hop)).makespan
            for t_hop in (0.4, 0.2, 0.1, 0.05, 0.0)
        ]

        # Assert
        assert makespans == sorted(makespans, reverse=True)


class TestSimulationErrors:
    def test_empty_topology(self) -> None:
        with pytest.raises(SimulationError):
            simulate_stream(SpatialGraph(), Workload(frames=1, t_proc=1.0))

    def test_disconnected_topology(self, two_triangles: SpatialGraph) -> None:
        with pytest.raises(SimulationError, match="disconnected"):
            simulate_stream(two_triangles, Workload(frames=1, t_proc=1.0))

    def test_master_outside_topology(self, path3: SpatialGraph) -> None:
        with pytest.raises(SimulationError):
            simulate_stream(path3, Workload(frames=1, t_proc=1.0), master=3)

    def test_speedup_of_zero_makespan(self) -> None:
        result = SimResult(
            makespan=0.0, master=0, busy_time=[0.0], frames_per_node=[0], speedup=1.0
        )
        with pytest.raises(SimulationError):
            speedup(result, Workload(frames=1, t_proc=1.0))
