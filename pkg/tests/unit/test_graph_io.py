from pathlib import Path

import numpy as np
import pytest

from core.exceptions import GraphError
from graphs.io import read_edge_list, write_edge_list
from graphs.spatial_graph import SpatialGraph


def _random_weighted(rng: np.random.Generator, n: int) -> SpatialGraph:
    edges = [
        (u, v, float(rng.random()) * 10.0 ** int(rng.integers(-6, 6)) + 1e-300)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < 0.3
    ]
    return SpatialGraph.from_edges(n, edges).freeze()


class TestEdgeListRoundTrip:
    def test_lossless_on_random_graphs(self, tmp_path: Path) -> None:
        rng = np.random.default_rng(2024)
        path = tmp_path / "g.edges"
        for _ in range(100):
            g = _random_weighted(rng, int(rng.integers(1, 30)))
            write_edge_list(g, path)
            back = read_edge_list(path)
            assert back.node_count == g.node_count
            assert list(back.edges()) == list(g.edges())

    def test_positions_round_trip(self, tmp_path: Path) -> None:
        g = SpatialGraph.from_edges(
            2, [(0, 1, 0.1)], positions=[(0.0, 1.0), (2.0, 3.0)]
        ).freeze()
        write_edge_list(g, tmp_path / "g.edges", tmp_path / "pos.csv")
        back = read_edge_list(tmp_path / "g.edges", tmp_path / "pos.csv")
        assert back.position(1) == (2.0, 3.0)

    def test_empty_graph(self, tmp_path: Path) -> None:
        write_edge_list(SpatialGraph.from_edges(4, []), tmp_path / "g.edges")
        back = read_edge_list(tmp_path / "g.edges")
        assert back.node_count == 4
        assert back.edge_count == 0

    def test_header_format(self, tmp_path: Path) -> None:
        g = SpatialGraph.from_edges(2, [(0, 1, 0.5)])
        write_edge_list(g, tmp_path / "g.edges")
        assert (tmp_path / "g.edges").read_text() == "# nodes 2 directed 0\n0 1 0.5\n"

    def test_malformed_header(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.edges"
        path.write_text("0 1 1.0\n")
        with pytest.raises(GraphError):
            read_edge_list(path)

    def test_positions_missing_for_unpositioned_graph(self, tmp_path: Path) -> None:
        with pytest.raises(GraphError):
            write_edge_list(
                SpatialGraph.from_edges(1, []), tmp_path / "g.edges", tmp_path / "pos.csv"
            )

    def test_self_loop_flag_and_bounds_survive(self, tmp_path: Path) -> None:
        g = SpatialGraph(allow_self_loops=True, bounds=(8, 6))
        g.add_node((1.0, 2.0))
        g.add_node((7.0, 5.0))
        g.add_edge(0, 1, 0.25)
        write_edge_list(g.freeze(), tmp_path / "g.edges")
        assert (tmp_path / "g.edges").read_text().splitlines()[0] == (
            "# nodes 2 directed 0 self_loops 1 bounds 8 6"
        )
        back = read_edge_list(tmp_path / "g.edges")
        assert back.allow_self_loops
        assert back.bounds == (8.0, 6.0)
        assert list(back.edges()) == [(0, 1, 0.25)]


class TestPositionsFile:
    @pytest.mark.parametrize(
        "rows",
        ["", "id,x\n0,1\n", "id,x,y\n0.5,1,1\n", "id,x,y\n0,far,1\n", "id,x,y\n0,,1\n"],
        ids=["empty", "no-y-column", "fractional-id", "text-x", "blank-x"],
    )
    def test_malformed_positions(self, tmp_path: Path, rows: str) -> None:
        (tmp_path / "g.edges").write_text("# nodes 2 directed 0\n0 1 1\n")
        (tmp_path / "pos.csv").write_text(rows)
        with pytest.raises(GraphError):
            read_edge_list(tmp_path / "g.edges", tmp_path / "pos.csv")

    def test_position_outside_bounds(self, tmp_path: Path) -> None:
        (tmp_path / "g.edges").write_text("# nodes 1 directed 0 bounds 4 4\n")
        (tmp_path / "pos.csv").write_text("id,x,y\n0,5,1\n")
        with pytest.raises(GraphError):
            read_edge_list(tmp_path / "g.edges", tmp_path / "pos.csv")
