from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from analysis.measurements import (
    average_path_length,
    clustering_coefficient,
    degree_distribution,
    export_features_csv,
    export_histogram_csv,
    graph_summary,
    hierarchical_degree,
    node_feature_matrix,
    node_feature_vector,
)
from core.exceptions import GraphError
from graphs.spatial_graph import SpatialGraph
from tests.conftest import make_graph, random_connected_graph


class TestNodeMeasurements:
    def test_triangle_clustering(self, two_triangles: SpatialGraph) -> None:
        assert clustering_coefficient(two_triangles, 0) == 1.0

    def test_path_clustering_zero(self, path3: SpatialGraph) -> None:
        assert clustering_coefficient(path3, 1) == 0.0
        assert clustering_coefficient(path3, 0) == 0.0

    def test_hierarchical_degree_on_path(self) -> None:
        g = make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        assert [hierarchical_degree(g, 0, h) for h in (1, 2, 3, 4)] == [1, 1, 1, 1]
        assert hierarchical_degree(g, 2, 2) == 2

    def test_ring_of_six(self) -> None:
        """Each ring node sees two nodes at two hops and only the antipode at three."""
        # Arrange
        ring = make_graph(6, [(u, (u + 1) % 6) for u in range(6)])

        # Act
        vec = node_feature_vector(ring, 0)

        # Assert
        assert (vec.degree, vec.strength, vec.clustering, vec.hdeg2, vec.hdeg3) == (
            2,
            2.0,
            0.0,
            2,
            1,
        )
        assert hierarchical_degree(ring, 0, 4) == 0

    def test_hierarchical_level_must_be_positive(self, path3: SpatialGraph) -> None:
        with pytest.raises(GraphError):
            hierarchical_degree(path3, 0, 0)

    def test_feature_vector(self, star5: SpatialGraph) -> None:
        vec = node_feature_vector(star5, 1)
        assert (vec.degree, vec.strength, vec.clustering, vec.hdeg2, vec.hdeg3) == (
            1,
            1.0,
            0.0,
            3,
            0,
        )

    def test_directed_graph_rejected(self) -> None:
        g = SpatialGraph.from_edges(2, [(0, 1, 1.0)], directed=True)
        with pytest.raises(GraphError):
            clustering_coefficient(g, 0)


class TestFeatureMatrix:
    def test_matches_per_node_vectors(self) -> None:
        rng = np.random.default_rng(5)
        for n in (3, 8, 21):
            g = random_connected_graph(rng, n, p=0.2)
            expected = np.vstack([node_feature_vector(g, u).as_array() for u in range(n)])
            np.testing.assert_allclose(node_feature_matrix(g), expected)

    def test_clustering_matches_networkx(self) -> None:
        nx = pytest.importorskip("networkx")
        g = random_connected_graph(np.random.default_rng(9), 30, p=0.15)
        expected = nx.clustering(g.to_networkx())
        np.testing.assert_allclose(
            node_feature_matrix(g)[:, 2], [expected[u] for u in range(30)], atol=1e-12
        )

    def test_empty_graph(self) -> None:
        assert node_feature_matrix(SpatialGraph()).shape == (0, 5)


class TestGraphLevel:
    def test_degree_distribution(self, star5: SpatialGraph) -> None:
        hist = degree_distribution(star5)
        assert hist.counts == {1: 4, 4: 1}
        assert hist.total == 5

    def test_average_path_length_path(self, path3: SpatialGraph) -> None:
        assert average_path_length(path3) == pytest.approx(4 / 3)

    def test_average_path_length_ignores_unreachable(self, two_triangles: SpatialGraph) -> None:
        assert average_path_length(two_triangles) == 1.0

    def test_summary(self, two_triangles: SpatialGraph) -> None:
        stats = graph_summary(two_triangles)
        assert stats.node_count == 6
        assert stats.edge_count == 6
        assert stats.mean_degree == 2.0
        assert stats.mean_clustering == 1.0
        assert stats.components == 2


class TestExports:
    def test_features_csv_columns(self, tmp_path: Path, path3: SpatialGraph) -> None:
        export_features_csv(path3, tmp_path / "f.csv")
        table = pd.read_csv(tmp_path / "f.csv")
        assert list(table.columns) == ["node", "degree", "strength", "clustering", "hdeg2", "hdeg3"]
        assert table["degree"].tolist() == [1, 2, 1]

    def test_histogram_csv(self, tmp_path: Path, star5: SpatialGraph) -> None:
        export_histogram_csv(degree_distribution(star5), tmp_path / "h.csv")
        assert (tmp_path / "h.csv").read_text() == "degree,count\n1,4\n4,1\n"
