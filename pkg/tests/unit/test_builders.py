import numpy as np
import pytest
from pydantic import ValidationError

from builders.orientation_lines import (
    build_orientation_line_network,
    build_saliency_network,
    line_directions,
)
from builders.similarity import build_pixel_similarity_network, pixel_coordinates
from core.exceptions import BuildError
from models.features import SimilarityFeatures
from models.image import EdgePixelSet, GrayImage
from tests.conftest import two_region_image


class TestPixelSimilarityNetwork:
    def test_uniform_image_four_neighbour_grid(self) -> None:
        g = build_pixel_similarity_network(GrayImage.from_array(np.zeros((3, 3))), 1.0, 1.0)
        assert g.node_count == 9
        assert g.edge_count == 12
        assert all(w == 1.0 for _, _, w in g.edges())

    def test_radius_includes_diagonals(self) -> None:
        g = build_pixel_similarity_network(GrayImage.from_array(np.zeros((3, 3))), 1.0, 1.5)
        assert g.edge_count == 20
        assert g.degree(4) == 8

    def test_threshold_is_inclusive(self) -> None:
        img = GrayImage.from_array(np.array([[0.0, 1.0]]))
        assert build_pixel_similarity_network(img, 0.5, 1.0).edge_count == 1
        assert build_pixel_similarity_network(img, 0.6, 1.0).edge_count == 0

    def test_weight_is_inverse_distance(self) -> None:
        img = GrayImage.from_array(np.array([[10.0, 13.0]]))
        g = build_pixel_similarity_network(img, 0.1, 1.0)
        assert list(g.edges()) == [(0, 1, 0.25)]

    def test_boundary_cut_between_regions(self) -> None:
        g = build_pixel_similarity_network(two_region_image(4, 4), 0.5, 1.5)
        count, labels = g.connected_components()
        assert count == 2
        assert labels[0] != labels[3]

    def test_nodes_carry_row_major_positions(self) -> None:
        g = build_pixel_similarity_network(GrayImage.from_array(np.zeros((2, 3))), 1.0, 1.0)
        assert g.position(4) == (1.0, 1.0)
        np.testing.assert_array_equal(pixel_coordinates(3, 2)[4], [1, 1])

    def test_distance_decay(self) -> None:
        features = SimilarityFeatures(distance_decay=1.0)
        g = build_pixel_similarity_network(
            GrayImage.from_array(np.zeros((1, 2))), 0.1, 1.0, features
        )
        assert list(g.edges()) == [(0, 1, 0.5)]

    def test_gradient_feature_changes_weights(self) -> None:
        samples = np.zeros((5, 5))
        samples[:, 3:] = 200.0
        img = GrayImage.from_array(samples)
        plain = build_pixel_similarity_network(img, 0.01, 1.0)
        weighted = build_pixel_similarity_network(
            img, 0.01, 1.0, SimilarityFeatures(gray=1.0, gradient=1.0)
        )
        assert dict(plain.neighbors(1)) != dict(weighted.neighbors(1))

    @pytest.mark.parametrize(("threshold", "radius"), [(0.0, 1.0), (1.5, 1.0), (0.5, 0.5)])
    def test_invalid_parameters(self, threshold: float, radius: float) -> None:
        with pytest.raises(BuildError):
            img = GrayImage.from_array(np.zeros((3, 3)))
            build_pixel_similarity_network(img, threshold, radius)

    def test_dispersion_needs_window(self) -> None:
        with pytest.raises(ValidationError):
            SimilarityFeatures(dispersion=1.0)
        with pytest.raises(ValidationError):
            SimilarityFeatures(dispersion=1.0, dispersion_window=4)


def _edge_set(coords: list[tuple[int, int]], normals: list[float]) -> EdgePixelSet:
    return EdgePixelSet(
        coords=np.array(coords),
        orientation=np.array(normals),
        magnitude=np.ones(len(coords)),
    )


class TestOrientationLineNetwork:
    def test_tangent_of_horizontal_contour_links_the_row(self) -> None:
        img = GrayImage.from_array(np.zeros((5, 5)))
        edges = _edge_set([(x, 2) for x in range(5)], [np.pi / 2] * 5)
        g = build_orientation_line_network(img, edges, "tangent")
        assert g.edge_count == 10
        assert all(g.degree(u) == 4 for u in range(5))

    def test_normal_mode_crosses_the_contour(self) -> None:
        img = GrayImage.from_array(np.zeros((5, 5)))
        edges = _edge_set([(x, 2) for x in range(5)], [np.pi / 2] * 5)
        g = build_orientation_line_network(img, edges, "normal")
        assert g.edge_count == 0

    def test_line_directions(self) -> None:
        edges = _edge_set([(0, 0), (1, 0)], [0.0, np.pi / 2])
        np.testing.assert_allclose(line_directions(edges, "tangent"), [np.pi / 2, 0.0])
        np.testing.assert_allclose(line_directions(edges, "normal"), [0.0, np.pi / 2])

    def test_empty_edge_set(self) -> None:
        img = GrayImage.from_array(np.zeros((5, 5)))
        with pytest.raises(BuildError, match="no edge pixels"):
            build_orientation_line_network(img, _edge_set([], []), "tangent")

    def test_constant_image_has_no_edge_pixels(self) -> None:
        with pytest.raises(BuildError, match="no edge pixels"):
            build_saliency_network(GrayImage.from_array(np.full((8, 8), 50.0)), 0.25)
