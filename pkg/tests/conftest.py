import os
from collections.abc import Generator

import numpy as np
import pytest
from fastapi.testclient import TestClient

from graphs.spatial_graph import SpatialGraph
from models.image import GrayImage


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory: pytest.TempPathFactory) -> str:
    path = tmp_path_factory.mktemp("data")
    os.environ["CNV_DATA_DIR"] = str(path)
    return str(path)


@pytest.fixture(scope="session")
def client(data_dir: str) -> Generator[TestClient, None, None]:
    from api.app import create_app
    from core.config import get_settings

    get_settings.cache_clear()
    app = create_app()
    with TestClient(app) as c:
        yield c


def make_graph(node_count: int, edges: list[tuple[int, int]]) -> SpatialGraph:
    return SpatialGraph.from_edges(node_count, [(u, v, 1.0) for u, v in edges]).freeze()


def random_connected_graph(rng: np.random.Generator, n: int, p: float = 0.3) -> SpatialGraph:
    """Ring plus random chords; always connected."""
    edges = {(min(u, (u + 1) % n), max(u, (u + 1) % n)) for u in range(n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return make_graph(n, sorted(edges))


@pytest.fixture
def two_triangles() -> SpatialGraph:
    return make_graph(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])


@pytest.fixture
def k5() -> SpatialGraph:
    return make_graph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])


@pytest.fixture
def path3() -> SpatialGraph:
    return make_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def star5() -> SpatialGraph:
    return make_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])


def two_region_image(width: int, height: int, low: float = 64.0, high: float = 192.0) -> GrayImage:
    samples = np.full((height, width), low)
    samples[:, width // 2 :] = high
    return GrayImage.from_array(samples)


def plus_image(size: int = 64, centre: int = 32) -> GrayImage:
    samples = np.zeros((size, size))
    samples[centre, :] = 255.0
    samples[:, centre] = 255.0
    return GrayImage.from_array(samples)
