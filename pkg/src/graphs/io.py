import logging
import re
from pathlib import Path

import pandas as pd

from core.exceptions import GraphError
from graphs.spatial_graph import Position, SpatialGraph
from utils.tables import FLOAT_FORMAT, read_csv_table, write_csv

logger = logging.getLogger(__name__)

_HEADER_RE = re.compile(
    r"^#\s*nodes\s+(?P<nodes>\d+)\s+directed\s+(?P<directed>[01])"
    r"(?:\s+self_loops\s+(?P<loops>[01]))?"
    r"(?:\s+bounds\s+(?P<width>\S+)\s+(?P<height>\S+))?\s*$"
)


def _header(graph: SpatialGraph) -> str:
    header = f"# nodes {graph.node_count} directed {int(graph.directed)}"
    if graph.allow_self_loops:
        header += " self_loops 1"
    if graph.bounds is not None:
        width, height = graph.bounds
        header += f" bounds {FLOAT_FORMAT % width} {FLOAT_FORMAT % height}"
    return header


def write_edge_list(
    graph: SpatialGraph, path: Path, positions_path: Path | None = None
) -> None:
    """Write ``# nodes N directed D`` then one ``u v w`` line per edge (17 significant digits).

    The header also carries ``self_loops 1`` and ``bounds W H`` when the graph sets them.
    """
    edges = pd.DataFrame(list(graph.edges()), columns=["u", "v", "w"])
    edges = edges.astype({"u": "int64", "v": "int64", "w": "float64"})
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(_header(graph) + "\n")
        edges.to_csv(
            fh, sep=" ", header=False, index=False, float_format=FLOAT_FORMAT, lineterminator="\n"
        )
    logger.info("Wrote %d edges to %s", len(edges), path)

    if positions_path is not None:
        coords = graph.positions
        if coords is None:
            raise GraphError("Graph has unpositioned nodes; cannot write positions file")
        table = pd.DataFrame(
            {"id": range(graph.node_count), "x": coords[:, 0], "y": coords[:, 1]}
        )
        write_csv(table, positions_path)


def _read_header(path: Path) -> tuple[int, bool, bool, tuple[float, float] | None]:
    with path.open(encoding="utf-8") as fh:
        first = fh.readline()
    m = _HEADER_RE.match(first.strip())
    if m is None:
        raise GraphError("Malformed edge-list header", details={"path": str(path), "line": first})
    bounds = None
    if m["width"] is not None:
        try:
            bounds = (float(m["width"]), float(m["height"]))
        except ValueError as exc:
            raise GraphError("Malformed bounds in edge-list header", {"line": first}) from exc
    return int(m["nodes"]), m["directed"] == "1", m["loops"] == "1", bounds


def read_positions(path: Path, node_count: int) -> list[Position | None]:
    table = read_csv_table(
        path,
        GraphError,
        ["id", "x", "y"],
        integer_columns=["id"],
        numeric_columns=["x", "y"],
        float_precision="round_trip",
    )
    positions: list[Position | None] = [None] * node_count
    for node, x, y in table[["id", "x", "y"]].itertuples(index=False):
        if not 0 <= int(node) < node_count:
            raise GraphError(f"Position given for unknown node {node}")
        positions[int(node)] = (float(x), float(y))
    return positions


def read_edge_list(path: Path, positions_path: Path | None = None) -> SpatialGraph:
    node_count, directed, self_loops, bounds = _read_header(path)
    try:
        edges = pd.read_csv(
            path,
            sep=" ",
            skiprows=1,
            header=None,
            names=["u", "v", "w"],
            dtype={"u": "int64", "v": "int64", "w": "float64"},
            float_precision="round_trip",
        )
    except pd.errors.EmptyDataError:
        edges = pd.DataFrame({"u": [], "v": [], "w": []})
    except ValueError as exc:
        raise GraphError("Malformed edge line", details={"path": str(path)}) from exc

    positions = read_positions(positions_path, node_count) if positions_path else None
    triples = [(int(u), int(v), float(w)) for u, v, w in edges.itertuples(index=False)]
    graph = SpatialGraph.from_edges(
        node_count,
        triples,
        positions=positions,
        directed=directed,
        allow_self_loops=self_loops or any(u == v for u, v, _ in triples),
        bounds=bounds,
    )
    logger.info("Read graph with %d nodes, %d edges from %s", node_count, len(triples), path)
    return graph.freeze()
