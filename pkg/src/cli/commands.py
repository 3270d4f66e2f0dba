"""One handler per subcommand; each reads its inputs and writes only the outputs it was given."""

import logging
from collections.abc import Callable

import pandas as pd

from analysis.measurements import (
    degree_distribution,
    export_features_csv,
    export_histogram_csv,
    graph_summary,
)
from analysis.saliency import compute_saliency, export_saliency_csv, read_saliency_indices
from analysis.segmentation import (
    export_labels_csv,
    export_labels_pgm,
    read_labels_csv,
    segment_image,
)
from analysis.texture import (
    classify_nearest_centroid,
    export_centroids_csv,
    export_region_features_csv,
    read_centroids_csv,
    region_features_for_labels,
    tile_regions,
)
from builders.orientation_lines import build_saliency_network
from builders.similarity import build_pixel_similarity_network
from core.exceptions import ConfigurationError
from evaluation.evaluator import evaluate_from_files
from graphs.io import read_edge_list, write_edge_list
from imaging.gradient import estimate_gradient, select_edge_pixels
from imaging.netpbm import read_image, write_pgm
from models.run import RunConfig
from models.simulation import TopologyStats
from simulation.stream import simulate_stream
from simulation.sweep import (
    RESULT_COLUMNS,
    export_results_csv,
    load_simulation_config,
    run_sweep,
)
from simulation.topology import describe_topology, generate_connected_topology
from utils.tables import write_csv

logger = logging.getLogger(__name__)

Handler = Callable[[RunConfig], None]


def _stats_table(stats: TopologyStats) -> pd.DataFrame:
    return pd.DataFrame([stats.model_dump()])


def run_build(config: RunConfig) -> None:
    img = read_image(config.inputs["image"])
    if config.builder == "lines":
        _, graph = build_saliency_network(img, config.contrast, config.mode)
    else:
        graph = build_pixel_similarity_network(img, config.threshold, config.radius)
    write_edge_list(graph, config.outputs["edges"], config.outputs.get("positions"))


def run_measure(config: RunConfig) -> None:
    graph = read_edge_list(config.inputs["graph"], config.inputs.get("positions"))
    if "features" in config.outputs:
        export_features_csv(graph, config.outputs["features"])
    if "histogram" in config.outputs:
        export_histogram_csv(degree_distribution(graph), config.outputs["histogram"])
    if "summary" in config.outputs:
        write_csv(_stats_table(graph_summary(graph)), config.outputs["summary"])


def run_saliency(config: RunConfig) -> None:
    img = read_image(config.inputs["image"])
    indices = None
    if "indices" in config.inputs:
        edges = select_edge_pixels(estimate_gradient(img), config.contrast)
        indices = read_saliency_indices(config.inputs["indices"], edges)
    result = compute_saliency(
        img,
        config.contrast,
        config.mode,
        indices=indices,
        tol=config.tol,
        max_iter=config.max_iter,
    )
    if "map" in config.outputs:
        write_pgm(result.image.samples, config.outputs["map"])
    if "csv" in config.outputs:
        export_saliency_csv(result, config.outputs["csv"])


def run_segment(config: RunConfig) -> None:
    img = read_image(config.inputs["image"])
    result = segment_image(
        img,
        config.threshold,
        config.radius,
        method=config.method,
        seed=config.seed,
        min_size=config.min_size,
    )
    if result.modularity is not None:
        logger.info(
            "Segmented into %d regions, Q = %.6f",
            result.partition.community_count,
            result.modularity,
        )
    export_labels_csv(result.label_image, config.outputs["labels"])
    if "preview" in config.outputs:
        export_labels_pgm(result.label_image, config.outputs["preview"])


def run_texture(config: RunConfig) -> None:
    img = read_image(config.inputs["image"])
    if "labels" in config.inputs:
        labels = read_labels_csv(config.inputs["labels"], img.shape)
    elif config.tile is not None:
        labels = tile_regions(img.shape, config.tile)
    else:
        raise ConfigurationError("texture needs --labels or --tile to define regions")
    if "centroids" in config.inputs and "predictions" not in config.outputs:
        raise ConfigurationError("--centroids needs --predictions for the output path")

    regions = region_features_for_labels(img, labels, config.threshold, config.radius)
    export_region_features_csv(regions, config.outputs["features"])
    if "centroids" in config.outputs:
        export_centroids_csv(
            {str(region): feature for region, feature in regions.items()},
            config.outputs["centroids"],
        )

    if "centroids" in config.inputs:
        centroids = read_centroids_csv(config.inputs["centroids"])
        predictions = pd.DataFrame(
            [
                {"region": region, "label": classify_nearest_centroid(feature, centroids)}
                for region, feature in regions.items()
            ],
            columns=["region", "label"],
        )
        write_csv(predictions, config.outputs["predictions"])


def run_gen_topo(config: RunConfig) -> None:
    sim = load_simulation_config(config.inputs["config"])
    graph, _ = generate_connected_topology(sim.topology, config.retry or sim.retry)
    write_edge_list(graph, config.outputs["edges"], config.outputs.get("positions"))
    if "stats" in config.outputs:
        write_csv(_stats_table(describe_topology(graph)), config.outputs["stats"])


def run_simulate(config: RunConfig) -> None:
    sim = load_simulation_config(config.inputs["config"])
    graph, used = generate_connected_topology(sim.topology, config.retry or sim.retry)
    master = config.master if config.master is not None else sim.master
    result = simulate_stream(graph, sim.workload, master=master)
    row = {
        "model": str(used.model),
        "N": graph.node_count,
        "seed": used.seed,
        "makespan": result.makespan,
        "speedup": result.speedup,
        "avg_path_len": describe_topology(graph).avg_path_len,
    }
    write_csv(pd.DataFrame([row], columns=list(RESULT_COLUMNS)), config.outputs["results"])
    if "nodes" in config.outputs:
        per_node = pd.DataFrame(
            {
                "node": range(graph.node_count),
                "frames": result.frames_per_node,
                "busy": result.busy_time,
            }
        )
        write_csv(per_node, config.outputs["nodes"])


def run_sweep_command(config: RunConfig) -> None:
    if config.sweep is None:
        raise ConfigurationError("sweep options missing")
    export_results_csv(run_sweep(config.sweep, progress=True), config.outputs["results"])


def run_evaluate(config: RunConfig) -> None:
    result = evaluate_from_files(config.inputs["predicted"], config.inputs["truth"])
    write_csv(pd.DataFrame([result.model_dump()]), config.outputs["scores"])


HANDLERS: dict[str, Handler] = {
    "build": run_build,
    "measure": run_measure,
    "saliency": run_saliency,
    "segment": run_segment,
    "texture": run_texture,
    "gen-topo": run_gen_topo,
    "simulate": run_simulate,
    "sweep": run_sweep_command,
    "evaluate": run_evaluate,
}
