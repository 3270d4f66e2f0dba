"""Command-line front end: ``python -m cli <subcommand> ...``."""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from cli.commands import HANDLERS
from core.config import Settings, get_settings
from core.exceptions import ConfigurationError, NetVisionError
from core.logging import configure_logging
from models.pipeline import SweepConfig
from models.run import RunConfig
from models.simulation import TopologyModel, Workload

logger = logging.getLogger(__name__)

_IN = "in_"
_OUT = "out_"


def _path(
    parser: argparse.ArgumentParser,
    flag: str,
    dest: str,
    required: bool = False,
    help_text: str | None = None,
) -> None:
    parser.add_argument(flag, dest=dest, type=Path, required=required, help=help_text)


def _similarity_flags(parser: argparse.ArgumentParser, settings: Settings) -> None:
    parser.add_argument(
        "--threshold",
        type=float,
        default=settings.similarity_threshold,
        help="similarity threshold T in (0, 1] (default: %(default)s)",
    )
    parser.add_argument(
        "--radius",
        type=float,
        default=settings.radius,
        help="neighbourhood radius in pixels (default: %(default)s)",
    )


def _line_flags(parser: argparse.ArgumentParser, settings: Settings) -> None:
    parser.add_argument(
        "--contrast",
        type=float,
        default=settings.contrast,
        help="edge pixels reach this fraction of the peak gradient (default: %(default)s)",
    )
    parser.add_argument(
        "--mode",
        choices=["tangent", "normal"],
        default=settings.line_mode,
        help="line direction through each edge pixel (default: %(default)s)",
    )


def build_parser(settings: Settings | None = None) -> argparse.ArgumentParser:
    settings = settings or get_settings()
    parser = argparse.ArgumentParser(
        prog="cli",
        description="Image complex networks, saliency, segmentation and topology simulation.",
    )
    parser.add_argument("--log-level", default=settings.log_level, help="(default: %(default)s)")
    subs = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")

    build = subs.add_parser("build", help="image -> network edge list")
    _path(build, "--in", _IN + "image", required=True, help_text="PGM/PPM image")
    _path(build, "--out", _OUT + "edges", required=True, help_text="edge-list output")
    _path(build, "--positions", _OUT + "positions", help_text="node positions CSV output")
    build.add_argument(
        "--builder",
        choices=["similarity", "lines"],
        default="similarity",
        help="pixel-similarity network or edge-pixel line network (default: %(default)s)",
    )
    _similarity_flags(build, settings)
    _line_flags(build, settings)

    measure = subs.add_parser("measure", help="node and graph measurements of an edge list")
    _path(measure, "--graph", _IN + "graph", required=True, help_text="edge-list input")
    _path(measure, "--positions-in", _IN + "positions", help_text="node positions CSV")
    _path(measure, "--features", _OUT + "features", help_text="per-node features CSV output")
    _path(measure, "--histogram", _OUT + "histogram", help_text="degree histogram CSV output")
    _path(measure, "--summary", _OUT + "summary", help_text="graph summary CSV output")

    saliency = subs.add_parser("saliency", help="random-walk saliency of edge pixels")
    _path(saliency, "--in", _IN + "image", required=True, help_text="PGM/PPM image")
    _path(saliency, "--map", _OUT + "map", help_text="saliency map PGM output")
    _path(saliency, "--csv", _OUT + "csv", help_text="raw occupancy CSV output")
    _path(saliency, "--indices", _IN + "indices", help_text="x,y,s CSV of saliency priors")
    _line_flags(saliency, settings)
    saliency.add_argument("--tol", type=float, default=settings.tol, help="(default: %(default)s)")
    saliency.add_argument(
        "--max-iter", type=int, default=settings.max_iter, help="(default: %(default)s)"
    )

    segment = subs.add_parser("segment", help="community segmentation of an image")
    _path(segment, "--in", _IN + "image", required=True, help_text="PGM/PPM image")
    _path(segment, "--labels", _OUT + "labels", required=True, help_text="x,y,label CSV output")
    _path(segment, "--preview", _OUT + "preview", help_text="label preview PGM output")
    _similarity_flags(segment, settings)
    segment.add_argument(
        "--method",
        choices=["greedy_modularity", "label_propagation"],
        default=settings.community_method,
        help="(default: %(default)s)",
    )
    segment.add_argument("--seed", type=int, default=settings.seed, help="(default: %(default)s)")
    segment.add_argument(
        "--min-size",
        type=int,
        default=0,
        help="merge communities smaller than this into a neighbour (default: %(default)s)",
    )

    texture = subs.add_parser("texture", help="region texture features and classification")
    _path(texture, "--in", _IN + "image", required=True, help_text="PGM/PPM image")
    _path(texture, "--labels", _IN + "labels", help_text="x,y,label CSV defining regions")
    texture.add_argument("--tile", type=int, default=None, help="square tile regions of this size")
    _path(texture, "--out", _OUT + "features", required=True, help_text="region features CSV")
    _path(texture, "--centroids", _IN + "centroids", help_text="labelled centroid CSV")
    _path(
        texture,
        "--centroids-out",
        _OUT + "centroids",
        help_text="write each region's features as a centroid labelled by its region",
    )
    _path(texture, "--predictions", _OUT + "predictions", help_text="region,label CSV output")
    _similarity_flags(texture, settings)

    gen_topo = subs.add_parser("gen-topo", help="generate a processor topology")
    _path(gen_topo, "--config", _IN + "config", required=True, help_text="key = value config file")
    _path(gen_topo, "--out", _OUT + "edges", required=True, help_text="edge-list output")
    _path(gen_topo, "--positions", _OUT + "positions", help_text="positions CSV (lattice only)")
    _path(gen_topo, "--stats", _OUT + "stats", help_text="topology statistics CSV output")
    gen_topo.add_argument("--retry", action="store_true", help="reseed until connected")

    simulate = subs.add_parser("simulate", help="simulate a frame stream over a topology")
    _path(simulate, "--config", _IN + "config", required=True, help_text="key = value config file")
    _path(simulate, "--out", _OUT + "results", required=True, help_text="results CSV output")
    _path(simulate, "--nodes", _OUT + "nodes", help_text="per-processor load CSV output")
    simulate.add_argument("--master", type=int, default=None, help="override the master node")
    simulate.add_argument("--retry", action="store_true", help="reseed until connected")

    sweep = subs.add_parser("sweep", help="simulate every topology model over several seeds")
    _path(sweep, "--out", _OUT + "results", required=True, help_text="results CSV output")
    sweep.add_argument(
        "--models",
        nargs="+",
        choices=[str(m) for m in TopologyModel],
        default=[str(m) for m in TopologyModel],
    )
    sweep.add_argument("--n", type=int, default=64, help="processors (default: %(default)s)")
    sweep.add_argument("--seeds", type=int, default=1, help="(default: %(default)s)")
    sweep.add_argument("--seed", type=int, default=settings.seed, help="first seed")
    sweep.add_argument("--p", type=float, default=0.1)
    sweep.add_argument("--k", type=int, default=4)
    sweep.add_argument("--p-rew", type=float, default=0.1)
    sweep.add_argument("--m", type=int, default=2)
    sweep.add_argument("--frames", type=int, default=100)
    sweep.add_argument("--t-proc", type=float, default=1.0)
    sweep.add_argument("--t-hop", type=float, default=0.05)
    sweep.add_argument("--frame-bits", type=float, default=0.0)
    sweep.add_argument("--bandwidth", default="inf")
    sweep.add_argument("--no-retry", action="store_true", help="keep disconnected topologies")

    evaluate = subs.add_parser("evaluate", help="compare a label CSV against ground truth")
    _path(evaluate, "--pred", _IN + "predicted", required=True, help_text="predicted x,y,label CSV")
    _path(evaluate, "--truth", _IN + "truth", required=True, help_text="true x,y,label CSV")
    _path(evaluate, "--out", _OUT + "scores", required=True, help_text="scores CSV output")

    return parser


def _sweep_config(args: argparse.Namespace) -> SweepConfig:
    return SweepConfig(
        models=[TopologyModel(m) for m in args.models],
        n=args.n,
        seeds=args.seeds,
        base_seed=args.seed,
        p=args.p,
        k=args.k,
        p_rew=args.p_rew,
        m=args.m,
        retry=not args.no_retry,
        workload=Workload(
            frames=args.frames,
            t_proc=args.t_proc,
            t_hop=args.t_hop,
            frame_bits=args.frame_bits,
            bandwidth=args.bandwidth,
        ),
    )


def to_run_config(args: argparse.Namespace) -> RunConfig:
    values: dict[str, Any] = vars(args).copy()
    inputs = {k[len(_IN) :]: v for k, v in values.items() if k.startswith(_IN) and v is not None}
    outputs = {k[len(_OUT) :]: v for k, v in values.items() if k.startswith(_OUT) and v is not None}
    options = {
        k: v
        for k, v in values.items()
        if k in RunConfig.model_fields and k not in {"inputs", "outputs"} and v is not None
    }
    try:
        if args.subcommand == "sweep":
            options["sweep"] = _sweep_config(args)
        return RunConfig(inputs=inputs, outputs=outputs, **options)
    except ValidationError as exc:
        raise ConfigurationError(f"invalid options: {exc.errors()[0]['msg']}") from exc


def run(config: RunConfig) -> int:
    handler = HANDLERS.get(config.subcommand)
    if handler is None:
        raise ConfigurationError(f"unknown subcommand {config.subcommand!r}")
    handler(config)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return run(to_run_config(args))
    except NetVisionError as exc:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {exc.message}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
