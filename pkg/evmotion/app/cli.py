# -*- coding: utf-8 -*-

import logging
from argparse import ArgumentParser, Namespace, RawDescriptionHelpFormatter
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from evmotion import __version__ as version
from evmotion.app.config import RunConfig, load_run_config, log_resolved, override
from evmotion.app.logs import setup_logging
from evmotion.codec.coding import ReportCoding, write_report
from evmotion.codec.events import load_events
from evmotion.codec.flo import read_flo
from evmotion.codec.pgm import read_mask, write_mask
from evmotion.codec.raw import read_raw_f32, write_raw_f32
from evmotion.codec.tracks import read_object_masks, read_tracks
from evmotion.curation.crop import CropRect
from evmotion.curation.pipeline import CurationContext, curate_manifest, load_manifest
from evmotion.curation.pool import pool_summary, write_pool_jsonl
from evmotion.curation.queries import sample_queries
from evmotion.distillmath.attention import Normalization, attention_loss_from_maps
from evmotion.distillmath.loss import flow_loss, total_loss, track_loss
from evmotion.distillmath.warp import backward_warp, warp_and_blend
from evmotion.driver.json import json_dumps_text
from evmotion.errors import (
    EXIT_INPUT_ERROR,
    EXIT_SUCCESS,
    ConfigError,
    EvmotionError,
    ParseError,
)
from evmotion.evmask.mask import WindowMode, event_motion_masks
from evmotion.evstream.model import EventStream
from evmotion.evstream.stack import build_event_stack
from evmotion.flowdecomp.decompose import decompose_flow
from evmotion.flowdecomp.field import load_flow_field, read_flow_field
from evmotion.ieianalysis.histogram import IEIConfig, compare_streams, iei_histogram
from evmotion.ieianalysis.interval import compute_iei_many
from evmotion.tapeval.oats import aggregate_scenes, oats_csv, oats_suite
from evmotion.variables import (
    DEFAULT_CLOSE_KERNEL,
    DEFAULT_CONF_MIN,
    DEFAULT_IEI_BINS,
    DEFAULT_K_MAD,
    DEFAULT_LOSS_GAMMA,
    DEFAULT_LOSS_LAMBDA,
    DEFAULT_MAX_ENTRIES_PER_START,
    DEFAULT_MAX_POINTS,
    DEFAULT_MIN_AREA_RATIO,
    DEFAULT_MIN_COMPONENT,
    DEFAULT_MIN_FLOW_MAG,
    DEFAULT_N_NARROW,
    DEFAULT_N_WIDE,
    DEFAULT_OBJECT_FRACTION,
    DEFAULT_OPEN_KERNEL,
    DEFAULT_RANSAC_ITERATIONS,
    DEFAULT_REPROJ_THRESHOLD,
    DEFAULT_SECOND_PASS_DISCARD,
    DEFAULT_SEQUENCE_TEMPERATURE,
    DEFAULT_STACK_BINS,
    DEFAULT_STACK_EVENTS,
    DEFAULT_VIS_MIN,
    MAD_CONSISTENCY_CONSTANT,
    OATS_DELTAS,
)

logger = logging.getLogger(__name__)

PROGRAM = "evmotion"
DESCRIPTION = "Event-stream, flow decomposition and tracking-metric toolkit"
EPILOG = f"""
object mask threshold: tau = median + k_mad * {MAD_CONSISTENCY_CONSTANT} * MAD
OATS thresholds: {", ".join(str(d) for d in OATS_DELTAS)} px
"""

CommandCallable = Callable[[Namespace, RunConfig], int]


def _flag(help_text: str, default: Any) -> str:
    return f"{help_text} (default: {default})"


def _add_events_input(parser: ArgumentParser, *, flag="--events") -> None:
    parser.add_argument(flag, required=True, type=Path, help="binary or CSV events")
    parser.add_argument("--width", type=int, default=0, help="sensor width for CSV")
    parser.add_argument("--height", type=int, default=0, help="sensor height for CSV")


def _add_timestamps(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--t",
        dest="timestamps",
        type=int,
        action="append",
        default=None,
        help="frame timestamp in microseconds, repeatable",
    )
    parser.add_argument("--times", type=Path, help="file with one timestamp per line")


def _add_seed(parser: ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, help="random seed (required)")


def _add_ransac_flags(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--reproj-threshold",
        type=float,
        help=_flag("RANSAC inlier threshold in px", DEFAULT_REPROJ_THRESHOLD),
    )
    parser.add_argument(
        "--iterations",
        type=int,
        help=_flag("RANSAC minimal samples", DEFAULT_RANSAC_ITERATIONS),
    )
    parser.add_argument(
        "--second-pass-discard",
        type=float,
        help=_flag("share of worst inliers dropped", DEFAULT_SECOND_PASS_DISCARD),
    )
    parser.add_argument(
        "--min-flow-mag",
        type=float,
        help=_flag("minimum flow magnitude in px", DEFAULT_MIN_FLOW_MAG),
    )
    parser.add_argument(
        "--vis-min", type=float, help=_flag("visibility cut", DEFAULT_VIS_MIN)
    )
    parser.add_argument(
        "--conf-min", type=float, help=_flag("confidence cut", DEFAULT_CONF_MIN)
    )
    parser.add_argument(
        "--max-points",
        type=int,
        help=_flag("valid flow vectors kept", DEFAULT_MAX_POINTS),
    )
    parser.add_argument(
        "--k-mad", type=float, help=_flag("MAD multiplier", DEFAULT_K_MAD)
    )
    parser.add_argument(
        "--open-kernel",
        type=int,
        help=_flag("opening ellipse size", DEFAULT_OPEN_KERNEL),
    )
    parser.add_argument(
        "--close-kernel",
        type=int,
        help=_flag("closing ellipse size", DEFAULT_CLOSE_KERNEL),
    )
    parser.add_argument(
        "--min-component",
        type=int,
        help=_flag("smallest kept blob in px", DEFAULT_MIN_COMPONENT),
    )


def _write_json(path: Path, data: Any, cfg: RunConfig) -> Path:
    target = write_report(path, data, cfg.report_coding)
    logger.info("wrote %s", target)
    return target


def _require_seed(args: Namespace, cfg: RunConfig) -> int:
    seed = args.seed if args.seed is not None else cfg.seed
    if seed is None:
        raise ConfigError("this command requires --seed", "seed")
    if seed < 0:
        raise ConfigError(f"must be non-negative, got {seed}", "seed")
    return seed


def _load_stream(path: Path, args: Namespace) -> EventStream:
    return load_events(path, width=args.width, height=args.height)


def read_timestamps(path: Path) -> List[int]:
    timestamps = list()
    offset = 0
    for line in path.read_bytes().splitlines(keepends=True):
        text = line.decode("utf-8").split(",")[0].strip()
        if text and not text.startswith("#") and text != "t_us":
            try:
                timestamps.append(int(text))
            except ValueError:
                raise ParseError(f"invalid timestamp {text!r}", offset=offset)
        offset += len(line)
    return timestamps


def _timestamps(args: Namespace) -> List[int]:
    timestamps = list(args.timestamps or [])
    if args.times is not None:
        timestamps.extend(read_timestamps(args.times))
    if not timestamps:
        raise ConfigError("give at least one --t or a --times file", "timestamps")
    return timestamps


def _ordered_map(cfg: RunConfig, func: Callable, items: List[Any]) -> List[Any]:
    if cfg.workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
        return list(executor.map(func, items))


def _read_flow(path: Path) -> np.ndarray:
    if path.suffix.lower() == ".flo":
        return read_flo(path)
    array, _ = read_raw_f32(path)
    return array


def cmd_stack(args: Namespace, cfg: RunConfig) -> int:
    stack_cfg = override(cfg.stack, events=args.n, bins=args.bins).validate()
    stream = _load_stream(args.events, args)
    out_dir: Path = args.out

    def export(t: int) -> str:
        stack = build_event_stack(stream, t, stack_cfg)
        meta = {
            "width": stack.width,
            "height": stack.height,
            "B": stack.bins,
            "t_ref": stack.t_ref,
            "counts": list(stack.counts),
        }
        target, _ = write_raw_f32(out_dir / f"stack_{t}.bin", stack.as_float32(), meta)
        return str(target)

    written = _ordered_map(cfg, export, _timestamps(args))
    logger.info("wrote %d event stacks to %s", len(written), out_dir)
    return EXIT_SUCCESS


def _iei_config(args: Namespace, cfg: RunConfig) -> IEIConfig:
    return override(cfg.iei, bins=args.bins, iei_max=args.max).validate()


def cmd_iei(args: Namespace, cfg: RunConfig) -> int:
    iei_cfg = _iei_config(args, cfg)
    streams = [_load_stream(path, args) for path in args.events]
    intervals = compute_iei_many(streams)
    histogram = iei_histogram(
        intervals, iei_cfg.bins, iei_cfg.iei_max, iei_cfg.percentile
    )
    out: Path = args.out
    out.parent.mkdir(parents=True, exist_ok=True)
    out.with_suffix(".csv").write_text(histogram.to_csv(), encoding="utf-8")
    summary = {
        "samples": histogram.total_samples,
        "mean_us": histogram.mean,
        "iei_max_us": histogram.iei_max,
        "bins": histogram.bins,
        "peak_bin": histogram.peak_bin,
    }
    _write_json(out.with_suffix(".json"), summary, cfg)
    return EXIT_SUCCESS


def cmd_compare(args: Namespace, cfg: RunConfig) -> int:
    iei_cfg = _iei_config(args, cfg)
    real = _load_stream(args.real, args)
    synth = _load_stream(args.synth, args)
    report = compare_streams(
        real, synth, iei_cfg.bins, iei_cfg.iei_max, iei_cfg.percentile
    )
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    (out / "real.csv").write_text(report.real.to_csv(), encoding="utf-8")
    (out / "synth.csv").write_text(report.synth.to_csv(), encoding="utf-8")
    summary = {
        "mean_real_us": report.mean_real,
        "mean_synth_us": report.mean_synth,
        "mean_ratio": report.mean_ratio,
        "iei_max_us": report.real.iei_max,
        "bins": report.real.bins,
    }
    _write_json(out / "comparison.json", summary, cfg)
    return EXIT_SUCCESS


def _ransac_configs(args: Namespace, cfg: RunConfig, seed: int):
    ransac = override(
        cfg.ransac,
        reproj_threshold=args.reproj_threshold,
        iterations=args.iterations,
        second_pass_discard=args.second_pass_discard,
        min_flow_mag=args.min_flow_mag,
        vis_min=args.vis_min,
        conf_min=args.conf_min,
        max_points=args.max_points,
        seed=seed,
    ).validate()
    masking = override(
        cfg.masking,
        k_mad=args.k_mad,
        open_kernel=args.open_kernel,
        close_kernel=args.close_kernel,
        min_component=args.min_component,
    ).validate()
    return ransac, masking


def cmd_decompose(args: Namespace, cfg: RunConfig) -> int:
    seed = _require_seed(args, cfg)
    ransac, masking = _ransac_configs(args, cfg, seed)
    fields = [read_flow_field(args.flow, args.visibility, args.confidence)]
    for path in args.extra_flow or []:
        fields.append(load_flow_field(path))
    result = decompose_flow(fields, ransac, masking, np.random.default_rng(seed))

    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    _write_json(out / "affine.json", result.model.to_json(), cfg)
    write_mask(out / "mask.pgm", result.mask)
    write_mask(out / "mask_raw.pgm", result.raw_mask)
    summary = {
        "samples": result.samples,
        "tau": result.threshold.tau,
        "median": result.threshold.median,
        "mad": result.threshold.mad,
        "area_ratio": result.area_ratio,
    }
    _write_json(out / "decomposition.json", summary, cfg)
    return EXIT_SUCCESS


def cmd_curate(args: Namespace, cfg: RunConfig) -> int:
    seed = _require_seed(args, cfg)
    ransac, masking = _ransac_configs(args, cfg, seed)
    curation = override(
        cfg.curation,
        min_area_ratio=args.min_area_ratio,
        max_entries_per_start=args.max_entries,
        temperature=args.temperature,
    ).validate()
    stack = override(cfg.stack, events=args.n).validate()
    ctx = CurationContext(
        curation=curation,
        stack=stack,
        ransac=ransac,
        masking=masking,
        seed=seed,
        out_dir=args.out,
        base_dir=args.manifest.parent,
    )
    pool = curate_manifest(load_manifest(args.manifest), ctx, cfg.workers)
    write_pool_jsonl(args.out / "pool.jsonl", pool.entries)
    _write_json(args.out / "stats.json", pool_summary(pool, curation.temperature), cfg)
    return EXIT_SUCCESS


def cmd_sample(args: Namespace, cfg: RunConfig) -> int:
    seed = _require_seed(args, cfg)
    fraction = args.object_fraction
    if fraction is None:
        fraction = cfg.curation.object_fraction
    mask = read_mask(args.mask)
    crop = CropRect(x=0, y=0, width=mask.shape[1], height=mask.shape[0])
    queries = sample_queries(
        mask, crop, args.n_queries, np.random.default_rng(seed), fraction, args.t_query
    )
    report = {
        "points": queries.points.tolist(),
        "origins": [origin.value for origin in queries.origins],
        "object": queries.object_count,
        "uniform": len(queries) - queries.object_count,
        "fallback": queries.fallback,
    }
    _write_json(args.out, report, cfg)
    return EXIT_SUCCESS


def cmd_evmask(args: Namespace, cfg: RunConfig) -> int:
    window = override(
        cfg.evmask,
        n_wide=args.n_wide,
        n_narrow=args.n_narrow,
        mode=None if args.mode is None else WindowMode(args.mode),
        wide_us=args.wide_us,
        narrow_us=args.narrow_us,
    ).validate()
    stream = _load_stream(args.events, args)
    out: Path = args.out
    count = 0
    for t, mask in event_motion_masks(stream, _timestamps(args), window):
        write_mask(out / f"mask_{t}.pgm", mask)
        count += 1
    logger.info("wrote %d event motion masks to %s", count, out)
    return EXIT_SUCCESS


def cmd_oats(args: Namespace, cfg: RunConfig) -> int:
    if len(args.tracks) != len(args.masks):
        raise ConfigError("give one --masks manifest per --tracks file", "masks")
    scenes = args.scene or [Path(p).stem for p in args.tracks]
    if len(scenes) != len(args.tracks):
        raise ConfigError("give one --scene name per --tracks file", "scene")
    event_mask = None if args.event_mask is None else read_mask(args.event_mask)

    def evaluate(item):
        scene, tracks, masks = item
        return oats_suite(
            read_tracks(tracks), read_object_masks(masks), event_mask, cfg.oats, scene
        )

    reports = _ordered_map(cfg, evaluate, list(zip(scenes, args.tracks, args.masks)))
    report = reports[0] if len(reports) == 1 else aggregate_scenes(reports)
    out: Path = args.out
    _write_json(out, report, cfg)
    rows = reports if len(reports) == 1 else reports + [report]
    out.with_suffix(".csv").write_text(oats_csv(rows, args.model), encoding="utf-8")
    return EXIT_SUCCESS


def _raw(path: Optional[Path]) -> Optional[np.ndarray]:
    if path is None:
        return None
    array, _ = read_raw_f32(path)
    return array


def cmd_loss(args: Namespace, cfg: RunConfig) -> int:
    loss_cfg = override(cfg.loss, gamma=args.gamma, flow_weight=args.flow_weight)
    loss_cfg = loss_cfg.validate()
    report: Dict[str, Optional[float]] = {"track": None, "flow": None, "attn": None}
    if args.track_preds is not None:
        if args.track_pseudo is None or args.track_visibility is None:
            raise ConfigError("track loss needs --track-pseudo and --track-visibility")
        report["track"] = track_loss(
            _raw(args.track_preds),
            _raw(args.track_pseudo),
            _raw(args.track_visibility),
            _raw(args.track_confidence),
            loss_cfg,
        )
    if args.flow_preds is not None:
        if args.flow_pseudo is None:
            raise ConfigError("flow loss needs --flow-pseudo", "flow_pseudo")
        report["flow"] = flow_loss(
            _raw(args.flow_preds), _read_flow(args.flow_pseudo), loss_cfg
        )
    if args.attn_maps is not None:
        if args.attn_targets is None or args.attn_visibility is None:
            raise ConfigError(
                "attention loss needs --attn-targets and --attn-visibility"
            )
        report["attn"] = attention_loss_from_maps(
            _raw(args.attn_maps),
            _raw(args.attn_targets),
            _raw(args.attn_visibility),
            args.query_frame,
            backward_maps=_raw(args.attn_backward_maps),
            mode=Normalization(args.normalization),
            temperature=args.temperature,
        )
    report["total"] = total_loss(
        report["track"] or 0.0, report["flow"] or 0.0, loss_cfg.flow_weight
    )
    print(json_dumps_text(report))
    if args.out is not None:
        _write_json(args.out, report, cfg)
    return EXIT_SUCCESS


def cmd_warp(args: Namespace, cfg: RunConfig) -> int:
    image, meta = read_raw_f32(args.image)
    flow = _read_flow(args.flow)
    if args.image1 is None:
        warped = backward_warp(image, flow)
    else:
        if args.flow1 is None:
            raise ConfigError("blending needs --flow1", "flow1")
        image1, _ = read_raw_f32(args.image1)
        flow1 = _read_flow(args.flow1)
        warped = warp_and_blend(image, image1, flow, flow1, args.t_norm)
    write_raw_f32(args.out, warped, {k: v for k, v in meta.items() if k != "shape"})
    return EXIT_SUCCESS


def _build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog=PROGRAM,
        description=DESCRIPTION,
        epilog=EPILOG,
        formatter_class=RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=version)
    parser.add_argument("--config", type=Path, help="YAML or JSON run configuration")
    parser.add_argument("--log-level", help="logging level (default: INFO)")
    parser.add_argument(
        "--report-coding",
        choices=[c.value for c in ReportCoding],
        help="report encoding (default: json)",
    )
    parser.add_argument("--workers", type=int, help="worker threads (default: 1)")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    stack = commands.add_parser("stack", help="build multi-scale event stacks")
    _add_events_input(stack)
    _add_timestamps(stack)
    stack.add_argument(
        "--n", type=int, help=_flag("events per stack", DEFAULT_STACK_EVENTS)
    )
    stack.add_argument(
        "--bins", type=int, help=_flag("temporal bins", DEFAULT_STACK_BINS)
    )
    stack.add_argument("--out", type=Path, required=True, help="output directory")
    stack.set_defaults(func=cmd_stack)

    iei = commands.add_parser("iei", help="inter-event interval histogram")
    iei.add_argument("--events", type=Path, nargs="+", required=True)
    iei.add_argument("--width", type=int, default=0, help="sensor width for CSV")
    iei.add_argument("--height", type=int, default=0, help="sensor height for CSV")
    iei.add_argument("--bins", type=int, help=_flag("histogram bins", DEFAULT_IEI_BINS))
    iei.add_argument("--max", type=float, help="histogram range in us (default: auto)")
    iei.add_argument("--out", type=Path, required=True, help="output CSV/JSON stem")
    iei.set_defaults(func=cmd_iei)

    compare = commands.add_parser("compare", help="compare real and synthetic IEIs")
    compare.add_argument("--real", type=Path, required=True)
    compare.add_argument("--synth", type=Path, required=True)
    compare.add_argument("--width", type=int, default=0, help="sensor width for CSV")
    compare.add_argument("--height", type=int, default=0, help="sensor height for CSV")
    compare.add_argument(
        "--bins", type=int, help=_flag("histogram bins", DEFAULT_IEI_BINS)
    )
    compare.add_argument("--max", type=float, help="shared range in us (default: auto)")
    compare.add_argument("--out", type=Path, required=True, help="output directory")
    compare.set_defaults(func=cmd_compare)

    decompose = commands.add_parser("decompose", help="ego/object flow decomposition")
    decompose.add_argument("--flow", type=Path, required=True, help=".flo field")
    decompose.add_argument("--visibility", type=Path, help="raw float32 visibility")
    decompose.add_argument("--confidence", type=Path, help="raw float32 confidence")
    decompose.add_argument(
        "--extra-flow",
        type=Path,
        action="append",
        help="more .flo fields to pool, with their .vis.f32/.conf.f32 planes",
    )
    _add_seed(decompose)
    _add_ransac_flags(decompose)
    decompose.add_argument("--out", type=Path, required=True, help="output directory")
    decompose.set_defaults(func=cmd_decompose)

    curate = commands.add_parser("curate", help="build the motion-aware crop pool")
    curate.add_argument("--manifest", type=Path, required=True, help="YAML/JSON")
    _add_seed(curate)
    _add_ransac_flags(curate)
    curate.add_argument(
        "--n", type=int, help=_flag("events for density", DEFAULT_STACK_EVENTS)
    )
    curate.add_argument(
        "--min-area-ratio",
        type=float,
        help=_flag("minimum mask area ratio", DEFAULT_MIN_AREA_RATIO),
    )
    curate.add_argument(
        "--max-entries",
        type=int,
        help=_flag("entries per start", DEFAULT_MAX_ENTRIES_PER_START),
    )
    curate.add_argument(
        "--temperature",
        type=float,
        help=_flag("sequence softmax temperature", DEFAULT_SEQUENCE_TEMPERATURE),
    )
    curate.add_argument("--out", type=Path, required=True, help="output directory")
    curate.set_defaults(func=cmd_curate)

    sample = commands.add_parser("sample", help="allocate query points on a mask")
    sample.add_argument("--mask", type=Path, required=True, help="PGM object mask")
    sample.add_argument("--n-queries", type=int, required=True)
    sample.add_argument(
        "--object-fraction",
        type=float,
        help=_flag("share of object queries", DEFAULT_OBJECT_FRACTION),
    )
    sample.add_argument("--t-query", type=int, default=0, help="query frame index")
    _add_seed(sample)
    sample.add_argument("--out", type=Path, required=True, help="output report")
    sample.set_defaults(func=cmd_sample)

    evmask = commands.add_parser("evmask", help="event motion masks per frame time")
    _add_events_input(evmask)
    _add_timestamps(evmask)
    evmask.add_argument(
        "--n-wide", type=int, help=_flag("wide window events", DEFAULT_N_WIDE)
    )
    evmask.add_argument(
        "--n-narrow", type=int, help=_flag("narrow window events", DEFAULT_N_NARROW)
    )
    evmask.add_argument(
        "--mode",
        choices=[m.value for m in WindowMode],
        help="window mode (default: count_based)",
    )
    evmask.add_argument("--wide-us", type=int, help="wide duration, time mode")
    evmask.add_argument("--narrow-us", type=int, help="narrow duration, time mode")
    evmask.add_argument("--out", type=Path, required=True, help="output directory")
    evmask.set_defaults(func=cmd_evmask)

    oats = commands.add_parser("oats", help="object-adherent trajectory score")
    oats.add_argument("--tracks", type=Path, nargs="+", required=True)
    oats.add_argument("--masks", type=Path, nargs="+", required=True)
    oats.add_argument("--scene", nargs="+", help="scene names (default: file stems)")
    oats.add_argument("--event-mask", type=Path, help="PGM event motion mask")
    oats.add_argument("--model", default="model", help="model column of the CSV")
    oats.add_argument("--out", type=Path, required=True, help="output report")
    oats.set_defaults(func=cmd_oats)

    loss = commands.add_parser("loss", help="distillation loss breakdown")
    loss.add_argument("--track-preds", type=Path, help="(K, N, T, 2) raw float32")
    loss.add_argument("--track-pseudo", type=Path, help="(N, T, 2) raw float32")
    loss.add_argument("--track-visibility", type=Path, help="(N, T) raw float32")
    loss.add_argument("--track-confidence", type=Path, help="(N, T) raw float32")
    loss.add_argument("--flow-preds", type=Path, help="(K, H, W, 2) raw float32")
    loss.add_argument("--flow-pseudo", type=Path, help=".flo or raw float32")
    loss.add_argument("--attn-maps", type=Path, help="(heads, T, H, W) raw float32")
    loss.add_argument("--attn-backward-maps", type=Path, help="backward direction")
    loss.add_argument("--attn-targets", type=Path, help="(T, 2) raw float32")
    loss.add_argument("--attn-visibility", type=Path, help="(T,) raw float32")
    loss.add_argument("--query-frame", type=int, default=0)
    loss.add_argument(
        "--normalization",
        choices=[n.value for n in Normalization],
        default=Normalization.SUM.value,
    )
    loss.add_argument("--temperature", type=float, default=1.0)
    loss.add_argument("--gamma", type=float, help=_flag("decay", DEFAULT_LOSS_GAMMA))
    loss.add_argument(
        "--flow-weight", type=float, help=_flag("lambda", DEFAULT_LOSS_LAMBDA)
    )
    loss.add_argument("--out", type=Path, help="optional report file")
    loss.set_defaults(func=cmd_loss)

    warp = commands.add_parser("warp", help="backward warp and bidirectional blend")
    warp.add_argument("--image", type=Path, required=True, help="raw float32 latent")
    warp.add_argument("--flow", type=Path, required=True, help=".flo or raw float32")
    warp.add_argument("--image1", type=Path, help="second keyframe latent")
    warp.add_argument("--flow1", type=Path, help="flow towards the second keyframe")
    warp.add_argument("--t-norm", type=float, default=0.5)
    warp.add_argument("--out", type=Path, required=True, help="raw float32 output")
    warp.set_defaults(func=cmd_warp)
    return parser


def default_argparse(
    cmdline: Optional[List[Any]] = None,
    namespace: Optional[Namespace] = None,
) -> Namespace:
    parser = _build_parser()
    return parser.parse_args(
        args=[str(x) for x in cmdline] if cmdline is not None else None,
        namespace=namespace,
    )


def resolve_config(args: Namespace) -> RunConfig:
    cfg = load_run_config(args.config)
    coding = None if args.report_coding is None else ReportCoding(args.report_coding)
    cfg = override(
        cfg, log_level=args.log_level, report_coding=coding, workers=args.workers
    )
    return cfg.validate()


def _report_failure(error: BaseException, code: int) -> int:
    logger.error("%s", error, extra={"error": type(error).__name__, "exit_code": code})
    return code


def main(cmdline: Optional[List[Any]] = None) -> int:
    args = default_argparse(cmdline)
    setup_logging(args.log_level)
    try:
        cfg = resolve_config(args)
        setup_logging(cfg.log_level)
        log_resolved(cfg, args.command)
        func: CommandCallable = args.func
        return func(args, cfg)
    except EvmotionError as e:
        return _report_failure(e, e.exit_code)
    except FileNotFoundError as e:
        return _report_failure(
            FileNotFoundError(f"no such file: '{e.filename}'"), EXIT_INPUT_ERROR
        )
    except OSError as e:
        return _report_failure(e, EXIT_INPUT_ERROR)
