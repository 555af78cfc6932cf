"""Operator command line wrapping every pipeline stage.

Exit codes: 0 success, 1 usage, 2 I/O, 3 validation failure. Logs go to
standard error; `--json-summary` prints one machine-readable line to
standard output. Settings resolve as defaults < config file < flags.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import socket
import sys
from pathlib import Path

from .config import MAX_CANVAS_SIDE, RunConfig
from .dataset import (
    MANIFEST_NAME,
    DatasetManifest,
    Sprite,
    generate_synthetic,
    import_curated,
    ingest_foreground,
    ingest_game_effect,
    read_manifest,
    write_manifest,
)
from .errors import ClipFormatError, ManifestFormatError
from .io import load_frame_png
from .validate import SUITES, run_checks

logger = logging.getLogger("alphamotion.cli")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VALIDATION = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad arguments; this tool reserves 2 for I/O."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="alphamotion", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="generate seeded synthetic clips plus manifest")
    synth.add_argument("--sprites", required=True, help="directory of RGBA sprite PNGs")
    synth.add_argument("--count", type=int, required=True, help="number of entries to generate")
    synth.add_argument("--seed", type=int, default=None)
    synth.add_argument("--config", default=None, help="JSON run-config file")
    synth.add_argument("--out", default=None, help="dataset root (default from config)")
    synth.add_argument("--json-summary", action="store_true")

    ingest = sub.add_parser("ingest", help="index external material into the dataset")
    ingest.add_argument("kind", choices=("game-effect", "foreground", "curated"))
    ingest.add_argument("--src", default=None, help="clip directory (game-effect, curated)")
    ingest.add_argument("--rgb", default=None, help="RGB frame directory (foreground)")
    ingest.add_argument("--masks", default=None, help="mask frame directory (foreground)")
    ingest.add_argument("--captions", default=None, help="caption JSONL file (curated)")
    ingest.add_argument("--threshold", type=float, default=None, help="motion filter threshold")
    ingest.add_argument("--id", dest="entry_id", default=None, help="entry id (foreground)")
    ingest.add_argument("--config", default=None)
    ingest.add_argument("--out", default=None)
    ingest.add_argument("--json-summary", action="store_true")

    validate = sub.add_parser("validate", help="run the invariant suite")
    validate.add_argument(
        "--suites",
        default="all",
        help=f"comma-separated subset of {','.join(sorted(SUITES))} (default: all)",
    )
    validate.add_argument("--schedule", default=None, help="also check a stored schedule file")
    validate.add_argument("--json-summary", action="store_true")

    serve = sub.add_parser("serve", help="run the preview HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--max-canvas", type=int, default=MAX_CANVAS_SIDE)

    return parser


def _load_config(args: argparse.Namespace, parser: _Parser) -> RunConfig:
    cfg = RunConfig()
    path = getattr(args, "config", None)
    if path is not None:
        try:
            cfg = RunConfig.load(path)
        except OSError as exc:
            logger.error("cannot read config %s: %s", path, exc)
            raise SystemExit(EXIT_IO)
        except (ValueError, TypeError) as exc:
            logger.error("bad config %s: %s", path, exc)
            raise SystemExit(EXIT_VALIDATION)
    overrides = {}
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "threshold", None) is not None:
        overrides["motion_threshold"] = args.threshold
    if getattr(args, "out", None) is not None:
        overrides["output_root"] = args.out
    if overrides:
        cfg = dataclasses.replace(cfg, **overrides)
    return cfg


def _load_sprites(directory: str) -> list[Sprite]:
    path = Path(directory)
    if not path.is_dir():
        logger.error("sprite directory not found: %s", path)
        raise SystemExit(EXIT_IO)
    sprites = []
    for png in sorted(path.glob("*.png")):
        try:
            sprites.append(Sprite(class_name=png.stem, frame=load_frame_png(png)))
        except (OSError, ValueError) as exc:
            logger.warning("skipping sprite %s: %s", png, exc)
    if not sprites:
        logger.error("no usable sprite PNGs in %s", path)
        raise SystemExit(EXIT_IO)
    return sprites


def _merge_into_manifest(root: Path, new_entries, extra_updates: dict) -> DatasetManifest:
    """Extend an existing manifest in place, or start one."""
    manifest_path = root / MANIFEST_NAME
    if manifest_path.is_file():
        manifest = read_manifest(manifest_path)
    else:
        manifest = DatasetManifest()
    manifest = DatasetManifest(
        entries=manifest.entries + tuple(new_entries),
        schema_version=manifest.schema_version,
        extra={**manifest.extra, **extra_updates},
    )
    write_manifest(manifest, manifest_path)
    return manifest


def _emit_summary(args: argparse.Namespace, summary: dict) -> None:
    if getattr(args, "json_summary", False):
        print(json.dumps(summary, sort_keys=True))


def _cmd_synth(args: argparse.Namespace, parser: _Parser) -> int:
    if args.count < 1:
        parser.error(f"--count must be >= 1, got {args.count}")
    cfg = _load_config(args, parser)
    sprites = _load_sprites(args.sprites)
    root = Path(cfg.output_root)
    entries = generate_synthetic(
        sprites,
        count=args.count,
        seed=cfg.seed,
        root=root,
        dist=cfg.distribution,
        canvas=cfg.canvas,
        frame_count=cfg.frame_count,
        fps=cfg.fps,
    )
    # synth owns its manifest: repeated runs with the same arguments must
    # produce identical bytes, so no merging with prior state.
    manifest = DatasetManifest(entries=tuple(entries), extra={"seed": cfg.seed})
    manifest_path = root / MANIFEST_NAME
    write_manifest(manifest, manifest_path)
    logger.info("wrote %d entries under %s", len(entries), root)
    _emit_summary(
        args,
        {
            "command": "synth",
            "entries": len(entries),
            "requested": args.count,
            "seed": cfg.seed,
            "manifest": str(manifest_path),
            "counts": manifest.counts,
        },
    )
    return EXIT_OK if len(entries) == args.count else EXIT_VALIDATION


def _cmd_ingest(args: argparse.Namespace, parser: _Parser) -> int:
    cfg = _load_config(args, parser)
    root = Path(cfg.output_root)
    root.mkdir(parents=True, exist_ok=True)
    extra: dict = {}
    if args.kind == "game-effect":
        if not args.src:
            parser.error("ingest game-effect requires --src")
        entries = ingest_game_effect(args.src, root)
        filtered = 0
    elif args.kind == "foreground":
        if not args.rgb or not args.masks:
            parser.error("ingest foreground requires --rgb and --masks")
        entry = ingest_foreground(
            args.rgb,
            args.masks,
            root,
            threshold=cfg.motion_threshold,
            fps=cfg.fps,
            entry_id=args.entry_id,
        )
        entries = [entry] if entry is not None else []
        filtered = 1 if entry is None else 0
        extra["foreground_threshold"] = cfg.motion_threshold
    else:
        if not args.src or not args.captions:
            parser.error("ingest curated requires --src and --captions")
        entries = import_curated(args.src, args.captions, root)
        filtered = 0
    manifest = _merge_into_manifest(root, entries, extra)
    logger.info("added %d entries (%d filtered) to %s", len(entries), filtered, root)
    _emit_summary(
        args,
        {
            "command": "ingest",
            "kind": args.kind,
            "added": len(entries),
            "filtered": filtered,
            "manifest": str(root / MANIFEST_NAME),
            "counts": manifest.counts,
        },
    )
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace, parser: _Parser) -> int:
    raw = args.suites.strip()
    if raw == "all":
        suites = None
    else:
        suites = [s.strip() for s in raw.split(",") if s.strip()]
        if not suites:
            parser.error("empty suite selection")
    try:
        results = run_checks(suites=suites, schedule_path=args.schedule)
    except ValueError as exc:
        parser.error(str(exc))
    failed = [r for r in results if not r.passed]
    for r in results:
        line = f"PASS {r.name}" if r.passed else f"FAIL {r.name}: {r.detail}"
        print(line)
    _emit_summary(
        args,
        {
            "command": "validate",
            "passed": len(results) - len(failed),
            "failed": len(failed),
            "failures": [r.name for r in failed],
        },
    )
    return EXIT_OK if not failed else EXIT_VALIDATION


def _cmd_serve(args: argparse.Namespace, parser: _Parser) -> int:
    if args.port < 1 or args.port > 65535:
        parser.error(f"port out of range: {args.port}")
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, args.port))
    except OSError as exc:
        logger.error("cannot bind %s:%d: %s", args.host, args.port, exc)
        return EXIT_IO
    finally:
        probe.close()

    import uvicorn

    from .server import create_app

    app = create_app(max_canvas_side=args.max_canvas)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(name)s: %(message)s"
    )
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_OK
    handlers = {
        "synth": _cmd_synth,
        "ingest": _cmd_ingest,
        "validate": _cmd_validate,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (ManifestFormatError, ClipFormatError, ValueError) as exc:
        logger.error("%s", exc)
        return EXIT_VALIDATION
    except OSError as exc:
        logger.error("%s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
