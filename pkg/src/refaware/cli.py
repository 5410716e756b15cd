"""Command-line entry points: analyze, serve, report."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, render
from .detect import DetectorConfig
from .errors import RefawareError
from .report import canonical_json
from .store import DocumentStore


def _error_doc(exc: Exception) -> str:
    code = type(exc).__name__
    body = {"error": {"code": code, "message": str(exc),
                      "field_path": getattr(exc, "field_path", None)}}
    return canonical_json(body)


def _load_config(args) -> DetectorConfig:
    cfg = DetectorConfig()
    if args.config:
        with open(args.config, encoding="utf-8") as f:
            cfg = cfg.merged(json.load(f))
    # CLI flags override the config file; key names match the fields.
    return cfg.merged({
        "tau_match": args.tau_match,
        "tau_extract": args.tau_extract,
        "min_extract_tokens": args.min_extract_tokens,
        "idf_smoothing": args.idf_smoothing,
    })


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with detector settings "
                   "(keys: tau_match, tau_extract, min_extract_tokens, idf_smoothing)")
    p.add_argument("--tau-match", type=float, dest="tau_match",
                   help="match threshold in (0,1], default 0.5")
    p.add_argument("--tau-extract", type=float, dest="tau_extract",
                   help="extraction threshold in (0,1], default 0.6")
    p.add_argument("--min-extract-tokens", type=int, dest="min_extract_tokens",
                   help="minimum token count for extraction candidates, default 8")
    p.add_argument("--idf-smoothing", type=float, dest="idf_smoothing",
                   help="document-frequency smoothing, default 1.0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="refaware",
        description="Refactoring-aware diff analysis for git change sets")
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="analyze a change set into a report")
    p_an.add_argument("--repo", required=True, help="path to a local git repository")
    p_an.add_argument("--base", required=True, help="integration base revision")
    p_an.add_argument("--head", help="head revision (commits taken from base..head)")
    p_an.add_argument("--commits", nargs="+",
                      help="explicit commit list, oldest first (overrides --head)")
    p_an.add_argument("--repo-id", default="local")
    p_an.add_argument("--change-set-id", default="change")
    p_an.add_argument("--out", help="write the report here instead of stdout")
    p_an.add_argument("--store", action="store_true",
                      help="also persist the report into --data-dir")
    p_an.add_argument("--data-dir", default="refaware-data")
    _add_config_flags(p_an)

    p_srv = sub.add_parser("serve", help="serve stored reports over REST")
    p_srv.add_argument("--port", type=int, default=8000)
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--data-dir", default="refaware-data")
    p_srv.add_argument("--static",
                       help="directory with the review UI build to serve at /")

    p_rep = sub.add_parser("report", help="render a report document")
    p_rep.add_argument("--in", dest="infile", required=True,
                       help="report JSON file, or - for stdin")
    p_rep.add_argument("--format", choices=["json", "table", "html"],
                       default="table")
    p_rep.add_argument("--out", help="write rendering here instead of stdout")
    return parser


def _cmd_analyze(args) -> int:
    cfg = _load_config(args)
    if not args.commits and not args.head:
        raise RefawareError("provide --head or --commits")
    doc = analysis.analyze(
        args.repo, args.base, commits=args.commits, head=args.head, cfg=cfg,
        repo_id=args.repo_id, change_set_id=args.change_set_id)
    text = canonical_json(doc)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.store:
        DocumentStore(args.data_dir).put_report(doc)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    static = args.static
    if static is None and Path("frontend/dist").is_dir():
        static = "frontend/dist"
    app = create_app(DocumentStore(args.data_dir), static_dir=static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_report(args) -> int:
    if args.infile == "-":
        doc = json.load(sys.stdin)
    else:
        with open(args.infile, encoding="utf-8") as f:
            doc = json.load(f)
    if args.format == "json":
        text = canonical_json(doc)
    elif args.format == "table":
        text = render.summary_table(doc)
    else:
        text = render.html_report(doc)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"analyze": _cmd_analyze, "serve": _cmd_serve, "report": _cmd_report}
    try:
        return handlers[args.command](args)
    except RefawareError as exc:
        sys.stderr.write(_error_doc(exc))
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(_error_doc(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
