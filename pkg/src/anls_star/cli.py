"""Command-line front end.

The CLI is a thin client of the HTTP service: by default it mounts the
service in-process and speaks HTTP over an ASGI transport, so no daemon is
needed; ``--server URL`` points it at a running instance instead.

Exit codes: 0 success, 1 usage error, 2 input/parse/write error.
Scores and summaries go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from pathlib import Path
from typing import Any

import httpx

from .errors import AnlsStarError, MalformedInput
from .evaluation import REPORT_FORMATS, EvalReport, records_from_text, render_report, write_report
from .similarity import SimilarityConfig
from .tree import loads_strict

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit(2); we reserve 2 for input errors
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="anls-star", description="Tree similarity scoring for structured model outputs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tau", type=float, default=0.5, help="similarity threshold in [0, 1] (default 0.5)")
        p.add_argument("--no-case-fold", action="store_true", help="compare strings case-sensitively")
        p.add_argument("--no-trim", action="store_true", help="keep leading/trailing whitespace")
        p.add_argument("--server", metavar="URL", help="use a running service instead of scoring in-process")

    p_score = sub.add_parser("score", help="score one prediction document against one ground-truth document")
    p_score.add_argument("ground_truth", help="path to the ground-truth JSON document")
    p_score.add_argument("prediction", help="path to the prediction JSON document")
    p_score.add_argument("--breakdown", action="store_true", help="also print per-key contributions")
    add_common(p_score)

    p_eval = sub.add_parser("eval", help="evaluate a prediction JSONL file against a ground-truth JSONL file")
    p_eval.add_argument("ground_truth", help="path to the ground-truth JSONL file")
    p_eval.add_argument("prediction", help="path to the prediction JSONL file")
    p_eval.add_argument("-o", "--output", help="report destination (default: standard output)")
    p_eval.add_argument("--format", choices=REPORT_FORMATS, default="json", help="report format")
    p_eval.add_argument("--breakdown", action="store_true", help="include per-key contributions in the report")
    p_eval.add_argument("--jobs", type=int, default=1, help="score samples concurrently (result-invariant)")
    add_common(p_eval)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "serve":
            return _cmd_serve(args)
        if getattr(args, "jobs", 1) < 1:
            raise _UsageError("--jobs must be at least 1")
        config = SimilarityConfig(tau=args.tau, case_fold=not args.no_case_fold, trim=not args.no_trim)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "score":
            return asyncio.run(_cmd_score(args, config))
        return asyncio.run(_cmd_eval(args, config))
    except (AnlsStarError, httpx.HTTPError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entrypoint() -> None:
    sys.exit(main())


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def _client(args: argparse.Namespace) -> httpx.AsyncClient:
    if args.server:
        return httpx.AsyncClient(base_url=args.server, timeout=300.0)
    from .service import app

    transport = httpx.ASGITransport(app=app)
    return httpx.AsyncClient(transport=transport, base_url="http://anls-star.internal", timeout=300.0)


async def _post(client: httpx.AsyncClient, path: str, payload: dict) -> dict:
    response = await client.post(path, json=payload)
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        raise MalformedInput(f"{detail}")
    return response.json()


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedInput(f"{path} is not valid UTF-8: {exc}") from None


def _config_payload(config: SimilarityConfig) -> dict[str, Any]:
    return {"tau": config.tau, "case_fold": config.case_fold, "trim": config.trim}


async def _cmd_score(args: argparse.Namespace, config: SimilarityConfig) -> int:
    gt_value = loads_strict(_read_text(args.ground_truth))
    pred_value = loads_strict(_read_text(args.prediction))
    payload = {
        "ground_truth": gt_value,
        "prediction": pred_value,
        "config": _config_payload(config),
        "breakdown": args.breakdown,
    }
    async with _client(args) as client:
        data = await _post(client, "/score", payload)
    print(f"{data['score']:.6f}")
    if args.breakdown:
        for key, entry in (data.get("per_key") or {}).items():
            print(f"{key}\ts={entry['s']}\tl={entry['l']}")
    return EXIT_OK


async def _cmd_eval(args: argparse.Namespace, config: SimilarityConfig) -> int:
    gt_records, _ = records_from_text(_read_text(args.ground_truth))
    pred_records, line_warnings = records_from_text(_read_text(args.prediction), lenient=True)
    for warning in line_warnings:
        print(f"warning: prediction {warning}", file=sys.stderr)
    payload = {
        "ground_truth": [{"id": sample_id, "value": value} for sample_id, value in gt_records],
        "predictions": [{"id": sample_id, "value": value} for sample_id, value in pred_records],
        "config": _config_payload(config),
        "breakdown": args.breakdown,
        "jobs": args.jobs,
    }
    async with _client(args) as client:
        data = await _post(client, "/evaluate", payload)
    for warning in data.get("warnings", []):
        print(f"warning: {warning}", file=sys.stderr)
    report = EvalReport.from_mapping(data)
    summary = f"mean={report.mean_score:.6f} failed={report.failed_count}"
    if args.output:
        write_report(report, args.output, args.format)
        print(summary)
    else:
        sys.stdout.write(render_report(report, args.format))
        print(summary, file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    entrypoint()
