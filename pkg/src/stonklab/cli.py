"""Command-line client for the analysis service.

Each subcommand builds a request, posts it to the service and renders the
response. By default the service app is mounted in-process (no network, no
separate server); pass --server to target a running instance instead.

Exit codes: 0 success, 1 usage error, 2 input error, 3 annotation finished
with rejects.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from datetime import date
from pathlib import Path
from typing import Any

import httpx

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_PARTIAL = 3

VARIANT_NAMES = ("plain", "shifted", "stationary", "shifted-stationary")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we use 1
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_date(text: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad date {text!r}, expected YYYY-MM-DD")


def _parse_variants(text: str) -> list[str]:
    names = [v.strip() for v in text.split(",") if v.strip()]
    for name in names:
        if name not in VARIANT_NAMES:
            raise argparse.ArgumentTypeError(
                f"unknown variant {name!r}; choose from {', '.join(VARIANT_NAMES)}"
            )
    if not names:
        raise argparse.ArgumentTypeError("empty variant list")
    return names


def load_config_file(path: str) -> dict[str, str]:
    """Plain `key = value` configuration; `#` starts a comment."""
    data: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        data[key.strip()] = value.strip()
    return data


# config-file key -> (argparse dest, converter); flags always win
_CONFIG_FIELDS = {
    "posts": ("posts", str),
    "prices": ("prices", str),
    "trends": ("trends", str),
    "labels": ("labels", str),
    "from": ("start", date.fromisoformat),
    "to": ("end", date.fromisoformat),
    "variants": ("variants", lambda t: _parse_variants(t)),
    "maxlag": ("maxlag", int),
    "align": ("align", str),
    "agg": ("agg", str),
    "out": ("out", str),
    "ticker": ("ticker", str),
    "server": ("server", str),
    "scorer": ("scorer", str),
    "base-url": ("base_url", str),
    "model": ("model", str),
    "auth-env": ("auth_env", str),
}


def _apply_config(args: argparse.Namespace, config: dict[str, str]) -> None:
    for key, value in config.items():
        if key not in _CONFIG_FIELDS:
            raise ValueError(f"unknown config key {key!r}")
        dest, convert = _CONFIG_FIELDS[key]
        if getattr(args, dest, None) is None and hasattr(args, dest):
            setattr(args, dest, convert(value))


async def _post(server: str | None, path: str, payload: dict[str, Any]):
    """POST to a remote server, or to the in-process app when server is None."""
    if server:
        async with httpx.AsyncClient(base_url=server, timeout=None) as client:
            response = await client.post(path, json=payload)
            return response.status_code, response.json()
    from .service import create_app

    transport = httpx.ASGITransport(app=create_app())
    async with httpx.AsyncClient(
        transport=transport, base_url="http://stonklab.internal", timeout=None
    ) as client:
        response = await client.post(path, json=payload)
        return response.status_code, response.json()


def _call(server: str | None, path: str, payload: dict[str, Any]):
    # unset flags are omitted so the service's documented defaults apply
    cleaned = {k: v for k, v in payload.items() if v is not None}
    try:
        return asyncio.run(_post(server, path, cleaned))
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _fail_from_response(status: int, body: dict) -> int:
    detail = body.get("detail")
    if isinstance(detail, dict):
        kind = detail.get("kind", "input")
        print(f"error: {detail.get('message', body)}", file=sys.stderr)
        return EXIT_USAGE if kind == "usage" else EXIT_INPUT
    print(f"error ({status}): {json.dumps(body)}", file=sys.stderr)
    return EXIT_USAGE if status == 422 else EXIT_INPUT


def _date_payload(value: date | None) -> str | None:
    return value.isoformat() if value is not None else None


def _cmd_ingest_check(args) -> int:
    payload = {
        "posts": args.posts,
        "prices": args.prices,
        "trends": args.trends,
        "labels": args.labels,
    }
    if all(v is None for v in payload.values()):
        print("error: give at least one of --posts/--prices/--trends/--labels", file=sys.stderr)
        return EXIT_USAGE
    status, body = _call(args.server, "/ingest-check", payload)
    if status != 200:
        return _fail_from_response(status, body)
    for check in body["checks"]:
        if check["ok"]:
            extra = f", {check['malformed']} malformed" if check["malformed"] else ""
            print(f"OK   {check['kind']:7s} {check['path']}: {check['rows']} rows{extra}")
        else:
            print(f"FAIL {check['kind']:7s} {check['path']}: {check['error']}")
    return EXIT_OK if body["ok"] else EXIT_INPUT


def _cmd_sentiment(args) -> int:
    payload = {
        "posts": args.posts,
        "scorer": args.scorer,
        "agg": args.agg,
        "labels": args.labels,
        "lexicon": args.lexicon,
        "start": _date_payload(args.start),
        "end": _date_payload(args.end),
        "out": args.out,
    }
    status, body = _call(args.server, "/sentiment", payload)
    if status != 200:
        return _fail_from_response(status, body)
    series = body["series"]
    print(
        f"{body['posts_scored']} posts scored with {series['name']}; "
        f"{len(series['dates'])} daily values"
    )
    if body.get("out"):
        print(f"wrote {body['out']}")
    else:
        for d, v in zip(series["dates"], series["values"]):
            print(f"{d}: {v:.6f}")
    return EXIT_OK


def _cmd_analyze(args) -> int:
    payload = {
        "prices": args.prices,
        "posts": args.posts,
        "trends": args.trends,
        "labels": args.labels,
        "ticker": args.ticker,
        "start": _date_payload(args.start),
        "end": _date_payload(args.end),
        "variants": args.variants,
        "maxlag": args.maxlag,
        "align": args.align,
        "agg": args.agg,
        "out": args.out,
    }
    if payload["prices"] is None:
        print("error: --prices is required", file=sys.stderr)
        return EXIT_USAGE
    status, body = _call(args.server, "/analyze", payload)
    if status != 200:
        return _fail_from_response(status, body)
    print(body["markdown"])
    if body["files"]:
        print(f"wrote {len(body['files'])} file(s) under {args.out}:")
        for name in body["files"]:
            print(f"  {name}")
    return EXIT_OK


def _cmd_annotate(args) -> int:
    payload = {
        "posts": args.posts,
        "base_url": args.base_url,
        "model": args.model,
        "auth_env": args.auth_env,
        "max_in_flight": args.max_in_flight,
        "retry_limit": args.retry_limit,
        "timeout_seconds": args.timeout,
        "backoff_seconds": args.backoff,
        "out": args.out,
        "rejects_out": args.rejects_out,
        "transcript": args.transcript,
        "redact_transcript": args.redact,
        "start": _date_payload(args.start),
        "end": _date_payload(args.end),
    }
    for required in ("posts", "base_url", "model", "out"):
        if payload[required] is None:
            print(f"error: --{required.replace('_', '-')} is required", file=sys.stderr)
            return EXIT_USAGE
    status, body = _call(args.server, "/annotate", payload)
    if status != 200:
        return _fail_from_response(status, body)
    print(
        f"labeled {body['labeled']} post(s) in {body['batches_sent']} batch(es) "
        f"over {body['rounds']} round(s); wrote {body['out']}"
    )
    if body["rejected"]:
        print(
            f"{body['rejected']} post(s) rejected after retries; "
            f"see {body['rejects_out']}",
            file=sys.stderr,
        )
        return EXIT_PARTIAL
    return EXIT_OK


def _cmd_augment(args) -> int:
    payload = {
        "posts": args.posts,
        "labels": args.labels,
        "base_url": args.base_url,
        "model": args.model,
        "auth_env": args.auth_env,
        "max_in_flight": args.max_in_flight,
        "retry_limit": args.retry_limit,
        "timeout_seconds": args.timeout,
        "backoff_seconds": args.backoff,
        "per_batch": args.per_batch,
        "out": args.out,
        "transcript": args.transcript,
        "redact_transcript": args.redact,
    }
    for required in ("posts", "labels", "base_url", "model", "out"):
        if payload[required] is None:
            print(f"error: --{required.replace('_', '-')} is required", file=sys.stderr)
            return EXIT_USAGE
    status, body = _call(args.server, "/augment", payload)
    if status != 200:
        return _fail_from_response(status, body)
    print(
        f"generated {body['generated']} text(s) from {body['seeds']} seed(s); "
        f"wrote {body['out']}"
    )
    if body["shortfall"]:
        print(f"note: {body['shortfall']} fewer than requested", file=sys.stderr)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    if args.out is None:
        print("error: --out is required", file=sys.stderr)
        return EXIT_USAGE
    payload = {"out": args.out, "seed": args.seed, "days": args.days}
    status, body = _call(args.server, "/simulate", payload)
    if status != 200:
        return _fail_from_response(status, body)
    manifest = body["manifest"]
    print(
        f"fixture written to {body['out']}: {manifest['posts']} posts, "
        f"{manifest['price_rows']} price rows, {manifest['trends_rows']} trend rows"
    )
    return EXIT_OK


def _cmd_report(args) -> int:
    if args.results is None or args.out is None:
        print("error: --results and --out are required", file=sys.stderr)
        return EXIT_USAGE
    status, body = _call(args.server, "/report", {"results": args.results, "out": args.out})
    if status != 200:
        return _fail_from_response(status, body)
    print(f"wrote {len(body['files'])} file(s) under {args.out}:")
    for name in body["files"]:
        print(f"  {name}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def _add_client_flags(parser: _Parser) -> None:
    parser.add_argument("--base-url", dest="base_url", help="chat-completion endpoint base URL")
    parser.add_argument("--model", help="model name sent with each request")
    parser.add_argument("--auth-env", dest="auth_env", default="STONKLAB_API_TOKEN",
                        help="environment variable holding the bearer token")
    parser.add_argument("--max-in-flight", dest="max_in_flight", type=int, default=4)
    parser.add_argument("--retry-limit", dest="retry_limit", type=int, default=2)
    parser.add_argument("--timeout", type=float, default=60.0, help="per-request timeout (s)")
    parser.add_argument("--backoff", type=float, default=0.5, help="base backoff delay (s)")
    parser.add_argument("--transcript", help="JSONL transcript path for audit/replay")
    parser.add_argument("--redact", action="store_true", help="hash bodies in the transcript")


def build_parser() -> _Parser:
    parser = _Parser(prog="stonklab", description=__doc__)
    parser.add_argument("--server", help="base URL of a running service (default: in-process)")
    parser.add_argument("--config", help="key = value configuration file; flags win")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest-check", help="validate input files")
    for flag in ("--posts", "--prices", "--trends", "--labels"):
        p.add_argument(flag)
    p.set_defaults(func=_cmd_ingest_check)

    p = sub.add_parser("sentiment", help="compute a daily sentiment series")
    p.add_argument("--posts")
    p.add_argument("--scorer", choices=["emoji-count", "lexicon-polarity", "external-labels"],
                   default=None)
    p.add_argument("--agg", choices=["mean", "sum"], default="mean")
    p.add_argument("--labels")
    p.add_argument("--lexicon", help="override the bundled lexicon file")
    p.add_argument("--from", dest="start", type=_parse_date)
    p.add_argument("--to", dest="end", type=_parse_date)
    p.add_argument("--out", help="write the series as date,value CSV")
    p.set_defaults(func=_cmd_sentiment_checked)

    p = sub.add_parser("annotate", help="label posts via a chat-completion endpoint")
    p.add_argument("--posts")
    p.add_argument("--out", help="labels CSV to write")
    p.add_argument("--rejects-out", dest="rejects_out",
                   help="where to write posts left unlabeled (default: …rejects.jsonl)")
    p.add_argument("--from", dest="start", type=_parse_date)
    p.add_argument("--to", dest="end", type=_parse_date)
    _add_client_flags(p)
    p.set_defaults(func=_cmd_annotate)

    p = sub.add_parser("augment", help="generate negative-style texts from labeled seeds")
    p.add_argument("--posts")
    p.add_argument("--labels")
    p.add_argument("--per-batch", dest="per_batch", type=int, default=50)
    p.add_argument("--out", help="JSONL of generated texts")
    _add_client_flags(p)
    p.set_defaults(func=_cmd_augment)

    p = sub.add_parser("analyze", help="run the full experiment matrix and write reports")
    p.add_argument("--posts")
    p.add_argument("--prices")
    p.add_argument("--trends")
    p.add_argument("--labels")
    p.add_argument("--ticker")
    p.add_argument("--from", dest="start", type=_parse_date)
    p.add_argument("--to", dest="end", type=_parse_date)
    p.add_argument("--variants", type=_parse_variants,
                   help="comma-separated: plain,shifted,stationary,shifted-stationary")
    p.add_argument("--maxlag", type=int)
    p.add_argument("--align", choices=["inner-join", "forward-fill"])
    p.add_argument("--agg", choices=["mean", "sum"])
    p.add_argument("--out", help="output directory for report files")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("simulate", help="write a synthetic fixture dataset")
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=20210104)
    p.add_argument("--days", type=int, default=90)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("report", help="re-render reports from a saved results.json")
    p.add_argument("--results")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def _cmd_sentiment_checked(args) -> int:
    if args.posts is None:
        print("error: --posts is required", file=sys.stderr)
        return EXIT_USAGE
    if args.scorer is None:
        args.scorer = "lexicon-polarity"
    return _cmd_sentiment(args)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            _apply_config(args, load_config_file(args.config))
        except (OSError, ValueError) as exc:
            print(f"error: bad config file: {exc}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
