"""FastAPI service wrapping the analysis library.

Error contract: structured HTTP 400 with detail.kind = "usage" for bad
parameter combinations and "input" for unreadable/invalid data files;
pydantic handles shape validation with 422. Annotation that ends with
rejects still returns 200 (clients inspect `rejected`).
"""

from __future__ import annotations

import json
import math
from importlib import metadata
from pathlib import Path
from typing import Callable, Optional

from fastapi import FastAPI, HTTPException

from .. import report as report_mod
from ..annotate import ChatClient, ClientConfig, HttpChatClient, annotate_corpus, augment_corpus
from ..errors import InputFormatError, MissingLabelError
from ..experiment import ExperimentConfig, ResultSet, run_experiment
from ..ingest import (
    filter_window,
    read_labels,
    read_posts,
    read_prices,
    read_trends,
    write_labels,
)
from ..sentiment import SentimentLabel, daily_signal, load_lexicon
from ..series import Variant
from ..simgen import gen_fixture
from . import schemas

ClientFactory = Callable[[ClientConfig], ChatClient]


def _usage(message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"kind": "usage", "message": message})


def _input_error(message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"kind": "input", "message": message})


def _finite_or_none(value: float | None) -> float | None:
    # strict-JSON responses cannot carry inf (perfect-fit F statistics);
    # the rendered tables in the written report preserve them as "inf"
    if value is None or not math.isfinite(value):
        return None
    return value


def _result_model(rs: ResultSet) -> schemas.ResultSetModel:
    return schemas.ResultSetModel(
        ticker=rs.ticker,
        correlations=[
            schemas.CorrelationRowModel(
                method=r.method,
                shifted=r.shifted,
                stationary=r.stationary,
                signal=r.signal,
                value=r.value,
            )
            for r in rs.correlations
        ],
        causality=[
            schemas.CausalityRowModel(
                cause=r.cause,
                effect=r.effect,
                p_value=r.p_value,
                stationary=r.stationary,
                shifted=r.shifted,
                lag=r.lag,
                f_stat=_finite_or_none(r.f_stat),
            )
            for r in rs.causality
        ],
        provenance=schemas.ProvenanceModel(
            config=rs.provenance.config,
            config_digest=rs.provenance.config_digest,
            inputs=rs.provenance.inputs,
        ),
    )


def create_app(chat_client_factory: ClientFactory | None = None) -> FastAPI:
    """Build the service; tests may inject a chat client factory."""
    factory: ClientFactory = chat_client_factory or HttpChatClient
    try:
        version = metadata.version("stonklab")
    except metadata.PackageNotFoundError:
        version = "0.0.0"

    app = FastAPI(title="stonklab", version=version)

    @app.get("/", response_model=schemas.ServiceInfo)
    def info() -> schemas.ServiceInfo:
        return schemas.ServiceInfo(service="stonklab", version=version)

    @app.post("/ingest-check", response_model=schemas.IngestCheckResponse)
    def ingest_check(req: schemas.IngestCheckRequest) -> schemas.IngestCheckResponse:
        checks: list[schemas.FileCheck] = []

        def run_check(path: Optional[str], kind: str, fn) -> None:
            if path is None:
                return
            try:
                checks.append(fn(path, kind))
            except (InputFormatError, OSError, ValueError) as exc:
                checks.append(
                    schemas.FileCheck(
                        path=path, kind=kind, ok=False, error=str(exc)
                    )
                )

        def check_posts(path: str, kind: str) -> schemas.FileCheck:
            result = read_posts(path)
            return schemas.FileCheck(
                path=path,
                kind=kind,
                ok=True,
                rows=len(result.posts),
                malformed=result.malformed,
            )

        def check_series(reader):
            def check(path: str, kind: str) -> schemas.FileCheck:
                series = reader(path)
                return schemas.FileCheck(path=path, kind=kind, ok=True, rows=len(series))

            return check

        def check_labels(path: str, kind: str) -> schemas.FileCheck:
            return schemas.FileCheck(
                path=path, kind=kind, ok=True, rows=len(read_labels(path))
            )

        run_check(req.posts, "posts", check_posts)
        run_check(req.prices, "prices", check_series(read_prices))
        run_check(req.trends, "trends", check_series(read_trends))
        run_check(req.labels, "labels", check_labels)
        if not checks:
            raise _usage("no input paths given")
        return schemas.IngestCheckResponse(checks=checks, ok=all(c.ok for c in checks))

    @app.post("/sentiment", response_model=schemas.SentimentResponse)
    def sentiment(req: schemas.SentimentRequest) -> schemas.SentimentResponse:
        if req.scorer == "external-labels" and req.labels is None:
            raise _usage("scorer external-labels needs a labels file")
        try:
            posts = filter_window(read_posts(req.posts).posts, req.start, req.end)
            if not posts:
                raise _input_error("no posts within the requested window")
            labels = None
            if req.labels is not None:
                labels = {r.post_id: r.label for r in read_labels(req.labels)}
            lexicon = load_lexicon(req.lexicon) if req.lexicon else None
            series = daily_signal(
                posts, req.scorer, req.agg, lexicon=lexicon, labels=labels
            )
        except (InputFormatError, MissingLabelError, OSError) as exc:
            raise _input_error(str(exc)) from exc
        out = None
        if req.out:
            lines = ["date,value"] + [
                f"{d.isoformat()},{v!r}" for d, v in zip(series.dates, series.values)
            ]
            Path(req.out).parent.mkdir(parents=True, exist_ok=True)
            Path(req.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
            out = req.out
        return schemas.SentimentResponse(
            series=schemas.SeriesModel(
                name=req.scorer, dates=list(series.dates), values=list(series.values)
            ),
            posts_scored=len(posts),
            out=out,
        )

    @app.post("/analyze", response_model=schemas.AnalyzeResponse)
    def analyze(req: schemas.AnalyzeRequest) -> schemas.AnalyzeResponse:
        try:
            config = ExperimentConfig(
                prices=req.prices,
                posts=req.posts,
                trends=req.trends,
                labels=req.labels,
                ticker=req.ticker,
                start=req.start,
                end=req.end,
                variants=tuple(Variant.from_label(v) for v in req.variants),
                maxlag=req.maxlag,
                align_policy=req.align,
                aggregation=req.agg,
            )
        except ValueError as exc:
            raise _usage(str(exc)) from exc
        try:
            rs = run_experiment(config)
        except (InputFormatError, MissingLabelError, OSError) as exc:
            raise _input_error(str(exc)) from exc
        files: list[str] = []
        if req.out:
            files = report_mod.write_report(rs, req.out)
        return schemas.AnalyzeResponse(
            result=_result_model(rs),
            markdown=report_mod.render_markdown(rs),
            files=files,
        )

    @app.post("/annotate", response_model=schemas.AnnotateResponse)
    async def annotate(req: schemas.AnnotateRequest) -> schemas.AnnotateResponse:
        config = ClientConfig(
            base_url=req.base_url,
            model=req.model,
            auth_env=req.auth_env,
            max_in_flight=req.max_in_flight,
            retry_limit=req.retry_limit,
            timeout_seconds=req.timeout_seconds,
            backoff_seconds=req.backoff_seconds,
            transcript_path=req.transcript,
            redact_transcripts=req.redact_transcript,
        )
        try:
            posts = filter_window(read_posts(req.posts).posts, req.start, req.end)
        except (InputFormatError, OSError) as exc:
            raise _input_error(str(exc)) from exc
        if not posts:
            raise _input_error("no posts within the requested window")
        client = factory(config)
        try:
            outcome = await annotate_corpus(posts, client, config)
        finally:
            closer = getattr(client, "aclose", None)
            if closer is not None:
                await closer()
        Path(req.out).parent.mkdir(parents=True, exist_ok=True)
        write_labels(req.out, outcome.labels)
        rejects_out = None
        if outcome.rejects:
            rejects_out = req.rejects_out or str(
                Path(req.out).with_name(Path(req.out).stem + ".rejects.jsonl")
            )
            with open(rejects_out, "w", encoding="utf-8") as fh:
                for post in outcome.rejects:
                    fh.write(
                        json.dumps(
                            {"id": post.id, "created_utc": post.timestamp, "body": post.text},
                            ensure_ascii=False,
                        )
                        + "\n"
                    )
        return schemas.AnnotateResponse(
            labeled=len(outcome.labels),
            rejected=len(outcome.rejects),
            rounds=outcome.rounds,
            batches_sent=outcome.batches_sent,
            out=req.out,
            rejects_out=rejects_out,
        )

    @app.post("/augment", response_model=schemas.AugmentResponse)
    async def augment(req: schemas.AugmentRequest) -> schemas.AugmentResponse:
        config = ClientConfig(
            base_url=req.base_url,
            model=req.model,
            auth_env=req.auth_env,
            max_in_flight=req.max_in_flight,
            retry_limit=req.retry_limit,
            timeout_seconds=req.timeout_seconds,
            backoff_seconds=req.backoff_seconds,
            transcript_path=req.transcript,
            redact_transcripts=req.redact_transcript,
        )
        try:
            posts = read_posts(req.posts).posts
            labels = {r.post_id: r.label for r in read_labels(req.labels)}
        except (InputFormatError, OSError) as exc:
            raise _input_error(str(exc)) from exc
        seeds = [
            p.text for p in posts if labels.get(p.id) is SentimentLabel.NEGATIVE
        ]
        if not seeds:
            raise _input_error("no negative-labeled posts to seed generation")
        client = factory(config)
        try:
            outcome = await augment_corpus(seeds, client, config, per_batch=req.per_batch)
        finally:
            closer = getattr(client, "aclose", None)
            if closer is not None:
                await closer()
        Path(req.out).parent.mkdir(parents=True, exist_ok=True)
        with open(req.out, "w", encoding="utf-8") as fh:
            for i, text in enumerate(outcome.generated, start=1):
                fh.write(json.dumps({"id": f"aug{i:06d}", "text": text}, ensure_ascii=False) + "\n")
        return schemas.AugmentResponse(
            seeds=len(seeds),
            generated=len(outcome.generated),
            shortfall=outcome.shortfall,
            out=req.out,
        )

    @app.post("/simulate", response_model=schemas.SimulateResponse)
    def simulate(req: schemas.SimulateRequest) -> schemas.SimulateResponse:
        try:
            manifest = gen_fixture(req.out, seed=req.seed, days=req.days)
        except OSError as exc:
            raise _input_error(str(exc)) from exc
        return schemas.SimulateResponse(manifest=manifest, out=req.out)

    @app.post("/report", response_model=schemas.ReportResponse)
    def report(req: schemas.ReportRequest) -> schemas.ReportResponse:
        try:
            data = json.loads(Path(req.results).read_text(encoding="utf-8"))
            rs = ResultSet.from_dict(data)
        except (OSError, ValueError, KeyError) as exc:
            raise _input_error(f"cannot load results: {exc}") from exc
        files = report_mod.write_report(rs, req.out)
        return schemas.ReportResponse(files=files)

    return app


app = create_app()
