"""Pydantic request/response models for the HTTP service.

Requests carry file paths plus analysis options; responses carry structured
results. The service and its clients run on the same filesystem (the CLI
mounts the app in-process by default), so paths are the exchange currency
for bulk data.
"""

from __future__ import annotations

from datetime import date
from typing import Literal, Optional

from pydantic import BaseModel, Field

Scorer = Literal["emoji-count", "lexicon-polarity", "external-labels"]
Aggregation = Literal["mean", "sum"]
AlignPolicy = Literal["inner-join", "forward-fill"]
VariantName = Literal["plain", "shifted", "stationary", "shifted-stationary"]

DEFAULT_VARIANTS: list[VariantName] = [
    "plain",
    "shifted",
    "stationary",
    "shifted-stationary",
]


class ServiceInfo(BaseModel):
    service: str
    version: str


class FileCheck(BaseModel):
    path: str
    kind: str
    ok: bool
    rows: int = 0
    malformed: int = 0
    error: Optional[str] = None


class IngestCheckRequest(BaseModel):
    posts: Optional[str] = None
    prices: Optional[str] = None
    trends: Optional[str] = None
    labels: Optional[str] = None


class IngestCheckResponse(BaseModel):
    checks: list[FileCheck]
    ok: bool


class SeriesModel(BaseModel):
    name: str
    dates: list[date]
    values: list[float]


class SentimentRequest(BaseModel):
    posts: str
    scorer: Scorer = "lexicon-polarity"
    agg: Aggregation = "mean"
    labels: Optional[str] = None
    lexicon: Optional[str] = None
    start: date = date(2021, 1, 4)
    end: date = date(2021, 3, 31)
    out: Optional[str] = None


class SentimentResponse(BaseModel):
    series: SeriesModel
    posts_scored: int
    out: Optional[str] = None


class CorrelationRowModel(BaseModel):
    method: Literal["pearson", "kendall"]
    shifted: bool
    stationary: bool
    signal: str
    value: Optional[float] = None


class CausalityRowModel(BaseModel):
    cause: str
    effect: str
    p_value: Optional[float] = None
    stationary: bool
    shifted: bool
    lag: Optional[int] = None
    f_stat: Optional[float] = None


class ProvenanceModel(BaseModel):
    config: dict
    config_digest: str
    inputs: dict


class ResultSetModel(BaseModel):
    ticker: str
    correlations: list[CorrelationRowModel]
    causality: list[CausalityRowModel]
    provenance: ProvenanceModel


class AnalyzeRequest(BaseModel):
    prices: str
    posts: Optional[str] = None
    trends: Optional[str] = None
    labels: Optional[str] = None
    ticker: str = "STOCK"
    start: date = date(2021, 1, 4)
    end: date = date(2021, 3, 31)
    variants: list[VariantName] = Field(default_factory=lambda: list(DEFAULT_VARIANTS))
    maxlag: int = 5
    align: AlignPolicy = "inner-join"
    agg: Aggregation = "mean"
    out: Optional[str] = None


class AnalyzeResponse(BaseModel):
    result: ResultSetModel
    markdown: str
    files: list[str] = Field(default_factory=list)


class AnnotateRequest(BaseModel):
    posts: str
    base_url: str
    model: str
    auth_env: str = "STONKLAB_API_TOKEN"
    max_in_flight: int = Field(default=4, ge=1)
    retry_limit: int = Field(default=2, ge=0)
    timeout_seconds: float = 60.0
    backoff_seconds: float = 0.5
    out: str
    rejects_out: Optional[str] = None
    transcript: Optional[str] = None
    redact_transcript: bool = False
    start: date = date(2021, 1, 4)
    end: date = date(2021, 3, 31)


class AnnotateResponse(BaseModel):
    labeled: int
    rejected: int
    rounds: int
    batches_sent: int
    out: str
    rejects_out: Optional[str] = None


class AugmentRequest(BaseModel):
    posts: str
    labels: str
    base_url: str
    model: str
    auth_env: str = "STONKLAB_API_TOKEN"
    max_in_flight: int = Field(default=4, ge=1)
    retry_limit: int = Field(default=2, ge=0)
    timeout_seconds: float = 60.0
    backoff_seconds: float = 0.5
    per_batch: int = Field(default=50, ge=1, le=100)
    out: str
    transcript: Optional[str] = None
    redact_transcript: bool = False


class AugmentResponse(BaseModel):
    seeds: int
    generated: int
    shortfall: int
    out: str


class SimulateRequest(BaseModel):
    out: str
    seed: int = 20210104
    days: int = Field(default=90, ge=30)


class SimulateResponse(BaseModel):
    manifest: dict
    out: str


class ReportRequest(BaseModel):
    results: str
    out: str


class ReportResponse(BaseModel):
    files: list[str]
