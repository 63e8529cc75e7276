"""HTTP service exposing single-pair scoring and batch evaluation.

Trees travel as plain JSON values; the one-of wrapper ``{"$oneof": [...]}``
is accepted in ground-truth positions only.  Domain errors map to 400 with
a diagnostic detail string.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .errors import AnlsStarError
from .evaluation import (
    AGGREGATION,
    evaluate,
    ground_truth_set_from_records,
    prediction_set_from_records,
)
from .metric import score_with_breakdown
from .similarity import SimilarityConfig
from .tree import Role, tree_from_value


class ConfigModel(BaseModel):
    tau: float = Field(default=0.5, ge=0.0, le=1.0)
    case_fold: bool = True
    trim: bool = True

    def to_config(self) -> SimilarityConfig:
        return SimilarityConfig(tau=self.tau, case_fold=self.case_fold, trim=self.trim)


class ConfigEchoModel(ConfigModel):
    aggregation: str = AGGREGATION


class KeyPairModel(BaseModel):
    s: float
    l: int


class ScoreRequest(BaseModel):
    ground_truth: Any
    prediction: Any
    config: ConfigModel = ConfigModel()
    breakdown: bool = False


class ScoreResponse(BaseModel):
    score: float
    s: float
    l: int
    per_key: dict[str, KeyPairModel] | None = None


class RecordModel(BaseModel):
    id: str
    value: Any


class EvaluateRequest(BaseModel):
    ground_truth: list[RecordModel]
    predictions: list[RecordModel]
    config: ConfigModel = ConfigModel()
    breakdown: bool = False
    jobs: int = Field(default=1, ge=1)


class SampleResultModel(BaseModel):
    id: str
    score: float
    s: float
    l: int
    status: str
    per_key: dict[str, KeyPairModel] | None = None


class EvaluateResponse(BaseModel):
    mean_score: float
    sample_count: int
    failed_count: int
    results: list[SampleResultModel]
    config_echo: ConfigEchoModel
    warnings: list[str]


class VersionResponse(BaseModel):
    name: str
    version: str


app = FastAPI(title="anls-star", version=__version__)


@app.exception_handler(AnlsStarError)
async def _domain_error(request: Request, exc: AnlsStarError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health")
def health() -> dict[str, str]:
    return {"status": "ok"}


@app.get("/version", response_model=VersionResponse)
def version() -> VersionResponse:
    return VersionResponse(name="anls-star", version=__version__)


@app.post("/score", response_model=ScoreResponse, response_model_exclude_none=True)
def score_pair(request: ScoreRequest) -> ScoreResponse:
    g = tree_from_value(request.ground_truth, Role.GROUND_TRUTH)
    p = tree_from_value(request.prediction, Role.PREDICTION)
    bd = score_with_breakdown(g, p, request.config.to_config())
    s_exact = sum((pair.s for pair in bd.per_key.values()), Fraction(0))
    l_total = sum(pair.l for pair in bd.per_key.values())
    per_key = None
    if request.breakdown:
        per_key = {
            key: KeyPairModel(s=float(pair.s), l=pair.l) for key, pair in bd.per_key.items()
        }
    return ScoreResponse(score=bd.total, s=float(s_exact), l=l_total, per_key=per_key)


@app.post("/evaluate", response_model=EvaluateResponse, response_model_exclude_none=True)
def evaluate_sets(request: EvaluateRequest) -> EvaluateResponse:
    gt = ground_truth_set_from_records([(r.id, r.value) for r in request.ground_truth])
    pred, pred_errors = prediction_set_from_records([(r.id, r.value) for r in request.predictions])
    report = evaluate(
        gt,
        pred,
        request.config.to_config(),
        jobs=request.jobs,
        breakdown=request.breakdown,
        pred_errors=pred_errors,
    )
    gt_ids = set(gt.ids())
    warnings = [
        f"prediction id {extra_id!r} has no ground-truth sample; ignored"
        for extra_id in pred.ids()
        if extra_id not in gt_ids
    ]
    warnings.extend(
        f"prediction for id {sample_id!r} is not a valid tree: {message}"
        for sample_id, message in sorted(pred_errors.items())
    )
    return EvaluateResponse(
        mean_score=report.mean_score,
        sample_count=report.sample_count,
        failed_count=report.failed_count,
        results=[
            SampleResultModel(
                id=result.sample_id,
                score=result.score,
                s=result.s,
                l=result.l,
                status=result.status,
                per_key=None
                if result.per_key is None
                else {k: KeyPairModel(s=s, l=l) for k, (s, l) in result.per_key.items()},
            )
            for result in report.results
        ],
        config_echo=ConfigEchoModel(
            tau=report.config_echo.tau,
            case_fold=report.config_echo.case_fold,
            trim=report.config_echo.trim,
        ),
        warnings=warnings,
    )
