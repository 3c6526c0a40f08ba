"""HTTP/JSON service exposing the store, learners, solver, and templates.

Error contract: malformed bodies return 400, unknown store keys 404, and
domain failures 422; every error body carries a machine-readable ``code``
plus a human-readable ``detail``.

Template documents are stored as raw bytes (validated on PUT), so a GET
returns exactly what was uploaded.  PUTs serialize per template id; store
mutations serialize through the store's own writer lock.
"""
from __future__ import annotations

import re
import threading
from collections import defaultdict
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from . import correlation, leveling, lineargaussian, markov, mdp, templates
from .errors import DecisionLabError, EmptySample, UnknownIndex, UnknownIndustry
from .store import ConversionRule, HistoryStore, IndexDef, Industry

_TEMPLATE_ID = re.compile(r"^[A-Za-z0-9_-]+$")


class SeriesKey(BaseModel):
    industry: int
    index: int


class SchemeEntry(BaseModel):
    breakpoints: list[float]
    weight: float


class PredictRequest(BaseModel):
    method: str
    industry: int
    index: Optional[int] = None
    horizon: int = 5
    scheme: Optional[dict[int, SchemeEntry]] = None
    laplace: bool = False


class CorrelateRequest(BaseModel):
    x: Optional[SeriesKey] = None
    y: Optional[SeriesKey] = None
    x_values: Optional[list[float]] = None
    y_values: Optional[list[float]] = None
    ratio_bins: Optional[int] = None
    total_levels: Optional[int] = None
    control: Optional[SeriesKey] = None
    control_values: Optional[list[float]] = None


class MdpSolveRequest(BaseModel):
    gamma: float
    rewards: list[float]
    transitions: list[list[list[float]]]  # [state][action][next state]
    states: Optional[list[str]] = None
    actions: Optional[list[str]] = None
    epsilon: float = 1e-8


class RuleBody(BaseModel):
    industry_id: int
    index_id: int
    source_column: int
    time_column: int


class IngestRequest(BaseModel):
    rows: list[list[str]]
    rules: list[RuleBody]
    create_missing: bool = False


def create_app(store: HistoryStore, templates_dir: Path) -> FastAPI:
    app = FastAPI(title="decisionlab", version="0.1.0")
    templates_dir = Path(templates_dir)
    template_locks: dict[str, threading.Lock] = defaultdict(threading.Lock)

    @app.exception_handler(DecisionLabError)
    async def domain_error(request: Request, exc: DecisionLabError) -> JSONResponse:
        status = 404 if isinstance(exc, (UnknownIndustry, UnknownIndex)) else 422
        return JSONResponse(status_code=status, content={"code": exc.code, "detail": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"code": "MalformedBody", "detail": str(exc.errors())}
        )

    def _require_key(industry: int, index: int) -> None:
        if store.get_industry(industry) is None:
            raise UnknownIndustry(f"industry {industry} is not registered")
        if store.get_index(index) is None:
            raise UnknownIndex(f"index {index} is not registered")

    # --- registries and series -------------------------------------------------

    @app.get("/industries")
    def industries() -> list[dict]:
        return [
            {
                "id": i.id,
                "name": i.name,
                "remark": i.remark,
                "type_label": i.type_label,
                "enabled": i.enabled,
            }
            for i in store.industries()
        ]

    @app.get("/indices")
    def indices() -> list[dict]:
        return [
            {
                "id": i.id,
                "name": i.name,
                "remark": i.remark,
                "unit_label": i.unit_label,
                "enabled": i.enabled,
            }
            for i in store.indices()
        ]

    @app.get("/series")
    def series(industry: int, index: int,
               start: Optional[float] = None, end: Optional[float] = None) -> dict:
        _require_key(industry, index)
        time_range = (start, end) if (start is not None or end is not None) else None
        result = store.get_series(industry, index, time_range)
        return {
            "industry_id": result.industry_id,
            "index_id": result.index_id,
            "points": [[t, v] for t, v in result.points],
        }

    # --- prediction -----------------------------------------------------------------

    @app.post("/predict")
    def predict(body: PredictRequest) -> dict:
        if body.method == "gaussian":
            if body.index is None:
                raise EmptySample("gaussian prediction needs an index")
            _require_key(body.industry, body.index)
            data = store.get_series(body.industry, body.index)
            model = lineargaussian.fit_mle(data)
            beliefs = lineargaussian.predict_horizon(data.values[-1], model, body.horizon)
            times = data.times
            step = times[-1] - times[-2] if len(times) >= 2 else 1.0
            return {
                "method": "gaussian",
                "model": {"a": model.a, "b": model.b, "sigma": model.sigma},
                "beliefs": [
                    {"time": times[-1] + step * (i + 1), "mean": b.mean, "std": b.std}
                    for i, b in enumerate(beliefs)
                ],
            }
        if body.method == "markov":
            if not body.scheme:
                raise EmptySample("markov prediction needs a leveling scheme")
            scheme = leveling.LevelingScheme(
                {idx: (tuple(e.breakpoints), e.weight) for idx, e in body.scheme.items()}
            )
            series_list = []
            for idx in scheme.index_ids:
                _require_key(body.industry, idx)
                series_list.append(store.get_series(body.industry, idx))
            common = set(series_list[0].times)
            for s in series_list[1:]:
                common &= set(s.times)
            times = sorted(common)
            values_by_index = {
                s.index_id: [dict(s.points)[t] for t in times] for s in series_list
            }
            labels = leveling.label_history(values_by_index, scheme)
            n = scheme.level_count
            matrix = markov.learn_transition_matrix(labels, n, laplace=body.laplace)
            dist = [0.0] * n
            dist[labels[-1]] = 1.0
            distributions = []
            for _ in range(body.horizon):
                dist = markov.predict_distribution(dist, matrix, 1)
                distributions.append([float(p) for p in dist])
            return {
                "method": "markov",
                "labels": labels,
                "matrix": [[float(c) for c in row] for row in matrix],
                "distributions": distributions,
            }
        raise RequestValidationError(
            [{"loc": ("body", "method"), "msg": f"unknown method {body.method!r}"}]
        )

    # --- correlation ------------------------------------------------------------------

    @app.post("/correlate")
    def correlate(body: CorrelateRequest) -> dict:
        if body.x_values is not None and body.y_values is not None:
            x_vals, y_vals = body.x_values, body.y_values
            control_values = body.control_values
        else:
            if body.x is None or body.y is None:
                raise RequestValidationError(
                    [{"loc": ("body",), "msg": "need either x/y keys or x_values/y_values"}]
                )
            _require_key(body.x.industry, body.x.index)
            _require_key(body.y.industry, body.y.index)
            series_list = [
                store.get_series(body.x.industry, body.x.index),
                store.get_series(body.y.industry, body.y.index),
            ]
            if body.control is not None:
                _require_key(body.control.industry, body.control.index)
                series_list.append(store.get_series(body.control.industry, body.control.index))
            common = set(series_list[0].times)
            for s in series_list[1:]:
                common &= set(s.times)
            times = sorted(common)
            aligned = [[dict(s.points)[t] for t in times] for s in series_list]
            if len(times) < 2:
                raise EmptySample("fewer than 2 overlapping observations")
            x_vals, y_vals = aligned[0], aligned[1]
            control_values = aligned[2] if body.control is not None else body.control_values
        sample = correlation.PairedSample(x_vals, y_vals)
        report = correlation.compute_report(
            sample,
            ratio_bins=body.ratio_bins,
            total_levels=body.total_levels,
            control=control_values,
        )
        return {
            "n": len(sample),
            "pearson": report.pearson,
            "kendall_tau": report.kendall_tau,
            "spearman": report.spearman,
            "ratio": report.ratio,
            "total": report.total,
            "partial": report.partial,
            "report": correlation.format_report(sample, report),
        }

    # --- mdp ------------------------------------------------------------------------------

    @app.post("/mdp/solve")
    def mdp_solve(body: MdpSolveRequest) -> dict:
        try:
            model = mdp.MdpModel(
                body.transitions,
                body.rewards,
                body.gamma,
                tuple(body.states or ()),
                tuple(body.actions or ()),
            )
        except ValueError as exc:
            return JSONResponse(status_code=422, content={"code": "InvalidModel", "detail": str(exc)})
        utilities, iterations = mdp.value_iteration(model, body.epsilon)
        policy = mdp.extract_policy(model, utilities)
        return {
            "states": list(model.state_names),
            "actions": list(model.action_names),
            "utilities": [float(u) for u in utilities],
            "policy": [int(a) for a in policy],
            "iterations": iterations,
        }

    # --- templates ------------------------------------------------------------------------

    def _template_path(template_id: str) -> Path:
        if not _TEMPLATE_ID.match(template_id):
            raise RequestValidationError(
                [{"loc": ("path", "template_id"), "msg": "id must match [A-Za-z0-9_-]+"}]
            )
        return templates_dir / f"{template_id}.template"

    @app.get("/templates/{template_id}")
    def get_template(template_id: str) -> Response:
        path = _template_path(template_id)
        if not path.exists():
            return JSONResponse(
                status_code=404,
                content={"code": "UnknownTemplate", "detail": f"no template {template_id!r}"},
            )
        return PlainTextResponse(path.read_bytes())

    @app.put("/templates/{template_id}")
    async def put_template(template_id: str, request: Request) -> dict:
        path = _template_path(template_id)
        body = await request.body()
        try:
            text = body.decode("utf-8")
            graph = templates.from_text(text)
        except (UnicodeDecodeError, ValueError) as exc:
            return JSONResponse(
                status_code=400, content={"code": "BadTemplate", "detail": str(exc)}
            )
        with template_locks[template_id]:
            templates_dir.mkdir(parents=True, exist_ok=True)
            path.write_bytes(body)
        return {
            "id": template_id,
            "nodes": len(graph.nodes),
            "relations": len(graph.relations),
        }

    # --- ingestion --------------------------------------------------------------------------

    @app.post("/ingest")
    def ingest(body: IngestRequest) -> dict:
        rules = [
            ConversionRule(r.industry_id, r.index_id, r.source_column, r.time_column)
            for r in body.rules
        ]
        if body.create_missing:
            for rule in rules:
                if store.get_industry(rule.industry_id) is None:
                    store.upsert_industry(Industry(rule.industry_id, f"industry-{rule.industry_id}"))
                if store.get_index(rule.index_id) is None:
                    store.upsert_index(IndexDef(rule.index_id, f"index-{rule.index_id}"))
        result = store.convert_spreadsheet(body.rows, rules)
        return {"written": result.written, "warnings": result.warnings}

    return app
