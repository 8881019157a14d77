"""HTTP service exposing model management, queries, interventions, and bias
audits. All computation goes straight through the library; the server keeps
only an append-only model registry."""

from __future__ import annotations

import json
import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import FileResponse, JSONResponse

from .causal import Intervention, apply_do, audit_bias
from .core import Network, NetworkError
from .inference import query_posterior
from .model_io import ParseError, parse_model, serialize_model

_ERROR_STATUS = {
    "IMPOSSIBLE_EVIDENCE": 422,
    "TARGET_IN_EVIDENCE": 422,
    "DUPLICATE_ASSIGNMENT": 422,
    "UNKNOWN_VARIABLE": 422,
    "UNKNOWN_STATE": 422,
    "STATE_SPACE_TOO_LARGE": 422,
}


class ModelRegistry:
    """Append-only, thread-safe id -> Network map."""

    def __init__(self):
        self._lock = threading.Lock()
        self._models: dict[str, Network] = {}
        self._sources: dict[str, str] = {}
        self._counter = 0

    def register(self, network: Network, source: str, model_id: str | None = None) -> str:
        with self._lock:
            if model_id is None:
                self._counter += 1
                model_id = f"m{self._counter}"
            if model_id in self._models:
                raise NetworkError("DUPLICATE_MODEL", f"model id {model_id!r} already registered")
            self._models[model_id] = network
            self._sources[model_id] = source
            return model_id

    def get(self, model_id: str) -> Network:
        network = self._models.get(model_id)
        if network is None:
            raise NetworkError("UNKNOWN_MODEL", f"no model with id {model_id!r}")
        return network

    def items(self):
        return list(self._models.items())

    def source(self, model_id: str) -> str:
        return self._sources[model_id]


def _model_summary(model_id: str, network: Network, source: str) -> dict:
    return {
        "id": model_id,
        "name": network.name,
        "source": source,
        "variables": [
            {"id": v.id, "label": v.label, "states": list(v.states)}
            for v in network.variables
        ],
        "edges": sorted([p, c] for (p, c) in network.edges),
    }


def create_app(models_dir: str | Path | None = "models") -> FastAPI:
    app = FastAPI(title="colliderbn", version="0.1.0")
    registry = ModelRegistry()
    app.state.registry = registry

    if models_dir is not None:
        directory = Path(models_dir)
        if directory.is_dir():
            for path in sorted(directory.glob("*.json")):
                network = parse_model(path.read_bytes())
                registry.register(network, source="bundled", model_id=path.stem)

    @app.exception_handler(NetworkError)
    async def network_error(_request: Request, exc: NetworkError):
        status = _ERROR_STATUS.get(exc.code, 400)
        return JSONResponse(status_code=status,
                            content={"code": exc.code, "message": exc.message})

    @app.exception_handler(ParseError)
    async def parse_error(_request: Request, exc: ParseError):
        return JSONResponse(status_code=400, content={
            "code": exc.code, "message": exc.message,
            "location": {"line": exc.line, "column": exc.column},
        })

    @app.get("/api/models")
    async def list_models():
        return [_model_summary(mid, network, registry.source(mid))
                for mid, network in registry.items()]

    @app.post("/api/models", status_code=201)
    async def upload_model(request: Request):
        body = await request.body()
        network = parse_model(body)
        model_id = registry.register(network, source="uploaded")
        return {"id": model_id}

    @app.get("/api/models/{model_id}")
    async def get_model(model_id: str):
        network = registry.get(model_id)
        return json.loads(serialize_model(network))

    @app.post("/api/models/{model_id}/query")
    async def query_model(model_id: str, request: Request):
        network = registry.get(model_id)
        body = await _json_body(request)
        evidence = _str_map(body.get("evidence", {}), "evidence")
        interventions = _str_map(body.get("do", {}), "do")
        targets = body.get("targets", [])
        if not isinstance(targets, list) or not all(isinstance(t, str) for t in targets):
            raise NetworkError("BAD_REQUEST", "'targets' must be a list of variable ids")
        for var in interventions:
            if var in evidence:
                raise NetworkError("DUPLICATE_ASSIGNMENT",
                                   f"variable {var!r} is both evidence and intervention")
        mutilated = network
        for var, state in interventions.items():
            mutilated = apply_do(mutilated, Intervention(var, state))
        if not targets:
            targets = [v.id for v in network.variables
                       if v.id not in evidence and v.id not in interventions]
        posteriors: dict[str, dict[str, float]] = {}
        evidence_probability = 1.0
        for target in targets:
            result = query_posterior(mutilated, evidence, target)
            posteriors[target] = result.distribution
            evidence_probability = result.evidence_probability
        return {"posteriors": posteriors, "evidence_probability": evidence_probability}

    @app.post("/api/models/{model_id}/audit")
    async def audit_model(model_id: str, request: Request):
        network = registry.get(model_id)
        body = await _json_body(request)
        exposure = body.get("exposure")
        outcome = body.get("outcome")
        if not isinstance(exposure, str) or not isinstance(outcome, str):
            raise NetworkError("BAD_REQUEST", "'exposure' and 'outcome' are required strings")
        selection = _str_map(body.get("selection", {}), "selection")

        states = body.get("exposure_states")
        if states is None:
            if network.variable(exposure).states != ("true", "false"):
                raise NetworkError("BAD_REQUEST",
                                   f"{exposure!r} is not Boolean; pass 'exposure_states'")
            states = ["true", "false"]
        outcome_state = body.get("outcome_state")
        if outcome_state is None:
            if network.variable(outcome).states != ("true", "false"):
                raise NetworkError("BAD_REQUEST",
                                   f"{outcome!r} is not Boolean; pass 'outcome_state'")
            outcome_state = "true"

        report = audit_bias(network, exposure, outcome, outcome_state,
                            (states[0], states[1]), selection)
        return {
            "exposure": report.exposure,
            "outcome": report.outcome,
            "exposure_states": list(report.exposure_states),
            "outcome_state": report.outcome_state,
            "selection": report.selection,
            "selected_contrast": report.selected_contrast,
            "population_contrast": report.population_contrast,
            "interventional_contrast": report.interventional_contrast,
            "paths_unconditioned": [_path_doc(p) for p in report.paths_unconditioned],
            "paths_selected": [_path_doc(p) for p in report.paths_selected],
            "reversal": report.reversal,
        }

    ui_dir = Path(__file__).resolve().parents[2] / "frontend" / "dist"

    @app.get("/")
    async def index():
        page = ui_dir / "index.html"
        if page.is_file():
            return FileResponse(page)
        return JSONResponse({"name": "colliderbn", "api": "/api/models"})

    @app.get("/app.js")
    async def app_js():
        bundle = ui_dir / "app.js"
        if bundle.is_file():
            return FileResponse(bundle, media_type="text/javascript")
        return JSONResponse(status_code=404, content={"code": "NOT_FOUND",
                                                      "message": "UI bundle not built"})

    return app


def _path_doc(report) -> dict:
    return {
        "nodes": list(report.nodes),
        "directions": list(report.directions),
        "roles": list(report.node_roles),
        "open": report.open_given,
    }


async def _json_body(request: Request) -> dict:
    body = await request.body()
    try:
        doc = json.loads(body)
    except json.JSONDecodeError as exc:
        raise ParseError("SYNTAX", exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise NetworkError("BAD_REQUEST", "request body must be a JSON object")
    return doc


def _str_map(value, key: str) -> dict[str, str]:
    if not isinstance(value, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in value.items()):
        raise NetworkError("BAD_REQUEST", f"{key!r} must map variable ids to state names")
    return dict(value)


def serve(port: int = 8000, models_dir: str | Path = "models") -> None:
    """Run the API server until terminated; in-flight requests finish on
    shutdown (uvicorn's graceful stop)."""
    import uvicorn

    directory = Path(models_dir)
    if not directory.is_dir():
        raise NetworkError("IO_ERROR", f"models directory {models_dir!r} is not readable")
    app = create_app(models_dir=models_dir)
    uvicorn.run(app, host="127.0.0.1", port=port)
