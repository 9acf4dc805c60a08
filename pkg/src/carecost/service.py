"""HTTP prediction service.

Exposes a saved model over three endpoints:

* ``GET /schema``   feature descriptors the form UI is built from
* ``POST /predict`` raw field values in, cost estimate out (rounded to cents)
* ``GET /health``   liveness plus whether a model is loaded

Field problems answer 400 and name the offending field; values that parse
but are impossible (a negative length of stay) answer 422. Category strings
outside the training vocabulary are accepted and fall back to the UNKNOWN
code rather than erroring, since rare codes appear constantly in live data.
Until a model is loaded, /schema and /predict answer 503.
"""
from __future__ import annotations

import argparse
import math

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from .models import FittedModel
from .schema import CATEGORICAL, FeatureSchema


def _validate_payload(schema: FeatureSchema, payload: dict) -> None:
    """Reject bad requests before prediction; 400 names the field, 422 flags
    values that are well-typed but impossible."""
    for spec in schema.features:
        if spec.name not in payload:
            raise HTTPException(status_code=400, detail=f"missing field: {spec.name}")
        value = payload[spec.name]
        if spec.kind == CATEGORICAL:
            if not isinstance(value, str):
                raise HTTPException(
                    status_code=400,
                    detail=f"field {spec.name} must be a category string",
                )
        else:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise HTTPException(
                    status_code=400, detail=f"field {spec.name} must be a number"
                )
            if not math.isfinite(float(value)):
                raise HTTPException(
                    status_code=400, detail=f"field {spec.name} must be finite"
                )
            if float(value) < 0:
                raise HTTPException(
                    status_code=422, detail=f"field {spec.name} must be non-negative"
                )


def _schema_payload(schema: FeatureSchema) -> dict:
    features = []
    for spec in schema.features:
        entry = {"name": spec.name, "kind": spec.kind}
        if spec.kind == CATEGORICAL:
            entry["categories"] = list(spec.vocabulary)
        features.append(entry)
    return {
        "features": features,
        "target": schema.target_name,
        "fingerprint": schema.fingerprint(),
    }


def create_app(model_path: str | None = None, allow_origins=("*",)) -> FastAPI:
    """Build the app; with a path the model loads eagerly so a broken file
    fails at startup instead of on the first request."""
    app = FastAPI(title="carecost prediction service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(allow_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.model = FittedModel.load(model_path) if model_path else None

    def _model() -> FittedModel:
        if app.state.model is None:
            raise HTTPException(status_code=503, detail="model not loaded")
        return app.state.model

    @app.get("/health")
    def health() -> dict:
        loaded = app.state.model is not None
        doc = {"status": "ok", "model_loaded": loaded}
        if loaded:
            doc["model_family"] = app.state.model.family
        return doc

    @app.get("/schema")
    def schema() -> dict:
        return _schema_payload(_model().schema)

    @app.post("/predict")
    def predict(payload: dict) -> dict:
        model = _model()
        _validate_payload(model.schema, payload)
        value = model.predict_row(payload)
        return {
            "predicted_cost": round(value, 2),
            "model_family": model.family,
            "schema_fingerprint": model.schema_fingerprint,
        }

    return app


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="carecost-serve", description="Serve a saved model over HTTP."
    )
    parser.add_argument("--model", required=True, help="model JSON path")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--allow-origin", action="append", default=None,
                        help="CORS origin, repeatable (default: *)")
    ns = parser.parse_args(argv)

    import uvicorn

    app = create_app(ns.model, allow_origins=tuple(ns.allow_origin or ("*",)))
    uvicorn.run(app, host=ns.host, port=ns.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
