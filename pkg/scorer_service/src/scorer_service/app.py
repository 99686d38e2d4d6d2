"""FastAPI application exposing the scoring wire protocol.

POST /v1/score with a kind discriminator:
  embed_text   requires text            -> {embedding, dim, model_id}
  embed_image  requires image           -> {embedding, dim, model_id}
  aesthetic    requires image (+ text?) -> {score, model_id}
  consistency  requires image + text + dwt_text -> {score, model_id}

GET /v1/health -> {"status": "ok", "mode": "mock"|"real"}

Schema violations return 400. In real mode every scorer returns 503 until
an actual model handle is registered; mock mode is fully deterministic and
needs nothing loaded.
"""

from __future__ import annotations

import base64
import binascii
import io
from typing import Literal

import numpy as np
from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .hashing import (
    DEFAULT_EMBED_DIM,
    MOCK_MODEL_ID,
    image_payload,
    mock_score,
    mock_unit_vector,
    scoring_payload,
)

KINDS = ("embed_text", "embed_image", "aesthetic", "consistency")


class ScoreRequest(BaseModel):
    kind: Literal["embed_text", "embed_image", "aesthetic", "consistency"]
    text: str | None = None
    image_png_base64: str | None = None
    dwt_text: str | None = None


class ModelRegistry:
    """Handles for real models; empty until something loads them."""

    def __init__(self):
        self.embedder = None
        self.aesthetic_model = None
        self.consistency_model = None

    def require(self, name: str):
        handle = getattr(self, name)
        if handle is None:
            raise HTTPException(status_code=503, detail=f"model not loaded: {name}")
        return handle


def _decode_image(encoded: str) -> bytes:
    from PIL import Image

    try:
        raw = base64.b64decode(encoded, validate=True)
    except (binascii.Error, ValueError):
        raise HTTPException(status_code=400, detail="invalid base64 image") from None
    try:
        with Image.open(io.BytesIO(raw)) as img:
            rgba = img.convert("RGBA")
            return image_payload(rgba.width, rgba.height, rgba.tobytes())
    except Exception:
        raise HTTPException(status_code=400, detail="undecodable image") from None


def _validate(request: ScoreRequest) -> None:
    needs_text = request.kind in ("embed_text", "consistency")
    needs_image = request.kind in ("embed_image", "aesthetic", "consistency")
    if needs_text and request.text is None:
        raise HTTPException(status_code=400, detail=f"{request.kind} requires text")
    if needs_image and request.image_png_base64 is None:
        raise HTTPException(status_code=400, detail=f"{request.kind} requires an image")
    if request.kind == "consistency" and request.dwt_text is None:
        raise HTTPException(status_code=400, detail="consistency requires dwt_text")


def create_app(mode: str = "mock", embed_dim: int = DEFAULT_EMBED_DIM) -> FastAPI:
    if mode not in ("mock", "real"):
        raise ValueError("mode must be 'mock' or 'real'")
    app = FastAPI(title="scorer-service")
    registry = ModelRegistry()

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.get("/v1/health")
    async def health():
        return {"status": "ok", "mode": mode}

    def _mock_response(request: ScoreRequest) -> dict:
        if request.kind == "embed_text":
            payload = scoring_payload("embed_text", request.text.encode("utf-8"))
            vector = mock_unit_vector(payload, embed_dim)
            return {
                "embedding": vector.tolist(),
                "dim": embed_dim,
                "model_id": MOCK_MODEL_ID,
            }
        image = _decode_image(request.image_png_base64)
        if request.kind == "embed_image":
            vector = mock_unit_vector(scoring_payload("embed_image", image), embed_dim)
            return {
                "embedding": vector.tolist(),
                "dim": embed_dim,
                "model_id": MOCK_MODEL_ID,
            }
        if request.kind == "aesthetic":
            fields = [image]
            if request.text is not None:
                fields.append(request.text.encode("utf-8"))
            return {
                "score": mock_score(scoring_payload("aesthetic", *fields)),
                "model_id": MOCK_MODEL_ID,
            }
        payload = scoring_payload(
            "consistency",
            image,
            request.text.encode("utf-8"),
            request.dwt_text.encode("utf-8"),
        )
        return {"score": mock_score(payload), "model_id": MOCK_MODEL_ID}

    def _real_response(request: ScoreRequest) -> dict:
        if request.kind == "embed_text" or request.kind == "embed_image":
            registry.require("embedder")
        elif request.kind == "aesthetic":
            registry.require("aesthetic_model")
        else:
            registry.require("consistency_model")
        raise HTTPException(status_code=503, detail="no real models available")

    @app.post("/v1/score")
    async def score(request: ScoreRequest):
        _validate(request)
        if mode == "mock":
            response = _mock_response(request)
        else:
            response = _real_response(request)
        if "embedding" in response:
            norm = float(np.linalg.norm(np.asarray(response["embedding"])))
            assert abs(norm - 1.0) < 1e-6
        return response

    return app
