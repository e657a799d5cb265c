"""FastAPI application: /v1/ocr, /v1/classify-text, /v1/classify-icon, /v1/health.

Configuration comes from environment variables (or the create_app call):
MODEL_SERVICE_OCR_BACKEND / _TEXT_BACKEND / _ICON_BACKEND select "stub"
(default) or a "module:callable" model backend; MODEL_SERVICE_OCR_FIXTURES
points the OCR stub at a fixture directory. Schema violations return 400;
an unloadable model backend returns 503.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import backends
from .prompt import build_prompt

STUB = "stub"


@dataclass
class ServiceConfig:
    ocr_backend: str = STUB
    text_backend: str = STUB
    icon_backend: str = STUB
    ocr_fixture_dir: str | None = None

    @classmethod
    def from_env(cls, env=os.environ) -> "ServiceConfig":
        return cls(
            ocr_backend=env.get("MODEL_SERVICE_OCR_BACKEND", STUB),
            text_backend=env.get("MODEL_SERVICE_TEXT_BACKEND", STUB),
            icon_backend=env.get("MODEL_SERVICE_ICON_BACKEND", STUB),
            ocr_fixture_dir=env.get("MODEL_SERVICE_OCR_FIXTURES"),
        )


class OcrRequest(BaseModel):
    image: str = Field(description="base64-encoded PNG/JPEG bytes")


class OcrBox(BaseModel):
    x: int
    y: int
    w: int
    h: int
    text: str
    confidence: float = Field(ge=0.0, le=1.0)


class OcrResponse(BaseModel):
    boxes: list[OcrBox]


class DataTypeEntry(BaseModel):
    name: str
    description: str = ""


class ClassifyTextRequest(BaseModel):
    text: str
    data_types: list[DataTypeEntry]


class ClassifyTextResponse(BaseModel):
    label: str


class ClassifyIconRequest(BaseModel):
    crops: list[str] = Field(description="base64-encoded image crops")


class IconLabel(BaseModel):
    icon_class: str
    score: float = Field(ge=0.0, le=1.0)


class ClassifyIconResponse(BaseModel):
    labels: list[IconLabel]


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig.from_env()
    app = FastAPI(title="cppgen model service", version="0.1.0")

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.exception_handler(backends.BadInput)
    async def bad_input_handler(request: Request, exc: backends.BadInput):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(backends.BackendUnavailable)
    async def backend_handler(request: Request, exc: backends.BackendUnavailable):
        return JSONResponse(status_code=503, content={"detail": str(exc)})

    @app.get("/v1/health")
    async def health():
        return {"status": "ok"}

    @app.post("/v1/ocr", response_model=OcrResponse)
    async def ocr(request: OcrRequest):
        raw = backends.decode_b64(request.image)
        if config.ocr_backend == STUB:
            boxes = backends.stub_ocr(raw, config.ocr_fixture_dir)
        else:
            boxes = backends.resolve_backend(config.ocr_backend)(raw)
        return {"boxes": boxes}

    @app.post("/v1/classify-text", response_model=ClassifyTextResponse)
    async def classify_text(request: ClassifyTextRequest):
        entries = [(e.name, e.description) for e in request.data_types]
        if config.text_backend == STUB:
            label = backends.stub_classify_text(request.text, entries)
        else:
            prompt = build_prompt(request.text, request.data_types)
            answer = str(backends.resolve_backend(config.text_backend)(prompt))
            requested = {name.lower(): name for name, _ in entries}
            label = requested.get(answer.strip().lower(), "not relevant")
        return {"label": label}

    @app.post("/v1/classify-icon", response_model=ClassifyIconResponse)
    async def classify_icon(request: ClassifyIconRequest):
        raws = [backends.decode_b64(crop) for crop in request.crops]
        if config.icon_backend == STUB:
            labels = backends.stub_classify_icon(raws)
        else:
            labels = backends.resolve_backend(config.icon_backend)(raws)
        return {"labels": labels}

    return app


def serve():
    import uvicorn

    uvicorn.run(create_app(), host=os.environ.get("MODEL_SERVICE_HOST", "127.0.0.1"),
                port=int(os.environ.get("MODEL_SERVICE_PORT", "8787")))


app = create_app()
