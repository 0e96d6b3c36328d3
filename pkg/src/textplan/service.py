"""HTTP facade and SVG rendering for interactive use.

The service adds transport only: every verdict in a response is the
result of the same library calls a direct user would make. Bodies are
JSON; prompt or body problems are 400, an unsatisfiable baseline prompt
is 422, and upstream endpoint failures surface as 502.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .core import Layout, category_of, parse_layout, room_centroid
from .genclient import (
    EndpointClient,
    EndpointError,
    GeneratorEndpoint,
    SamplingParams,
    UnsatisfiableError,
    baseline_generate,
    derive_seed,
)
from .metrics import ReferenceStats, is_ood, spatial_diversity
from .prompts import PROMPT_SUITE
from .semantics import (
    PromptParseError,
    annotation_to_json,
    extract_annotations,
    parse_prompt,
    render_annotation,
)
from .validity import validate, validate_text

#: Fixed fill per room type so renders are comparable across runs.
ROOM_COLORS = {
    "bathroom": "#a6cee3",
    "bedroom": "#b2df8a",
    "corridor": "#fdbf6f",
    "kitchen": "#fb9a99",
    "living_room": "#cab2d6",
}

_SVG_SIZE = 256


def render_svg(layout: Layout) -> str:
    """Deterministic SVG for a valid layout: 256x256 viewport, y flipped
    so north is up, one filled polygon and centered label per room."""
    report = validate(layout)
    if not report.valid:
        kinds = ", ".join(sorted(report.kinds))
        raise ValueError(f"cannot render an invalid layout ({kinds})")
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_SVG_SIZE} {_SVG_SIZE}" '
        f'width="{_SVG_SIZE}" height="{_SVG_SIZE}">',
        f'<rect width="{_SVG_SIZE}" height="{_SVG_SIZE}" fill="#ffffff"/>',
    ]
    labels = []
    for room in layout.rooms:
        pts = " ".join(f"{p.x},{_SVG_SIZE - p.y}" for p in room.vertices)
        color = ROOM_COLORS[room.kind.value]
        parts.append(
            f'<polygon points="{pts}" fill="{color}" stroke="#333333" stroke-width="1"/>'
        )
        cx, cy = room_centroid(room)
        labels.append(
            f'<text x="{float(cx):.2f}" y="{float(_SVG_SIZE - cy):.2f}" '
            f'font-family="sans-serif" font-size="10" text-anchor="middle" '
            f'dominant-baseline="middle" fill="#111111">{room.kind.words}</text>'
        )
    parts.extend(labels)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


@dataclass
class ServiceConfig:
    generator: str = "baseline"  # "baseline" or "endpoint"
    endpoint: GeneratorEndpoint | None = None
    endpoint_client: EndpointClient | None = None  # injectable for tests
    stats: ReferenceStats | None = None
    attempt_cap: int = 1000
    min_shared: int = 1
    cors_origins: tuple[str, ...] = ("*",)


class GenerateRequest(BaseModel):
    prompt: str
    n: int = Field(default=1, ge=1, le=64)
    seed: int | None = None
    sampling: dict | None = None


class CheckRequest(BaseModel):
    layout: str


def _response_item(text: str, prompt: str, stats: ReferenceStats, min_shared: int) -> dict:
    report = validate_text(text, min_shared=min_shared)
    item = {
        "layout": text,
        "valid": report.valid,
        "violations": [v.to_json() for v in report.violations],
        "correct": False,
        "category": None,
        "ood": None,
        "spatial_diversity": None,
        "svg": None,
    }
    if report.valid:
        layout = parse_layout(text)
        anns = extract_annotations(layout, min_shared=min_shared)
        item["correct"] = parse_prompt(prompt) in anns
        item["category"] = category_of(layout).label
        item["ood"] = is_ood(layout, stats)
        item["spatial_diversity"] = float(spatial_diversity(layout, stats))
        item["svg"] = render_svg(layout)
    return item


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    stats = config.stats
    if stats is None:
        from .pipeline import reference_from_generator

        stats = reference_from_generator()
    client = None
    if config.generator == "endpoint":
        client = config.endpoint_client or EndpointClient(config.endpoint)
    server_rng = random.Random()
    rng_lock = threading.Lock()

    app = FastAPI(title="textplan service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def bad_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": str(exc.errors())})

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/api/prompts")
    def prompts() -> list[dict]:
        return [e.to_json() for e in PROMPT_SUITE]

    @app.post("/api/check")
    def check(body: CheckRequest) -> JSONResponse:
        report = validate_text(body.layout, min_shared=config.min_shared)
        payload: dict = report.to_json()
        if report.valid:
            layout = parse_layout(body.layout)
            payload["category"] = category_of(layout).label
            anns = extract_annotations(layout, min_shared=config.min_shared)
            rendered = sorted(
                (render_annotation(a), annotation_to_json(a)) for a in anns
            )
            payload["annotations"] = [{"text": t, **meta} for t, meta in rendered]
            payload["svg"] = render_svg(layout)
        return JSONResponse(payload)

    @app.post("/api/generate")
    def generate(body: GenerateRequest) -> JSONResponse:
        try:
            parse_prompt(body.prompt)
        except PromptParseError as exc:
            return JSONResponse(status_code=400, content={"detail": str(exc)})
        if client is not None:
            sampling = SamplingParams(**{**(body.sampling or {}), "n": body.n})
            try:
                completions = client.generate(body.prompt, sampling)
            except EndpointError as exc:
                return JSONResponse(status_code=502, content={"detail": str(exc)})
        else:
            if body.seed is None:
                with rng_lock:
                    base_seed = server_rng.getrandbits(63)
            else:
                base_seed = body.seed
            completions = []
            try:
                for i in range(body.n):
                    completions.append(
                        baseline_generate(
                            body.prompt,
                            derive_seed(base_seed, body.prompt, i),
                            config.attempt_cap,
                        )
                    )
            except UnsatisfiableError as exc:
                return JSONResponse(status_code=422, content={"detail": str(exc)})
        items = [
            _response_item(text, body.prompt, stats, config.min_shared)
            for text in completions
        ]
        return JSONResponse({"items": items})

    return app
