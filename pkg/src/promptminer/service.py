"""Read-only HTTP/JSON service backing the prompt studio.

Artifacts (model, stats cache, category lexicon) are loaded once and never
mutated; every endpoint is a pure read. Requests arriving before artifacts
finish loading get 503.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .analytics import CategoryLexicon, default_categories, load_categories
from .embedding import EmbeddingModel, load_model, nearest, suggest
from .errors import EmptyPrompt, MalformedWeight, OutOfVocabulary
from .parsing import default_stopwords, load_stopwords, normalize, parse, tokenize

__all__ = ["ServiceConfig", "ServiceState", "load_state", "create_app"]

_SCOPES = ("all", "filtered", "explicit")


@dataclass
class ServiceConfig:
    model_path: str
    stats_cache_path: str
    category_lexicon_path: str | None = None
    lexicon_path: str | None = None
    corpus_path: str | None = None
    stopword_path: str | None = None
    port: int = 8765
    bind: str = "127.0.0.1"

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port out of range: {self.port}")

    @classmethod
    def from_file(cls, path) -> "ServiceConfig":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        allowed = {k: payload[k] for k in cls.__dataclass_fields__ if k in payload}
        config = cls(**allowed)
        for name in ("model_path", "stats_cache_path", "category_lexicon_path",
                     "lexicon_path", "corpus_path", "stopword_path"):
            value = getattr(config, name)
            if value is not None and not Path(value).is_file():
                raise FileNotFoundError(f"{name} not readable: {value}")
        return config


@dataclass
class ServiceState:
    model: EmbeddingModel
    categories: CategoryLexicon
    stats_cache: dict
    stopwords: frozenset[str]


def load_state(config: ServiceConfig) -> ServiceState:
    model = load_model(config.model_path)
    stats_cache = json.loads(Path(config.stats_cache_path).read_text(encoding="utf-8"))
    categories = (
        load_categories(config.category_lexicon_path)
        if config.category_lexicon_path
        else default_categories()
    )
    stopwords = (
        load_stopwords(config.stopword_path) if config.stopword_path else default_stopwords()
    )
    return ServiceState(
        model=model, categories=categories, stats_cache=stats_cache, stopwords=stopwords
    )


def _bad_request(detail: str) -> JSONResponse:
    return JSONResponse(status_code=400, content={"error": detail})


def create_app(state: ServiceState | None = None) -> FastAPI:
    """Build the app; with `state=None` every data endpoint answers 503."""
    app = FastAPI(title="promptminer service", docs_url=None, redoc_url=None)
    app.state.artifacts = state
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["GET", "POST"], allow_headers=["*"]
    )

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        return _bad_request("malformed parameters")

    def artifacts() -> ServiceState | None:
        return app.state.artifacts

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/suggest")
    def suggest_endpoint(prompt: str = "", k: int = 10):
        st = artifacts()
        if st is None:
            return JSONResponse(status_code=503, content={"error": "loading"})
        if not 1 <= k <= 1000:
            return _bad_request("k must be in 1..1000")
        tokens = normalize(tokenize(prompt), st.stopwords)
        ranked = suggest(st.model, tokens, k, category_lexicon=st.categories)
        return {
            "suggestions": [
                {"term": term, "score": score, "category": category}
                for term, score, category in ranked
            ]
        }

    @app.get("/neighbors")
    def neighbors_endpoint(term: str, k: int = 10):
        st = artifacts()
        if st is None:
            return JSONResponse(status_code=503, content={"error": "loading"})
        if not 1 <= k <= 1000:
            return _bad_request("k must be in 1..1000")
        try:
            ranked = nearest(st.model, term.lower(), k)
        except OutOfVocabulary:
            return JSONResponse(status_code=404, content={"error": f"unknown term: {term}"})
        return {"neighbors": [{"term": t, "cosine": c} for t, c in ranked]}

    @app.get("/stats/workflows")
    def workflows_endpoint():
        st = artifacts()
        if st is None:
            return JSONResponse(status_code=503, content={"error": "loading"})
        return st.stats_cache["workflows"]

    @app.get("/stats/frequencies")
    def frequencies_endpoint(scope: str = "all"):
        st = artifacts()
        if st is None:
            return JSONResponse(status_code=503, content={"error": "loading"})
        if scope not in _SCOPES:
            return _bad_request(f"scope must be one of {', '.join(_SCOPES)}")
        return {
            "scope": scope,
            "total": st.stats_cache["totals"][scope],
            "rows": st.stats_cache["frequencies"][scope],
        }

    @app.get("/stats/architects")
    def architects_endpoint():
        st = artifacts()
        if st is None:
            return JSONResponse(status_code=503, content={"error": "loading"})
        return {"rows": st.stats_cache["architects"]}

    @app.post("/parse")
    async def parse_endpoint(request: Request):
        st = artifacts()
        if st is None:
            return JSONResponse(status_code=503, content={"error": "loading"})
        try:
            payload = await request.json()
        except json.JSONDecodeError:
            return _bad_request("body must be JSON")
        if not isinstance(payload, dict) or not isinstance(payload.get("text"), str):
            return _bad_request('body must be {"text": "..."}')
        try:
            parsed = parse(payload["text"])
        except (EmptyPrompt, MalformedWeight) as exc:
            return _bad_request(f"{exc.__class__.__name__}: {exc}")
        return parsed.to_dict()

    return app
