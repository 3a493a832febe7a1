"""FastAPI application exposing the simulator over HTTP.

Domain errors map to structured JSON bodies carrying a ``kind`` field
(config, data, numerical) so thin clients can translate them into the
matching process exit codes without parsing message text.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import ConfigError, DataError, NumericalError
from . import handlers
from .schemas import (
    CompareRequest,
    CompareResponse,
    FitRequest,
    FitResponse,
    ParameterSet,
    ScanRequest,
    ScanResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="slitdiff",
        version=__version__,
        description="Double-slit diffraction intensity scans, comparisons, and fits.",
    )

    @app.exception_handler(ConfigError)
    async def _config_error(_: Request, exc: ConfigError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc), "kind": "config"})

    @app.exception_handler(DataError)
    async def _data_error(_: Request, exc: DataError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(exc), "kind": "data"})

    @app.exception_handler(NumericalError)
    async def _numerical_error(_: Request, exc: NumericalError) -> JSONResponse:
        return JSONResponse(
            status_code=500, content={"detail": str(exc), "kind": "numerical"}
        )

    @app.get("/healthz")
    async def healthz() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/reference-parameters", response_model=ParameterSet)
    async def reference() -> ParameterSet:
        return handlers.reference_parameters_payload()

    @app.post("/scan", response_model=ScanResponse)
    async def scan(request: ScanRequest) -> ScanResponse:
        return handlers.run_scan(request)

    @app.post("/compare", response_model=CompareResponse)
    async def compare(request: CompareRequest) -> CompareResponse:
        return handlers.run_compare(request)

    @app.post("/fit", response_model=FitResponse)
    async def fit(request: FitRequest) -> FitResponse:
        return handlers.run_fit(request)

    return app


app = create_app()
