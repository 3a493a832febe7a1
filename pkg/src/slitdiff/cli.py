"""Command-line interface.

Subcommands build the same request models the HTTP service accepts and
execute them in-process by default; ``--server URL`` posts them to a
running service instead, so scripted workflows can move between local
and remote execution without changing outputs.

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 numerical or runtime failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from .config import parse_parameter_text, reference_parameter_map
from .errors import ConfigError, DataError, NumericalError
from .experiment import load_dataset
from .intensity import (
    MODEL_QUANTUM_DECOHERENT,
    MODELS,
    NORMALIZATION_PEAK_ONE,
    NORMALIZATION_RAW,
    NORMALIZATIONS,
    IntensityCurve,
    curve_csv_text,
)
from .service import handlers
from .service.schemas import (
    CompareRequest,
    CompareResponse,
    DatasetPayload,
    FitRequest,
    FitResponse,
    ParameterSet,
    ScanRequest,
    ScanResponse,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems as exit code 1."""

    def error(self, message: str) -> None:  # noqa: D401 - argparse hook
        raise _UsageError(message)


def _truncation_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected M,N (two comma-separated integers)")
    try:
        m_count, n_count = (int(part.strip()) for part in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-integer truncation in {text!r}") from None
    if m_count < 1 or n_count < 1:
        raise argparse.ArgumentTypeError("truncation counts must be at least 1")
    return m_count, n_count


def build_parser() -> _Parser:
    parser = _Parser(
        prog="slitdiff",
        description="Double-slit diffraction scans, data comparison, and fitting.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="parameter file (key = value lines)")
    common.add_argument(
        "--model",
        choices=MODELS,
        default=MODEL_QUANTUM_DECOHERENT,
        help="intensity model (default: %(default)s)",
    )
    common.add_argument("--beta-min", type=float, default=-0.01, metavar="F")
    common.add_argument("--beta-max", type=float, default=0.01, metavar="F")
    common.add_argument("--beta-step", type=float, default=1.0e-5, metavar="F")
    common.add_argument(
        "--truncation",
        type=_truncation_pair,
        default=(64, 64),
        metavar="M,N",
        help="mode counts along y and x (default: 64,64)",
    )
    common.add_argument(
        "--normalize",
        choices=NORMALIZATIONS,
        default=NORMALIZATION_PEAK_ONE,
        help="curve normalization (default: %(default)s)",
    )
    common.add_argument(
        "--server",
        metavar="URL",
        help="post the request to a running service instead of computing locally",
    )

    scan = subparsers.add_parser("scan", parents=[common], help="sample an intensity curve")
    scan.add_argument("--out", metavar="PATH", default="scan.csv", help="output CSV path")
    scan.set_defaults(handler=_cmd_scan)

    compare = subparsers.add_parser(
        "compare", parents=[common], help="compare a model curve against measured data"
    )
    compare.add_argument("--data", metavar="PATH", required=True, help="two-column data file")
    compare.add_argument("--out", metavar="PATH", default="compare.json")
    compare.set_defaults(handler=_cmd_compare)

    fit = subparsers.add_parser(
        "fit", parents=[common], help="fit model parameters to measured data"
    )
    fit.add_argument("--data", metavar="PATH", required=True, help="two-column data file")
    fit.add_argument(
        "--free",
        metavar="LIST",
        required=True,
        help="comma-separated parameters to fit (A1,A2,c1,c2,lambda_t)",
    )
    fit.add_argument("--max-iterations", type=int, default=2000, metavar="N")
    fit.add_argument("--out", metavar="PATH", default="fit.json")
    fit.set_defaults(handler=_cmd_fit)

    serve = subparsers.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(handler=_cmd_serve)

    return parser


def _load_parameters(args) -> ParameterSet:
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config file {args.config}: {exc}") from exc
        values = parse_parameter_text(text)
    else:
        values = reference_parameter_map()
    return ParameterSet(**values)


def _load_data_payload(path: str) -> DatasetPayload:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read data file {path}: {exc}") from exc
    dataset = load_dataset(text, label=Path(path).name)
    return DatasetPayload(
        sin_beta=dataset.sin_beta.tolist(),
        intensity=dataset.intensity.tolist(),
        label=dataset.label,
    )


_LOCAL_ROUTES = {
    "/scan": (handlers.run_scan, ScanResponse),
    "/compare": (handlers.run_compare, CompareResponse),
    "/fit": (handlers.run_fit, FitResponse),
}

_KIND_ERRORS = {
    "config": ConfigError,
    "data": DataError,
    "numerical": NumericalError,
}


def _execute(route: str, request, server: str | None):
    handler, response_cls = _LOCAL_ROUTES[route]
    if server is None:
        return handler(request)
    import httpx

    url = server.rstrip("/") + route
    try:
        response = httpx.post(url, json=request.model_dump(mode="json"), timeout=600.0)
    except httpx.HTTPError as exc:
        raise NumericalError(f"request to {url} failed: {exc}") from exc
    if response.status_code >= 400:
        try:
            body = response.json()
        except ValueError:
            body = {}
        detail = body.get("detail", response.text)
        error_cls = _KIND_ERRORS.get(body.get("kind"), ConfigError)
        raise error_cls(f"{url} responded {response.status_code}: {detail}")
    return response_cls.model_validate(response.json())


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _scan_request(args) -> ScanRequest:
    return ScanRequest(
        parameters=_load_parameters(args),
        model=args.model,
        beta_min=args.beta_min,
        beta_max=args.beta_max,
        beta_step=args.beta_step,
        truncation_m=args.truncation[0],
        truncation_n=args.truncation[1],
        normalization=args.normalize,
    )


def _cmd_scan(args) -> int:
    request = _scan_request(args)
    response = _execute("/scan", request, args.server)
    curve = IntensityCurve(
        sin_beta=np.asarray(response.curve.sin_beta),
        intensity=np.asarray(response.curve.intensity),
        normalization=NORMALIZATION_RAW,
    )
    csv_path = Path(args.out)
    csv_path.write_text(curve_csv_text(curve), encoding="utf-8")
    envelope_path = Path(str(csv_path) + ".json")
    _write_json(
        envelope_path,
        {"curve_csv": csv_path.name, "provenance": response.provenance.model_dump()},
    )
    print(f"wrote {csv_path} and {envelope_path} ({len(response.curve.sin_beta)} samples)")
    return EXIT_OK


def _cmd_compare(args) -> int:
    request = CompareRequest(scan=_scan_request(args), data=_load_data_payload(args.data))
    response = _execute("/compare", request, args.server)
    out_path = Path(args.out)
    _write_json(out_path, response.model_dump())
    print(
        f"wrote {out_path} (rmse {response.rmse:.6e}, "
        f"max residual {response.max_abs_residual:.6e})"
    )
    return EXIT_OK


def _cmd_fit(args) -> int:
    free = [name.strip() for name in args.free.split(",") if name.strip()]
    if not free:
        raise _UsageError("--free must name at least one parameter")
    request = FitRequest(
        parameters=_load_parameters(args),
        data=_load_data_payload(args.data),
        free=free,
        truncation_m=args.truncation[0],
        truncation_n=args.truncation[1],
        max_iterations=args.max_iterations,
    )
    response = _execute("/fit", request, args.server)
    out_path = Path(args.out)
    _write_json(out_path, response.model_dump())
    fitted = ", ".join(f"{k}={v:.6g}" for k, v in sorted(response.fitted_params.items()))
    status = "converged" if response.converged else "did not converge"
    print(f"wrote {out_path} ({status}; {fitted}; rmse {response.rmse:.6e})")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, ValidationError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def entry() -> None:
    raise SystemExit(main(sys.argv[1:]))


if __name__ == "__main__":
    raise SystemExit(main(sys.argv[1:]))
