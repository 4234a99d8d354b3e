"""Command-line front end; a thin client of the FastAPI service.

By default requests are routed in process through an ASGI transport (no
sockets, no network); --server http://host:port sends them to a running
instance instead.  Subcommands: sweep, demo-controversy, variational,
diag, plot, serve.

Every flag is also accepted as a `key = value` line in a config file
(--config; '#' starts a comment); explicit flags override file values.
Exit status: 0 success, 1 input error, 2 numerical non-convergence when
--strict is set.
"""

from __future__ import annotations

import argparse
import asyncio
import math
import sys
from typing import Any

import httpx

from . import __version__

_HARD_DEFAULTS = {
    "model": "rabi",
    "omega": 1.0,
    "nu": 1.0,
    "lam": None,
    "lambda_nr_ratio": None,
    "g_start": 0.0,
    "g_stop": 2.0,
    "g_count": 81,
    "omega0": 1.0,
    "omega1": -0.25,
    "omega2": -0.25,
    "omega3": 0.25,
    "tol": 1e-8,
    "n_start": 20,
    "n_step": 20,
    "n_cap": 400,
    "n_max": 40,
    "levels": 12,
    "methods": "numeric,variational",
    "alpha_mod": 1.0,
    "steps": 1024,
    "out": None,
    "svg": None,
    "title": None,
    "server": None,
    "host": "127.0.0.1",
    "port": 8000,
}

_CONVERTERS = {
    "model": str, "omega": float, "nu": float, "lam": float,
    "lambda_nr_ratio": float, "g_start": float, "g_stop": float,
    "g_count": int, "omega0": float, "omega1": float, "omega2": float,
    "omega3": float, "tol": float, "n_start": int, "n_step": int,
    "n_cap": int, "n_max": int, "levels": int, "methods": str,
    "alpha_mod": float, "steps": int, "out": str, "svg": str,
    "title": str, "server": str, "host": str, "port": int,
    "strict": lambda s: s.strip().lower() in ("1", "true", "yes", "on"),
    "records": str,
}


class InputError(Exception):
    pass


def load_config(path: str) -> dict[str, str]:
    """Parse a flat `key = value` file; '#' starts a comment."""
    values: dict[str, str] = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise InputError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
                key, value = line.split("=", 1)
                values[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise InputError(f"cannot read config file {path}: {exc}") from exc
    return values


def _resolve(args: argparse.Namespace, key: str) -> Any:
    """CLI flag if given, else config file value, else hard default."""
    cli_value = getattr(args, key, None)
    if cli_value is not None:
        return cli_value
    config = getattr(args, "_config_values", {})
    if key in config:
        try:
            return _CONVERTERS[key](config[key])
        except (ValueError, KeyError) as exc:
            raise InputError(f"bad config value for {key!r}: {config[key]!r} ({exc})") from exc
    return _HARD_DEFAULTS.get(key)


def _resolve_strict(args: argparse.Namespace) -> bool:
    if getattr(args, "strict", False):
        return True
    config = getattr(args, "_config_values", {})
    if "strict" in config:
        return bool(_CONVERTERS["strict"](config["strict"]))
    return False


def _request(args: argparse.Namespace, method: str, path: str,
             payload: dict | None = None) -> httpx.Response:
    server = _resolve(args, "server")
    if server:
        with httpx.Client(base_url=server, timeout=None) as client:
            return client.request(method, path, json=payload)

    from .service import create_app

    async def _go() -> httpx.Response:
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://cavityberry.internal",
                                     timeout=None) as client:
            return await client.request(method, path, json=payload)

    return asyncio.run(_go())


def _call(args: argparse.Namespace, method: str, path: str,
          payload: dict | None = None) -> dict:
    try:
        resp = _request(args, method, path, payload)
    except httpx.HTTPError as exc:
        raise InputError(f"request to service failed: {exc}") from exc
    if resp.status_code in (400, 422):
        raise InputError(f"invalid input: {resp.json().get('detail')}")
    if resp.status_code != 200:
        raise InputError(f"service error {resp.status_code}: {resp.text}")
    return resp.json()


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--server", help="base URL of a running service (default: in-process)")


def _add_two_level(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega", type=float, help="field frequency (default 1)")
    p.add_argument("--nu", type=float, help="atomic eigenfrequency (default 1)")


def _add_lambda(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega0", type=float, help="Lambda field frequency (default 1)")
    p.add_argument("--omega1", type=float, help="lower level 1 energy (default -0.25)")
    p.add_argument("--omega2", type=float, help="lower level 2 energy (default -0.25)")
    p.add_argument("--omega3", type=float, help="upper level energy (default 0.25)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavityberry",
        description="Berry phases of quantized-light-atom models",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="coupling sweep: numeric vs variational Berry phase")
    p.add_argument("--model", choices=["rabi", "jc", "lambda3"])
    _add_two_level(p)
    _add_lambda(p)
    p.add_argument("--lambda-nr-ratio", dest="lambda_nr_ratio", type=float,
                   help="lam_nr / lam in [0, 1] (default: 1 for rabi, 0 for jc)")
    p.add_argument("--g-start", dest="g_start", type=float)
    p.add_argument("--g-stop", dest="g_stop", type=float)
    p.add_argument("--g-count", dest="g_count", type=int)
    p.add_argument("--tol", type=float, help="truncation-convergence tolerance")
    p.add_argument("--n-start", dest="n_start", type=int)
    p.add_argument("--n-step", dest="n_step", type=int)
    p.add_argument("--n-cap", dest="n_cap", type=int)
    p.add_argument("--methods", help="comma list from numeric,variational,oracle")
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--svg", help="SVG output path")
    p.add_argument("--strict", action="store_true",
                   help="exit 2 if any grid point fails to converge")
    _add_common(p)

    p = sub.add_parser("demo-controversy",
                       help="C-number semiclassics arc-vs-loop demo (RWA on/off)")
    _add_two_level(p)
    p.add_argument("--lam", type=float, help="rotating coupling (default 0.5)")
    p.add_argument("--alpha-mod", dest="alpha_mod", type=float, help="|alpha| (default 1)")
    p.add_argument("--steps", type=int, help="loop samples (default 1024)")
    p.add_argument("--tol", type=float)
    p.add_argument("--n-cap", dest="n_cap", type=int)
    p.add_argument("--out", help="CSV output path")
    _add_common(p)

    p = sub.add_parser("variational", help="closed-form variational ground state")
    p.add_argument("--model", choices=["rabi", "lambda3"])
    _add_two_level(p)
    _add_lambda(p)
    p.add_argument("--lam", type=float, help="coupling lam (rabi) or eta (lambda3)")
    _add_common(p)

    p = sub.add_parser("diag", help="one-shot diagonalization dump")
    p.add_argument("--model", choices=["rabi", "jc", "lambda3"])
    _add_two_level(p)
    _add_lambda(p)
    p.add_argument("--lam", type=float, help="coupling lam (two-level) or eta (lambda3)")
    p.add_argument("--lambda-nr-ratio", dest="lambda_nr_ratio", type=float)
    p.add_argument("--n-max", dest="n_max", type=int, help="Fock cutoff (default 40)")
    p.add_argument("--levels", type=int, help="eigenpairs to report (default 12)")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    _add_common(p)

    p = sub.add_parser("plot", help="render a sweep CSV to SVG")
    p.add_argument("--records", help="input CSV path (from `sweep --out`)", required=False)
    p.add_argument("--svg", help="SVG output path")
    p.add_argument("--title", help="plot title")
    _add_common(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host")
    p.add_argument("--port", type=int)

    return parser


def _cmd_sweep(args: argparse.Namespace) -> int:
    payload = {
        "model": _resolve(args, "model"),
        "g_start": _resolve(args, "g_start"),
        "g_stop": _resolve(args, "g_stop"),
        "g_count": _resolve(args, "g_count"),
        "omega": _resolve(args, "omega"),
        "nu": _resolve(args, "nu"),
        "lambda_nr_ratio": _resolve(args, "lambda_nr_ratio"),
        "omega0": _resolve(args, "omega0"),
        "omega1": _resolve(args, "omega1"),
        "omega2": _resolve(args, "omega2"),
        "omega3": _resolve(args, "omega3"),
        "tol": _resolve(args, "tol"),
        "n_start": _resolve(args, "n_start"),
        "n_step": _resolve(args, "n_step"),
        "n_cap": _resolve(args, "n_cap"),
        "methods": [m.strip() for m in _resolve(args, "methods").split(",") if m.strip()],
        "include_svg": _resolve(args, "svg") is not None,
    }
    body = _call(args, "POST", "/sweep", payload)
    out = _resolve(args, "out")
    if out:
        _write_text(out, body["csv"])
        print(f"wrote {len(body['records'])} records to {out}")
    else:
        sys.stdout.write(body["csv"])
    svg_path = _resolve(args, "svg")
    if svg_path:
        _write_text(svg_path, body["svg"])
        print(f"wrote plot to {svg_path}")
    if not body["all_converged"]:
        unconverged = sum(1 for r in body["records"] if not r["converged"])
        print(f"warning: {unconverged} grid point(s) not converged at n_cap", file=sys.stderr)
        if _resolve_strict(args):
            return 2
    return 0


def _cmd_demo(args: argparse.Namespace) -> int:
    payload = {
        "omega": _resolve(args, "omega"),
        "nu": _resolve(args, "nu"),
        "lam": _resolve(args, "lam") if _resolve(args, "lam") is not None else 0.5,
        "alpha_mod": _resolve(args, "alpha_mod"),
        "steps": _resolve(args, "steps"),
        "tol": _resolve(args, "tol"),
        "n_cap": _resolve(args, "n_cap"),
    }
    body = _call(args, "POST", "/demo-controversy", payload)
    sys.stdout.write(body["text"])
    out = _resolve(args, "out")
    if out:
        _write_text(out, body["csv"])
        print(f"wrote case table to {out}")
    return 0


def _cmd_variational(args: argparse.Namespace) -> int:
    lam = _resolve(args, "lam")
    payload = {
        "model": _resolve(args, "model"),
        "omega": _resolve(args, "omega"),
        "nu": _resolve(args, "nu"),
        "lam": lam if lam is not None else 1.0,
        "omega0": _resolve(args, "omega0"),
        "omega1": _resolve(args, "omega1"),
        "omega2": _resolve(args, "omega2"),
        "omega3": _resolve(args, "omega3"),
    }
    body = _call(args, "POST", "/variational", payload)
    for key in ("alpha_gs", "mean_photon", "energy", "gamma", "regime",
                "critical_coupling", "c_plus", "c_minus"):
        if body.get(key) is not None:
            print(f"{key} = {body[key]}")
    return 0


def _cmd_diag(args: argparse.Namespace) -> int:
    lam = _resolve(args, "lam")
    payload = {
        "model": _resolve(args, "model"),
        "omega": _resolve(args, "omega"),
        "nu": _resolve(args, "nu"),
        "lam": lam if lam is not None else 1.0,
        "lambda_nr_ratio": _resolve(args, "lambda_nr_ratio"),
        "omega0": _resolve(args, "omega0"),
        "omega1": _resolve(args, "omega1"),
        "omega2": _resolve(args, "omega2"),
        "omega3": _resolve(args, "omega3"),
        "eta": lam if lam is not None else 0.5,
        "n_max": _resolve(args, "n_max"),
        "levels": _resolve(args, "levels"),
    }
    body = _call(args, "POST", "/diag", payload)
    out = _resolve(args, "out")
    if out:
        _write_text(out, body["csv"])
        print(f"wrote {len(body['energies'])} levels to {out} "
              f"(dim {body['dim']}, residual {body['residual']:.3e})")
    else:
        sys.stdout.write(body["csv"])
    return 0


def _cmd_plot(args: argparse.Namespace) -> int:
    records_path = _resolve(args, "records")
    if not records_path:
        raise InputError("plot requires --records <csv>")
    from .sweep import parse_csv

    try:
        with open(records_path) as fh:
            records = parse_csv(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {records_path}: {exc}") from exc

    def _or_none(x: float | None) -> float | None:
        return None if x is not None and math.isnan(x) else x

    payload: dict = {
        "records": [
            {
                "g": r.g,
                "gamma_numeric": _or_none(r.gamma_numeric),
                "gamma_variational": _or_none(r.gamma_variational),
                "mean_photon": _or_none(r.mean_photon),
                "n_max": r.n_max,
                "converged": r.converged,
                "gamma_oracle": _or_none(r.gamma_oracle),
            }
            for r in records
        ]
    }
    title = _resolve(args, "title")
    if title:
        payload["style"] = {"title": title}
    body = _call(args, "POST", "/plot", payload)
    svg_path = _resolve(args, "svg")
    if svg_path:
        _write_text(svg_path, body["svg"])
        print(f"wrote plot to {svg_path}")
    else:
        sys.stdout.write(body["svg"])
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=_resolve(args, "host"), port=_resolve(args, "port"))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved here for
        # non-convergence under --strict, so fold those into exit 1
        return 0 if exc.code == 0 else 1
    config_path = getattr(args, "config", None)
    try:
        args._config_values = load_config(config_path) if config_path else {}
        unknown = set(args._config_values) - set(_CONVERTERS)
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        handler = {
            "sweep": _cmd_sweep,
            "demo-controversy": _cmd_demo,
            "variational": _cmd_variational,
            "diag": _cmd_diag,
            "plot": _cmd_plot,
            "serve": _cmd_serve,
        }[args.command]
        return handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
