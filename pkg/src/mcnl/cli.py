"""Command-line client for the mcnl service.

Every subcommand wraps exactly one endpoint. By default the service runs
in-process; --server targets a running instance instead. Runs with identical
(command, inputs, seed, budgets) produce byte-identical json output: bodies
are re-serialized with sorted keys and fixed separators.

Exit codes: 0 success, 2 validation error, 3 budget exceeded, 4 I/O or
parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import fields as dataclass_fields
from typing import NoReturn

from .budgets import Budgets

_EXIT_BY_STATUS = {422: 2, 413: 3, 400: 4}
_BUILTIN_PREFIXES = ("ip:", "gold:", "fieldmult:", "exprod:", "indicator:")


def _fail(code: str, message: str, exit_code: int) -> NoReturn:
    print(f"mcnl: {code}: {message}", file=sys.stderr)
    raise SystemExit(exit_code)


class Client:
    """Thin POST/GET wrapper; in-process app unless a server URL is given."""

    def __init__(self, server: str | None):
        if server is None:
            import warnings
            with warnings.catch_warnings():
                # the shimmed httpx in some environments trips a noisy
                # deprecation (a UserWarning) inside starlette's test client
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import create_app
            self._client = TestClient(create_app(),
                                      raise_server_exceptions=False)
        else:
            import httpx
            self._client = httpx.Client(base_url=server, timeout=600.0)

    def post(self, path: str, payload: dict):
        try:
            return self._client.post(path, json=payload)
        except Exception as exc:  # connection errors on remote servers
            _fail("io", f"request to {path} failed: {exc}", 4)

    def close(self) -> None:
        self._client.close()


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        _fail("io", f"cannot read {path}: {exc.strerror or exc}", 4)


def _env_budgets() -> dict:
    out = {}
    for f in dataclass_fields(Budgets):
        raw = os.environ.get("MCNL_" + f.name.upper())
        if raw is not None:
            try:
                out[f.name] = int(raw)
            except ValueError:
                _fail("validation",
                      f"MCNL_{f.name.upper()} must be an integer, got {raw!r}", 2)
    return out


def _attach_budgets(payload: dict) -> dict:
    env = _env_budgets()
    if env:
        payload["budgets"] = env
    return payload


# ------------------------------------------------------------------ rendering

def _fmt_val(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "; ".join(str(x) for x in v)
    return repr(v) if isinstance(v, float) else str(v)


def _render_kv(body: dict) -> str:
    return "".join(f"{k} = {_fmt_val(v)}\n" for k, v in body.items())


def _render_circuit(body: dict) -> str:
    plan = json.dumps(body["plan"], sort_keys=True, separators=(",", ":"))
    return f"# plan {plan}\n" + body["circuit"]


def _render_tt(body: dict) -> str:
    return body["tt"]


def _emit(resp, fmt: str, render) -> int:
    if resp.status_code != 200:
        return _emit_error(resp)
    body = resp.json()
    if fmt == "json":
        sys.stdout.write(
            json.dumps(body, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write(render(body))
    return 0


def _emit_error(resp) -> int:
    try:
        detail = resp.json().get("detail")
    except Exception:
        detail = None
    if isinstance(detail, dict) and "code" in detail:
        code, message = detail["code"], detail.get("message", "")
    elif isinstance(detail, list):
        # fastapi request-validation report: flatten to one line
        code = "validation"
        message = "; ".join(
            ".".join(str(p) for p in item.get("loc", [])) + ": " + item.get("msg", "")
            for item in detail)
    else:
        code, message = "error", (detail or resp.text or f"HTTP {resp.status_code}")
    print(f"mcnl: {code}: {message}", file=sys.stderr)
    return _EXIT_BY_STATUS.get(resp.status_code, 1)


# ----------------------------------------------------------------- commands

def _cmd_fn_analyze(args, client, fmt):
    payload: dict = {}
    if args.source.startswith(_BUILTIN_PREFIXES):
        payload["builtin"] = args.source
    else:
        payload["tt"] = _read_input(args.source)
    if args.field:
        payload["field_spec"] = args.field
    return _emit(client.post("/fn/analyze", _attach_budgets(payload)),
                 fmt, _render_kv)


def _cmd_synth_monomials(args, client, fmt):
    return _emit(client.post("/synth/monomials", {"n": args.n}),
                 fmt, _render_circuit)


def _cmd_synth_indicators(args, client, fmt):
    return _emit(client.post("/synth/indicators", {"n": args.n}),
                 fmt, _render_circuit)


def _cmd_synth_universal(args, client, fmt):
    payload = {"tt": _read_input(args.ttfile)}
    if args.k is not None:
        payload["k"] = args.k
    return _emit(client.post("/synth/universal", payload), fmt, _render_circuit)


def _cmd_synth_exprod(args, client, fmt):
    return _emit(client.post("/synth/exprod", {"n": args.n}),
                 fmt, _render_circuit)


def _cmd_synth_bilinear(args, client, fmt):
    payload = {"code": _read_input(args.codefile), "seed": args.seed}
    return _emit(client.post("/synth/bilinear", payload), fmt, _render_circuit)


def _cmd_circuit_analyze(args, client, fmt):
    payload = _attach_budgets({"circuit": _read_input(args.file)})
    return _emit(client.post("/circuit/analyze", payload), fmt, _render_kv)


def _cmd_circuit_eval(args, client, fmt):
    payload = {"circuit": _read_input(args.file), "input": args.input}
    return _emit(client.post("/circuit/eval", payload), fmt, _render_kv)


def _cmd_circuit_tt(args, client, fmt):
    payload = _attach_budgets({"circuit": _read_input(args.file)})
    return _emit(client.post("/circuit/tt", payload), fmt, _render_tt)


def _cmd_circuit_certify(args, client, fmt):
    payload = _attach_budgets({"circuit": _read_input(args.file)})
    return _emit(client.post("/circuit/certify", payload), fmt, _render_kv)


def _cmd_bounds_gv(args, client, fmt):
    return _emit(client.post("/bounds/gv", {"m": args.m, "d": args.d}),
                 fmt, _render_kv)


def _cmd_bounds_mrrw(args, client, fmt):
    return _emit(client.post("/bounds/mrrw", {"m": args.m, "d": args.d}),
                 fmt, _render_kv)


def _cmd_bounds_mrrw_b(args, client, fmt):
    return _emit(client.post("/bounds/mrrw-b", {"u": args.u, "delta": args.delta}),
                 fmt, _render_kv)


def _cmd_bounds_counting(args, client, fmt):
    return _emit(client.post("/bounds/counting", {"n": args.n, "m": args.m}),
                 fmt, _render_kv)


def _cmd_bounds_nl_mc(args, client, fmt):
    if (args.mc is None) == (args.nl is None):
        _fail("validation", "provide a positional AND count or --nl, not both", 2)
    payload = {"n": args.n}
    if args.mc is not None:
        payload["mc"] = args.mc
    else:
        payload["nl"] = args.nl
    return _emit(client.post("/bounds/nl-mc", payload), fmt, _render_kv)


def _cmd_bounds_rankprob(args, client, fmt):
    payload = {"k": args.k, "d": args.d, "seed": args.seed}
    if args.trials is not None:
        payload["trials"] = args.trials
    return _emit(client.post("/bounds/rankprob", payload), fmt, _render_kv)


def _cmd_oracle_nl(args, client, fmt):
    return _emit(client.post("/oracle/nl", {"tt": _read_input(args.ttfile)}),
                 fmt, _render_kv)


def _cmd_oracle_mc(args, client, fmt):
    payload = {"tt": _read_input(args.ttfile), "k_max": args.kmax}
    if args.node_cap is not None:
        payload["node_cap"] = args.node_cap
    return _emit(client.post("/oracle/mc", _attach_budgets(payload)),
                 fmt, _render_kv)


def _cmd_serve(args, client, fmt):
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mcnl",
        description="Multiplicative-complexity and nonlinearity toolkit")
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="output format (default: text)")
    p.add_argument("--server", metavar="URL", default=None,
                   help="send requests to a running service instead of in-process")
    sub = p.add_subparsers(dest="group", required=True)

    fn = sub.add_parser("fn", help="Boolean function analysis").add_subparsers(
        dest="cmd", required=True)
    q = fn.add_parser("analyze",
                      help="nonlinearity, degree, ANF size, classification")
    q.add_argument("source",
                   help="truth-table file ('-' for stdin) or a builtin spec: "
                        "ip:<k>, gold:<n>[:<i>], fieldmult:<n>, exprod:<n>, "
                        "indicator:<n>:<z>")
    q.add_argument("--field", metavar="SPEC",
                   help="field for gold/fieldmult, e.g. gf2^8/0x11b")
    q.set_defaults(func=_cmd_fn_analyze)

    sy = sub.add_parser("synth", help="circuit synthesis").add_subparsers(
        dest="cmd", required=True)
    q = sy.add_parser("monomials", help="all degree >= 2 monomials of n variables")
    q.add_argument("n", type=int)
    q.set_defaults(func=_cmd_synth_monomials)
    q = sy.add_parser("indicators", help="all 2^n point indicators")
    q.add_argument("n", type=int)
    q.set_defaults(func=_cmd_synth_indicators)
    q = sy.add_parser("universal", help="table-driven circuit for any function")
    q.add_argument("ttfile", help="truth-table file ('-' for stdin)")
    q.add_argument("-k", type=int, default=None,
                   help="split point (default: balances the two banks)")
    q.set_defaults(func=_cmd_synth_universal)
    q = sy.add_parser("exprod", help="excluded products with 3n - 6 AND gates")
    q.add_argument("n", type=int)
    q.set_defaults(func=_cmd_synth_exprod)
    q = sy.add_parser("bilinear", help="bilinear circuit from a generator matrix")
    q.add_argument("codefile", help="generator-matrix file ('-' for stdin)")
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=_cmd_synth_bilinear)

    ci = sub.add_parser("circuit", help="circuit analysis").add_subparsers(
        dest="cmd", required=True)
    q = ci.add_parser("analyze", help="classification and AND metrics")
    q.add_argument("file", help="circuit file ('-' for stdin)")
    q.set_defaults(func=_cmd_circuit_analyze)
    q = ci.add_parser("eval", help="evaluate on one input")
    q.add_argument("file", help="circuit file ('-' for stdin)")
    q.add_argument("input", help="input assignment as hex, e.g. 0x1a (x1 = bit 0)")
    q.set_defaults(func=_cmd_circuit_eval)
    q = ci.add_parser("tt", help="full truth table")
    q.add_argument("file", help="circuit file ('-' for stdin)")
    q.set_defaults(func=_cmd_circuit_tt)
    q = ci.add_parser("certify",
                      help="nonlinearity-to-distance certificate report")
    q.add_argument("file", help="circuit file ('-' for stdin)")
    q.set_defaults(func=_cmd_circuit_certify)

    bo = sub.add_parser("bounds", help="bounds and scans").add_subparsers(
        dest="cmd", required=True)
    q = bo.add_parser("gv", help="minimum length passing the GV condition")
    q.add_argument("m", type=int)
    q.add_argument("d", type=int)
    q.set_defaults(func=_cmd_bounds_gv)
    q = bo.add_parser("mrrw", help="minimum length not excluded by the LP bound")
    q.add_argument("m", type=int)
    q.add_argument("d", type=int)
    q.set_defaults(func=_cmd_bounds_mrrw)
    q = bo.add_parser("mrrw-B", help="LP rate bound B(u, delta)")
    q.add_argument("u", type=float)
    q.add_argument("delta", type=float)
    q.set_defaults(func=_cmd_bounds_mrrw_b)
    q = bo.add_parser("counting", help="counting lower bound on AND gates")
    q.add_argument("n", type=int)
    q.add_argument("m", type=int)
    q.set_defaults(func=_cmd_bounds_counting)
    q = bo.add_parser("nl-mc", help="nonlinearity/AND-count conversions")
    q.add_argument("n", type=int)
    q.add_argument("mc", type=int, nargs="?", default=None,
                   help="AND count; yields the nonlinearity upper bound")
    q.add_argument("--nl", type=int, default=None,
                   help="nonlinearity; yields the AND-count lower bound")
    q.set_defaults(func=_cmd_bounds_nl_mc)
    q = bo.add_parser("rankprob", help="random-matrix rank deficiency bound")
    q.add_argument("k", type=int)
    q.add_argument("d", type=int)
    q.add_argument("--trials", type=int, default=None,
                   help="also estimate the probability empirically")
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=_cmd_bounds_rankprob)

    orc = sub.add_parser("oracle", help="exact brute-force references").add_subparsers(
        dest="cmd", required=True)
    q = orc.add_parser("nl", help="nonlinearity by exhaustive affine distance")
    q.add_argument("ttfile", help="truth-table file ('-' for stdin)")
    q.set_defaults(func=_cmd_oracle_nl)
    q = orc.add_parser("mc", help="exact AND-gate count by exhaustive search")
    q.add_argument("ttfile", help="truth-table file ('-' for stdin)")
    q.add_argument("--kmax", type=int, default=2,
                   help="search circuits with at most this many ANDs (default 2)")
    q.add_argument("--node-cap", type=int, default=None,
                   help="abort after examining this many candidate products")
    q.set_defaults(func=_cmd_oracle_mc)

    q = sub.add_parser("serve", help="run the HTTP service")
    q.add_argument("--host", default="127.0.0.1")
    q.add_argument("--port", type=int, default=8000)
    q.set_defaults(func=_cmd_serve)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.func is _cmd_serve:
        return _cmd_serve(args, None, None)
    client = Client(args.server)
    try:
        return args.func(args, client, args.format)
    finally:
        client.close()


if __name__ == "__main__":
    raise SystemExit(main())
