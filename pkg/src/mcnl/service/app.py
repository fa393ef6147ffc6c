"""HTTP facade over the core library.

One endpoint per CLI subcommand; all state lives in the request. Library
errors map to status codes by their class: validation 422, budget 413,
parse 400, matching the CLI exit codes 2/3/4.
"""
from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import analysis, boolfn, circuit, codes, families, oracle, synth
from ..errors import McnlError, ValidationError
from . import models as md

_STATUS = {"validation": 422, "budget": 413, "parse": 400}


def _parse_builtin(spec: str, field_spec: str | None) -> boolfn.BooleanFunction:
    """Builtin function specs: ip:<k>, gold:<n>[:<i>], fieldmult:<n>,
    exprod:<n>, indicator:<n>:<z>."""
    parts = spec.split(":")
    name, args = parts[0], parts[1:]
    try:
        nums = [int(a, 0) for a in args]
    except ValueError:
        raise ValidationError(f"non-integer argument in builtin '{spec}'") from None
    field = families.parse_field_spec(field_spec) if field_spec else None
    if name == "ip" and len(nums) == 1:
        return families.inner_product_fn(nums[0])
    if name == "gold" and len(nums) in (1, 2):
        i = nums[1] if len(nums) == 2 else 1
        return families.gold_fn(nums[0], i, spec=field)
    if name == "fieldmult" and len(nums) == 1:
        return families.field_mult_fn(nums[0], spec=field)
    if name == "exprod" and len(nums) == 1:
        return families.excluded_products_fn(nums[0])
    if name == "indicator" and len(nums) == 2:
        return families.indicator_fn(nums[1], nums[0])
    raise ValidationError(
        f"unknown builtin '{spec}'; expected ip:<k>, gold:<n>[:<i>], "
        "fieldmult:<n>, exprod:<n>, or indicator:<n>:<z>")


def _parse_hex_input(text: str, n: int) -> int:
    s = text.strip().lower()
    if s.startswith("0x"):
        s = s[2:]
    try:
        x = int(s, 16) if s else -1
    except ValueError:
        x = -1
    if x < 0:
        raise ValidationError(f"invalid hex input '{text.strip()}'")
    if x >= 1 << n:
        raise ValidationError(f"input 0x{x:x} out of range for n = {n}")
    return x


def create_app() -> FastAPI:
    app = FastAPI(title="mcnl", version="0.1.0")

    @app.exception_handler(McnlError)
    async def _mcnl_error(request: Request, exc: McnlError) -> JSONResponse:
        return JSONResponse(
            status_code=_STATUS.get(exc.code, 500),
            content={"detail": {"code": exc.code, "message": str(exc)}})

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    # -------------------------------------------------------------- functions

    @app.post("/fn/analyze", response_model=md.AnalyzeResponse)
    def fn_analyze(req: md.AnalyzeRequest) -> md.AnalyzeResponse:
        if req.tt is not None:
            f = boolfn.parse_tt_text(req.tt)
        else:
            f = _parse_builtin(req.builtin, req.field_spec)
        budgets = md.resolve_budgets(req.budgets)
        anf = boolfn.anf_from_tt(f)
        cls = boolfn.classify_nl(f, budgets)
        return md.AnalyzeResponse(
            n=f.n, m=f.m,
            degree=max((mask.bit_count() for ms in anf.monomials for mask in ms),
                       default=0),
            anf_size=sum(len(ms) for ms in anf.monomials),
            nl=cls.nl if f.m == 1 else None,
            vector_nl=cls.nl,
            classification=cls.kind)

    # -------------------------------------------------------------- synthesis

    @app.post("/synth/monomials", response_model=md.SynthResponse)
    def synth_monomials(req: md.SynthMonomialsRequest) -> md.SynthResponse:
        circ, count = synth.synth_monomial_bank(req.n)
        return md.SynthResponse(
            circuit=circuit.serialize_circuit_text(circ), and_count=count,
            plan={"n": req.n, "predicted_and_count": count})

    @app.post("/synth/indicators", response_model=md.SynthResponse)
    def synth_indicators(req: md.SynthIndicatorsRequest) -> md.SynthResponse:
        circ, count = synth.synth_indicators(req.n)
        return md.SynthResponse(
            circuit=circuit.serialize_circuit_text(circ), and_count=count,
            plan={"n": req.n, "predicted_and_count": count})

    @app.post("/synth/universal", response_model=md.SynthResponse)
    def synth_universal(req: md.SynthUniversalRequest) -> md.SynthResponse:
        f = boolfn.parse_tt_text(req.tt)
        circ, plan = synth.synth_universal(f, k=req.k)
        return md.SynthResponse(
            circuit=circuit.serialize_circuit_text(circ),
            and_count=plan.predicted_and_count, plan=asdict(plan))

    @app.post("/synth/exprod", response_model=md.SynthResponse)
    def synth_exprod(req: md.SynthExprodRequest) -> md.SynthResponse:
        circ, count = synth.synth_excluded_products(req.n)
        return md.SynthResponse(
            circuit=circuit.serialize_circuit_text(circ), and_count=count,
            plan={"n": req.n, "predicted_and_count": count})

    @app.post("/synth/bilinear", response_model=md.SynthResponse)
    def synth_bilinear(req: md.SynthBilinearRequest) -> md.SynthResponse:
        code = codes.parse_code_text(req.code)
        circ, plan = synth.synth_bilinear_from_code(code, seed=req.seed)
        return md.SynthResponse(
            circuit=circuit.serialize_circuit_text(circ),
            and_count=plan.predicted_and_count, plan=asdict(plan))

    # --------------------------------------------------------------- circuits

    @app.post("/circuit/analyze", response_model=md.CircuitAnalyzeResponse)
    def circuit_analyze(req: md.CircuitRequest) -> md.CircuitAnalyzeResponse:
        c = circuit.parse_circuit_text(req.circuit)
        cls = circuit.classify_circuit(c)
        return md.CircuitAnalyzeResponse(
            n=c.n, m=len(c.outputs), and_count=cls.and_count,
            and_depth=cls.and_depth, is_quadratic=cls.is_quadratic,
            is_sigma_pi_sigma=cls.is_sigma_pi_sigma, is_bilinear=cls.is_bilinear)

    @app.post("/circuit/eval", response_model=md.EvalResponse)
    def circuit_eval(req: md.CircuitEvalRequest) -> md.EvalResponse:
        c = circuit.parse_circuit_text(req.circuit)
        x = _parse_hex_input(req.input, c.n)
        bits = circuit.evaluate(c, x)
        return md.EvalResponse(bits="".join(str(b) for b in bits))

    @app.post("/circuit/tt", response_model=md.TtResponse)
    def circuit_tt(req: md.CircuitRequest) -> md.TtResponse:
        c = circuit.parse_circuit_text(req.circuit)
        f = circuit.truth_table(c, md.resolve_budgets(req.budgets))
        return md.TtResponse(tt=boolfn.format_tt_text(f))

    @app.post("/circuit/certify", response_model=md.CertifyResponse)
    def circuit_certify(req: md.CircuitRequest) -> md.CertifyResponse:
        c = circuit.parse_circuit_text(req.circuit)
        rep = analysis.certify(c, md.resolve_budgets(req.budgets))
        return md.CertifyResponse(**rep.to_dict())

    # ----------------------------------------------------------------- bounds

    @app.post("/bounds/gv", response_model=md.GvResponse)
    def bounds_gv(req: md.GvRequest) -> md.GvResponse:
        return md.GvResponse(
            m=req.m, d=req.d, min_length=codes.gv_min_length(req.m, req.d))

    @app.post("/bounds/mrrw", response_model=md.MrrwResponse)
    def bounds_mrrw(req: md.GvRequest) -> md.MrrwResponse:
        return md.MrrwResponse(
            m=req.m, d=req.d, min_length=codes.mrrw_min_length(req.m, req.d),
            label=codes.MRRW_LABEL)

    @app.post("/bounds/mrrw-b", response_model=md.MrrwBResponse)
    def bounds_mrrw_b(req: md.MrrwBRequest) -> md.MrrwBResponse:
        return md.MrrwBResponse(
            u=req.u, delta=req.delta, value=codes.mrrw_B(req.u, req.delta))

    @app.post("/bounds/counting", response_model=md.CountingResponse)
    def bounds_counting(req: md.CountingRequest) -> md.CountingResponse:
        v = codes.counting_lower_bound(req.n, req.m)
        return md.CountingResponse(n=req.n, m=req.m, value=v, vacuous=v <= 0)

    @app.post("/bounds/nl-mc", response_model=md.NlMcResponse)
    def bounds_nl_mc(req: md.NlMcRequest) -> md.NlMcResponse:
        if req.mc is not None:
            return md.NlMcResponse(
                n=req.n, direction="nl_upper_from_mc", input_value=req.mc,
                value=codes.nl_upper_from_mc(req.n, req.mc))
        return md.NlMcResponse(
            n=req.n, direction="mc_lower_from_nl", input_value=req.nl,
            value=codes.mc_lower_from_nl(req.n, req.nl))

    @app.post("/bounds/rankprob", response_model=md.RankProbResponse)
    def bounds_rankprob(req: md.RankProbRequest) -> md.RankProbResponse:
        bound = codes.rank_prob_bound(req.k, req.d)
        empirical = None
        if req.trials is not None:
            empirical = codes.monte_carlo_rank(req.k, req.d, req.trials, req.seed)
        return md.RankProbResponse(
            k=req.k, d=req.d, bound=bound, trials=req.trials, seed=req.seed,
            empirical=empirical)

    # ---------------------------------------------------------------- oracles

    @app.post("/oracle/nl", response_model=md.OracleNlResponse)
    def oracle_nl(req: md.OracleNlRequest) -> md.OracleNlResponse:
        f = boolfn.parse_tt_text(req.tt)
        return md.OracleNlResponse(nl=oracle.brute_nl(f))

    @app.post("/oracle/mc", response_model=md.OracleMcResponse)
    def oracle_mc(req: md.OracleMcRequest) -> md.OracleMcResponse:
        f = boolfn.parse_tt_text(req.tt)
        mc = oracle.brute_mc(f, req.k_max, node_cap=req.node_cap,
                             budgets=md.resolve_budgets(req.budgets))
        return md.OracleMcResponse(k_max=req.k_max, mc=mc,
                                   exceeds_k_max=mc is None)

    return app
