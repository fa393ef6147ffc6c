"""Request/response schemas for the HTTP surface.

Every CLI subcommand maps to one endpoint; the CLI renders these responses,
so their field set is the documented output schema. Budget overrides ride
along in requests so a remote server honors the client's env configuration.
"""
from __future__ import annotations

from dataclasses import replace

from pydantic import BaseModel, ConfigDict, model_validator

from ..budgets import Budgets, default_budgets


class BudgetOverrides(BaseModel):
    model_config = ConfigDict(extra="forbid")
    scalar_n_cap: int | None = None
    vector_cost_cap: int | None = None
    vector_m_cap: int | None = None
    tt_n_cap: int | None = None
    distance_m_cap: int | None = None
    mc_node_cap: int | None = None

    def resolve(self) -> Budgets:
        given = {k: v for k, v in self.model_dump().items() if v is not None}
        return replace(default_budgets(), **given)


def resolve_budgets(overrides: BudgetOverrides | None) -> Budgets:
    return overrides.resolve() if overrides else default_budgets()


# ------------------------------------------------------------------ fn

class AnalyzeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    tt: str | None = None
    builtin: str | None = None
    field_spec: str | None = None  # 'gf2^<n>/0x<hex>' for gold/fieldmult builtins
    budgets: BudgetOverrides | None = None

    @model_validator(mode="after")
    def _one_source(self):
        if (self.tt is None) == (self.builtin is None):
            raise ValueError("provide exactly one of 'tt' or 'builtin'")
        return self


class AnalyzeResponse(BaseModel):
    n: int
    m: int
    degree: int
    anf_size: int
    nl: int | None  # scalar nonlinearity; null for m > 1
    vector_nl: int
    classification: str


# ------------------------------------------------------------------ synth

class SynthMonomialsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    n: int


class SynthIndicatorsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    n: int


class SynthUniversalRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    tt: str
    k: int | None = None


class SynthExprodRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    n: int


class SynthBilinearRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    code: str
    seed: int = 0


class SynthResponse(BaseModel):
    circuit: str
    and_count: int
    plan: dict | None = None


# ------------------------------------------------------------------ circuit

class CircuitRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    circuit: str
    budgets: BudgetOverrides | None = None


class CircuitEvalRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    circuit: str
    input: str  # hex, with or without 0x


class CircuitAnalyzeResponse(BaseModel):
    n: int
    m: int
    and_count: int
    and_depth: int
    is_quadratic: bool
    is_sigma_pi_sigma: bool
    is_bilinear: bool


class EvalResponse(BaseModel):
    bits: str


class TtResponse(BaseModel):
    tt: str


class CertifyResponse(BaseModel):
    n: int
    m: int
    s: int
    measured_nl: int
    M: int
    code_rank: int
    code_distance: int
    theorem_holds: bool
    notes: list[str]


# ------------------------------------------------------------------ bounds

class GvRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    m: int
    d: int


class GvResponse(BaseModel):
    m: int
    d: int
    min_length: int


class MrrwResponse(BaseModel):
    m: int
    d: int
    min_length: int
    label: str


class MrrwBRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    u: float
    delta: float


class MrrwBResponse(BaseModel):
    u: float
    delta: float
    value: float


class CountingRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    n: int
    m: int


class CountingResponse(BaseModel):
    n: int
    m: int
    value: float
    vacuous: bool


class NlMcRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    n: int
    mc: int | None = None
    nl: int | None = None

    @model_validator(mode="after")
    def _one_direction(self):
        if (self.mc is None) == (self.nl is None):
            raise ValueError("provide exactly one of 'mc' or 'nl'")
        return self


class NlMcResponse(BaseModel):
    n: int
    direction: str  # 'nl_upper_from_mc' | 'mc_lower_from_nl'
    input_value: int
    value: int


class RankProbRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    k: int
    d: int
    trials: int | None = None
    seed: int = 0


class RankProbResponse(BaseModel):
    k: int
    d: int
    bound: float
    trials: int | None
    seed: int
    empirical: float | None


# ------------------------------------------------------------------ oracle

class OracleNlRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    tt: str


class OracleNlResponse(BaseModel):
    nl: int


class OracleMcRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    tt: str
    k_max: int = 2
    node_cap: int | None = None
    budgets: BudgetOverrides | None = None


class OracleMcResponse(BaseModel):
    k_max: int
    mc: int | None
    exceeds_k_max: bool
