"""Multiplicative-complexity and nonlinearity toolkit for XOR-AND circuits.

Core objects: bit-packed Boolean functions (boolfn), structured families
(families), the gate-level circuit IR (circuit), synthesizers with exact
AND accounting (synth), coding bounds (codes), the circuit-to-code
certification pipeline (analysis), and exact brute-force references
(oracle). The service subpackage and cli module expose everything over
HTTP and the command line.
"""

from .analysis import (CertReport, ExtractedCode, certify, extract_code,
                       quadratic_nl_rank, reachability_vectors)
from .boolfn import (Anf, BooleanFunction, WalshSpectrum, anf_from_tt,
                     classify_nl, component, degree, format_tt_text,
                     nonlinearity, parse_tt_text, tt_from_anf,
                     vector_nonlinearity, walsh_spectrum)
from .budgets import Budgets, default_budgets
from .circuit import (AndGate, Circuit, OneGate, XorGate, classify_circuit,
                      evaluate, parse_circuit_text, serialize_circuit_text,
                      truth_table)
from .codes import (GeneratorMatrix, counting_lower_bound, degree_mc_lower,
                    format_code_text, gv_feasible, gv_min_length,
                    mc_lower_from_nl, min_distance, monte_carlo_rank, mrrw_B,
                    mrrw_min_length, mrrw_rate_bound, nl_upper_from_mc,
                    parse_code_text, rank_prob_bound)
from .errors import BudgetError, McnlError, ParseError, ValidationError
from .families import (FieldSpec, GoldSpec, default_field,
                       excluded_products_fn, field_mult_fn, format_field_spec,
                       gf2n_mul, gold_fn, indicator_fn, inner_product_fn,
                       parse_field_spec)
from .oracle import brute_mc, brute_nl
from .synth import (BilinearPlan, UniversalPlan, default_universal_k,
                    synth_bilinear_from_code, synth_excluded_products,
                    synth_indicators, synth_monomial_bank, synth_universal,
                    universal_plan)

__version__ = "0.1.0"

__all__ = [
    "Anf", "AndGate", "BilinearPlan", "BooleanFunction", "BudgetError",
    "Budgets", "CertReport", "Circuit", "ExtractedCode", "FieldSpec",
    "GeneratorMatrix", "GoldSpec", "McnlError", "OneGate", "ParseError",
    "UniversalPlan", "ValidationError", "WalshSpectrum", "XorGate",
    "anf_from_tt", "certify", "classify_circuit", "classify_nl", "component",
    "counting_lower_bound", "default_budgets", "default_field",
    "default_universal_k", "degree", "degree_mc_lower", "evaluate",
    "excluded_products_fn", "extract_code", "field_mult_fn",
    "format_code_text", "format_field_spec", "format_tt_text", "gf2n_mul",
    "gold_fn", "gv_feasible", "gv_min_length", "indicator_fn",
    "inner_product_fn", "mc_lower_from_nl", "min_distance",
    "monte_carlo_rank", "mrrw_B", "mrrw_min_length", "mrrw_rate_bound",
    "nl_upper_from_mc", "nonlinearity", "parse_circuit_text",
    "parse_code_text", "parse_field_spec", "parse_tt_text",
    "quadratic_nl_rank", "rank_prob_bound", "reachability_vectors",
    "serialize_circuit_text", "synth_bilinear_from_code",
    "synth_excluded_products", "synth_indicators", "synth_monomial_bank",
    "synth_universal", "truth_table", "tt_from_anf", "universal_plan",
    "vector_nonlinearity", "walsh_spectrum",
]
