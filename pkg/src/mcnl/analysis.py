"""From circuits to codes: reachability vectors, code extraction, and the
nonlinearity/distance certification report.

For a layered (sigma-pi-sigma) circuit, the bit vector marking which AND
gates can reach output i is a generator row; XORing rows over any output
subset T bounds the AND count of the component f_T, so the span's minimum
weight must be at least the AND count forced by the measured nonlinearity.
certify() measures all of this on a concrete circuit and reports whether the
inequality holds (it must, for every valid input; false indicates a bug).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .boolfn import BooleanFunction, anf_from_tt, vector_nonlinearity
from .budgets import Budgets, default_budgets
from .circuit import AndGate, Circuit, OneGate, XorGate, classify_circuit, truth_table
from .codes import GeneratorMatrix, mc_lower_from_nl, rank_f2, span_min_weight
from .errors import ValidationError


@dataclass(frozen=True)
class ExtractedCode:
    matrix: GeneratorMatrix
    rank: int
    degenerate: bool  # rank < m


@dataclass(frozen=True)
class CertReport:
    n: int
    m: int
    s: int  # AND count
    measured_nl: int
    M: int  # AND count forced by measured_nl
    code_rank: int
    code_distance: int
    theorem_holds: bool
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "s": self.s,
            "measured_nl": self.measured_nl,
            "M": self.M,
            "code_rank": self.code_rank,
            "code_distance": self.code_distance,
            "theorem_holds": self.theorem_holds,
            "notes": list(self.notes),
        }


def reachability_vectors(c: Circuit) -> list[int]:
    """Per output, a bitmask over AND gates (in circuit order) with a
    directed path from the gate to that output."""
    and_index: dict[int, int] = {}
    for k, gate in enumerate(c.gates):
        if isinstance(gate, AndGate):
            and_index[c.n + k] = len(and_index)
    reach: dict[int, int] = {}

    def visit(w: int) -> int:
        if w < c.n:
            return 0
        cached = reach.get(w)
        if cached is not None:
            return cached
        gate = c.gates[w - c.n]
        if isinstance(gate, OneGate):
            r = 0
        elif isinstance(gate, AndGate):
            r = (1 << and_index[w]) | visit(gate.a) | visit(gate.b)
        else:
            r = 0
            for a in gate.args:
                r |= visit(a)
        reach[w] = r
        return r

    return [visit(w) for w in c.outputs]


def extract_code(c: Circuit) -> ExtractedCode:
    """Reachability rows as a generator matrix; requires a layered circuit."""
    cls = classify_circuit(c)
    if not cls.is_sigma_pi_sigma:
        offender = _first_nested_and(c)
        raise ValidationError(
            f"not a sigma-pi-sigma circuit: gate g{offender} has an AND gate "
            "in an operand cone")
    rows = reachability_vectors(c)
    s = cls.and_count
    matrix = GeneratorMatrix(c.m, s, tuple(rows))
    rank = rank_f2(rows)
    return ExtractedCode(matrix, rank, rank < c.m)


def _first_nested_and(c: Circuit) -> int:
    has_and = [False] * c.wire_count()
    for k, gate in enumerate(c.gates):
        w = c.n + k
        if isinstance(gate, AndGate):
            if has_and[gate.a] or has_and[gate.b]:
                return k + 1
            has_and[w] = True
        elif isinstance(gate, XorGate):
            has_and[w] = any(has_and[a] for a in gate.args)
    raise AssertionError("no nested AND gate found")


def certify(c: Circuit, budgets: Budgets | None = None) -> CertReport:
    """Measure NL, derive the forced AND count M, and check the extracted
    code's span distance against it."""
    b = budgets or default_budgets()
    extracted = extract_code(c)
    f = truth_table(c, b)
    nl = vector_nonlinearity(f, b)
    m_bound = mc_lower_from_nl(c.n, nl)
    distance, rank = span_min_weight(extracted.matrix.rows)
    notes = []
    if extracted.degenerate:
        notes.append(f"degenerate code: rank {rank} < m = {c.m}")
    if nl == 0:
        notes.append("vacuous: measured_nl = 0 forces M = 0")
    return CertReport(
        n=c.n,
        m=c.m,
        s=extracted.matrix.s,
        measured_nl=nl,
        M=m_bound,
        code_rank=rank,
        code_distance=distance,
        theorem_holds=distance >= m_bound,
        notes=tuple(notes),
    )


def quadratic_nl_rank(f: BooleanFunction, budgets: Budgets | None = None) -> int:
    """Nonlinearity of a single-output function of degree <= 2 from the rank
    of its quadratic-part adjacency matrix: NL = 2^(n-1) - 2^(n-u-1) with
    rank 2u. Exact for every quadratic (and affine) function."""
    if f.m != 1:
        raise ValidationError(f"quadratic_nl_rank needs m = 1, got m = {f.m}")
    anf = anf_from_tt(f)
    rows = [0] * f.n
    for mask in anf.monomials[0]:
        w = mask.bit_count()
        if w > 2:
            raise ValidationError(
                f"degree must be <= 2, found monomial of degree {w}")
        if w == 2:
            i = (mask & -mask).bit_length() - 1
            j = (mask ^ (mask & -mask)).bit_length() - 1
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    rank = rank_f2(rows)
    assert rank % 2 == 0, "symplectic rank must be even"
    u = rank // 2
    return (1 << (f.n - 1)) - (1 << (f.n - u - 1))
