"""XOR-AND circuit IR with a line-oriented text format.

Gates: AND with exactly two operands, XOR with any number k >= 1 of distinct
operands (a single operand is a wire copy), and ONE (constant true). Gates
are topologically ordered by construction: operands may only name inputs or
earlier gates. Wires are ints: 0..n-1 are inputs x1..xn, n+k-1 is gate k.

Text format:

    circuit <n>
    g1 = XOR x1 x2
    g2 = AND g1 x3
    partition 1,2 | 3,4      # optional, between gates and outputs
    outputs g2

'#' starts a comment anywhere on a line; blank lines are ignored.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

from .boolfn import BooleanFunction, variable_table
from .budgets import Budgets, default_budgets
from .errors import BudgetError, ParseError, ValidationError


class AndGate(NamedTuple):
    a: int
    b: int


class XorGate(NamedTuple):
    args: tuple[int, ...]


class OneGate(NamedTuple):
    pass


Gate = Union[AndGate, XorGate, OneGate]


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...]
    outputs: tuple[int, ...]
    partition: tuple[frozenset[int], frozenset[int]] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"input count must be >= 1, got {self.n}")
        for k, gate in enumerate(self.gates, start=1):
            limit = self.n + k - 1  # wires defined before gate k
            if isinstance(gate, AndGate):
                ops = (gate.a, gate.b)
            elif isinstance(gate, XorGate):
                ops = gate.args
                if not ops:
                    raise ValidationError(f"gate g{k}: XOR needs at least one operand")
                if len(set(ops)) != len(ops):
                    raise ValidationError(f"gate g{k}: duplicate XOR operand")
            elif isinstance(gate, OneGate):
                ops = ()
            else:
                raise ValidationError(f"gate g{k}: unknown gate kind")
            for w in ops:
                if not 0 <= w < limit:
                    raise ValidationError(
                        f"gate g{k}: operand references undefined wire")
        if not self.outputs:
            raise ValidationError("circuit must declare at least one output")
        top = self.n + len(self.gates)
        for w in self.outputs:
            if not 0 <= w < top:
                raise ValidationError("output references undefined wire")
        if self.partition is not None:
            left, right = self.partition
            if not left or not right:
                raise ValidationError("partition sides must be nonempty")
            if left & right:
                raise ValidationError("partition sides must be disjoint")
            for i in left | right:
                if not 1 <= i <= self.n:
                    raise ValidationError(
                        f"partition index {i} out of range [1, {self.n}]")
            if len(left) + len(right) != self.n:  # disjoint, so this is coverage
                raise ValidationError(
                    f"partition must cover all {self.n} inputs")

    @property
    def m(self) -> int:
        return len(self.outputs)

    def wire_count(self) -> int:
        return self.n + len(self.gates)


@dataclass(frozen=True)
class CircuitClassification:
    is_quadratic: bool
    is_sigma_pi_sigma: bool
    is_bilinear: bool
    and_count: int
    and_depth: int


# ---------------------------------------------------------------- evaluation

def evaluate(c: Circuit, x: int) -> tuple[int, ...]:
    """Output bits on the input whose index bits are x (x_1 = bit 0)."""
    if not 0 <= x < 1 << c.n:
        raise ValidationError(f"input must be in [0, 2^{c.n}), got {x}")
    vals = [(x >> j) & 1 for j in range(c.n)]
    for gate in c.gates:
        if isinstance(gate, AndGate):
            vals.append(vals[gate.a] & vals[gate.b])
        elif isinstance(gate, XorGate):
            acc = 0
            for w in gate.args:
                acc ^= vals[w]
            vals.append(acc)
        else:
            vals.append(1)
    return tuple(vals[w] for w in c.outputs)


def truth_table(c: Circuit, budgets: Budgets | None = None) -> BooleanFunction:
    """Evaluate all 2^n inputs at once on bit-packed wire values."""
    b = budgets or default_budgets()
    if c.n > b.tt_n_cap:
        raise BudgetError(f"n = {c.n} exceeds tt_n_cap = {b.tt_n_cap}")
    full = (1 << (1 << c.n)) - 1
    vals = [variable_table(c.n, j) for j in range(1, c.n + 1)]
    for gate in c.gates:
        if isinstance(gate, AndGate):
            vals.append(vals[gate.a] & vals[gate.b])
        elif isinstance(gate, XorGate):
            acc = 0
            for w in gate.args:
                acc ^= vals[w]
            vals.append(acc)
        else:
            vals.append(full)
    return BooleanFunction(c.n, c.m, tuple(vals[w] for w in c.outputs))


# ------------------------------------------------------------------- metrics

def and_metrics(c: Circuit) -> tuple[int, int]:
    """(AND count, AND depth): gates in the list, and the maximum number of
    AND gates on any input-to-output path."""
    count = sum(1 for g in c.gates if isinstance(g, AndGate))
    depth = [0] * c.wire_count()
    for k, gate in enumerate(c.gates):
        w = c.n + k
        if isinstance(gate, AndGate):
            depth[w] = 1 + max(depth[gate.a], depth[gate.b])
        elif isinstance(gate, XorGate):
            depth[w] = max(depth[a] for a in gate.args)
    out_depth = max((depth[w] for w in c.outputs), default=0)
    return count, out_depth


def classify_circuit(c: Circuit) -> CircuitClassification:
    """Structural classification.

    quadratic: no AND gate has another AND gate in either operand cone. In
    this IR that is the same as the layered XOR/AND/XOR shape, so the
    sigma-pi-sigma flag coincides with it. bilinear additionally needs a
    declared partition with every AND taking one operand supported on each
    side (a constant operand fits either side).
    """
    count, depth_val = and_metrics(c)
    has_and = [False] * c.wire_count()  # AND gate in cone, inclusive
    support = [0] * c.wire_count()
    for j in range(c.n):
        support[j] = 1 << j
    quadratic = True
    for k, gate in enumerate(c.gates):
        w = c.n + k
        if isinstance(gate, AndGate):
            if has_and[gate.a] or has_and[gate.b]:
                quadratic = False
            has_and[w] = True
            support[w] = support[gate.a] | support[gate.b]
        elif isinstance(gate, XorGate):
            acc_has, acc_sup = False, 0
            for a in gate.args:
                acc_has = acc_has or has_and[a]
                acc_sup |= support[a]
            has_and[w], support[w] = acc_has, acc_sup
    bilinear = False
    if quadratic and c.partition is not None:
        left = sum(1 << (i - 1) for i in c.partition[0])
        right = sum(1 << (i - 1) for i in c.partition[1])
        bilinear = True
        for k, gate in enumerate(c.gates):
            if not isinstance(gate, AndGate):
                continue
            sa, sb = support[gate.a], support[gate.b]
            if not ((sa & ~left == 0 and sb & ~right == 0)
                    or (sa & ~right == 0 and sb & ~left == 0)):
                bilinear = False
                break
    return CircuitClassification(
        is_quadratic=quadratic,
        is_sigma_pi_sigma=quadratic,
        is_bilinear=bilinear,
        and_count=count,
        and_depth=depth_val,
    )


# --------------------------------------------------------------- text format

def _wire_name(c_n: int, w: int) -> str:
    return f"x{w + 1}" if w < c_n else f"g{w - c_n + 1}"


def serialize_circuit_text(c: Circuit) -> str:
    lines = [f"circuit {c.n}"]
    for k, gate in enumerate(c.gates, start=1):
        if isinstance(gate, AndGate):
            body = f"AND {_wire_name(c.n, gate.a)} {_wire_name(c.n, gate.b)}"
        elif isinstance(gate, XorGate):
            body = "XOR " + " ".join(_wire_name(c.n, a) for a in gate.args)
        else:
            body = "ONE"
        lines.append(f"g{k} = {body}")
    if c.partition is not None:
        left = ",".join(str(i) for i in sorted(c.partition[0]))
        right = ",".join(str(i) for i in sorted(c.partition[1]))
        lines.append(f"partition {left} | {right}")
    lines.append("outputs " + " ".join(_wire_name(c.n, w) for w in c.outputs))
    return "\n".join(lines) + "\n"


def _parse_wire(token: str, n: int, defined_gates: int, lineno: int) -> int:
    if token.startswith("x"):
        body, base, limit = token[1:], 0, n
    elif token.startswith("g"):
        body, base, limit = token[1:], n, defined_gates
    else:
        raise ParseError(f"bad wire token {token!r}", lineno)
    if not body.isdigit() or body.startswith("0"):
        raise ParseError(f"bad wire token {token!r}", lineno)
    idx = int(body)
    if not 1 <= idx <= limit:
        raise ParseError(f"wire {token} is not defined here", lineno)
    return base + idx - 1


def _parse_index_list(text: str, lineno: int) -> frozenset[int]:
    items = [p.strip() for p in text.split(",")]
    out = set()
    for p in items:
        if not p.isdigit():
            raise ParseError(f"bad partition index {p!r}", lineno)
        out.add(int(p))
    if len(out) != len(items):
        raise ParseError("repeated partition index", lineno)
    return frozenset(out)


def parse_circuit_text(text: str) -> Circuit:
    rows: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ParseError("empty circuit input")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "circuit" or not parts[1].isdigit():
        raise ParseError("expected header 'circuit <n>'", lineno)
    n = int(parts[1])
    if n < 1:
        raise ParseError("input count must be >= 1", lineno)

    gates: list[Gate] = []
    partition = None
    outputs = None
    for lineno, line in rows[1:]:
        if outputs is not None:
            raise ParseError("content after outputs line", lineno)
        tokens = line.split()
        if tokens[0] == "outputs":
            if len(tokens) < 2:
                raise ParseError("outputs line needs at least one wire", lineno)
            outputs = tuple(
                _parse_wire(t, n, len(gates), lineno) for t in tokens[1:])
            continue
        if tokens[0] == "partition":
            if partition is not None:
                raise ParseError("duplicate partition line", lineno)
            body = line[len("partition"):]
            sides = body.split("|")
            if len(sides) != 2:
                raise ParseError("partition needs exactly one '|'", lineno)
            left = _parse_index_list(sides[0], lineno)
            right = _parse_index_list(sides[1], lineno)
            partition = (left, right)
            continue
        if partition is not None:
            raise ParseError("gate line after partition", lineno)
        # gate line: g<k> = KIND operands...
        if len(tokens) < 3 or tokens[1] != "=":
            raise ParseError("expected 'g<k> = <AND|XOR|ONE> ...'", lineno)
        name = tokens[0]
        expected = f"g{len(gates) + 1}"
        if name != expected:
            raise ParseError(
                f"gate numbers must be consecutive: expected {expected}, got {name}",
                lineno)
        kind = tokens[2]
        ops = tokens[3:]
        if kind == "AND":
            if len(ops) != 2:
                raise ParseError("AND takes exactly two operands", lineno)
            gates.append(AndGate(
                _parse_wire(ops[0], n, len(gates), lineno),
                _parse_wire(ops[1], n, len(gates), lineno)))
        elif kind == "XOR":
            if not ops:
                raise ParseError("XOR takes at least one operand", lineno)
            args = tuple(_parse_wire(t, n, len(gates), lineno) for t in ops)
            if len(set(args)) != len(args):
                raise ParseError("duplicate XOR operand", lineno)
            gates.append(XorGate(args))
        elif kind == "ONE":
            if ops:
                raise ParseError("ONE takes no operands", lineno)
            gates.append(OneGate())
        else:
            raise ParseError(f"unknown gate kind {kind!r}", lineno)
    if outputs is None:
        raise ParseError("missing outputs line")
    try:
        return Circuit(n, tuple(gates), outputs, partition)
    except ValidationError as exc:
        raise ParseError(str(exc)) from None
