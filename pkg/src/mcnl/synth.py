"""Circuit synthesizers with exact AND-gate accounting.

Four constructions: the monomial bank (every monomial of degree >= 2), the
indicator bank (all 2^n point indicators), the table-driven universal
construction with a tunable split k, and the bilinear construction driven by
a generator matrix. Each returns the circuit plus a plan whose predicted AND
count matches the emitted circuit exactly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .boolfn import BooleanFunction
from .circuit import AndGate, Circuit, Gate, OneGate, XorGate
from .codes import GeneratorMatrix, rank_f2
from .errors import ValidationError


@dataclass(frozen=True)
class UniversalPlan:
    n: int
    m: int
    k: int
    last_bank_ands: int   # indicators on x_(k+1)..x_n
    first_bank_ands: int  # indicators on x_1..x_k
    product_ands: int     # m * 2^k product terms
    predicted_and_count: int


@dataclass(frozen=True)
class BilinearPlan:
    n: int
    s: int  # AND gates, one per code column
    seed: int
    predicted_and_count: int


class _Builder:
    def __init__(self, n: int):
        self.n = n
        self.gates: list[Gate] = []
        self._one: int | None = None

    def gate_wire(self, idx: int) -> int:
        return self.n + idx

    def emit(self, gate: Gate) -> int:
        self.gates.append(gate)
        return self.n + len(self.gates) - 1

    def emit_and(self, a: int, b: int) -> int:
        return self.emit(AndGate(a, b))

    def emit_xor(self, args: list[int]) -> int:
        return self.emit(XorGate(tuple(args)))

    def one(self) -> int:
        if self._one is None:
            self._one = self.emit(OneGate())
        return self._one

    def build(self, outputs: list[int],
              partition: tuple[frozenset[int], frozenset[int]] | None = None) -> Circuit:
        return Circuit(self.n, tuple(self.gates), tuple(outputs), partition)


def _bank_masks(width: int) -> list[int]:
    masks = [m for m in range(1 << width) if m.bit_count() >= 2]
    masks.sort(key=lambda m: (m.bit_count(), m))
    return masks


def _emit_monomial_bank(b: _Builder, var_wires: list[int]) -> dict[int, int]:
    """AND chain for every product of >= 2 of the given wires.

    Returns mask -> wire over subset-local masks; singleton masks map to the
    inputs themselves. Each degree-d product extends a degree-(d-1) one by
    its lowest variable, so masks must be built in (weight, value) order.
    """
    width = len(var_wires)
    wires = {1 << j: var_wires[j] for j in range(width)}
    for mask in _bank_masks(width):
        low = mask & -mask
        rest = mask ^ low
        wires[mask] = b.emit_and(wires[low], wires[rest])
    return wires


def _emit_indicators(b: _Builder, var_wires: list[int],
                     bank: dict[int, int]) -> list[int]:
    """One wire per assignment z: indicator I_z as the XOR of its ANF.

    The ANF of I_z is exactly the monomials whose mask contains z, so the
    operand list mixes bank wires, inputs, and ONE (for z = 0).
    """
    width = len(var_wires)
    top = 1 << width
    out = []
    for z in range(top):
        args = []
        # enumerate supersets of z in ascending order
        comp = (top - 1) ^ z
        sub = 0
        while True:
            mask = z | sub
            if mask == 0:
                args.append(b.one())
            else:
                args.append(bank[mask])
            if sub == comp:
                break
            sub = (sub - comp) & comp
        out.append(b.emit_xor(args))
    return out


# ------------------------------------------------------------- constructions

def synth_monomial_bank(n: int) -> tuple[Circuit, int]:
    """All 2^n - n - 1 monomials of degree >= 2, outputs in (weight, value)
    mask order. Returns (circuit, and_count)."""
    if not 2 <= n <= 16:
        raise ValidationError(f"n must be in [2, 16], got {n}")
    b = _Builder(n)
    wires = _emit_monomial_bank(b, list(range(n)))
    outputs = [wires[mask] for mask in _bank_masks(n)]
    return b.build(outputs), len(outputs)


def synth_indicators(n: int) -> tuple[Circuit, int]:
    """All 2^n point indicators, output z = I_z. AND count 2^n - n - 1."""
    if not 2 <= n <= 12:
        raise ValidationError(f"n must be in [2, 12], got {n}")
    b = _Builder(n)
    bank = _emit_monomial_bank(b, list(range(n)))
    outputs = _emit_indicators(b, list(range(n)), bank)
    return b.build(outputs), (1 << n) - n - 1


def default_universal_k(n: int, m: int) -> int:
    lg = (m - 1).bit_length()  # ceil(log2 m); 0 for m = 1
    if m & (m - 1) == 0 and (n + lg) % 2 == 0:
        k = (n - lg) // 2
    else:
        k = (n - lg + 1) // 2
    return max(1, min(n - 1, k))


def universal_plan(n: int, m: int, k: int) -> UniversalPlan:
    last = (1 << (n - k)) - (n - k) - 1
    first = (1 << k) - k - 1
    prods = m << k
    return UniversalPlan(n, m, k, last, first, prods, last + first + prods)


def synth_universal(f: BooleanFunction, k: int | None = None
                    ) -> tuple[Circuit, UniversalPlan]:
    """Table-driven synthesis of an arbitrary (n, m)-function.

    Builds indicator banks on the last n-k and first k variables, one AND per
    (output, first-part assignment) pair combining a first-part indicator
    with the XOR of last-part indicators selected by the restricted table,
    and XORs the 2^k products per output.
    """
    n, m = f.n, f.m
    if not 2 <= n <= 16:
        raise ValidationError(f"n must be in [2, 16], got {n}")
    if k is None:
        k = default_universal_k(n, m)
    if not 1 <= k <= n - 1:
        raise ValidationError(f"k must be in [1, {n - 1}], got {k}")
    plan = universal_plan(n, m, k)

    b = _Builder(n)
    last_vars = list(range(k, n))
    first_vars = list(range(k))
    last_ind = _emit_indicators(b, last_vars, _emit_monomial_bank(b, last_vars))
    first_ind = _emit_indicators(b, first_vars, _emit_monomial_bank(b, first_vars))

    outputs = []
    for i in range(m):
        table = f.tables[i]
        parts = []
        for a in range(1 << k):
            sel = [bb for bb in range(1 << (n - k))
                   if (table >> (a | (bb << k))) & 1]
            if not sel:
                # zero restriction: I_a * (I_a + 1) = 0 keeps the per-pair
                # AND count exact without a dedicated zero wire
                rhs = b.emit_xor([first_ind[a], b.one()])
            elif len(sel) == 1:
                rhs = last_ind[sel[0]]
            else:
                rhs = b.emit_xor([last_ind[bb] for bb in sel])
            parts.append(b.emit_and(first_ind[a], rhs))
        outputs.append(b.emit_xor(parts))
    circ = b.build(outputs)
    emitted = sum(1 for g in circ.gates if isinstance(g, AndGate))
    assert emitted == plan.predicted_and_count, (emitted, plan)
    return circ, plan


def synth_excluded_products(n: int) -> tuple[Circuit, int]:
    """(n, n) excluded products with 3n - 6 AND gates for n >= 4.

    Prefix chain x1..xj, suffix chain xj..xn, cross products pairing prefix i
    with suffix i+3 (skipping exactly one variable), and two end products.
    n = 3 is the special case of three plain products.
    """
    if not 3 <= n <= 20:
        raise ValidationError(f"n must be in [3, 20], got {n}")
    b = _Builder(n)
    if n == 3:
        outputs = [b.emit_and(1, 2), b.emit_and(0, 2), b.emit_and(0, 1)]
        return b.build(outputs), 3
    prefix = {2: b.emit_and(0, 1)}  # prefix[j] = x1 * ... * xj
    for j in range(3, n):
        prefix[j] = b.emit_and(prefix[j - 1], j - 1)
    suffix = {n - 1: b.emit_and(n - 2, n - 1)}  # suffix[j] = xj * ... * xn
    for j in range(n - 2, 1, -1):
        suffix[j] = b.emit_and(j - 1, suffix[j + 1])
    out = [0] * n
    out[0] = suffix[2]
    for i in range(1, n - 3):
        # all variables except x_(i+2): prefix through x_(i+1), suffix from x_(i+3)
        out[i + 1] = b.emit_and(prefix[i + 1], suffix[i + 3])
    out[1] = b.emit_and(0, suffix[3])
    out[n - 2] = b.emit_and(prefix[n - 2], n - 1)
    out[n - 1] = prefix[n - 1]
    circ = b.build(out)
    count = sum(1 for g in circ.gates if isinstance(g, AndGate))
    assert count == 3 * n - 6, (count, n)
    return circ, count


def synth_bilinear_from_code(code: GeneratorMatrix, seed: int = 0
                             ) -> tuple[Circuit, BilinearPlan]:
    """One AND gate per code column, seeded random side sums, outputs wired
    by the generator rows.

    The function has n = code.m inputs (even) split into halves; gate j is
    L_j * R_j with each side an XOR over a uniformly random nonempty subset
    of its half, and output i XORs the gates selected by row i.
    """
    n = code.m
    if n % 2 != 0 or n < 2:
        raise ValidationError(f"code dimension must be even and >= 2, got {n}")
    if rank_f2(code.rows) != code.m:
        raise ValidationError(
            f"generator matrix must have full row rank {code.m}")
    half = n // 2
    rng = random.Random(seed)
    b = _Builder(n)
    and_wires = []
    for _ in range(code.s):
        lmask = rng.randrange(1, 1 << half)
        rmask = rng.randrange(1, 1 << half)
        lvars = [j for j in range(half) if (lmask >> j) & 1]
        rvars = [half + j for j in range(half) if (rmask >> j) & 1]
        lw = lvars[0] if len(lvars) == 1 else b.emit_xor(lvars)
        rw = rvars[0] if len(rvars) == 1 else b.emit_xor(rvars)
        and_wires.append(b.emit_and(lw, rw))
    outputs = []
    for row in code.rows:
        args = [and_wires[j] for j in range(code.s) if (row >> j) & 1]
        outputs.append(b.emit_xor(args))
    partition = (frozenset(range(1, half + 1)), frozenset(range(half + 1, n + 1)))
    circ = b.build(outputs, partition)
    plan = BilinearPlan(n=n, s=code.s, seed=seed, predicted_and_count=code.s)
    return circ, plan
