"""Shared test fixtures: F2 row-space utilities, a greedy builder for
generator matrices with a guaranteed minimum distance, and random object
generators used across the suite."""
import random

from mcnl import codes
from mcnl.boolfn import Anf, BooleanFunction, tt_from_anf
from mcnl.circuit import AndGate, Circuit, XorGate


def rref_rows(rows):
    """Canonical reduced-echelon row set (pivot = lowest set bit).

    Two row collections span the same space iff their canonical sets are
    equal, so this doubles as a row-space comparator.
    """
    red = []
    for r in rows:
        for q in red:
            if r & (q & -q):
                r ^= q
        if r:
            low = r & -r
            for i in range(len(red)):
                if red[i] & low:
                    red[i] ^= r
            red.append(r)
    return frozenset(red)


def kernel_basis(rows, width):
    """Basis of the right kernel {v : row . v = 0 for all rows}."""
    red = rref_rows(rows)
    pivots = {(q & -q).bit_length() - 1 for q in red}
    basis = []
    for j in range(width):
        if j in pivots:
            continue
        v = 1 << j
        for q in red:
            if (q >> j) & 1:
                v |= q & -q
        basis.append(v)
    return basis


def varshamov_code(m, d, s):
    """[s, m, >= d] generator matrix by the greedy parity-check argument.

    Columns of an (s-m) x s check matrix are chosen so that no d-1 of them
    are linearly dependent; the GV condition guarantees a fresh column
    exists at every step. The returned generator spans the check kernel.
    """
    assert codes.gv_feasible(s, m, d), (m, d, s)
    r = s - m
    by_size = [{0}]  # by_size[t] = XORs of exactly t chosen columns
    sums = {0}
    cols = []
    for _ in range(s):
        v = next(v for v in range(1, 1 << r) if v not in sums)
        cols.append(v)
        top = min(len(by_size), d - 2)
        for t in range(top - 1, -1, -1):
            new = {x ^ v for x in by_size[t]}
            if t + 1 < len(by_size):
                by_size[t + 1] |= new
            else:
                by_size.append(new)
            sums |= new
    rows = []
    for i in range(r):
        row = 0
        for j, c in enumerate(cols):
            row |= ((c >> i) & 1) << j
        rows.append(row)
    basis = kernel_basis(rows, s)
    assert len(basis) >= m, (m, d, s, len(basis))
    return codes.GeneratorMatrix(m, s, tuple(basis[:m]))


def random_function(rng, n, m=1):
    return BooleanFunction(n, m, tuple(rng.getrandbits(1 << n) for _ in range(m)))


def random_quadratic(rng, n):
    """Single-output function of degree <= 2 with random coefficients."""
    mons = set()
    for i in range(n):
        for j in range(i + 1, n):
            if rng.getrandbits(1):
                mons.add((1 << i) | (1 << j))
    for i in range(n):
        if rng.getrandbits(1):
            mons.add(1 << i)
    if rng.getrandbits(1):
        mons.add(0)
    return tt_from_anf(Anf(n, 1, (frozenset(mons),)))


def random_layered_circuit(rng, n, and_count, m):
    """Random sigma-pi-sigma circuit: affine AND operands, XOR outputs."""
    gates = []

    def emit(g):
        gates.append(g)
        return n + len(gates) - 1

    and_wires = []
    for _ in range(and_count):
        ops = []
        for _ in range(2):
            sel = rng.sample(range(n), rng.randrange(1, n + 1))
            ops.append(emit(XorGate(tuple(sorted(sel)))))
        and_wires.append(emit(AndGate(ops[0], ops[1])))
    outputs = []
    for _ in range(m):
        sel = rng.sample(and_wires, rng.randrange(1, and_count + 1))
        sel += rng.sample(range(n), rng.randrange(0, n + 1))
        outputs.append(emit(XorGate(tuple(sorted(sel)))))
    return Circuit(n, tuple(gates), tuple(outputs))
