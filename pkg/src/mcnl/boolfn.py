"""Boolean (n, m)-functions as bit-packed truth tables.

Representation: each of the m outputs is one Python int whose bit v is the
output value on input index v. Input variable x_j (1-based) is bit j-1 of the
index, so x_1 is the least-significant bit. Packing the whole table into one
int makes XOR/AND of functions single big-int operations and lets the Moebius
transform run as n shift-and-xor passes.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .budgets import Budgets, default_budgets
from .errors import BudgetError, ParseError, ValidationError

N_MAX = 24  # representation cap; per-op budgets are tighter


@dataclass(frozen=True)
class BooleanFunction:
    n: int
    m: int
    tables: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= N_MAX:
            raise ValidationError(f"n must be in [1, {N_MAX}], got {self.n}")
        if not 1 <= self.m <= 1 << self.n:
            raise ValidationError(f"m must be in [1, 2^n], got {self.m}")
        if len(self.tables) != self.m:
            raise ValidationError(
                f"expected {self.m} tables, got {len(self.tables)}")
        full = (1 << (1 << self.n)) - 1
        for i, t in enumerate(self.tables):
            if not 0 <= t <= full:
                raise ValidationError(f"table {i + 1} does not fit 2^{self.n} bits")

    @property
    def size(self) -> int:
        return 1 << self.n


@dataclass(frozen=True)
class Anf:
    """Algebraic normal form: per output, the set of monomial masks.

    Mask bit j-1 set means variable x_j occurs in the monomial; mask 0 is the
    constant-1 monomial.
    """
    n: int
    m: int
    monomials: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.monomials) != self.m:
            raise ValidationError(
                f"expected {self.m} monomial sets, got {len(self.monomials)}")
        top = 1 << self.n
        for i, mons in enumerate(self.monomials):
            for mask in mons:
                if not 0 <= mask < top:
                    raise ValidationError(
                        f"output {i + 1}: monomial mask {mask:#x} out of range")


@dataclass(frozen=True)
class WalshSpectrum:
    n: int
    values: tuple[int, ...]  # values[a] = sum_x (-1)^(f(x) + <a, x>)


@dataclass(frozen=True)
class NlClassification:
    kind: str  # 'bent' | 'almost_bent' | 'neither'
    nl: int


# ---------------------------------------------------------------- bit helpers

@lru_cache(maxsize=None)
def _low_half_mask(n: int, j: int) -> int:
    # bits v of a 2^n-bit word with index bit j clear
    block = (1 << (1 << j)) - 1
    period = 1 << (j + 1)
    reps = (1 << n) // period
    out = 0
    for i in range(reps):
        out |= block << (i * period)
    return out


def variable_table(n: int, j: int) -> int:
    """Truth table of x_j (1-based) on n variables, as a packed int."""
    if not 1 <= j <= n:
        raise ValidationError(f"variable index {j} out of range [1, {n}]")
    return _low_half_mask(n, j - 1) << (1 << (j - 1))


def table_weight(table: int) -> int:
    return table.bit_count()


def table_to_bits(table: int, n: int) -> np.ndarray:
    """Unpack a 2^n-bit table int into a uint8 array, index order preserved."""
    size = 1 << n
    nbytes = (size + 7) // 8
    raw = np.frombuffer(table.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size]


def bits_to_table(bits: Sequence[int] | np.ndarray) -> int:
    arr = np.asarray(bits, dtype=np.uint8)
    packed = np.packbits(arr, bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


# ------------------------------------------------------------ ANF (Moebius)

def _moebius(table: int, n: int) -> int:
    # in-place butterfly: per variable, fold the low cofactor into the high one
    for j in range(n):
        table ^= (table & _low_half_mask(n, j)) << (1 << j)
    return table


def anf_from_tt(f: BooleanFunction) -> Anf:
    """Zhegalkin coefficients of every output via the Moebius transform."""
    mons = []
    for t in f.tables:
        coeff = _moebius(t, f.n)
        out = set()
        while coeff:
            low = coeff & -coeff
            out.add(low.bit_length() - 1)
            coeff ^= low
        mons.append(frozenset(out))
    return Anf(f.n, f.m, tuple(mons))


def tt_from_anf(a: Anf) -> BooleanFunction:
    """Inverse of anf_from_tt; the transform is an involution over F2."""
    if not 1 <= a.n <= N_MAX:
        raise ValidationError(f"n must be in [1, {N_MAX}], got {a.n}")
    tables = []
    for mons in a.monomials:
        coeff = 0
        for mask in mons:
            coeff |= 1 << mask
        tables.append(_moebius(coeff, a.n))
    return BooleanFunction(a.n, a.m, tuple(tables))


def degree(f: BooleanFunction) -> int:
    """Algebraic degree: largest monomial weight over all outputs, 0 if none."""
    best = 0
    for t in f.tables:
        coeff = _moebius(t, f.n)
        while coeff:
            low = coeff & -coeff
            mask = low.bit_length() - 1
            w = mask.bit_count()
            if w > best:
                best = w
            coeff ^= low
    return best


def component(f: BooleanFunction, selection: Iterable[int]) -> BooleanFunction:
    """XOR of the outputs named by 1-based indices; selection must be nonempty."""
    idx = list(selection)
    if not idx:
        raise ValidationError("component selection must be nonempty")
    if len(set(idx)) != len(idx):
        raise ValidationError("component selection has repeated indices")
    table = 0
    for i in idx:
        if not 1 <= i <= f.m:
            raise ValidationError(f"output index {i} out of range [1, {f.m}]")
        table ^= f.tables[i - 1]
    return BooleanFunction(f.n, 1, (table,))


# ------------------------------------------------------- Walsh / nonlinearity

def _fwht_rows(a: np.ndarray) -> np.ndarray:
    """In-place fast Walsh-Hadamard transform along the last axis (length 2^n)."""
    size = a.shape[-1]
    h = 1
    while h < size:
        b = a.reshape(a.shape[0], size // (2 * h), 2, h)
        top = b[:, :, 0, :].copy()
        b[:, :, 0, :] += b[:, :, 1, :]
        b[:, :, 1, :] = top - b[:, :, 1, :]
        h *= 2
    return a


def _signs(table: int, n: int) -> np.ndarray:
    return 1 - 2 * table_to_bits(table, n).astype(np.int32)


def walsh_spectrum(f: BooleanFunction, budgets: Budgets | None = None) -> WalshSpectrum:
    """Spectrum W(a) = sum_x (-1)^(f(x) + <a, x>) for a single-output function."""
    b = budgets or default_budgets()
    if f.m != 1:
        raise ValidationError(f"walsh_spectrum needs m = 1, got m = {f.m}")
    if f.n > b.scalar_n_cap:
        raise BudgetError(
            f"n = {f.n} exceeds scalar_n_cap = {b.scalar_n_cap}")
    row = _signs(f.tables[0], f.n)[None, :]
    _fwht_rows(row)
    return WalshSpectrum(f.n, tuple(int(v) for v in row[0]))


def nonlinearity(f: BooleanFunction, budgets: Budgets | None = None) -> int:
    """Distance to the nearest affine function: 2^(n-1) - max|W| / 2."""
    spec = walsh_spectrum(f, budgets)
    peak = max(abs(v) for v in spec.values)
    return (1 << (f.n - 1)) - peak // 2


def vector_nonlinearity(f: BooleanFunction, budgets: Budgets | None = None) -> int:
    """Minimum nonlinearity over all 2^m - 1 nonzero output combinations."""
    b = budgets or default_budgets()
    if f.m > b.vector_m_cap:
        raise BudgetError(f"m = {f.m} exceeds vector_m_cap = {b.vector_m_cap}")
    if f.n > b.scalar_n_cap:
        raise BudgetError(f"n = {f.n} exceeds scalar_n_cap = {b.scalar_n_cap}")
    cost = ((1 << f.m) - 1) * f.n * (1 << f.n)
    if cost > b.vector_cost_cap:
        raise BudgetError(
            f"component sweep cost {cost} exceeds vector_cost_cap = {b.vector_cost_cap}")
    size = 1 << f.n
    total = (1 << f.m) - 1
    # Gray-code walk: each step XORs one output into the running component
    batch_cap = max(1, min(total, (1 << 22) // size))
    peak = 0
    current = 0
    batch = np.empty((batch_cap, size), dtype=np.int32)
    filled = 0
    for t in range(1, total + 1):
        gray_bit = (t & -t).bit_length() - 1
        current ^= f.tables[gray_bit]
        batch[filled] = _signs(current, f.n)
        filled += 1
        if filled == batch_cap or t == total:
            _fwht_rows(batch[:filled])
            peak = max(peak, int(np.abs(batch[:filled]).max()))
            filled = 0
    return (1 << (f.n - 1)) - peak // 2


def classify_nl(f: BooleanFunction, budgets: Budgets | None = None) -> NlClassification:
    """Check the two optimal-nonlinearity profiles.

    bent: even n and NL = 2^(n-1) - 2^(n/2-1); almost bent: m = n, odd n and
    NL = 2^(n-1) - 2^((n-1)/2). Anything else is 'neither'.
    """
    nl = vector_nonlinearity(f, budgets)
    if f.n % 2 == 0 and nl == (1 << (f.n - 1)) - (1 << (f.n // 2 - 1)):
        return NlClassification("bent", nl)
    if f.m == f.n and f.n % 2 == 1 and nl == (1 << (f.n - 1)) - (1 << ((f.n - 1) // 2)):
        return NlClassification("almost_bent", nl)
    return NlClassification("neither", nl)


# ------------------------------------------------------------ file format

def parse_tt_text(text: str) -> BooleanFunction:
    """Parse the truth-table format: 'tt <n> <m>' then m rows of 2^n chars.

    '#' starts a comment; blank lines are skipped. Row character at position v
    is output value on input index v.
    """
    rows: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ParseError("empty truth-table input")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "tt":
        raise ParseError("expected header 'tt <n> <m>'", lineno)
    try:
        n, m = int(parts[1]), int(parts[2])
    except ValueError:
        raise ParseError("n and m must be integers", lineno) from None
    if not 1 <= n <= N_MAX:
        raise ParseError(f"n must be in [1, {N_MAX}]", lineno)
    if m < 1:
        raise ParseError("m must be >= 1", lineno)
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} table rows, found {len(body)}", lineno)
    size = 1 << n
    tables = []
    for lineno, line in body:
        if len(line) != size:
            raise ParseError(
                f"row has {len(line)} characters, expected {size}", lineno)
        if set(line) - {"0", "1"}:
            raise ParseError("row characters must be 0 or 1", lineno)
        tables.append(int(line[::-1], 2))
    try:
        return BooleanFunction(n, m, tuple(tables))
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def format_tt_text(f: BooleanFunction) -> str:
    lines = [f"tt {f.n} {f.m}"]
    width = 1 << f.n
    for t in f.tables:
        lines.append(format(t, f"0{width}b")[::-1])
    return "\n".join(lines) + "\n"
