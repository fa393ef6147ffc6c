"""Binary linear codes and the bound calculators.

Generator matrices are m rows of s-bit ints (bit j-1 = column j). Distance is
brute force over the row span; feasibility arithmetic (Gilbert-Varshamov) is
exact big-int only. The MRRW calculator evaluates the second linear-
programming bound; its length scanner applies an asymptotic theorem at finite
parameters and is labeled accordingly wherever it is reported.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .budgets import Budgets, default_budgets
from .errors import BudgetError, ParseError, ValidationError

MRRW_LABEL = "asymptotic-bound extrapolation"


@dataclass(frozen=True)
class GeneratorMatrix:
    m: int
    s: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValidationError(f"dimension m must be >= 1, got {self.m}")
        if self.s < 0:
            raise ValidationError(f"length s must be >= 0, got {self.s}")
        if len(self.rows) != self.m:
            raise ValidationError(
                f"expected {self.m} rows, got {len(self.rows)}")
        for i, r in enumerate(self.rows):
            if not 0 <= r < 1 << self.s:
                raise ValidationError(f"row {i + 1} does not fit {self.s} columns")


def rank_f2(rows: Sequence[int]) -> int:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return len(basis)


def _row_basis(rows: Sequence[int]) -> list[int]:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return basis


def span_min_weight(rows: Sequence[int]) -> tuple[int, int]:
    """(min weight over nonzero span vectors, rank); (0, 0) for zero span."""
    basis = _row_basis(rows)
    rank = len(basis)
    if rank == 0:
        return 0, 0
    best = 1 << 62
    word = 0
    for t in range(1, 1 << rank):
        word ^= basis[(t & -t).bit_length() - 1]
        w = word.bit_count()
        if w < best:
            best = w
    return best, rank


def min_distance(code: GeneratorMatrix, budgets: Budgets | None = None) -> int:
    """Minimum weight of a nonzero codeword, by enumerating all 2^m - 1."""
    b = budgets or default_budgets()
    if code.m > b.distance_m_cap:
        raise BudgetError(
            f"m = {code.m} exceeds distance_m_cap = {b.distance_m_cap}")
    if rank_f2(code.rows) != code.m:
        raise ValidationError(
            f"generator matrix must have full row rank {code.m}")
    word = 0
    best = 1 << 62
    for t in range(1, 1 << code.m):
        word ^= code.rows[(t & -t).bit_length() - 1]
        w = word.bit_count()
        if w < best:
            best = w
    return best


# --------------------------------------------------------- Gilbert-Varshamov

def gv_feasible(s: int, m: int, d: int) -> bool:
    """Exact feasibility: sum_(i<=d-2) C(s-1, i) < 2^(s-m). No floats."""
    if m < 1 or d < 1:
        raise ValidationError(f"need m >= 1 and d >= 1, got m={m}, d={d}")
    if s < m:
        raise ValidationError(f"length s must be >= m, got s={s}, m={m}")
    total = 0
    for i in range(d - 1):
        total += math.comb(s - 1, i)
    return total < 1 << (s - m)


def gv_min_length(m: int, d: int) -> int:
    """Smallest s with gv_feasible(s, m, d); feasibility is monotone in s."""
    s = max(m, d)
    while not gv_feasible(s, m, d):
        s += 1
    return s


# ----------------------------------------------------------------- MRRW bound

def _entropy2(p: np.ndarray | float):
    p = np.asarray(p, dtype=np.float64)
    out = np.zeros_like(p)
    inner = (p > 0) & (p < 1)
    q = p[inner]
    out[inner] = -q * np.log2(q) - (1 - q) * np.log2(1 - q)
    return out


def _h(x):
    # h(x) = H2((1 - sqrt(1 - x)) / 2), argument clamped against float drift
    x = np.clip(np.asarray(x, dtype=np.float64), 0.0, 1.0)
    return _entropy2((1.0 - np.sqrt(1.0 - x)) / 2.0)


def mrrw_B(u: float, delta: float) -> float:
    """Second linear-programming rate bound B(u, delta)."""
    if not 0.0 < delta < 0.5:
        raise ValidationError(f"delta must be in (0, 1/2), got {delta}")
    if not 0.0 <= u <= 1.0 - 2.0 * delta:
        raise ValidationError(
            f"u must be in [0, 1 - 2*delta] = [0, {1 - 2 * delta}], got {u}")
    return float(1.0 + _h(u * u) - _h(u * u + 2.0 * delta * u + 2.0 * delta))


class RateBound(NamedTuple):
    value: float
    u: float


def mrrw_rate_bound(delta: float) -> RateBound:
    """min over u in [0, 1-2*delta] of B(u, delta): grid step 1e-4, then
    golden-section refinement to 1e-6. Returns the minimizing u as well."""
    if not 0.0 < delta < 0.5:
        raise ValidationError(f"delta must be in (0, 1/2), got {delta}")
    hi = 1.0 - 2.0 * delta
    # linspace, not arange: the endpoint must equal hi exactly so the
    # reported minimizer stays inside mrrw_B's domain
    grid = np.linspace(0.0, hi, max(1, math.ceil(hi / 1e-4)) + 1)
    vals = 1.0 + _h(grid * grid) - _h(grid * grid + 2.0 * delta * grid + 2.0 * delta)
    idx = int(np.argmin(vals))
    lo = grid[max(0, idx - 1)]
    up = grid[min(len(grid) - 1, idx + 1)]
    inv = (math.sqrt(5) - 1) / 2
    a, bb = float(lo), float(up)
    c = bb - inv * (bb - a)
    dd = a + inv * (bb - a)
    fc, fd = mrrw_B(c, delta), mrrw_B(dd, delta)
    while bb - a > 1e-6:
        if fc < fd:
            bb, dd, fd = dd, c, fc
            c = bb - inv * (bb - a)
            fc = mrrw_B(c, delta)
        else:
            a, c, fc = c, dd, fd
            dd = a + inv * (bb - a)
            fd = mrrw_B(dd, delta)
    u_best = (a + bb) / 2
    v_best = mrrw_B(u_best, delta)
    if vals[idx] < v_best:
        u_best, v_best = float(grid[idx]), float(vals[idx])
    return RateBound(v_best, u_best)


def mrrw_min_length(m: int, d: int) -> int:
    """Least s not excluded by m/s <= rate_bound(d/s), scanning up from
    max(m, d).

    This applies an asymptotic theorem at finite sizes (see MRRW_LABEL).
    d = 1 is exact and returns m (any full-rank generator has distance 1).
    Relative distance >= 1/2 is treated as excluded: the bound's value tends
    to 0 there, so no positive rate survives.
    """
    if m < 1 or d < 1:
        raise ValidationError(f"need m >= 1 and d >= 1, got m={m}, d={d}")
    if d == 1:
        return m
    s = max(m, d)
    while True:
        delta = d / s
        if delta < 0.5 and m / s <= mrrw_rate_bound(delta).value:
            return s
        s += 1


# ------------------------------------------------------------- other bounds

def counting_lower_bound(n: int, m: int) -> float:
    """sqrt(m * 2^n) - 2n - m/2; may be negative (vacuous) at small sizes."""
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if not 1 <= m <= 1 << n:
        raise ValidationError(f"m must be in [1, 2^n], got {m}")
    return math.sqrt(m * (1 << n)) - 2 * n - m / 2


def rank_prob_bound(k: int, d: int) -> float:
    """Upper bound 2^(k - (k-d)^2) on P(rank of a random k x k F2 matrix <= d)."""
    if not 0 <= d <= k:
        raise ValidationError(f"need 0 <= d <= k, got k={k}, d={d}")
    e = k - (k - d) ** 2
    if e > 1023:
        return math.inf
    return 2.0 ** e


def monte_carlo_rank(k: int, d: int, trials: int, seed: int = 0) -> float:
    """Empirical frequency of rank <= d over uniform k x k F2 matrices.

    Deterministic per (k, d, trials, seed); processed in fixed-size batches
    with a vectorized elimination that retires one pivot column per pass.
    """
    if not 1 <= k <= 63:
        raise ValidationError(f"k must be in [1, 63], got {k}")
    if not 0 <= d <= k:
        raise ValidationError(f"need 0 <= d <= k, got k={k}, d={d}")
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}")
    rng = np.random.Generator(np.random.PCG64(seed))
    batch = 1 << 16
    hits = 0
    left = trials
    while left > 0:
        b = min(batch, left)
        mat = rng.integers(0, 1 << k, size=(b, k), dtype=np.uint64)
        rank = np.zeros(b, dtype=np.int64)
        rows = np.arange(b)
        for j in range(k):
            bitj = (mat >> np.uint64(j)) & np.uint64(1)
            has = bitj.any(axis=1)
            piv = mat[rows, bitj.argmax(axis=1)]
            mat ^= bitj * piv[:, None]
            rank += has
        hits += int((rank <= d).sum())
        left -= b
    return hits / trials


# --------------------------------------------------- nonlinearity <-> count

def nl_upper_from_mc(n: int, mc: int) -> int:
    """Best nonlinearity reachable with mc AND gates: 2^(n-1) - 2^(n-mc-1)."""
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if not 0 <= mc <= n - 1:
        raise ValidationError(f"mc must be in [0, n-1], got {mc}")
    return (1 << (n - 1)) - (1 << (n - mc - 1))


def mc_lower_from_nl(n: int, nl: int) -> int:
    """Smallest M with nl <= nl_upper_from_mc(n, M); the AND count needed to
    reach nonlinearity nl."""
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if not 0 <= nl <= 1 << (n - 1):
        raise ValidationError(f"nl must be in [0, 2^(n-1)], got {nl}")
    gap = (1 << (n - 1)) - nl
    if gap == 0:
        # beyond every finite threshold in the forward map's domain
        return n
    return n - 1 - (gap.bit_length() - 1)


def degree_mc_lower(d: int) -> int:
    """Degree-d functions need at least d - 1 AND gates."""
    if d < 0:
        raise ValidationError(f"degree must be >= 0, got {d}")
    return max(d - 1, 0)


# --------------------------------------------------------------- file format

def parse_code_text(text: str) -> GeneratorMatrix:
    """Parse 'code <m> <s>' followed by m rows of s characters over {0,1}."""
    rows: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ParseError("empty code input")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "code":
        raise ParseError("expected header 'code <m> <s>'", lineno)
    try:
        m, s = int(parts[1]), int(parts[2])
    except ValueError:
        raise ParseError("m and s must be integers", lineno) from None
    if m < 1 or s < 1:
        raise ParseError("m and s must be >= 1", lineno)
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} rows, found {len(body)}", lineno)
    out = []
    for lineno, line in body:
        if len(line) != s:
            raise ParseError(f"row has {len(line)} columns, expected {s}", lineno)
        if set(line) - {"0", "1"}:
            raise ParseError("row characters must be 0 or 1", lineno)
        out.append(int(line[::-1], 2))
    return GeneratorMatrix(m, s, tuple(out))


def format_code_text(code: GeneratorMatrix) -> str:
    lines = [f"code {code.m} {code.s}"]
    for r in code.rows:
        lines.append(format(r, f"0{code.s}b")[::-1])
    return "\n".join(lines) + "\n"
