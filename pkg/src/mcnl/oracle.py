"""Reference oracles: literal nonlinearity and exact multiplicative
complexity by exhaustive search.

These deliberately avoid the transform-based fast paths so the main library
can be checked against them. brute_mc enumerates circuits in normal form:
gate j's operands range over all affine combinations of the inputs and
earlier gates, and f is computable at level k when it lies in the affine
span of the inputs and the k gate outputs. Two gate prefixes whose spans
coincide have identical futures, so the search deduplicates spans by a
canonical (reduced-echelon) basis; a product already inside the current span
is a wasted gate and is skipped. Both prunings preserve exact minimality.
"""
from __future__ import annotations

from .boolfn import BooleanFunction, degree, variable_table
from .budgets import Budgets, default_budgets
from .errors import BudgetError, ValidationError

BRUTE_NL_N_MAX = 12


def brute_nl(f: BooleanFunction) -> int:
    """Minimum distance to the 2^(n+1) affine functions, by direct scan."""
    if f.m != 1:
        raise ValidationError(f"brute_nl needs m = 1, got m = {f.m}")
    if f.n > BRUTE_NL_N_MAX:
        raise ValidationError(
            f"n must be <= {BRUTE_NL_N_MAX} for the exhaustive scan, got {f.n}")
    n = f.n
    size = 1 << n
    t = f.tables[0]
    w = t.bit_count()
    best = min(w, size - w)  # constants 0 and 1
    lin = 0
    for a in range(1, 1 << n):
        lin ^= variable_table(n, (a & -a).bit_length())
        d = (t ^ lin).bit_count()
        best = min(best, d, size - d)
    return best


# ------------------------------------------------------- exact AND counting

class _SearchState:
    __slots__ = ("frontiers", "nodes")

    def __init__(self):
        self.frontiers: list[list[tuple[int, ...]]] = [[()]]
        self.nodes = 0


_AFFINE: dict[int, tuple[list[int], list[int]]] = {}
_STATE: dict[int, _SearchState] = {}


def _affine_space(n: int) -> tuple[list[int], list[int]]:
    if n not in _AFFINE:
        gens = [(1 << (1 << n)) - 1]
        gens += [variable_table(n, j) for j in range(1, n + 1)]
        basis: list[int] = []
        for g in gens:
            for b in basis:
                g = min(g, g ^ b)
            if g:
                basis.append(g)
                basis.sort(reverse=True)
        elems = [0]
        cur = 0
        for t in range(1, 1 << len(gens)):
            cur ^= gens[(t & -t).bit_length() - 1]
            elems.append(cur)
        _AFFINE[n] = (basis, elems)
    return _AFFINE[n]


def _reduce(v: int, basis: list[int]) -> int:
    for b in basis:
        v = min(v, v ^ b)
    return v


def _span_elements(n: int, extras: tuple[int, ...]) -> list[int]:
    _, affine_elems = _affine_space(n)
    out = list(affine_elems)
    cur = 0
    for t in range(1, 1 << len(extras)):
        cur ^= extras[(t & -t).bit_length() - 1]
        out.extend(cur ^ a for a in affine_elems)
    return out


def _extend(n: int, state: _SearchState, node_cap: int) -> None:
    affine_basis, _ = _affine_space(n)
    new: dict[tuple[int, ...], None] = {}
    for extras in state.frontiers[-1]:
        basis = sorted(affine_basis + list(extras), reverse=True)
        nz = [e for e in _span_elements(n, extras) if e]
        for i, ei in enumerate(nz):
            for j in range(i, len(nz)):
                state.nodes += 1
                if state.nodes > node_cap:
                    raise BudgetError(
                        f"mc search examined more than node_cap = {node_cap} candidates")
                p = _reduce(ei & nz[j], basis)
                if p == 0:
                    continue
                ne = [min(e, e ^ p) for e in extras]
                ne.append(p)
                ne.sort(reverse=True)
                new[tuple(ne)] = None
    state.frontiers.append(list(new.keys()))


def _worst_case_candidates(n: int, k_max: int) -> int:
    total = 1
    for j in range(1, k_max + 1):
        count = (1 << (n + j)) - 1
        total *= count * (count + 1) // 2
    return total


def brute_mc(f: BooleanFunction, k_max: int, node_cap: int | None = None,
             budgets: Budgets | None = None) -> int | None:
    """Exact minimum AND count within k_max gates, or None if it exceeds
    k_max. Returns 0 exactly for functions of degree <= 1."""
    b = budgets or default_budgets()
    cap = node_cap if node_cap is not None else b.mc_node_cap
    if f.m != 1:
        raise ValidationError(f"brute_mc needs m = 1, got m = {f.m}")
    if k_max < 0:
        raise ValidationError(f"k_max must be >= 0, got {k_max}")
    n = f.n
    if not ((n <= 4 and k_max <= 2) or (n <= 3 and k_max <= 3)):
        raise ValidationError(
            "search guard: need n <= 4 with k_max <= 2, or n <= 3 with "
            f"k_max <= 3; got n = {n}, k_max = {k_max}")
    worst = _worst_case_candidates(n, k_max)
    if worst > cap:
        raise BudgetError(
            f"worst-case candidate count {worst} exceeds node_cap = {cap}")
    if degree(f) <= 1:
        return 0
    table = f.tables[0]
    affine_basis, _ = _affine_space(n)
    state = _STATE.setdefault(n, _SearchState())
    for k in range(1, k_max + 1):
        while len(state.frontiers) <= k:
            _extend(n, state, cap)
        for extras in state.frontiers[k]:
            basis = sorted(affine_basis + list(extras), reverse=True)
            if _reduce(table, basis) == 0:
                return k
    return None
