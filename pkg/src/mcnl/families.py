"""Structured function families: finite-field products, inner products,
power maps, excluded products, and point indicators.

Field elements are ints; bit j-1 of an element is the coefficient of z^(j-1)
in the polynomial basis, matching the truth-table index convention (x_1 is
the least-significant bit).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .boolfn import BooleanFunction, N_MAX
from .errors import ParseError, ValidationError

FIELD_N_MAX = 16
AES_POLY = 0x11B  # x^8 + x^4 + x^3 + x + 1


def _poly_mod(a: int, b: int) -> int:
    db = b.bit_length() - 1
    while a.bit_length() - 1 >= db and a:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def _is_irreducible(poly: int, n: int) -> bool:
    # exhaustive factor scan: any factor has an irreducible divisor of
    # degree <= n/2, so dividing by everything up to that degree suffices
    for d in range(1, n // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if _poly_mod(poly, q) == 0:
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^n) with an explicit irreducible reduction polynomial."""
    n: int
    poly: int

    def __post_init__(self):
        if not 1 <= self.n <= FIELD_N_MAX:
            raise ValidationError(
                f"field degree must be in [1, {FIELD_N_MAX}], got {self.n}")
        if self.poly.bit_length() - 1 != self.n:
            raise ValidationError(
                f"reduction polynomial {self.poly:#x} does not have degree {self.n}")
        if not _is_irreducible(self.poly, self.n):
            raise ValidationError(
                f"reduction polynomial {self.poly:#x} is reducible")


@lru_cache(maxsize=None)
def default_field(n: int) -> FieldSpec:
    """Lexicographically smallest irreducible polynomial of degree n.

    Degree 8 is pinned to the AES polynomial so byte-level results compare
    directly against common external tables.
    """
    if not 1 <= n <= FIELD_N_MAX:
        raise ValidationError(
            f"field degree must be in [1, {FIELD_N_MAX}], got {n}")
    if n == 8:
        return FieldSpec(8, AES_POLY)
    for poly in range(1 << n, 1 << (n + 1)):
        if _is_irreducible(poly, n):
            return FieldSpec(n, poly)
    raise AssertionError("unreachable: irreducible polynomials exist for every degree")


def format_field_spec(spec: FieldSpec) -> str:
    return f"gf2^{spec.n}/0x{spec.poly:X}"


def parse_field_spec(text: str) -> FieldSpec:
    head, sep, tail = text.strip().partition("/")
    if not head.startswith("gf2^") or not sep:
        raise ParseError(f"expected 'gf2^<n>/0x<hex>', got {text!r}")
    try:
        n = int(head[4:])
        poly = int(tail, 16)
    except ValueError:
        raise ParseError(f"expected 'gf2^<n>/0x<hex>', got {text!r}") from None
    try:
        return FieldSpec(n, poly)
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def gf2n_mul(a: int, b: int, spec: FieldSpec) -> int:
    """Carry-less product of a and b reduced by the field polynomial."""
    top = 1 << spec.n
    if not 0 <= a < top or not 0 <= b < top:
        raise ValidationError(
            f"operands must be in [0, 2^{spec.n}), got {a}, {b}")
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= spec.poly
    return acc


def _gf2n_pow2k(x: int, k: int, spec: FieldSpec) -> int:
    # x^(2^k) by k squarings
    for _ in range(k):
        x = gf2n_mul(x, x, spec)
    return x


# ------------------------------------------------------------- constructors

def inner_product_fn(k: int) -> BooleanFunction:
    """IP on 2k inputs: sum_j x_j * x_(k+j), the canonical bent function."""
    if not 1 <= k <= N_MAX // 2:
        raise ValidationError(f"k must be in [1, {N_MAX // 2}], got {k}")
    n = 2 * k
    low = (1 << k) - 1
    table = 0
    for v in range(1 << n):
        if ((v & low) & (v >> k)).bit_count() & 1:
            table |= 1 << v
    return BooleanFunction(n, 1, (table,))


def field_mult_fn(n: int, spec: FieldSpec | None = None) -> BooleanFunction:
    """(2n, n)-function: output i is bit i-1 of the field product x * y,
    with x the first n inputs and y the last n."""
    if not 1 <= n <= 10:  # 2^(2n)-row tables; n = 10 is already 2^20
        raise ValidationError(f"n must be in [1, 10], got {n}")
    spec = spec or default_field(n)
    if spec.n != n:
        raise ValidationError(f"field degree {spec.n} does not match n = {n}")
    low = (1 << n) - 1
    tables = [0] * n
    for v in range(1 << (2 * n)):
        p = gf2n_mul(v & low, v >> n, spec)
        while p:
            bit = p & -p
            tables[bit.bit_length() - 1] |= 1 << v
            p ^= bit
    return BooleanFunction(2 * n, n, tuple(tables))


@dataclass(frozen=True)
class GoldSpec:
    """Power-map parameters for x -> x^(2^i + 1) on GF(2^n)."""
    n: int
    i: int = 1

    def __post_init__(self):
        if self.n % 2 == 0:
            raise ValidationError(f"n must be odd, got {self.n}")
        if not 1 <= self.i <= (self.n - 1) // 2:
            raise ValidationError(
                f"i must be in [1, (n-1)/2] = [1, {(self.n - 1) // 2}], got {self.i}")
        if math.gcd(self.i, self.n) != 1:
            raise ValidationError(
                f"gcd(i, n) must be 1, got gcd({self.i}, {self.n}) = "
                f"{math.gcd(self.i, self.n)}")


def gold_fn(n: int, i: int = 1, spec: FieldSpec | None = None) -> BooleanFunction:
    """(n, n) power map x^(2^i + 1); almost bent for the admitted (n, i)."""
    params = GoldSpec(n, i)
    spec = spec or default_field(n)
    if spec.n != n:
        raise ValidationError(f"field degree {spec.n} does not match n = {n}")
    tables = [0] * n
    for x in range(1 << n):
        y = gf2n_mul(_gf2n_pow2k(x, params.i, spec), x, spec)
        while y:
            bit = y & -y
            tables[bit.bit_length() - 1] |= 1 << x
            y ^= bit
    return BooleanFunction(n, n, tuple(tables))


def excluded_products_fn(n: int) -> BooleanFunction:
    """(n, n)-function whose output i is the product of all inputs but x_i."""
    if not 3 <= n <= 20:
        raise ValidationError(f"n must be in [3, 20], got {n}")
    full = (1 << n) - 1
    tables = []
    for i in range(n):
        # the product of the other n-1 variables is 1 on exactly two inputs
        tables.append((1 << full) | (1 << (full ^ (1 << i))))
    return BooleanFunction(n, n, tuple(tables))


def indicator_fn(z: int, n: int) -> BooleanFunction:
    """Point indicator I_z: 1 exactly on input index z."""
    if not 1 <= n <= N_MAX:
        raise ValidationError(f"n must be in [1, {N_MAX}], got {n}")
    if not 0 <= z < 1 << n:
        raise ValidationError(f"z must be in [0, 2^{n}), got {z}")
    return BooleanFunction(n, 1, (1 << z,))
