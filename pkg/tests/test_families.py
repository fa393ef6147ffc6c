"""Field arithmetic and the named function families."""
import math
import random

import pytest

from mcnl import families
from mcnl.boolfn import anf_from_tt, degree, nonlinearity, vector_nonlinearity
from mcnl.errors import ParseError, ValidationError
from mcnl.families import (
    AES_POLY,
    FieldSpec,
    default_field,
    excluded_products_fn,
    field_mult_fn,
    format_field_spec,
    gf2n_mul,
    gold_fn,
    indicator_fn,
    inner_product_fn,
    parse_field_spec,
)


def _naive_mul(a, b, spec):
    # carry-less school multiplication, then long division by the polynomial
    prod = 0
    for i in range(spec.n):
        if (b >> i) & 1:
            prod ^= a << i
    for bit in range(2 * spec.n - 2, spec.n - 1, -1):
        if (prod >> bit) & 1:
            prod ^= spec.poly << (bit - spec.n)
    return prod


def test_field_spec_validation():
    FieldSpec(2, 0b111)
    with pytest.raises(ValidationError):
        FieldSpec(2, 0b110)  # x^2 + x = x(x + 1) is reducible
    with pytest.raises(ValidationError):
        FieldSpec(3, 0b111)  # degree mismatch
    with pytest.raises(ValidationError):
        FieldSpec(0, 1)


def test_default_field():
    assert default_field(8).poly == AES_POLY
    assert default_field(1).poly == 0b10  # x; the only degree-1 candidate scanned first is x, irreducible
    assert default_field(2).poly == 0b111
    assert default_field(3).poly == 0b1011  # smallest of the two cubics


def test_field_spec_text_roundtrip():
    spec = default_field(8)
    text = format_field_spec(spec)
    assert text == "gf2^8/0x11B"
    assert parse_field_spec(text) == spec
    assert parse_field_spec("gf2^3/0xd") == FieldSpec(3, 0xD)
    with pytest.raises(ParseError):
        parse_field_spec("gf8/0x11b")
    with pytest.raises(ParseError):
        parse_field_spec("gf2^8-0x11b")
    with pytest.raises(ParseError):
        parse_field_spec("gf2^8/0x11c")  # reducible


def test_gf2n_mul_known_values():
    f2 = default_field(2)
    assert gf2n_mul(0b10, 0b10, f2) == 0b11  # alpha^2 = alpha + 1
    aes = default_field(8)
    assert gf2n_mul(0x53, 0xCA, aes) == 0x01  # classic inverse pair
    assert gf2n_mul(0x57, 0x83, aes) == 0xC1
    for spec in (f2, aes):
        assert gf2n_mul(0, 1, spec) == 0
        assert gf2n_mul(1, 1, spec) == 1


def test_gf2n_mul_field_axioms():
    rng = random.Random(3)
    for n in (2, 3, 5, 8):
        spec = default_field(n)
        top = 1 << n
        for _ in range(40):
            a, b, c = rng.randrange(top), rng.randrange(top), rng.randrange(top)
            assert gf2n_mul(a, b, spec) == gf2n_mul(b, a, spec)
            assert gf2n_mul(a, gf2n_mul(b, c, spec), spec) == \
                gf2n_mul(gf2n_mul(a, b, spec), c, spec)
            assert gf2n_mul(a, b ^ c, spec) == \
                gf2n_mul(a, b, spec) ^ gf2n_mul(a, c, spec)
            assert gf2n_mul(a, 1, spec) == a
            assert gf2n_mul(a, b, spec) == _naive_mul(a, b, spec)
    with pytest.raises(ValidationError):
        gf2n_mul(4, 1, default_field(2))


def test_inner_product_fn():
    ip4 = inner_product_fn(2)
    assert (ip4.n, ip4.m) == (4, 1)
    assert anf_from_tt(ip4).monomials == (frozenset({0b0101, 0b1010}),)
    assert nonlinearity(ip4) == 6
    ip2 = inner_product_fn(1)  # plain AND
    assert ip2.tables == (0b1000,)
    with pytest.raises(ValidationError):
        inner_product_fn(0)


def test_field_mult_fn():
    f = field_mult_fn(2)
    spec = default_field(2)
    # output bits reproduce the field product at every input pair
    for x in range(4):
        for y in range(4):
            v = x | (y << 2)
            got = sum(((f.tables[i] >> v) & 1) << i for i in range(2))
            assert got == gf2n_mul(x, y, spec)
    assert field_mult_fn(1).tables == (0b1000,)  # GF(2) product is AND
    with pytest.raises(ValidationError):
        field_mult_fn(11)
    with pytest.raises(ValidationError):
        field_mult_fn(3, spec=default_field(2))  # degree mismatch


def test_field_mult_respects_field_spec():
    alt = field_mult_fn(3, spec=parse_field_spec("gf2^3/0xd"))
    dflt = field_mult_fn(3)
    assert alt.tables != dflt.tables
    assert vector_nonlinearity(alt) == vector_nonlinearity(dflt) == 28


def test_gold_spec_validation():
    with pytest.raises(ValidationError, match="odd"):
        gold_fn(4, 1)
    with pytest.raises(ValidationError, match="i must be"):
        gold_fn(5, 3)
    with pytest.raises(ValidationError, match="gcd"):
        gold_fn(9, 3)
    with pytest.raises(ValidationError, match="does not match"):
        gold_fn(5, 1, spec=default_field(3))


def test_gold_fn_matches_generic_powering():
    # x^(2^i + 1) via left-to-right binary exponentiation
    for n, i in [(3, 1), (5, 1), (5, 2), (7, 3)]:
        spec = default_field(n)
        f = gold_fn(n, i)
        e = (1 << i) + 1
        for x in range(1 << n):
            acc = 1
            for bit in range(e.bit_length() - 1, -1, -1):
                acc = gf2n_mul(acc, acc, spec)
                if (e >> bit) & 1:
                    acc = gf2n_mul(acc, x, spec)
            got = sum(((f.tables[j] >> x) & 1) << j for j in range(n))
            assert got == acc, (n, i, x)


def test_gold_fn_is_permutation_and_quadratic():
    for n, i in [(3, 1), (5, 2), (7, 1)]:
        f = gold_fn(n, i)
        images = [sum(((f.tables[j] >> x) & 1) << j for j in range(n))
                  for x in range(1 << n)]
        assert sorted(images) == list(range(1 << n))
        assert degree(f) == 2
    assert degree(gold_fn(5, 1)) == 2


def test_excluded_products_fn():
    f = excluded_products_fn(4)
    # x = (1, 1, 1, 0): only the product excluding x4 fires
    v = 0b0111
    assert tuple((f.tables[i] >> v) & 1 for i in range(4)) == (0, 0, 0, 1)
    full = 0b1111
    assert tuple((f.tables[i] >> full) & 1 for i in range(4)) == (1, 1, 1, 1)
    assert degree(excluded_products_fn(5)) == 4
    with pytest.raises(ValidationError):
        excluded_products_fn(2)
    with pytest.raises(ValidationError):
        excluded_products_fn(21)


def test_indicator_fn():
    f = indicator_fn(0, 3)
    assert f.tables == (1,)
    # I_0 = (1 + x1)(1 + x2)(1 + x3) expands to all 8 monomials
    assert len(anf_from_tt(f).monomials[0]) == 8
    assert indicator_fn(5, 3).tables == (1 << 5,)
    with pytest.raises(ValidationError):
        indicator_fn(8, 3)


def test_family_nl_profiles():
    assert vector_nonlinearity(inner_product_fn(2)) == 6
    assert vector_nonlinearity(gold_fn(3, 1)) == 2
    assert vector_nonlinearity(field_mult_fn(2)) == 6
