"""Truth tables, ANF, Walsh spectra, and nonlinearity measures."""
import random

import pytest

from helpers import random_function
from mcnl import boolfn
from mcnl.boolfn import (
    Anf,
    BooleanFunction,
    anf_from_tt,
    bits_to_table,
    classify_nl,
    component,
    degree,
    format_tt_text,
    nonlinearity,
    parse_tt_text,
    table_to_bits,
    tt_from_anf,
    variable_table,
    vector_nonlinearity,
    walsh_spectrum,
)
from mcnl.budgets import Budgets
from mcnl.errors import BudgetError, ParseError, ValidationError

IP4 = tt_from_anf(Anf(4, 1, (frozenset({0b0101, 0b1010}),)))  # x1x3 + x2x4


def test_variable_table_bit_convention():
    # x_1 is the least-significant index bit
    assert variable_table(2, 1) == 0b1010
    assert variable_table(2, 2) == 0b1100
    assert variable_table(3, 3) == 0b11110000
    with pytest.raises(ValidationError):
        variable_table(3, 4)


def test_construction_validation():
    with pytest.raises(ValidationError):
        BooleanFunction(0, 1, (0,))
    with pytest.raises(ValidationError):
        BooleanFunction(25, 1, (0,))
    with pytest.raises(ValidationError):
        BooleanFunction(2, 2, (0,))  # table count != m
    with pytest.raises(ValidationError):
        BooleanFunction(2, 1, (1 << 16,))  # table wider than 2^n bits


def test_bit_packing_roundtrip():
    rng = random.Random(11)
    for n in (1, 3, 6):
        t = rng.getrandbits(1 << n)
        bits = table_to_bits(t, n)
        assert len(bits) == 1 << n
        assert bits_to_table(bits) == t
        for v in range(1 << n):
            assert bits[v] == (t >> v) & 1


def test_anf_known_values():
    and2 = BooleanFunction(2, 1, (0b1000,))  # x1 * x2
    assert anf_from_tt(and2).monomials == (frozenset({0b11}),)
    one = BooleanFunction(2, 1, (0b1111,))
    assert anf_from_tt(one).monomials == (frozenset({0}),)
    assert anf_from_tt(IP4).monomials == (frozenset({0b0101, 0b1010}),)


def test_anf_transform_is_involution():
    rng = random.Random(23)
    for n, m in [(1, 1), (3, 2), (5, 1), (7, 3)]:
        f = random_function(rng, n, m)
        assert tt_from_anf(anf_from_tt(f)) == f


def test_anf_agrees_with_pointwise_evaluation():
    # f(x) = XOR of monomials with mask a subset of x
    rng = random.Random(31)
    for _ in range(20):
        n = rng.randrange(1, 7)
        f = random_function(rng, n)
        mons = anf_from_tt(f).monomials[0]
        for _ in range(16):
            x = rng.randrange(1 << n)
            val = sum(1 for mask in mons if mask & x == mask) & 1
            assert val == (f.tables[0] >> x) & 1


def test_degree():
    assert degree(BooleanFunction(2, 1, (0,))) == 0
    assert degree(BooleanFunction(2, 1, (0b1111,))) == 0  # constant 1
    assert degree(BooleanFunction(2, 1, (variable_table(2, 1),))) == 1
    assert degree(BooleanFunction(2, 1, (0b1000,))) == 2
    assert degree(IP4) == 2
    # full monomial on 4 variables
    assert degree(BooleanFunction(4, 1, (1 << 15,))) == 4


def test_component_xor():
    f = BooleanFunction(2, 2, (variable_table(2, 1), variable_table(2, 2)))
    assert component(f, [1]).tables[0] == variable_table(2, 1)
    assert component(f, [1, 2]).tables[0] == 0b0110
    with pytest.raises(ValidationError):
        component(f, [])
    with pytest.raises(ValidationError):
        component(f, [1, 1])
    with pytest.raises(ValidationError):
        component(f, [3])


def test_walsh_known_values():
    const0 = BooleanFunction(2, 1, (0,))
    assert walsh_spectrum(const0).values == (4, 0, 0, 0)
    x1 = BooleanFunction(1, 1, (variable_table(1, 1),))
    assert walsh_spectrum(x1).values == (0, 2)
    spec = walsh_spectrum(IP4)
    assert max(abs(v) for v in spec.values) == 4  # bent: flat spectrum
    assert all(abs(v) == 4 for v in spec.values)


def test_walsh_naive_cross_check():
    rng = random.Random(47)
    for n in (1, 2, 4, 6):
        f = random_function(rng, n)
        t = f.tables[0]
        spec = walsh_spectrum(f).values
        for a in range(1 << n):
            total = 0
            for x in range(1 << n):
                bit = ((t >> x) & 1) ^ ((a & x).bit_count() & 1)
                total += 1 - 2 * bit
            assert spec[a] == total


def test_parseval():
    rng = random.Random(59)
    for n in (2, 5, 8):
        f = random_function(rng, n)
        spec = walsh_spectrum(f)
        assert sum(v * v for v in spec.values) == 1 << (2 * n)


def test_walsh_requires_single_output():
    f = BooleanFunction(2, 2, (0, 1))
    with pytest.raises(ValidationError):
        walsh_spectrum(f)


def test_nonlinearity_known_values():
    assert nonlinearity(BooleanFunction(2, 1, (0b1000,))) == 1  # x1x2
    x123 = BooleanFunction(3, 1, (1 << 7,))
    assert nonlinearity(x123) == 1  # x1x2x3
    assert nonlinearity(IP4) == 6
    assert nonlinearity(BooleanFunction(3, 1, (variable_table(3, 2),))) == 0


def test_vector_nonlinearity_known_values():
    ident = BooleanFunction(2, 2, (variable_table(2, 1), variable_table(2, 2)))
    assert vector_nonlinearity(ident) == 0  # every component affine
    assert vector_nonlinearity(IP4) == 6  # m = 1 reduces to scalar


def test_vector_nonlinearity_is_component_minimum():
    rng = random.Random(61)
    for _ in range(10):
        n = rng.randrange(3, 7)
        m = rng.randrange(2, 4)
        f = random_function(rng, n, m)
        direct = min(
            nonlinearity(component(f, [i + 1 for i in range(m) if (sel >> i) & 1]))
            for sel in range(1, 1 << m))
        assert vector_nonlinearity(f) == direct


def test_classify_nl():
    assert classify_nl(IP4) == boolfn.NlClassification("bent", 6)
    x1 = BooleanFunction(3, 1, (variable_table(3, 1),))
    assert classify_nl(x1).kind == "neither"
    # almost bent needs m = n and odd n; a scalar function never qualifies
    maj = tt_from_anf(Anf(3, 1, (frozenset({0b011, 0b101, 0b110}),)))
    assert nonlinearity(maj) == 2
    assert classify_nl(maj).kind == "neither"


def test_budget_enforcement():
    f = random_function(random.Random(2), 6, 2)
    with pytest.raises(BudgetError):
        walsh_spectrum(component(f, [1]), Budgets(scalar_n_cap=5))
    with pytest.raises(BudgetError):
        vector_nonlinearity(f, Budgets(vector_m_cap=1))
    with pytest.raises(BudgetError):
        vector_nonlinearity(f, Budgets(vector_cost_cap=100))


def test_tt_text_roundtrip():
    rng = random.Random(73)
    for n, m in [(1, 1), (3, 2), (5, 4)]:
        f = random_function(rng, n, m)
        assert parse_tt_text(format_tt_text(f)) == f


def test_tt_text_format():
    f = BooleanFunction(2, 1, (0b1000,))
    assert format_tt_text(f) == "tt 2 1\n0001\n"  # position v = value on input v
    g = parse_tt_text("# comment\ntt 2 1\n0001  # trailing comment\n")
    assert g == f


def test_tt_text_parse_errors():
    with pytest.raises(ParseError):
        parse_tt_text("")
    with pytest.raises(ParseError, match="line 1"):
        parse_tt_text("table 2 1\n0001\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_tt_text("tt 2 1\n001\n")  # wrong row width
    with pytest.raises(ParseError, match="line 2"):
        parse_tt_text("tt 2 1\n0x01\n")  # bad characters
    with pytest.raises(ParseError):
        parse_tt_text("tt 2 2\n0001\n")  # missing row
