from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supercong.padic_core import ModulusContext, NotPAdicInteger, reduce_rational
from supercong.hyperseries import (
    LowerParameterPole,
    NonUnitDenominator,
    SeriesSpec,
    pochhammer_exact,
    pochhammer_mod,
    series_2f1_half,
    series_3f2_one,
    truncated_pfq_exact,
    truncated_pfq_mod,
)


def poch_oracle(a, k):
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(a) + i
    return out


def pfq_oracle(upper, lower, z, n):
    # term-by-term from explicit Pochhammer products, not the incremental path
    total = Fraction(0)
    for k in range(n + 1):
        term = Fraction(z) ** k / factorial(k)
        for a in upper:
            term *= poch_oracle(a, k)
        for b in lower:
            term /= poch_oracle(b, k)
        total += term
    return total


def gen_binom(top, m):
    # C(top, m) for rational top: (top - m + 1)_m / m!
    return poch_oracle(Fraction(top) - m + 1, m) / factorial(m)


def test_pochhammer_exact_examples():
    assert pochhammer_exact(Fraction(1, 2), 2) == Fraction(3, 4)
    assert pochhammer_exact(0, 3) == 0
    assert pochhammer_exact(-2, 3) == 0
    assert pochhammer_exact(-2, 2) == 2
    assert pochhammer_exact(Fraction(7, 3), 0) == 1


def test_pochhammer_mod_examples():
    ctx = ModulusContext(7, 2)
    for k in range(7):
        assert pochhammer_mod(1, k, ctx).value == factorial(k) % 49
    assert pochhammer_mod(Fraction(1, 3), 0, ctx).value == 1
    with pytest.raises(NotPAdicInteger):
        pochhammer_mod(Fraction(1, 7), 2, ctx)


def test_pochhammer_central_binomial_ratio():
    # (1/2)_k / (1)_k = C(2k, k) / 4^k, exactly, k <= 200
    for k in range(201):
        lhs = pochhammer_exact(Fraction(1, 2), k) / pochhammer_exact(1, k)
        assert lhs == Fraction(comb(2 * k, k), 4**k)


def test_pochhammer_central_binomial_ratio_mod():
    # the same ratio reduced in Z/p^k, k below p so (1)_k stays a unit
    for p, kk in ((7, 2), (13, 3)):
        ctx = ModulusContext(p, kk)
        m = ctx.modulus
        for k in range(p):
            ratio = (
                pochhammer_mod(Fraction(1, 2), k, ctx).value
                * pow(pochhammer_mod(1, k, ctx).value, -1, m)
                % m
            )
            assert ratio == comb(2 * k, k) * pow(pow(4, -1, m), k, m) % m


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([5, 7, 11, 13]),
    st.sampled_from([1, 2, 3]),
    st.fractions(min_value=-30, max_value=30, max_denominator=25),
    st.integers(0, 12),
)
def test_pochhammer_mod_matches_exact(p, kk, a, n):
    if a.denominator % p == 0:
        return
    ctx = ModulusContext(p, kk)
    exact = poch_oracle(a, n)
    if exact.denominator % p:
        assert pochhammer_mod(a, n, ctx) == reduce_rational(exact, ctx)


def test_series_spec_rejects_lower_pole():
    with pytest.raises(LowerParameterPole):
        SeriesSpec((Fraction(1),), (Fraction(0),), Fraction(1), 3)
    with pytest.raises(LowerParameterPole):
        SeriesSpec((Fraction(1),), (Fraction(-2),), Fraction(1), 1)


def test_pfq_exact_examples():
    spec = SeriesSpec((Fraction(-2), Fraction(3)), (Fraction(1),), Fraction(1, 2), 4)
    assert truncated_pfq_exact(spec) == Fraction(-1, 2)
    spec = SeriesSpec(
        (Fraction(1, 2), Fraction(-2), Fraction(3)), (Fraction(1), Fraction(1)), Fraction(1), 4
    )
    assert truncated_pfq_exact(spec) == Fraction(1, 4)
    spec = SeriesSpec((Fraction(5, 3),), (Fraction(2),), Fraction(0), 9)
    assert truncated_pfq_exact(spec) == 1


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=6), min_size=1, max_size=3),
    st.fractions(min_value=Fraction(1, 3), max_value=5, max_denominator=6),
    st.fractions(min_value=-2, max_value=2, max_denominator=4),
    st.integers(0, 8),
)
def test_pfq_exact_matches_oracle(upper, lower, z, n):
    if lower.denominator == 1 and lower <= 0:
        return
    spec = SeriesSpec(tuple(upper), (lower,), z, n)
    assert truncated_pfq_exact(spec) == pfq_oracle(upper, [lower], z, n)


def test_pfq_mod_examples():
    ctx = ModulusContext(5, 2)
    spec = SeriesSpec((Fraction(-2), Fraction(3)), (Fraction(1),), Fraction(1, 2), 4)
    assert truncated_pfq_mod(spec, ctx).value == 12
    ctx7 = ModulusContext(7, 2)
    spec = SeriesSpec(
        (Fraction(1, 2), Fraction(-1), Fraction(2)), (Fraction(1), Fraction(1)), Fraction(1), 6
    )
    assert truncated_pfq_mod(spec, ctx7).value == 0
    spec = SeriesSpec((Fraction(1, 3),), (Fraction(2, 3),), Fraction(0), 4)
    assert truncated_pfq_mod(spec, ctx7).value == 1


def test_pfq_mod_requires_p_adic_inputs():
    ctx = ModulusContext(5, 2)
    with pytest.raises(NotPAdicInteger):
        truncated_pfq_mod(SeriesSpec((Fraction(1, 5),), (Fraction(1),), Fraction(1), 2), ctx)
    with pytest.raises(NotPAdicInteger):
        truncated_pfq_mod(SeriesSpec((Fraction(1),), (Fraction(1),), Fraction(1, 5), 2), ctx)


def test_pfq_mod_rejects_non_unit_denominators():
    ctx = ModulusContext(5, 2)
    # truncation reaching the factorial factor p
    spec = SeriesSpec((Fraction(1, 2),), (Fraction(1),), Fraction(1), 5)
    with pytest.raises(NonUnitDenominator):
        truncated_pfq_mod(spec, ctx)
    # lower parameter hitting a multiple of p inside the range
    spec = SeriesSpec((Fraction(1, 2),), (Fraction(5),), Fraction(1), 2)
    with pytest.raises(NonUnitDenominator):
        truncated_pfq_mod(spec, ctx)


@settings(max_examples=50, deadline=None)
@given(
    st.sampled_from([5, 7, 11]),
    st.sampled_from([1, 2]),
    st.integers(0, 6),
)
def test_pfq_mod_matches_exact_for_terminating_series(p, k, n):
    # 2F1(-n, n+1; 1; 1/2) terminates at n <= p-1 terms
    if n >= p:
        return
    ctx = ModulusContext(p, k)
    spec = SeriesSpec((Fraction(-n), Fraction(n + 1)), (Fraction(1),), Fraction(1, 2), p - 1)
    exact = pfq_oracle([Fraction(-n), Fraction(n + 1)], [Fraction(1)], Fraction(1, 2), p - 1)
    assert truncated_pfq_mod(spec, ctx) == reduce_rational(exact, ctx)


def test_pfq_mod_matches_exact_for_fractional_parameters():
    # non-terminating truncations: denominators of the exact sum stay prime to p
    for p in (5, 7):
        for a in (Fraction(1, 3), Fraction(-3, 4)):
            ctx = ModulusContext(p, 2)
            upper = (Fraction(1, 2), -a, a + 1)
            lower = (Fraction(1), Fraction(1))
            spec = SeriesSpec(upper, lower, Fraction(1), p - 1)
            exact = pfq_oracle(list(upper), list(lower), Fraction(1), p - 1)
            assert exact.denominator % p != 0
            assert truncated_pfq_mod(spec, ctx) == reduce_rational(exact, ctx)


def test_series_2f1_half_examples():
    assert series_2f1_half(0, ModulusContext(7, 2)).value == 1
    assert series_2f1_half(2, ModulusContext(5, 2)).value == 12
    assert series_2f1_half(2, ModulusContext(7, 2)).value == 24


def test_series_3f2_one_examples():
    assert series_3f2_one(0, ModulusContext(5, 2)).value == 1
    assert series_3f2_one(1, ModulusContext(7, 2)).value == 0
    assert series_3f2_one(2, ModulusContext(5, 2)).value == 19


def test_series_wrappers_match_generic_evaluator():
    for p, k in [(5, 2), (7, 2), (11, 1), (7, 3)]:
        ctx = ModulusContext(p, k)
        for a in (Fraction(0), Fraction(3), Fraction(-1, 2), Fraction(2, 3), Fraction(-5, 6)):
            spec2 = SeriesSpec((-a, a + 1), (Fraction(1),), Fraction(1, 2), p - 1)
            assert series_2f1_half(a, ctx) == truncated_pfq_mod(spec2, ctx)
            spec3 = SeriesSpec(
                (Fraction(1, 2), -a, a + 1), (Fraction(1), Fraction(1)), Fraction(1), p - 1
            )
            assert series_3f2_one(a, ctx) == truncated_pfq_mod(spec3, ctx)


def test_term_equivalence_binomial_form_2f1():
    # k-th term of 2F1(-a, a+1; 1; 1/2) = C(2k,k) C(a+k, 2k) (-1/2)^k
    for a in (Fraction(0), Fraction(4), Fraction(1, 3), Fraction(-7, 2), Fraction(2, 5)):
        for k in range(12):
            term = (
                poch_oracle(-a, k)
                * poch_oracle(a + 1, k)
                / poch_oracle(1, k)
                * Fraction(1, 2) ** k
                / factorial(k)
            )
            closed = comb(2 * k, k) * gen_binom(a + k, 2 * k) * Fraction(-1, 2) ** k
            assert term == closed


def test_term_equivalence_binomial_form_3f2():
    # k-th term of 3F2(1/2, -a, a+1; 1, 1; 1) = C(2k,k)^2 C(a+k, 2k) (-1/4)^k
    for a in (Fraction(2), Fraction(1, 3), Fraction(-7, 2), Fraction(5, 4)):
        for k in range(12):
            term = (
                poch_oracle(Fraction(1, 2), k)
                * poch_oracle(-a, k)
                * poch_oracle(a + 1, k)
                / poch_oracle(1, k) ** 2
                / factorial(k)
            )
            closed = comb(2 * k, k) ** 2 * gen_binom(a + k, 2 * k) * Fraction(-1, 4) ** k
            assert term == closed
