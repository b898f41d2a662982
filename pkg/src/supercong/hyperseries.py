"""Pochhammer symbols and truncated pFq series, exact and mod p^k.

The truncated series sum_{k=0..N} (a_1)_k ... (a_r)_k / ((b_1)_k ... (b_s)_k)
* z^k / k! is evaluated either over exact rationals or in Z/p^k.  Modular
evaluation multiplies each term ratio by unit inverses only: lower-parameter
factors and k+1 must be units mod p, which is checked as the sum runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .padic_core import (
    ModulusContext,
    PadicError,
    RationalLike,
    Residue,
    _inv_int,
    reduce_rational,
    unit_inverse_table,
)


class LowerParameterPole(PadicError):
    """A lower parameter is zero or a negative integer, so a term divides by zero."""


class NonUnitDenominator(PadicError):
    """A modular term ratio would divide by a multiple of p."""


def pochhammer_exact(a: RationalLike, k: int) -> Fraction:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1."""
    if k < 0:
        raise ValueError("pochhammer index must be >= 0")
    a = Fraction(a)
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def pochhammer_mod(a: RationalLike, k: int, ctx: ModulusContext) -> Residue:
    """(a)_k reduced in Z/p^k, computed factor by factor."""
    if k < 0:
        raise ValueError("pochhammer index must be >= 0")
    m = ctx.modulus
    start = reduce_rational(a, ctx).value
    out = 1
    for i in range(k):
        out = out * ((start + i) % m) % m
    return Residue(out, ctx)


@dataclass(frozen=True)
class SeriesSpec:
    """Parameters of a truncated pFq: upper list, lower list, argument, bound.

    The sum runs over k = 0..n_terms.  Lower parameters may not be zero or
    negative integers (such a series divides by zero within any truncation).
    """

    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    z: Fraction
    n_terms: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", tuple(Fraction(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(Fraction(b) for b in self.lower))
        object.__setattr__(self, "z", Fraction(self.z))
        if self.n_terms < 0:
            raise ValueError("truncation bound must be >= 0")
        for b in self.lower:
            if b.denominator == 1 and b <= 0:
                raise LowerParameterPole(f"lower parameter {b} is a non-positive integer")


def truncated_pfq_exact(spec: SeriesSpec) -> Fraction:
    """The truncated series as an exact rational."""
    total = Fraction(1)
    term = Fraction(1)
    for k in range(spec.n_terms):
        num = Fraction(1)
        for a in spec.upper:
            num *= a + k
        den = Fraction(k + 1)
        for b in spec.lower:
            den *= b + k
        term = term * num * spec.z / den
        total += term
    return total


def truncated_pfq_mod(spec: SeriesSpec, ctx: ModulusContext) -> Residue:
    """The truncated series reduced in Z/p^k, term by term.

    Every parameter and z must be a p-adic integer.  Raises
    NonUnitDenominator when a lower-parameter factor or k+1 is divisible by p
    within the truncation range (in particular whenever n_terms >= p).
    """
    p, m = ctx.p, ctx.modulus
    ups = [reduce_rational(a, ctx).value for a in spec.upper]
    lows = [reduce_rational(b, ctx).value for b in spec.lower]
    z = reduce_rational(spec.z, ctx).value
    total = 1
    term = 1
    for k in range(spec.n_terms):
        if (k + 1) % p == 0:
            raise NonUnitDenominator(f"factorial factor {k + 1} divisible by p={p}")
        den = k + 1
        for b in lows:
            f = (b + k) % m
            if f % p == 0:
                raise NonUnitDenominator(f"lower-parameter factor at k={k} divisible by p={p}")
            den = den * f % m
        num = z
        for a in ups:
            num = num * ((a + k) % m) % m
        term = term * num % m * _inv_int(den, m) % m
        total = (total + term) % m
    return Residue(total, ctx)


def series_2f1_half(a: RationalLike, ctx: ModulusContext) -> Residue:
    """2F1(-a, a+1; 1; 1/2) truncated at p-1, reduced in Z/p^k."""
    a = Fraction(a)
    p, m = ctx.p, ctx.modulus
    inv = unit_inverse_table(p, ctx.k)
    inv2 = inv[2]
    u = reduce_rational(-a, ctx).value
    v = reduce_rational(a + 1, ctx).value
    total = 1
    term = 1
    for k in range(p - 1):
        i = inv[k + 1]
        term = term * ((u + k) * (v + k) % m) % m * (i * i % m) % m * inv2 % m
        total = (total + term) % m
    return Residue(total, ctx)


def series_3f2_one(a: RationalLike, ctx: ModulusContext) -> Residue:
    """3F2(1/2, -a, a+1; 1, 1; 1) truncated at p-1, reduced in Z/p^k."""
    a = Fraction(a)
    p, m = ctx.p, ctx.modulus
    inv = unit_inverse_table(p, ctx.k)
    h = reduce_rational(Fraction(1, 2), ctx).value
    u = reduce_rational(-a, ctx).value
    v = reduce_rational(a + 1, ctx).value
    total = 1
    term = 1
    for k in range(p - 1):
        i = inv[k + 1]
        term = (
            term
            * ((h + k) * (u + k) % m * (v + k) % m)
            % m
            * (i * i % m * i % m)
            % m
        )
        total = (total + term) % m
    return Residue(total, ctx)
