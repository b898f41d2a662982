"""Exact arithmetic in Z/p^k for primes p >= 5.

Residues are canonical representatives in [0, p^k).  Rational parameters are
plain ``fractions.Fraction`` values (exported as :data:`PRational`); a rational
is usable at a prime p only when p does not divide its denominator, i.e. when
it is a p-adic integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

#: Exact rational parameter type.  ``fractions.Fraction`` already guarantees
#: the invariants we need: gcd-reduced, positive denominator, sign in the
#: numerator.
PRational = Fraction

RationalLike = Union[int, Fraction]

#: Contexts with modulus at or above this bound are rejected by default, so
#: that a product of two residues stays below 2^62.
DEFAULT_MAX_MODULUS = 2**31


class PadicError(Exception):
    """Base class for domain errors in this package."""


class NotInvertible(PadicError):
    """Raised when inverting a residue that shares a factor with the modulus."""


class NotPAdicInteger(PadicError):
    """Raised when a rational has denominator divisible by the prime in use."""


class IndexOutOfRange(PadicError):
    """Raised for harmonic-number indices n >= p."""


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (n < 2^31 scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def sieve_primes(lo: int, hi: int) -> list[int]:
    """All primes p with max(lo, 5) <= p <= hi, ascending.

    2 and 3 are never returned; every context in this package requires p >= 5.
    """
    if lo > hi:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    lo = max(lo, 5)
    if hi < lo:
        return []
    flags = bytearray([1]) * (hi + 1)
    flags[0:2] = b"\x00\x00"
    q = 2
    while q * q <= hi:
        if flags[q]:
            flags[q * q :: q] = bytes(len(flags[q * q :: q]))
        q += 1
    return [n for n in range(lo, hi + 1) if flags[n]]


@dataclass(frozen=True)
class ModulusContext:
    """A prime p >= 5 together with an exponent k in {1, 2, 3}; modulus p^k."""

    p: int
    k: int
    modulus: int = field(init=False, compare=False)
    max_modulus: int = field(default=DEFAULT_MAX_MODULUS, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.k not in (1, 2, 3):
            raise ValueError(f"exponent k must be 1, 2 or 3, got {self.k}")
        if self.p < 5 or not is_prime(self.p):
            raise ValueError(f"p must be a prime >= 5, got {self.p}")
        modulus = self.p**self.k
        if modulus >= self.max_modulus:
            raise ValueError(
                f"modulus {self.p}^{self.k} = {modulus} exceeds bound {self.max_modulus}"
            )
        object.__setattr__(self, "modulus", modulus)

    def residue(self, value: int) -> "Residue":
        return Residue(value % self.modulus, self)


@dataclass(frozen=True)
class Residue:
    """Canonical representative in [0, modulus) of an element of Z/p^k.

    Arithmetic is closed within a single context; mixing contexts is an error.
    """

    value: int
    ctx: ModulusContext

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.ctx.modulus:
            raise ValueError(f"value {self.value} out of range [0, {self.ctx.modulus})")

    def _coerce(self, other: "Residue | int") -> int:
        if isinstance(other, Residue):
            if other.ctx != self.ctx:
                raise ValueError("mixed-context residue arithmetic")
            return other.value
        return other % self.ctx.modulus

    def __add__(self, other: "Residue | int") -> "Residue":
        return Residue((self.value + self._coerce(other)) % self.ctx.modulus, self.ctx)

    def __sub__(self, other: "Residue | int") -> "Residue":
        return Residue((self.value - self._coerce(other)) % self.ctx.modulus, self.ctx)

    def __mul__(self, other: "Residue | int") -> "Residue":
        return Residue(self.value * self._coerce(other) % self.ctx.modulus, self.ctx)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self) -> "Residue":
        return Residue(-self.value % self.ctx.modulus, self.ctx)

    def __pow__(self, e: int) -> "Residue":
        return Residue(pow(self.value, e, self.ctx.modulus), self.ctx)

    def inverse(self) -> "Residue":
        return mod_inverse(self)

    def __repr__(self) -> str:
        return f"Residue({self.value} mod {self.ctx.modulus})"


def _inv_int(v: int, modulus: int) -> int:
    # pow(-1) uses extended Euclid under the hood, so prime-power moduli are fine.
    try:
        return pow(v, -1, modulus)
    except ValueError:
        raise NotInvertible(f"{v} is not invertible mod {modulus}") from None


def mod_inverse(x: Residue) -> Residue:
    """Multiplicative inverse in Z/p^k; raises NotInvertible when p | x."""
    return Residue(_inv_int(x.value, x.ctx.modulus), x.ctx)


def _check_p_adic(a: Fraction, p: int) -> None:
    if a.denominator % p == 0:
        raise NotPAdicInteger(f"{a} is not a p-adic integer at p={p}")


def reduce_rational(a: RationalLike, ctx: ModulusContext) -> Residue:
    """Image of a p-adic integer a = num/den in Z/p^k."""
    a = Fraction(a)
    _check_p_adic(a, ctx.p)
    m = ctx.modulus
    return Residue(a.numerator * _inv_int(a.denominator % m, m) % m, ctx)


def least_residue(a: RationalLike, p: int) -> int:
    """The least non-negative integer r < p with a = r (mod p)."""
    a = Fraction(a)
    _check_p_adic(a, p)
    return a.numerator * _inv_int(a.denominator % p, p) % p


def has_even_residue(a: RationalLike, p: int) -> bool:
    """Parity predicate on least_residue(a, p); gates most statements."""
    return least_residue(a, p) % 2 == 0


def s_p(x: RationalLike, p: int) -> int:
    """Representative of x mod p in {1, ..., p}: least_residue, with 0 mapped to p."""
    r = least_residue(x, p)
    return r if r != 0 else p


@lru_cache(maxsize=256)
def _harmonic_table(p: int) -> tuple[int, ...]:
    # H_0..H_{p-1} mod p via the linear-time inverse recurrence
    # inv[i] = -(p // i) * inv[p % i]  (valid for prime p).
    inv = [0] * p
    if p > 1:
        inv[1] = 1
    for i in range(2, p):
        inv[i] = (p - p // i) * inv[p % i] % p
    table = [0] * p
    acc = 0
    for n in range(1, p):
        acc = (acc + inv[n]) % p
        table[n] = acc
    return tuple(table)


def harmonic_mod(n: int, p: int) -> int:
    """H_n = sum_{j=1..n} 1/j reduced mod p, for 0 <= n < p."""
    if not 0 <= n < p:
        raise IndexOutOfRange(f"harmonic index {n} outside [0, {p})")
    return _harmonic_table(p)[n]


def delta(a: RationalLike, ctx: ModulusContext) -> Residue:
    """The p-adic integer (a - least_residue(a, p)) / p, reduced mod p^(k-1).

    Requires k >= 2 so the quotient is visible in the context.
    """
    if ctx.k < 2:
        raise ValueError("delta needs a context with k >= 2")
    a = Fraction(a)
    r = least_residue(a, ctx.p)
    lifted = reduce_rational(a, ctx).value
    quotient_ctx = ModulusContext(ctx.p, ctx.k - 1, max_modulus=ctx.max_modulus)
    # lifted = a mod p^k and lifted = r (mod p), so the difference is divisible by p.
    return Residue((lifted - r) // ctx.p % quotient_ctx.modulus, quotient_ctx)


@lru_cache(maxsize=64)
def unit_inverse_table(p: int, k: int) -> tuple[int, ...]:
    """Inverses of 1..p-1 mod p^k (index 0 unused); shared by series loops."""
    m = p**k
    return (0,) + tuple(pow(j, -1, m) for j in range(1, p))
