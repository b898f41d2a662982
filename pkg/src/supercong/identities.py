"""Exact certification of the combinatorial identities behind the congruences.

Everything here runs over arbitrary-precision rationals; a check passes only
on exact equality.  Harmonic numbers are cached up to the largest index a
sweep needs, and binomials use the multiplicative formula with C(m, j) = 0
for j > m or j < 0.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .hyperseries import SeriesSpec, truncated_pfq_exact
from .padic_core import PadicError


class OddInput(PadicError):
    """Raised by the even-n identities when given an odd n."""


_harmonic_cache: list[Fraction] = [Fraction(0)]
_harmonic_lock = threading.Lock()


def harmonic(n: int) -> Fraction:
    """Exact harmonic number H_n, cached."""
    if n < 0:
        raise ValueError("harmonic index must be >= 0")
    if n >= len(_harmonic_cache):
        with _harmonic_lock:
            while len(_harmonic_cache) <= n:
                m = len(_harmonic_cache)
                _harmonic_cache.append(_harmonic_cache[-1] + Fraction(1, m))
    return _harmonic_cache[n]


@dataclass(frozen=True)
class IdentityCheck:
    """Both sides of one identity instance; equal iff the check passes."""

    identity: str
    n: int
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class IdentityReport:
    """Result of sweeping one identity over a range of n."""

    identity: str
    n_min: int
    n_max: int
    first_failure: IdentityCheck | None = None

    @property
    def passed(self) -> bool:
        return self.first_failure is None


def _require_even(n: int) -> None:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n % 2:
        raise OddInput(f"identity requires even n, got {n}")


def check_b8(n: int) -> IdentityCheck:
    """Even n: sum_k C(2k,k) C(n+k,2k) (-1/2)^k = C(n, n/2) / (-4)^(n/2)."""
    _require_even(n)
    lhs = sum(
        Fraction(comb(2 * k, k) * comb(n + k, 2 * k) * (-1) ** k, 2**k)
        for k in range(n + 1)
    )
    rhs = Fraction(comb(n, n // 2), (-4) ** (n // 2))
    return IdentityCheck("B8", n, Fraction(lhs), rhs)


def check_b9(n: int) -> IdentityCheck:
    """Even n: sum_k C(2k,k)^2 C(n+k,2k) (-1/4)^k = C(n, n/2)^2 / 4^n."""
    _require_even(n)
    lhs = sum(
        Fraction(comb(2 * k, k) ** 2 * comb(n + k, 2 * k) * (-1) ** k, 4**k)
        for k in range(n + 1)
    )
    rhs = Fraction(comb(n, n // 2) ** 2, 4**n)
    return IdentityCheck("B9", n, Fraction(lhs), rhs)


def check_b17(n: int) -> IdentityCheck:
    """Even n: the B8 sum weighted by H_{n+k} - H_n equals
    C(n, n/2) / (-4)^(n/2) * (H_n - H_{n/2}) / 2."""
    _require_even(n)
    h_n = harmonic(n)
    lhs = Fraction(0)
    for k in range(n + 1):
        weight = harmonic(n + k) - h_n
        lhs += Fraction(comb(2 * k, k) * comb(n + k, 2 * k) * (-1) ** k, 2**k) * weight
    rhs = Fraction(comb(n, n // 2), (-4) ** (n // 2)) * (h_n - harmonic(n // 2)) / 2
    return IdentityCheck("B17", n, lhs, rhs)


def check_b18(n: int) -> IdentityCheck:
    """Even n: the B9 sum weighted by H_{n+k} - H_n equals
    C(n, n/2)^2 / 4^n * (3 H_n / 2 - H_{n/2})."""
    _require_even(n)
    h_n = harmonic(n)
    lhs = Fraction(0)
    for k in range(n + 1):
        weight = harmonic(n + k) - h_n
        lhs += Fraction(comb(2 * k, k) ** 2 * comb(n + k, 2 * k) * (-1) ** k, 4**k) * weight
    rhs = Fraction(comb(n, n // 2) ** 2, 4**n) * (Fraction(3, 2) * h_n - harmonic(n // 2))
    return IdentityCheck("B18", n, lhs, rhs)


def a_n(n: int) -> Fraction:
    """sum_{k=0..2n} C(2k,k) C(2n+k,2k) (-1/2)^k (2 H_{2n+k} - 3 H_{2n} + H_n).

    Vanishes for every n >= 0; certified through check_recurrences.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    h2n, hn = harmonic(2 * n), harmonic(n)
    total = Fraction(0)
    for k in range(2 * n + 1):
        weight = 2 * harmonic(2 * n + k) - 3 * h2n + hn
        total += Fraction(comb(2 * k, k) * comb(2 * n + k, 2 * k) * (-1) ** k, 2**k) * weight
    return total


def b_n(n: int) -> Fraction:
    """sum_{k=0..2n} C(2k,k)^2 C(2n+k,2k) (-1/4)^k (2 H_{2n+k} - 5 H_{2n} + 2 H_n)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    h2n, hn = harmonic(2 * n), harmonic(n)
    total = Fraction(0)
    for k in range(2 * n + 1):
        weight = 2 * harmonic(2 * n + k) - 5 * h2n + 2 * hn
        total += (
            Fraction(comb(2 * k, k) ** 2 * comb(2 * n + k, 2 * k) * (-1) ** k, 4**k) * weight
        )
    return total


def _a_recurrence_residual(values: list[Fraction], n: int) -> Fraction:
    return (2 * n + 1) * values[n] + 2 * (n + 1) * values[n + 1]


def _b_recurrence_residual(values: list[Fraction], n: int) -> Fraction:
    c0 = 4 * (n + 1) ** 2 * (2 * n + 1) ** 2 * (4 * n + 7)
    c1 = (4 * n + 5) * (32 * n**4 + 160 * n**3 + 296 * n**2 + 240 * n + 71)
    c2 = 4 * (n + 2) ** 2 * (2 * n + 3) ** 2 * (4 * n + 3)
    return c0 * values[n] - c1 * values[n + 1] + c2 * values[n + 2]


def check_recurrences(n_max: int) -> IdentityReport:
    """Certify that a_n and b_n vanish on [0, n_max] and satisfy their
    holonomic recurrences on every slot whose indices stay within range.

    The first-order recurrence is checked for n <= n_max - 1 and the
    second-order one for n <= n_max - 2.
    """
    a_vals = [a_n(n) for n in range(n_max + 1)]
    b_vals = [b_n(n) for n in range(n_max + 1)]
    zero = Fraction(0)
    for n in range(n_max + 1):
        if a_vals[n] != 0:
            return IdentityReport("RECURRENCES", 0, n_max, IdentityCheck("A_VANISH", n, a_vals[n], zero))
        if b_vals[n] != 0:
            return IdentityReport("RECURRENCES", 0, n_max, IdentityCheck("B_VANISH", n, b_vals[n], zero))
    for n in range(n_max):
        r = _a_recurrence_residual(a_vals, n)
        if r != 0:
            return IdentityReport("RECURRENCES", 0, n_max, IdentityCheck("A_RECURRENCE", n, r, zero))
    for n in range(n_max - 1):
        r = _b_recurrence_residual(b_vals, n)
        if r != 0:
            return IdentityReport("RECURRENCES", 0, n_max, IdentityCheck("B_RECURRENCE", n, r, zero))
    return IdentityReport("RECURRENCES", 0, n_max)


def _series_2f1_half_exact(n: int) -> Fraction:
    spec = SeriesSpec((Fraction(-n), Fraction(n + 1)), (Fraction(1),), Fraction(1, 2), n)
    return truncated_pfq_exact(spec)


def check_clausen_truncated(n: int) -> IdentityCheck:
    """Integer n >= 0, both parities: the terminating 3F2(1/2,-n,n+1;1,1;1)
    equals the square of the terminating 2F1(-n,n+1;1;1/2), exactly."""
    if n < 0:
        raise ValueError("n must be >= 0")
    spec = SeriesSpec(
        (Fraction(1, 2), Fraction(-n), Fraction(n + 1)),
        (Fraction(1), Fraction(1)),
        Fraction(1),
        n,
    )
    return IdentityCheck("CLAUSEN", n, truncated_pfq_exact(spec), _series_2f1_half_exact(n) ** 2)


def check_gauss_half(n: int) -> IdentityCheck:
    """Even n: the terminating 2F1(-n,n+1;1;1/2) equals C(n,n/2)/(-4)^(n/2)."""
    _require_even(n)
    rhs = Fraction(comb(n, n // 2), (-4) ** (n // 2))
    return IdentityCheck("GAUSS_HALF", n, _series_2f1_half_exact(n), rhs)


_CHECKERS = {
    "B8": check_b8,
    "B9": check_b9,
    "B17": check_b17,
    "B18": check_b18,
    "CLAUSEN": check_clausen_truncated,
    "GAUSS_HALF": check_gauss_half,
}

#: Identity ids accepted by sweep_identity, besides RECURRENCES.
IDENTITY_IDS = tuple(_CHECKERS) + ("RECURRENCES",)


def sweep_identity(identity: str, n_values) -> IdentityReport:
    """Run one identity over the given n values, reporting the first failure."""
    checker = _CHECKERS[identity]
    ns = list(n_values)
    lo, hi = (min(ns), max(ns)) if ns else (0, -1)
    for n in ns:
        result = checker(n)
        if not result.ok:
            return IdentityReport(identity, lo, hi, result)
    return IdentityReport(identity, lo, hi)
