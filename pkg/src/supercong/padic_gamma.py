"""Morita's p-adic Gamma function in Z/p^k, and its logarithmic derivative mod p.

For a non-negative integer m, Gamma_p(m) = (-1)^m * prod of j in (0, m) coprime
to p.  Gamma_p is 1-Lipschitz on the p-adic integers, so replacing a p-adic
integer x by any m = x (mod p^k) evaluates Gamma_p(x) mod p^k.  Values are
always units of Z/p^k.
"""

from __future__ import annotations

import bisect
import threading
from fractions import Fraction
from functools import lru_cache

from .padic_core import (
    ModulusContext,
    PadicError,
    RationalLike,
    Residue,
    harmonic_mod,
    reduce_rational,
    s_p,
)


class CapExceeded(PadicError):
    """Raised when a Gamma evaluation would need a longer loop than allowed."""


# A running-product checkpoint is stored every _STRIDE steps, so a query below
# the current sweep position costs at most _STRIDE multiplications.
_STRIDE = 128


class GammaEvaluator:
    """Evaluates Gamma_p mod p^k by direct product, with a per-context memo.

    The evaluator sweeps the partial product F(m) = prod_{0<j<m, p notdiv j} j
    forward once, memoizes every argument it is asked for, and keeps sparse
    checkpoints so that out-of-order queries only redo a short tail.  Safe for
    concurrent use; results do not depend on query order.
    """

    def __init__(self, ctx: ModulusContext, complexity_cap: int | None = None):
        self.ctx = ctx
        self.complexity_cap = ctx.modulus if complexity_cap is None else complexity_cap
        self._memo: dict[int, int] = {}
        self._positions = [0]  # checkpoint sweep positions, ascending
        self._products = [1]  # F at each checkpoint
        self._lock = threading.Lock()

    def _partial_product_at(self, m: int) -> int:
        i = bisect.bisect_right(self._positions, m) - 1
        pos, prod = self._positions[i], self._products[i]
        p, modulus = self.ctx.p, self.ctx.modulus
        tail = self._positions[-1]
        for j in range(pos, m):
            if j % p:
                prod = prod * j % modulus
            if j + 1 > tail and (j + 1) % _STRIDE == 0:
                self._positions.append(j + 1)
                self._products.append(prod)
        return prod

    def gamma_at(self, m: int) -> int:
        """Gamma_p at the non-negative integer m, as an int in [0, modulus)."""
        if not 0 <= m < self.ctx.modulus:
            raise ValueError(f"argument {m} outside [0, {self.ctx.modulus})")
        if m > self.complexity_cap:
            raise CapExceeded(f"product of length {m} exceeds cap {self.complexity_cap}")
        with self._lock:
            value = self._memo.get(m)
            if value is None:
                prod = self._partial_product_at(m)
                value = prod if m % 2 == 0 else self.ctx.modulus - prod
                self._memo[m] = value
        return value

    def gamma_p(self, x: RationalLike) -> Residue:
        """Gamma_p(x) mod p^k for a p-adic integer x."""
        return Residue(self.gamma_at(reduce_rational(x, self.ctx).value), self.ctx)

    __call__ = gamma_p


@lru_cache(maxsize=256)
def g1_of_one(p: int) -> int:
    """G1(1) mod p, where G1 = Gamma_p'/Gamma_p.

    Extracted from the first-order perturbation of Gamma_p at 1: with
    t = Gamma_p(1 + p) mod p^2 one has t = -(1 + G1(1) p), and -t - 1 is
    divisible by p because -t = 1 (mod p).
    """
    ctx = ModulusContext(p, 2)
    t = GammaEvaluator(ctx).gamma_at(1 + p)
    num = (-t - 1) % ctx.modulus
    assert num % p == 0
    return (num // p) % p


def g1(x: RationalLike, p: int) -> int:
    """G1(x) mod p via G1(x) = G1(1) + H_{s_p(x)-1}."""
    return (g1_of_one(p) + harmonic_mod(s_p(Fraction(x), p) - 1, p)) % p
