"""Real-argument binomial coefficients ``f_s(x) = C(x, s)`` with a hinge.

``f_s`` is the falling-factorial polynomial ``x(x-1)...(x-s+1)/s!`` for
``x >= s-1`` and identically zero on ``[0, s-1)``.  It is continuous and
strictly increasing on ``[s-1, inf)``, so it has a well-defined inverse there.

Rational inputs (``int``, ``Fraction``) are evaluated exactly and give a
``Fraction``; floats give floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

Real = Union[int, float, Fraction]

_MAX_BISECT = 200


@dataclass(frozen=True)
class GenBinomial:
    s: int

    def __post_init__(self):
        if not isinstance(self.s, int) or self.s < 1:
            raise ValueError(f"order s must be an integer >= 1, got {self.s!r}")

    @property
    def hinge(self) -> int:
        return self.s - 1

    def __call__(self, x: Real) -> Real:
        if x < 0:
            raise ValueError(f"f_{self.s} is defined for x >= 0, got {x}")
        if isinstance(x, Rational):
            if x < self.hinge:
                return Fraction(0)
            return Fraction(math.prod(x - i for i in range(self.s)), math.factorial(self.s))
        x = float(x)
        if x < self.hinge:
            return 0.0
        prod = 1.0
        for i in range(self.s):
            prod *= (x - i) / (i + 1)
        return prod

    def deriv(self, x: float, order: int = 1) -> float:
        """First or second derivative, valid above the hinge (x > s-1)."""
        if order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        if not x > self.hinge:
            raise ValueError(f"derivative of f_{self.s} requires x > {self.hinge}, got {x}")
        s = self.s
        factors = [x - i for i in range(s)]
        prefix = [1.0] * (s + 1)
        for i, f in enumerate(factors):
            prefix[i + 1] = prefix[i] * f
        suffix = [1.0] * (s + 1)
        for i in range(s - 1, -1, -1):
            suffix[i] = suffix[i + 1] * factors[i]
        if order == 1:
            total = sum(prefix[i] * suffix[i + 1] for i in range(s))
            return total / math.factorial(s)
        total = 0.0
        for i in range(s):
            mid = 1.0  # product of factors strictly between i and j
            for j in range(i + 1, s):
                total += prefix[i] * mid * suffix[j + 1]
                mid *= factors[j]
        return 2.0 * total / math.factorial(s)

    def inverse(self, y: float) -> float:
        """The unique x >= s-1 with f_s(x) = y, by bisection."""
        if y < 0:
            raise ValueError(f"inverse needs y >= 0, got {y}")
        if y == 0:
            return float(self.hinge)
        if self.s == 1:
            return float(y)
        y = float(y)
        lo = float(self.hinge)
        hi = lo + 1.0
        while self(hi) < y:
            lo, hi = hi, 2.0 * hi
        for _ in range(_MAX_BISECT):
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi) or hi - lo <= 1e-14 * max(1.0, mid):
                break
            if self(mid) < y:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)


def compose(s: int, t: int, x: float) -> float:
    """f_s(f_t^{-1}(x)); convex on (0, inf) for 1 <= t < s."""
    if not 1 <= t < s:
        raise ValueError(f"need 1 <= t < s, got t={t}, s={s}")
    if x <= math.comb(s - 1, t):
        # f_t^{-1}(x) <= s-1, the hinge of f_s
        return 0.0
    return GenBinomial(s)(GenBinomial(t).inverse(x))


def composite(r: int, t: int, x: float) -> float:
    """The supersaturation transform f_{r+1}(f_{t-1}^{-1}(x)) for 2 <= t <= r.

    Zero iff x <= C(r, t-1).
    """
    if not 2 <= t <= r:
        raise ValueError(f"need 2 <= t <= r, got r={r}, t={t}")
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    return compose(r + 1, t - 1, x)
