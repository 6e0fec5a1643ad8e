"""
Exact arithmetic in Q(alpha) for a quadratic irrational alpha.

Every number is ``p + q*alpha`` with rational ``p`` and ``q``.  Since 1 and
alpha are linearly independent over Q the pair ``(p, q)`` is unique, so
equality is structural, and order is decided with integer arithmetic only:
``alpha = (a + b*sqrt(d)) / c`` turns every comparison into the sign of
``X + Y*sqrt(d)`` with rational ``X, Y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


def _squarefree(d: int) -> bool:
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


def _sign_surd(x: Fraction, y: Fraction, d: int) -> int:
    """Sign of ``x + y*sqrt(d)`` for a non-square ``d``."""
    if y == 0:
        return (x > 0) - (x < 0)
    if x == 0:
        return (y > 0) - (y < 0)
    if (x > 0) == (y > 0):
        return 1 if x > 0 else -1
    # opposite signs: compare x^2 with y^2 d
    lhs, rhs = x * x, y * y * d
    if x > 0:
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


@dataclass(frozen=True)
class QuadraticIrrational:
    """``(a + b*sqrt(d)) / c`` with ``d`` square-free, ``d > 1``, ``b != 0``."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"{name} must be an integer")
        if self.c == 0:
            raise ValueError("denominator c must be nonzero")
        if self.b == 0:
            raise ValueError("alpha is rational (b = 0)")
        if self.d <= 1 or not _squarefree(self.d):
            raise ValueError(f"d = {self.d} must be a square-free integer > 1")
        if self.c < 0:
            object.__setattr__(self, "a", -self.a)
            object.__setattr__(self, "b", -self.b)
            object.__setattr__(self, "c", -self.c)

    @classmethod
    def golden(cls):
        """The golden ratio conjugate (sqrt 5 - 1) / 2."""
        return cls(-1, 1, 2, 5)

    @classmethod
    def sqrt2_minus_1(cls):
        return cls(-1, 1, 1, 2)

    def surd(self, p: Fraction, q: Fraction):
        """``(X, Y)`` with ``p + q*alpha = X + Y*sqrt(d)``."""
        return p + q * Fraction(self.a, self.c), q * Fraction(self.b, self.c)

    def __float__(self):
        return (self.a + self.b * math.sqrt(self.d)) / self.c

    def number(self, p=0, q=1) -> "ExactNumber":
        return ExactNumber(Fraction(p), Fraction(q), self)

    def __str__(self):
        return f"({self.a} + {self.b}*sqrt({self.d}))/{self.c}"


@total_ordering
class ExactNumber:
    """``p + q*alpha`` with exact order, addition and floor."""

    __slots__ = ("p", "q", "alpha")

    def __init__(self, p, q, alpha: QuadraticIrrational):
        self.p = Fraction(p)
        self.q = Fraction(q)
        self.alpha = alpha

    # arithmetic -----------------------------------------------------------

    def _check(self, other):
        if isinstance(other, ExactNumber):
            if other.alpha != self.alpha:
                raise ValueError("numbers over different alphas cannot be combined")
            return other
        if isinstance(other, (int, Fraction)):
            return ExactNumber(other, 0, self.alpha)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return ExactNumber(self.p + other.p, self.q + other.q, self.alpha)

    __radd__ = __add__

    def __neg__(self):
        return ExactNumber(-self.p, -self.q, self.alpha)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return ExactNumber(self.p - other.p, self.q - other.q, self.alpha)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        if isinstance(k, (int, Fraction)):
            return ExactNumber(self.p * k, self.q * k, self.alpha)
        return NotImplemented

    __rmul__ = __mul__

    # order ----------------------------------------------------------------

    def sign(self) -> int:
        x, y = self.alpha.surd(self.p, self.q)
        return _sign_surd(x, y, self.alpha.d)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        if not isinstance(other, ExactNumber):
            return NotImplemented
        return self.p == other.p and self.q == other.q and self.alpha == other.alpha

    def __lt__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() < 0

    def __hash__(self):
        return hash((self.p, self.q))

    def floor(self) -> int:
        """Exact floor via an integer square root."""
        x, y = self.alpha.surd(self.p, self.q)
        den = x.denominator * y.denominator // math.gcd(x.denominator, y.denominator)
        n1 = int(x * den)
        n2 = int(y * den)
        if n2 == 0:
            return n1 // den
        s = math.isqrt(n2 * n2 * self.alpha.d)
        if n2 > 0:
            return (n1 + s) // den
        return (n1 - s - 1) // den

    def mod1(self) -> "ExactNumber":
        """Representative in [0, 1)."""
        f = self.floor()
        return self if f == 0 else ExactNumber(self.p - f, self.q, self.alpha)

    def lattice_index(self) -> int | None:
        """``n`` with ``self == n*alpha mod 1`` when ``self`` is reduced, else None."""
        if self.q.denominator != 1:
            return None
        n = int(self.q)
        return n if ExactNumber(0, n, self.alpha).mod1() == self else None

    def __float__(self):
        return float(self.p) + float(self.q) * float(self.alpha)

    def __repr__(self):
        return f"ExactNumber({self.p}, {self.q})"

    def __str__(self):
        parts = []
        if self.p:
            parts.append(str(self.p))
        if self.q:
            parts.append(("" if self.q == 1 else "-" if self.q == -1 else f"{self.q}*") + "alpha")
        return " + ".join(parts).replace("+ -", "- ") or "0"
