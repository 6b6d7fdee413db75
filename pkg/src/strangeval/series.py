"""Truncated power series in x over Fraction, plus x^mu (1-x)^nu carriers.

A ``TruncatedSeries`` of order N stores coefficients c_0..c_N and nothing
else: arithmetic never reads or invents coefficients past the order, and
every operation reports the honest order of its result (shifting by x^k
raises it, differentiation lowers it, binary operations take the minimum).

``GenSeries`` wraps a series with a prefactor x^mu (1-x)^nu carrying exact
rational exponents, which is how objects like x^(1-c) (1-x)^(c-a-1) enter
operator computations without leaving exact arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import InternalInconsistencyError
from .poly import Poly


class TruncatedSeries:
    """Power series known exactly through x^order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("series order must be >= 0")
        if len(cs) < order + 1:
            cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        elif len(cs) > order + 1:
            del cs[order + 1 :]
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((1,), order)

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "TruncatedSeries":
        return cls(p.coeffs, order)

    def coefficient(self, i: int) -> Fraction:
        if not 0 <= i <= self.order:
            raise IndexError(f"coefficient {i} beyond truncation order {self.order}")
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        if order == self.order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            (self.coeffs[i] + other.coeffs[i] for i in range(n + 1)), n
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries((-c for c in self.coeffs), self.order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            (self.coeffs[i] - other.coeffs[i] for i in range(n + 1)), n
        )

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def scale(self, s) -> "TruncatedSeries":
        s = Fraction(s)
        return TruncatedSeries((s * c for c in self.coeffs), self.order)

    def mul_poly(self, p: Poly) -> "TruncatedSeries":
        """Multiply by an exact polynomial.

        The result is known through order + v where v is p's valuation at
        zero (a polynomial with p(0) != 0 contributes full knowledge at
        every order; a factor x^v shifts knowledge up by v).
        """
        if p.is_zero():
            return TruncatedSeries.zero(self.order)
        v = p.valuation_at_zero()
        n = self.order + v
        out = [Fraction(0)] * (n + 1)
        for k, pc in enumerate(p.coeffs):
            if pc:
                for i, c in enumerate(self.coeffs):
                    if c and k + i <= n:
                        out[k + i] += pc * c
        return TruncatedSeries(out, n)

    def shift_up(self, k: int) -> "TruncatedSeries":
        """Multiply by x^k; knowledge extends to order + k."""
        if k < 0:
            raise ValueError("negative shift; use shift_down")
        if k == 0:
            return self
        return TruncatedSeries((Fraction(0),) * k + self.coeffs, self.order + k)

    def shift_down(self, k: int) -> "TruncatedSeries":
        """Divide by x^k; requires the low k coefficients to vanish."""
        if k == 0:
            return self
        if k > self.order:
            raise ValueError("shift below constant term")
        if any(self.coeffs[i] != 0 for i in range(k)):
            raise InternalInconsistencyError("series not divisible by x^k")
        return TruncatedSeries(self.coeffs[k:], self.order - k)

    def derivative(self) -> "TruncatedSeries":
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 series")
        return TruncatedSeries(
            (i * self.coeffs[i] for i in range(1, self.order + 1)), self.order - 1
        )

    def matches(self, other: "TruncatedSeries", through: int | None = None) -> bool:
        """Coefficientwise equality through min(orders, through)."""
        n = min(self.order, other.order)
        if through is not None:
            n = min(n, through)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("TruncatedSeries", self.order, self.coeffs))

    def __str__(self) -> str:
        head = str(Poly(self.coeffs[: min(self.order, 6) + 1]))
        return f"{head} + O(x^{self.order + 1})"

    def __repr__(self) -> str:
        return f"TruncatedSeries({self})"


def binomial_series(alpha, order: int) -> TruncatedSeries:
    """Expansion of (1-x)^alpha: c_0 = 1, c_{n+1} = c_n (n - alpha)/(n + 1)."""
    alpha = Fraction(alpha)
    coeffs = [Fraction(1)]
    for n in range(order):
        coeffs.append(coeffs[-1] * (n - alpha) / (n + 1))
    return TruncatedSeries(coeffs, order)


class GenSeries:
    """x^mu (1-x)^nu times a truncated series, exponents exact rationals.

    The canonical form pulls every factor of x out of the body, so a
    normalized nonzero body has nonzero constant coefficient and equal
    values have identical normal forms (up to truncation order).  The
    body's constant term may be zero only transiently, between operations.
    """

    __slots__ = ("mu", "nu", "body")

    def __init__(self, mu, nu, body: TruncatedSeries):
        self.mu = Fraction(mu)
        self.nu = Fraction(nu)
        self.body = body

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def normalized(self) -> "GenSeries":
        if self.is_zero():
            return GenSeries(0, 0, self.body)
        v = 0
        while self.body.coeffs[v] == 0:
            v += 1
        if v == 0:
            return self
        return GenSeries(self.mu + v, self.nu, self.body.shift_down(v))

    def scale(self, s) -> "GenSeries":
        return GenSeries(self.mu, self.nu, self.body.scale(s))

    def mul_poly(self, p: Poly) -> "GenSeries":
        return GenSeries(self.mu, self.nu, self.body.mul_poly(p))

    def mul_xpow(self, s) -> "GenSeries":
        return GenSeries(self.mu + Fraction(s), self.nu, self.body)

    def mul_one_minus_x_pow(self, t) -> "GenSeries":
        return GenSeries(self.mu, self.nu + Fraction(t), self.body)

    def deriv(self) -> "GenSeries":
        """d/dx of x^mu (1-x)^nu f = x^(mu-1) (1-x)^(nu-1) *
        [mu (1-x) f - nu x f + x (1-x) f']."""
        f = self.body
        bracket = f.mul_poly(Poly((1, -1))).scale(self.mu)
        bracket = bracket + f.shift_up(1).scale(-self.nu)
        if f.order >= 1:
            bracket = bracket + f.derivative().mul_poly(Poly((0, 1, -1)))
        return GenSeries(self.mu - 1, self.nu - 1, bracket)

    def __add__(self, other: "GenSeries") -> "GenSeries":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        dmu = self.mu - other.mu
        dnu = self.nu - other.nu
        if dmu.denominator != 1 or dnu.denominator != 1:
            raise InternalInconsistencyError(
                "cannot add generalized series with non-integer exponent gap"
            )
        mu, nu = min(self.mu, other.mu), min(self.nu, other.nu)
        a = self.body.shift_up(int(self.mu - mu))
        b = other.body.shift_up(int(other.mu - mu))
        if self.nu != nu:
            a = a.mul_poly(Poly((1, -1)) ** int(self.nu - nu))
        if other.nu != nu:
            b = b.mul_poly(Poly((1, -1)) ** int(other.nu - nu))
        return GenSeries(mu, nu, a + b)

    def __sub__(self, other: "GenSeries") -> "GenSeries":
        return self + other.scale(-1)

    def matches(self, other: "GenSeries", through: int | None = None) -> bool:
        """Equality of values through the common truncation order.

        Normalization fixes mu; an integer gap in nu is absorbed by
        multiplying the higher-nu body with the matching (1-x) power.
        """
        a, b = self.normalized(), other.normalized()
        if a.is_zero() or b.is_zero():
            return a.is_zero() and b.is_zero()
        if a.mu != b.mu:
            return False
        dnu = a.nu - b.nu
        if dnu.denominator != 1:
            return False
        if dnu > 0:
            a = GenSeries(a.mu, b.nu, a.body.mul_poly(Poly((1, -1)) ** int(dnu)))
        elif dnu < 0:
            b = GenSeries(b.mu, a.nu, b.body.mul_poly(Poly((1, -1)) ** int(-dnu)))
        return a.body.matches(b.body, through)

    def __str__(self) -> str:
        return f"x^({self.mu}) * (1-x)^({self.nu}) * [{self.body}]"

    def __repr__(self) -> str:
        return f"GenSeries({self})"
