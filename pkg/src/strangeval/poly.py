"""Dense univariate polynomials and rational functions over Fraction.

``Poly`` stores coefficients by ascending degree with the trailing zeros
trimmed; the zero polynomial has an empty tuple and ``degree is None``
(a sentinel rather than -1, so degree arithmetic cannot silently treat
zero as an ordinary polynomial).  ``RatFunc`` keeps num/den fully reduced
with a monic denominator.  Both are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import InternalInconsistencyError


class Poly:
    """Polynomial in x with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @property
    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly((other,))
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            (self.coefficient(i) + other.coefficient(i) for i in range(n))
        )

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly((-c for c in self.coeffs))

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly((Fraction(other) * c for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dlen = len(other.coeffs)
        lead = other.coeffs[-1]
        if len(rem) < dlen:
            return Poly.zero(), self
        quot = [Fraction(0)] * (len(rem) - dlen + 1)
        for i in range(len(rem) - dlen, -1, -1):
            factor = rem[i + dlen - 1] / lead
            quot[i] = factor
            if factor:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= factor * b
        return Poly(quot), Poly(rem[: dlen - 1])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise InternalInconsistencyError(
                f"inexact polynomial division: {self} by {other}"
            )
        return q

    def derivative(self) -> "Poly":
        return Poly((i * c for i, c in enumerate(self.coeffs) if i))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Poly((c / lead for c in self.coeffs))

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def valuation_at_zero(self) -> int:
        """Multiplicity of the root x = 0 (0 for nonzero constant term)."""
        if self.is_zero():
            raise ValueError("zero polynomial has no finite valuation")
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise AssertionError("unreachable: trimmed polynomial was zero")

    def __call__(self, x):
        """Horner evaluation; works for any ring element x that mixes with
        Fraction (exact inputs stay exact)."""
        out = 0 * x
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def shift_up(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if k < 0:
            raise ValueError("negative shift; use exact_div")
        if self.is_zero() or k == 0:
            return self
        return Poly((Fraction(0),) * k + self.coeffs)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                term = _frac_str(c)
            else:
                xpow = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    term = xpow
                elif c == -1:
                    term = f"-{xpow}"
                else:
                    term = f"{_frac_str(c)}*{xpow}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self})"


ONE_MINUS_X = Poly((1, -1))
X_MINUS_ONE = Poly((-1, 1))


def one_minus_x_valuation(p: Poly) -> int:
    """Multiplicity of the root x = 1."""
    if p.is_zero():
        raise ValueError("zero polynomial has no finite valuation")
    v = 0
    while p(Fraction(1)) == 0:
        p = p.exact_div(ONE_MINUS_X)
        v += 1
    return v


def monomial_split(p: Poly):
    """Write a nonzero ``p`` as unit * x^i * (x-1)^j if possible.

    Returns (i, j, unit) with unit a nonzero Fraction, or None when p has
    any other irreducible factor.
    """
    if p.is_zero():
        return None
    i = p.valuation_at_zero()
    for _ in range(i):
        p = p.exact_div(Poly.x())
    j = 0
    while p(Fraction(1)) == 0:
        p = p.exact_div(X_MINUS_ONE)
        j += 1
    if p.degree != 0:
        return None
    return i, j, p.coeffs[0]


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class RatFunc:
    """Quotient of two polynomials, reduced, with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly((num,)) if not isinstance(num, (tuple, list)) else Poly(num)
        if den is None:
            den = Poly.one()
        elif not isinstance(den, Poly):
            den = Poly((den,)) if not isinstance(den, (tuple, list)) else Poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly.zero(), Poly.one()
            return
        g = num.gcd(den)
        if g.degree:
            num, den = num.exact_div(g), den.exact_div(g)
        lead = den.leading_coefficient()
        if lead != 1:
            num = num * (1 / lead)
            den = den * (1 / lead)
        self.num, self.den = num, den

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls(Poly.zero())

    @classmethod
    def one(cls) -> "RatFunc":
        return cls(Poly.one())

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_poly():
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other if isinstance(other, Poly) else Poly((other,)))
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatFunc", self.num.coeffs, self.den.coeffs))

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc(Poly((other,)))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def derivative(self) -> "RatFunc":
        """Quotient rule: (n/d)' = (n'd - nd')/d^2."""
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"
