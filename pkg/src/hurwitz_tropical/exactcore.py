"""Exact scalars, Bernoulli numbers, the c-coefficients of 1/(2 sinh(z/2)),
and truncated power series over the rationals.

Rationals are :class:`fractions.Fraction`; nothing in this package touches
floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping

Rational = Fraction

__all__ = [
    "Rational",
    "format_rational",
    "parse_rational",
    "bernoulli",
    "c_coeff",
    "Series",
    "varsigma_series",
    "S_series",
    "series_arith",
    "Poly",
]


def format_rational(x: Fraction | int) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """B_k with t/(e^t - 1) = sum B_k t^k / k!, so B_1 = -1/2.

    Uses sum_{j=0}^{k} C(k+1, j) B_j = 0 for k >= 1.
    """
    if k < 0:
        raise ValueError("bernoulli index must be >= 0")
    if k == 0:
        return Fraction(1)
    if k >= 3 and k % 2 == 1:
        return Fraction(0)
    s = sum((comb(k + 1, j) * bernoulli(j) for j in range(k)), Fraction(0))
    return -s / (k + 1)


@lru_cache(maxsize=None)
def c_coeff(l: int) -> Fraction:
    """Coefficient of z^l in 1/(2 sinh(z/2)), for odd l >= -1.

    c_{-1} = 1 and c_{2m-1} = -((2^{2m-1} - 1) / 2^{2m-1}) B_{2m} / (2m)!.
    Even indices do not exist; callers treat them as zero.
    """
    if l % 2 == 0:
        raise ValueError(f"c-coefficients only exist for odd indices, got {l}")
    if l < -1:
        raise ValueError(f"c-coefficient index must be >= -1, got {l}")
    if l == -1:
        return Fraction(1)
    m = (l + 1) // 2
    p = 2 ** (2 * m - 1)
    return -Fraction(p - 1, p) * bernoulli(2 * m) / factorial(2 * m)


class Series:
    """Truncated power series sum_{k=0}^{order} a_k z^k with exact coefficients.

    Immutable. Every binary operation takes the minimum of the operands'
    orders unless a smaller target order is given.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int], order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("series order must be >= 0")
        cs = cs[: order + 1]
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self._coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        if k > self.order:
            raise IndexError(f"coefficient {k} is beyond truncation order {self.order}")
        return self._coeffs[k]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        terms = [f"{format_rational(c)}*z^{k}" for k, c in enumerate(self._coeffs) if c]
        return f"Series({' + '.join(terms) or '0'}; O(z^{self.order + 1}))"

    def truncate(self, order: int) -> Series:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return Series(self._coeffs, order)

    def scale_argument(self, x: int | Fraction) -> Series:
        """The series f(x z)."""
        x = Fraction(x)
        return Series((c * x**k for k, c in enumerate(self._coeffs)), self.order)

    def __add__(self, other: Series) -> Series:
        n = min(self.order, other.order)
        return Series((self._coeffs[k] + other._coeffs[k] for k in range(n + 1)), n)

    def __sub__(self, other: Series) -> Series:
        n = min(self.order, other.order)
        return Series((self._coeffs[k] - other._coeffs[k] for k in range(n + 1)), n)

    def __neg__(self) -> Series:
        return Series((-c for c in self._coeffs), self.order)

    def mul(self, other: Series, order: int | None = None) -> Series:
        n = min(self.order, other.order)
        if order is not None:
            n = min(n, order)
        a, b = self._coeffs, other._coeffs
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            if a[i]:
                ai = a[i]
                for j in range(n + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return Series(out, n)

    __mul__ = mul

    def inverse(self, order: int | None = None) -> Series:
        a = self._coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        n = self.order if order is None else min(order, self.order)
        b = [Fraction(0)] * (n + 1)
        b[0] = 1 / a[0]
        for k in range(1, n + 1):
            s = sum((a[j] * b[k - j] for j in range(1, k + 1) if a[j]), Fraction(0))
            b[k] = -s * b[0]
        return Series(b, n)

    def __truediv__(self, other: Series) -> Series:
        return self.mul(other.inverse())


@lru_cache(maxsize=None)
def varsigma_series(order: int) -> Series:
    """2 sinh(z/2) = sum_k z^{2k+1} / (2^{2k} (2k+1)!) up to z^order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    cs = [Fraction(0)] * (order + 1)
    for n in range(1, order + 1, 2):
        cs[n] = Fraction(1, 2 ** (n - 1) * factorial(n))
    return Series(cs, order)


@lru_cache(maxsize=None)
def S_series(order: int) -> Series:
    """S(z) = 2 sinh(z/2) / z up to z^order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return Series(varsigma_series(order + 1).coefficients[1:], order)


def series_arith(a: Series, b: Series, op: str, order: int) -> Series:
    """Truncated ring operation ``op`` in {"add", "mul", "div"} at the given order."""
    if order > min(a.order, b.order):
        raise ValueError(f"operands only known to order {min(a.order, b.order)}")
    a, b = a.truncate(order), b.truncate(order)
    if op == "add":
        return a + b
    if op == "mul":
        return a.mul(b)
    if op == "div":
        return a.mul(b.inverse())
    raise ValueError(f"unknown series operation {op!r}")


class Poly:
    """Finite polynomial in one variable u with exact coefficients (sparse)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Fraction | int] | None = None):
        self._terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, c: Fraction | int) -> Poly:
        return cls({0: c})

    @classmethod
    def monomial(cls, c: Fraction | int, power: int) -> Poly:
        return cls({power: c})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def coefficient(self, k: int) -> Fraction:
        return self._terms.get(k, Fraction(0))

    def degrees(self) -> list[int]:
        return sorted(self._terms)

    def at_one(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def truncate(self, max_degree: int) -> Poly:
        return Poly({k: v for k, v in self._terms.items() if k <= max_degree})

    def __add__(self, other: Poly) -> Poly:
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return Poly(out)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __neg__(self) -> Poly:
        return Poly({k: -v for k, v in self._terms.items()})

    def __mul__(self, other: Poly | Fraction | int) -> Poly:
        if not isinstance(other, Poly):
            return Poly({k: v * other for k, v in self._terms.items()})
        out: dict[int, Fraction] = {}
        for i, a in self._terms.items():
            for j, b in other._terms.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{format_rational(self._terms[k])}*u^{k}" for k in sorted(self._terms))

    def to_json(self) -> dict[str, str]:
        return {str(k): format_rational(self._terms[k]) for k in sorted(self._terms)}
