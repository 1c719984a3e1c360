"""Exact arithmetic in cyclotomic fields ``Q(ζ_m) = Q[x]/Φ_m(x)``."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy

__all__ = ["CyclotomicScalar", "cyclotomic_polynomial"]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of ``Φ_m``, constant term first."""
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _reduce(coeffs: list[Fraction], m: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    c = list(coeffs)
    for top in range(len(c) - 1, deg - 1, -1):
        lead = c[top]
        if lead:
            shift = top - deg
            for i, p in enumerate(phi):
                c[shift + i] -= lead * p
    c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
    return tuple(Fraction(v) for v in c)


class CyclotomicScalar:
    """An element of ``Q(ζ_m)`` stored by its reduced coefficient vector in ``ζ_m``.

    Values of different conductors are combined in ``Q(ζ_lcm)``.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs=()):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        self.conductor = conductor
        self.coeffs = _reduce([Fraction(c) for c in coeffs], conductor)

    @classmethod
    def rational(cls, q) -> "CyclotomicScalar":
        return cls(1, [Fraction(q)])

    @classmethod
    def root_of_unity(cls, k: int, m: int) -> "CyclotomicScalar":
        """``ζ_m^k``, reduced to the smallest conductor that holds it."""
        k %= m
        g = gcd(k, m)
        m2, k2 = m // g, k // g
        c = [Fraction(0)] * (k2 + 1)
        c[k2] = Fraction(1)
        return cls(m2, c)

    @classmethod
    def coerce(cls, v) -> "CyclotomicScalar":
        return v if isinstance(v, CyclotomicScalar) else cls.rational(v)

    def embed(self, m: int) -> "CyclotomicScalar":
        """Image in ``Q(ζ_m)`` for a multiple ``m`` of the conductor (``ζ_c ↦ ζ_m^{m/c}``)."""
        if m % self.conductor:
            raise ValueError(f"cannot embed conductor {self.conductor} into {m}")
        step = m // self.conductor
        c = [Fraction(0)] * (step * max(len(self.coeffs) - 1, 0) + 1)
        for i, v in enumerate(self.coeffs):
            c[i * step] += v
        return CyclotomicScalar(m, c)

    def _common(self, other) -> tuple["CyclotomicScalar", "CyclotomicScalar", int]:
        other = CyclotomicScalar.coerce(other)
        m = self.conductor * other.conductor // gcd(self.conductor, other.conductor)
        a = self if self.conductor == m else self.embed(m)
        b = other if other.conductor == m else other.embed(m)
        return a, b, m

    def __add__(self, other):
        a, b, m = self._common(other)
        n = max(len(a.coeffs), len(b.coeffs))
        return CyclotomicScalar(m, [(a.coeffs[i] if i < len(a.coeffs) else 0)
                                    + (b.coeffs[i] if i < len(b.coeffs) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicScalar(self.conductor, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-CyclotomicScalar.coerce(other))

    def __rsub__(self, other):
        return CyclotomicScalar.coerce(other) - self

    def __mul__(self, other):
        a, b, m = self._common(other)
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        return CyclotomicScalar(m, prod)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, CyclotomicScalar)):
            return (self - other).is_zero()
        return NotImplemented

    def __hash__(self):
        # Equal values may carry different conductors, so only rationals get a
        # fine-grained hash; everything else shares one bucket.
        q = self.as_rational()
        return hash(q) if q is not None else hash("cyclotomic")

    def as_rational(self) -> Fraction | None:
        """The value as a rational number, if it is one (powers of ζ are a basis)."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __repr__(self) -> str:
        terms = [f"{c}*z^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c]
        return f"Cyc{self.conductor}({' + '.join(terms) or '0'})"
