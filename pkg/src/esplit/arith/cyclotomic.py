"""Exact elements of cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of
Q[z]/(Phi_n(z)) with rational coefficients, so equality is coefficient
equality once both sides live in the same field.  Mixed-conductor
arithmetic lifts both operands to the lcm of the conductors.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first), den monic."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        coef = num[i + len(den) - 1]
        out[i] = coef
        if coef:
            for j, dj in enumerate(den):
                num[i + j] -= coef * dj
    assert not any(num[: len(den) - 1]), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def eval_cyclotomic_polynomial(n: int, x: int) -> int:
    return sum(c * x**i for i, c in enumerate(cyclotomic_polynomial(n)))


@lru_cache(maxsize=None)
def _power_row(k: int, n: int) -> tuple[Fraction, ...]:
    """Coefficients of z^k mod Phi_n, for 0 <= k < n."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    if k < deg:
        row = [Fraction(0)] * deg
        row[k] = Fraction(1)
        return tuple(row)
    prev = _power_row(k - 1, n)
    top = prev[-1]
    cur = [Fraction(0)] + list(prev[:-1])
    if top:
        for j in range(deg):
            cur[j] -= top * phi[j]
    return tuple(cur)


def _reduce(poly: Sequence[Fraction], n: int) -> tuple[Fraction, ...]:
    deg = euler_phi(n)
    out = [Fraction(0)] * deg
    for k, c in enumerate(poly):
        if not c:
            continue
        if k < deg:
            out[k] += c
        else:
            for j, t in enumerate(_power_row(k % n, n)):
                if t:
                    out[j] += c * t
    return tuple(out)


Scalar = Union[int, Fraction, "Cyclotomic"]


class Cyclotomic:
    """An element of Q(zeta_n)."""

    __slots__ = ("n", "c")

    def __init__(self, coeffs: Iterable, n: int = 1):
        if n < 1:
            raise ValueError("conductor must be positive")
        self.n = n
        self.c = _reduce([Fraction(x) for x in coeffs], n)

    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...], n: int) -> "Cyclotomic":
        obj = cls.__new__(cls)
        obj.n = n
        obj.c = coeffs
        return obj

    @classmethod
    def rational(cls, x, n: int = 1) -> "Cyclotomic":
        coeffs = [Fraction(0)] * euler_phi(n)
        coeffs[0] = Fraction(x)
        return cls._raw(tuple(coeffs), n)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        """zeta_n ** k with zeta_n = exp(2 pi i / n)."""
        k %= n
        return cls._raw(_power_row(k, n), n)

    # -- structure -------------------------------------------------------
    def lift(self, m: int) -> "Cyclotomic":
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"Q(zeta_{self.n}) does not embed in Q(zeta_{m})")
        step = m // self.n
        poly = [Fraction(0)] * (step * (len(self.c) - 1) + 1)
        for i, x in enumerate(self.c):
            poly[i * step] = x
        return Cyclotomic._raw(_reduce(poly, m), m)

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.c[0]

    def normalized_trace(self) -> Fraction:
        """Tr_{Q(zeta_n)/Q}(self) / phi(n); independent of the chosen conductor."""
        total = Fraction(0)
        for k, x in enumerate(self.c):
            if x:
                g = gcd(k, self.n)
                m = self.n // g
                total += x * Fraction(mobius(m), euler_phi(m))
        return total

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other, self.n)
        if other.n == self.n:
            return self, other
        m = _lcm(self.n, other.n)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            c = list(self.c)
            c[0] += other
            return Cyclotomic._raw(tuple(c), self.n)
        a, b = self._coerce(other)
        return Cyclotomic._raw(tuple(x + y for x, y in zip(a.c, b.c)), a.n)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(tuple(-x for x in self.c), self.n)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw(tuple(x * other for x in self.c), self.n)
        a, b = self._coerce(other)
        if a.is_rational():
            return b * a.c[0]
        if b.is_rational():
            return a * b.c[0]
        prod = [Fraction(0)] * (len(a.c) + len(b.c) - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic._raw(_reduce(prod, a.n), a.n)

    __rmul__ = __mul__

    def _mult_matrix(self) -> list[list[Fraction]]:
        deg = len(self.c)
        cols = []
        for k in range(deg):
            basis = Cyclotomic._raw(_power_row(k, self.n), self.n)
            cols.append((self * basis).c)
        return [[cols[j][i] for j in range(deg)] for i in range(deg)]

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.c[0], self.n)
        m = self._mult_matrix()
        deg = len(m)
        rhs = [Fraction(1)] + [Fraction(0)] * (deg - 1)
        aug = [row[:] + [rhs[i]] for i, row in enumerate(m)]
        for col in range(deg):
            piv = next(r for r in range(col, deg) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(deg):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return Cyclotomic._raw(tuple(aug[i][deg] for i in range(deg)), self.n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._coerce(other)
        return a.c == b.c

    def __hash__(self):
        return hash(self.normalized_trace())

    def __bool__(self):
        return not self.is_zero()

    # -- roots of unity --------------------------------------------------
    def root_of_unity_index(self) -> tuple[int, int] | None:
        """Return (k, m) with self == zeta_m ** k and gcd(k, m) == 1, else None."""
        big = self.n if self.n % 2 == 0 else 2 * self.n
        for m in divisors(big):
            for k in range(m):
                if gcd(k, m) == 1 and Cyclotomic.zeta(m, k) == self:
                    return k, m
        return None

    def __repr__(self):
        if self.is_rational():
            return f"Cyclotomic({self.c[0]})"
        terms = []
        for k, x in enumerate(self.c):
            if x:
                terms.append(f"{x}" if k == 0 else f"{x}*z{self.n}^{k}")
        return "Cyclotomic(" + " + ".join(terms) + ")"

    def __str__(self):
        if self.is_rational():
            return str(self.c[0])
        idx = self.root_of_unity_index()
        if idx is not None:
            k, m = idx
            return f"E({m})" if k == 1 else f"E({m})^{k}"
        return " + ".join(
            f"{x}" if k == 0 else f"{x}*E({self.n})^{k}" for k, x in enumerate(self.c) if x
        )


def as_cyclotomic(x: Scalar, n: int = 1) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x.lift(_lcm(x.n, n))
    return Cyclotomic.rational(x, n)
