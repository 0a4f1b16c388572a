"""ell-adic valuations of integers and of q^d - eps with eps a root of unity.

A root of unity eps of order m | ell - 1 is realised in Z_ell by its
Teichmueller lift.  The embedding Q(zeta_m) -> Z_ell is fixed once per
(q, ell) by a primitive root g mod ell with g^((ell-1)/e) = q (mod ell), so
that zeta_e goes to the Teichmueller lift of q.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .cyclotomic import Cyclotomic, eval_cyclotomic_polynomial


class NotRealizableError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power_base(q: int) -> int | None:
    """p if q = p^k with k >= 1, else None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return p if q == 1 else None


def nu_ell(n: int | Fraction, ell: int) -> int:
    """Largest k with ell^k | n (a negative result for fractions with ell in the denominator)."""
    if isinstance(n, Fraction):
        return nu_ell(n.numerator, ell) - nu_ell(n.denominator, ell)
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    k = 0
    while n % ell == 0:
        n //= ell
        k += 1
    return k


def multiplicative_order(a: int, m: int) -> int:
    a %= m
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    k, x = 1, a
    while x != 1 % m:
        x = x * a % m
        k += 1
    return k


@dataclass(frozen=True)
class ZetaSpec:
    """The root of unity zeta in Z_ell attached to (q, ell)."""

    ell: int
    q: int
    e: int
    residue: int
    as_cyclotomic: Cyclotomic = field(compare=False)
    generator: int = 1          # primitive root mod ell fixing Q(zeta_m) -> Z_ell
    tainted: bool = False       # e forced by an override instead of derived from q

    def residue_of(self, k: int, m: int) -> int:
        """Residue mod ell of the Teichmueller image of zeta_m^k."""
        if self.ell == 2:
            if m not in (1, 2):
                raise NotRealizableError("epsilon not realizable in Z_ell")
            return 1
        if (self.ell - 1) % m:
            raise NotRealizableError("epsilon not realizable in Z_ell")
        return pow(self.generator, (self.ell - 1) // m * k, self.ell)


def choose_zeta(q: int, ell: int, zeta_order: int | None = None) -> ZetaSpec:
    """e = order of q mod ell (mod 4 when ell = 2) and the matching zeta."""
    if not is_prime(ell):
        raise ValueError(f"ell={ell} is not prime")
    if q % ell == 0:
        raise ValueError(f"ell={ell} divides q={q}")
    if ell == 2:
        if q % 2 == 0:
            raise ValueError("ell divides q")
        e = 1 if q % 4 == 1 else 2
        if zeta_order is not None and zeta_order not in (1, 2):
            raise ValueError("for ell = 2 only zeta = +1 or -1 is supported")
        if zeta_order is not None:
            e = zeta_order
        zeta = Cyclotomic.rational(1 if e == 1 else -1)
        return ZetaSpec(ell, q, e, 1, zeta, 1, tainted=zeta_order is not None)
    residue = q % ell
    e = multiplicative_order(residue, ell)
    tainted = False
    if zeta_order is not None and zeta_order != e:
        if (ell - 1) % zeta_order:
            raise ValueError("zeta order must divide ell - 1")
        e, tainted = zeta_order, True
    gen = None
    for g in range(2, ell):
        if multiplicative_order(g, ell) != ell - 1:
            continue
        if tainted or pow(g, (ell - 1) // e, ell) == residue:
            gen = g
            break
    if tainted:
        residue = pow(gen, (ell - 1) // e, ell)
    zeta = Cyclotomic.zeta(e) if e > 2 else Cyclotomic.rational(1 if e == 1 else -1)
    return ZetaSpec(ell, q, e, residue, zeta, gen, tainted)


def nu_ell_factor(d: int, eps: Cyclotomic, zeta_ctx: ZetaSpec) -> int:
    """nu_ell(q^d - eps) in Z_ell, eps a root of unity realised via zeta_ctx."""
    ell, q = zeta_ctx.ell, zeta_ctx.q
    idx = eps.root_of_unity_index()
    if idx is None:
        raise NotRealizableError("epsilon is not a root of unity")
    k, m = idx
    if ell == 2:
        if m not in (1, 2):
            raise NotRealizableError("epsilon not realizable in Z_ell")
        return nu_ell(q**d - (1 if m == 1 else -1), 2)
    res = zeta_ctx.residue_of(k, m)
    if pow(q, d, ell) != res:
        return 0
    # q^d = eps * u with u a principal unit, and nu(u - 1) = nu(u^(ell-1) - 1)
    return nu_ell(q ** (d * (ell - 1)) - 1, ell)


@dataclass(frozen=True)
class FactoredOrderPoly:
    """x^x_power * scalar * prod (x^d - eps) over the factors."""

    x_power: int
    factors: tuple[tuple[int, Cyclotomic], ...]
    scalar: Cyclotomic

    @property
    def degree(self) -> int:
        return self.x_power + sum(d for d, _ in self.factors)

    def __str__(self) -> str:
        parts = [] if self.x_power == 0 else ["x" if self.x_power == 1 else f"x^{self.x_power}"]
        for d, eps in self.factors:
            xd = "x" if d == 1 else f"x^{d}"
            if eps == 1:
                parts.append(f"({xd}-1)")
            elif eps == -1:
                parts.append(f"({xd}+1)")
            else:
                parts.append(f"({xd}-{eps})")
        body = "".join(parts) or "1"
        return body if self.scalar == 1 else f"{self.scalar}*{body}"

    def evaluate(self, x) -> Cyclotomic:
        value = self.scalar * (x ** self.x_power)
        for d, eps in self.factors:
            value = value * (eps * -1 + x**d)
        return value


def eval_order_poly_valuation(p: FactoredOrderPoly, zeta_ctx: ZetaSpec) -> int:
    # the x-power and the unit scalar have valuation zero since ell does not divide q
    return sum(nu_ell_factor(d, eps, zeta_ctx) for d, eps in p.factors)


def nu_cyclotomic_value(m: int, q: int, ell: int) -> int:
    """nu_ell(Phi_m(q)) by literal evaluation."""
    return nu_ell(eval_cyclotomic_polynomial(m, q), ell)
