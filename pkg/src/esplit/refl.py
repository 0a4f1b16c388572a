"""Finite reflection groups W on Z^r with a normalising twist phi.

Matrices act on column vectors written in the lattice basis and are stored
as tuples of integer tuples.  Group elements are kept in lexicographic
order of their entries, and subgroups are sorted tuples of element indices.
"""
from __future__ import annotations

import logging
from collections import deque
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .arith import (
    Cyclotomic,
    FactoredOrderPoly,
    SubspaceCF,
    apply_matrix,
)

log = logging.getLogger(__name__)

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_ORDER_CAP = 10**5


class GroupTooLargeError(RuntimeError):
    pass


class NotAReflectionCosetError(RuntimeError):
    pass


# -- small matrix helpers -----------------------------------------------------

def mat(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(r: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def det(a: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return result


def matrix_rank(a: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in row] for row in a]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def matrix_order(a: Matrix, cap: int = 10**4) -> int:
    one = identity(len(a))
    x, k = a, 1
    while x != one:
        x = matmul(x, a)
        k += 1
        if k > cap:
            raise GroupTooLargeError("matrix of infinite or excessive order")
    return k


def char_poly_one_minus_t(a: Matrix) -> list[Fraction]:
    """Coefficients of det(1 - t a), lowest degree first (Faddeev-LeVerrier)."""
    n = len(a)
    if n == 0:
        return [Fraction(1)]
    A = [[Fraction(x) for x in row] for row in a]
    # det(x - A) = x^n + c_{n-1} x^{n-1} + ... + c_0
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        AM = [[sum(A[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        M = [[AM[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        AM = [[sum(A[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) / k
    # det(1 - tA) = t^n det(1/t - A): reverse
    return [coeffs[n - i] for i in range(n + 1)]


# -- Cartan data --------------------------------------------------------------

CARTAN = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "B2": [[2, -1], [-2, 2]],
    "B3": [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
    "G2": [[2, -1], [-3, 2]],
}


def simple_reflections(cartan: Sequence[Sequence[int]]) -> list[Matrix]:
    """s_i(alpha_j) = alpha_j - a_ij alpha_i on the root lattice."""
    r = len(cartan)
    gens = []
    for i in range(r):
        cols = []
        for j in range(r):
            col = [int(k == j) for k in range(r)]
            col[i] -= cartan[i][j]
            cols.append(col)
        gens.append(mat(zip(*cols)))
    return gens


def named_twist(cartan_type: str, twist: str) -> Matrix:
    r = len(CARTAN[cartan_type])
    if twist in ("id", "identity", "1"):
        return identity(r)
    if twist in ("minus", "-1"):
        return tuple(tuple(-int(i == j) for j in range(r)) for i in range(r))
    if twist == "graph":
        if not cartan_type.startswith("A"):
            raise ValueError(f"no rational graph twist for type {cartan_type}")
        return tuple(tuple(int(i == r - 1 - j) for j in range(r)) for i in range(r))
    raise ValueError(f"unknown twist {twist!r}")


# -- group generation ---------------------------------------------------------

def generate_group(generators: Sequence[Matrix], cap: int = DEFAULT_ORDER_CAP,
                   rank: int | None = None) -> list[Matrix]:
    """Breadth-first closure, returned in lexicographic order of entries."""
    if rank is None:
        if not generators:
            raise ValueError("rank required for an empty generating set")
        rank = len(generators[0])
    for g in generators:
        if len(g) != rank or det(g) == 0:
            raise ValueError("generators must be invertible r x r matrices")
    one = identity(rank)
    seen = {one}
    queue = deque([one])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = matmul(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise GroupTooLargeError("group too large or infinite")
                queue.append(y)
    return sorted(seen, key=lambda m: tuple(x for row in m for x in row))


def _power_series_inverse(p: Sequence, deg: int, zero, one) -> list:
    out = [zero] * (deg + 1)
    out[0] = one  # p[0] == 1
    for k in range(1, deg + 1):
        acc = zero
        for i in range(1, min(k, len(p) - 1) + 1):
            if p[i]:
                acc = acc + p[i] * out[k - i]
        out[k] = -acc
    return out


def generalized_degrees(elements: Sequence[Matrix], twist: Matrix, n_reflections: int
                        ) -> list[tuple[int, Cyclotomic]]:
    """Generalized degrees (d_i, eps_i) of the coset (elements) * twist.

    For each power twist^k the twisted Molien series
    (1/|W|) sum_w 1/det(1 - t w twist^k) equals prod_i 1/(1 - eps_i^k t^d_i).
    Factors are extracted degree by degree: after dividing out the lower
    degrees, the t^d coefficient of the k-th series is the power sum
    sum_{d_i = d} eps_i^k, and the eps_i of degree d are recovered by a
    discrete Fourier transform over the m-th roots of unity, m = ord(twist).
    """
    r = len(twist)
    if r == 0:
        return []
    m = matrix_order(twist)
    top = n_reflections + r
    zero, one = Cyclotomic.rational(0, m), Cyclotomic.rational(1, m)
    series = []
    tw_k = identity(r)
    for k in range(m):
        acc = [Fraction(0)] * (top + 1)
        cache: dict[tuple, list[Fraction]] = {}
        for w in elements:
            poly = tuple(char_poly_one_minus_t(matmul(w, tw_k)))
            inv = cache.get(poly)
            if inv is None:
                inv = _power_series_inverse(poly, top, Fraction(0), Fraction(1))
                cache[poly] = inv
            acc = [x + y for x, y in zip(acc, inv)]
        series.append([Cyclotomic.rational(x / len(elements), m) for x in acc])
        tw_k = matmul(tw_k, twist)

    found: list[tuple[int, Cyclotomic]] = []
    roots = [Cyclotomic.zeta(m, j) for j in range(m)]
    for d in range(1, top + 1):
        sums = [series[k][d] for k in range(m)]
        count = sums[0]
        if count == 0:
            if any(s != 0 for s in sums):
                raise NotAReflectionCosetError("not a reflection coset")
            continue
        for j in range(m):
            mult = zero
            for k in range(m):
                mult = mult + sums[k] * roots[(-j * k) % m]
            mult = mult / m
            if not mult.is_rational() or mult.to_fraction().denominator != 1 or mult.to_fraction() < 0:
                raise NotAReflectionCosetError("not a reflection coset")
            for _ in range(int(mult.to_fraction())):
                found.append((d, roots[j] if m > 1 else one))
                for k in range(m):
                    # multiply series k by (1 - eps^k t^d)
                    eps_k = roots[(j * k) % m]
                    s = series[k]
                    series[k] = [s[i] - (eps_k * s[i - d] if i >= d else zero) for i in range(top + 1)]
    if len(found) != r or any(series[k][i] != 0 for k in range(m) for i in range(1, top + 1)):
        raise NotAReflectionCosetError("not a reflection coset")
    # eps lives in the smallest natural field: rationals when possible
    return [(d, Cyclotomic.rational(eps.to_fraction()) if eps.is_rational() else eps)
            for d, eps in found]


class ReflectionCoset:
    """The coset W phi of a finite reflection group W <= GL_r(Z)."""

    def __init__(self, generators: Sequence[Matrix], twist: Matrix | None = None,
                 rank: int | None = None, name: str = "custom",
                 cap: int = DEFAULT_ORDER_CAP):
        generators = [mat(g) for g in generators]
        if rank is None:
            if generators:
                rank = len(generators[0])
            elif twist is not None:
                rank = len(twist)
            else:
                raise ValueError("rank required")
        self.rank = rank
        self.name = name
        self.generators = generators
        self.phi = mat(twist) if twist is not None else identity(rank)
        if len(self.phi) != rank or det(self.phi) == 0:
            raise ValueError("twist must be an invertible r x r matrix")
        self.elements: list[Matrix] = generate_group(generators, cap=cap, rank=rank)
        self.index: dict[Matrix, int] = {g: i for i, g in enumerate(self.elements)}
        self.identity = self.index[identity(rank)]
        self.phi_order = matrix_order(self.phi)
        self.phi_inv = self._power(self.phi, self.phi_order - 1)
        for g in generators:
            if matmul(matmul(self.phi, g), self.phi_inv) not in self.index:
                raise ValueError("twist does not normalise W")

    @classmethod
    def from_type(cls, cartan_type: str, twist: str = "id") -> "ReflectionCoset":
        if cartan_type not in CARTAN:
            raise ValueError(f"unknown Cartan type {cartan_type!r}; known: {sorted(CARTAN)}")
        gens = simple_reflections(CARTAN[cartan_type])
        phi = named_twist(cartan_type, twist)
        label = cartan_type if twist in ("id", "identity", "1") else f"{twist}:{cartan_type}"
        if twist == "graph":
            label = "2" + cartan_type
        return cls(gens, phi, name=label)

    @classmethod
    def trivial(cls, rank: int, twist: Matrix | None = None) -> "ReflectionCoset":
        return cls([], twist, rank=rank, name=f"T{rank}")

    @staticmethod
    def _power(a: Matrix, k: int) -> Matrix:
        out = identity(len(a))
        for _ in range(k):
            out = matmul(out, a)
        return out

    # -- group structure ---------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _table(self) -> list[list[int]]:
        return [[self.index[matmul(a, b)] for b in self.elements] for a in self.elements]

    def mul(self, i: int, j: int) -> int:
        return self._table[i][j]

    @cached_property
    def _inverses(self) -> list[int]:
        inv = [0] * self.order
        for i in range(self.order):
            row = self._table[i]
            inv[i] = row.index(self.identity)
        return inv

    def inv(self, i: int) -> int:
        return self._inverses[i]

    def conj(self, u: int, i: int) -> int:
        """u w_i u^-1."""
        return self.mul(self.mul(u, i), self.inv(u))

    @cached_property
    def _phi_conj(self) -> list[int]:
        return [self.index[matmul(matmul(self.phi, w), self.phi_inv)] for w in self.elements]

    def phi_conj(self, i: int) -> int:
        """phi w_i phi^-1."""
        return self._phi_conj[i]

    @cached_property
    def _phi_conj_inv(self) -> list[int]:
        out = [0] * self.order
        for i, j in enumerate(self._phi_conj):
            out[j] = i
        return out

    def coset_conj(self, u: int, i: int) -> int:
        """Index of the W-part of u (w_i phi) u^-1 = (u w_i phi u^-1 phi^-1) phi."""
        return self.mul(self.mul(u, i), self.phi_conj(self.inv(u)))

    def coset_matrix(self, i: int) -> Matrix:
        return matmul(self.elements[i], self.phi)

    def generated_by(self, gens: Iterable[int]) -> tuple[int, ...]:
        seen = {self.identity}
        queue = deque([self.identity])
        gens = list(gens)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    def conjugacy_classes(self, subgroup: Sequence[int] | None = None) -> list[tuple[int, ...]]:
        """Classes of a subgroup (default W) under its own conjugation, by least representative."""
        elems = list(subgroup) if subgroup is not None else list(range(self.order))
        left = set(elems)
        classes = []
        for x in sorted(elems):
            if x not in left:
                continue
            cls = tuple(sorted({self.conj(u, x) for u in elems}))
            left -= set(cls)
            classes.append(cls)
        return classes

    def coset_classes(self) -> list[tuple[int, ...]]:
        """W-classes on the coset W phi, each a sorted tuple of W-parts."""
        left = set(range(self.order))
        classes = []
        for x in range(self.order):
            if x not in left:
                continue
            cls = tuple(sorted({self.coset_conj(u, x) for u in range(self.order)}))
            left -= set(cls)
            classes.append(cls)
        return classes

    def centralizer(self, i: int, coset: bool = False) -> tuple[int, ...]:
        """C_W(w_i), or C_W(w_i phi) when ``coset`` is set."""
        if coset:
            return tuple(u for u in range(self.order) if self.coset_conj(u, i) == i)
        return tuple(u for u in range(self.order) if self.conj(u, i) == i)

    def normalizer(self, subgroup: Sequence[int], coset_part: int | None = None) -> tuple[int, ...]:
        """N_W(H), or the stabiliser of the subcoset H w phi when ``coset_part`` = w is given."""
        sub = frozenset(subgroup)
        out = []
        for u in range(self.order):
            if frozenset(self.conj(u, h) for h in sub) != sub:
                continue
            if coset_part is not None:
                moved = self.coset_conj(u, coset_part)
                # u (H w phi) u^-1 = H (moved) phi
                if self.mul(moved, self.inv(coset_part)) not in sub:
                    continue
            out.append(u)
        return tuple(out)

    # -- reflections and arrangement --------------------------------------
    @cached_property
    def reflections(self) -> tuple[int, ...]:
        one = identity(self.rank)
        out = []
        for i, w in enumerate(self.elements):
            diff = [[w[a][b] - one[a][b] for b in range(self.rank)] for a in range(self.rank)]
            if matrix_rank(diff) == 1:
                out.append(i)
        return tuple(out)

    @property
    def n_reflections(self) -> int:
        return len(self.reflections)

    def fixed_space(self, i: int, n: int = 1) -> SubspaceCF:
        w = self.elements[i]
        diff = [[w[a][b] - int(a == b) for b in range(self.rank)] for a in range(self.rank)]
        return SubspaceCF.kernel(diff, n)

    @cached_property
    def intersection_lattice(self) -> tuple[SubspaceCF, ...]:
        """V and all intersections of reflecting hyperplanes, over Q."""
        whole = SubspaceCF.whole(self.rank)
        found = {whole: None}
        frontier = [self.fixed_space(s) for s in self.reflections]
        hyperplanes = list(dict.fromkeys(frontier))
        for h in hyperplanes:
            found.setdefault(h, None)
        frontier = hyperplanes
        while frontier:
            new = []
            for x in frontier:
                for h in hyperplanes:
                    y = x & h
                    if y not in found:
                        found[y] = None
                        new.append(y)
            frontier = new
        return tuple(sorted(found, key=lambda u: (-u.rank, repr(u))))

    def fixes_pointwise(self, i: int, U: SubspaceCF) -> bool:
        w = self.elements[i]
        return all(list(apply_matrix(w, v)) == list(v) for v in U.basis)

    def pointwise_stabilizer(self, U: SubspaceCF) -> tuple[int, ...]:
        if U.dim != self.rank:
            raise ValueError("dimension mismatch")
        return tuple(i for i in range(self.order) if self.fixes_pointwise(i, U))

    @cached_property
    def parabolic_registry(self) -> tuple[tuple[SubspaceCF, tuple[int, ...]], ...]:
        return tuple((U, self.pointwise_stabilizer(U)) for U in self.intersection_lattice)

    # -- degrees and order polynomial -------------------------------------
    @cached_property
    def degrees(self) -> tuple[tuple[int, Cyclotomic], ...]:
        return tuple(generalized_degrees(self.elements, self.phi, self.n_reflections))

    @cached_property
    def untwisted_degrees(self) -> tuple[int, ...]:
        return tuple(d for d, _ in generalized_degrees(self.elements, identity(self.rank),
                                                       self.n_reflections))

    def order_polynomial(self) -> FactoredOrderPoly:
        return order_polynomial_of(self.degrees, self.n_reflections)

    def very_good_warnings(self, ell: int) -> list[str]:
        warnings = []
        if self.order % ell == 0:
            warnings.append(f"ell={ell} divides |W|={self.order}")
        if self.phi_order % ell == 0:
            warnings.append(f"ell={ell} divides the order of phi ({self.phi_order})")
        return warnings

    def __repr__(self):
        return f"ReflectionCoset({self.name}, rank={self.rank}, |W|={self.order})"


def order_polynomial_of(degrees: Sequence[tuple[int, Cyclotomic]], n_reflections: int) -> FactoredOrderPoly:
    scalar = Cyclotomic.rational(1)
    for _, eps in degrees:
        scalar = scalar * eps.inverse() * eps.inverse()
    if scalar.is_rational():
        scalar = Cyclotomic.rational(scalar.to_fraction())
    return FactoredOrderPoly(n_reflections, tuple(degrees), scalar)


def twisted_molien_degrees(coset: ReflectionCoset) -> tuple[tuple[int, Cyclotomic], ...]:
    return coset.degrees


def order_polynomial(coset: ReflectionCoset) -> FactoredOrderPoly:
    return coset.order_polynomial()


def reflections(coset: ReflectionCoset) -> tuple[int, ...]:
    return coset.reflections


def intersection_lattice(coset: ReflectionCoset) -> tuple[SubspaceCF, ...]:
    return coset.intersection_lattice


def pointwise_stabilizer(coset: ReflectionCoset, U: SubspaceCF) -> tuple[int, ...]:
    return coset.pointwise_stabilizer(U)


def load_coset_config(cfg: dict) -> ReflectionCoset:
    """Coset from a config dict: {"cartan_type", "twist"} or {"rank", "generators", "twist"}."""
    if "cartan_type" in cfg:
        twist = cfg.get("twist", "id")
        if isinstance(twist, str):
            return ReflectionCoset.from_type(cfg["cartan_type"], twist)
        gens = simple_reflections(CARTAN[cfg["cartan_type"]])
        return ReflectionCoset(gens, mat(twist), name=cfg.get("name", cfg["cartan_type"]))
    if "generators" not in cfg:
        raise ValueError("coset config needs cartan_type or generators")
    gens = [mat(g) for g in cfg["generators"]]
    rank = cfg.get("rank", len(gens[0]) if gens else None)
    twist = cfg.get("twist")
    if isinstance(twist, str):
        if twist not in ("id", "identity", "minus", "-1"):
            raise ValueError("explicit cosets accept only matrix twists, 'id' or 'minus'")
        twist = identity(rank) if twist in ("id", "identity") else \
            tuple(tuple(-int(i == j) for j in range(rank)) for i in range(rank))
    return ReflectionCoset(gens, twist, rank=rank, name=cfg.get("name", "custom"))
