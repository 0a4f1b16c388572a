"""Irreducible character degrees of small finite groups (Burnside-Dixon mod p).

Groups are given by their multiplication table on 0..n-1.  Central
characters are the common eigenvectors of the class-multiplication matrices
over F_p with p > |H| prime and p = 1 mod exp(H); the degree is then read
off from |H| / chi(1)^2 = sum_j omega_j omega_{j*} / |C_j|.
"""
from __future__ import annotations

import hashlib
import threading
from collections import Counter
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Sequence

from .arith import is_prime, nu_ell

MAX_ORDER = 2000

_cache: dict[str, "DegreeMultiset"] = {}
_cache_lock = threading.Lock()


class GroupTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """Multiplication table; table[i][j] = i * j."""

    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.table)
        for row in self.table:
            if sorted(row) != list(range(n)):
                raise ValueError("not a group table (row is not a permutation)")
        for j in range(n):
            if sorted(row[j] for row in self.table) != list(range(n)):
                raise ValueError("not a group table (column is not a permutation)")
        if n and not any(all(self.table[i][j] == j for j in range(n)) for i in range(n)):
            raise ValueError("not a group table (no identity)")

    @classmethod
    def from_elements(cls, elements: Sequence, mul) -> "FiniteGroup":
        elements = list(elements)
        index = {x: i for i, x in enumerate(elements)}
        return cls(tuple(tuple(index[mul(a, b)] for b in elements) for a in elements))

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return next(i for i in range(self.order) if self.table[i][0] == 0 and all(
            self.table[i][j] == j for j in range(self.order)))

    def inverse(self, i: int) -> int:
        e = self.identity
        return self.table[i].index(e)

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        n, left, out = self.order, set(range(self.order)), []
        inv = [self.inverse(i) for i in range(n)]
        for x in range(n):
            if x not in left:
                continue
            cls_ = tuple(sorted({self.table[self.table[g][x]][inv[g]] for g in range(n)}))
            left -= set(cls_)
            out.append(cls_)
        ident = self.identity
        out.sort(key=lambda c: (ident not in c, c))
        return out

    def element_order(self, i: int) -> int:
        k, x, e = 1, i, self.identity
        while x != e:
            x = self.table[x][i]
            k += 1
        return k

    def exponent(self) -> int:
        out = 1
        for i in range(self.order):
            k = self.element_order(i)
            out = out * k // gcd(out, k)
        return out

    def is_abelian(self) -> bool:
        return all(self.table[i][j] == self.table[j][i] for i in range(self.order) for j in range(i))

    def commutator_subgroup_order(self) -> int:
        n = self.order
        inv = [self.inverse(i) for i in range(n)]
        comms = {self.table[self.table[a][b]][self.table[inv[a]][inv[b]]] for a in range(n) for b in range(n)}
        seen = set(comms) | {self.identity}
        frontier = list(seen)
        while frontier:
            new = []
            for x in frontier:
                for c in comms:
                    y = self.table[x][c]
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return len(seen)

    def fingerprint(self) -> str:
        return hashlib.sha256(repr(self.table).encode()).hexdigest()


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def symmetric_group(n: int) -> FiniteGroup:
    from itertools import permutations
    perms = sorted(permutations(range(n)))
    return FiniteGroup.from_elements(perms, lambda a, b: tuple(a[b[i]] for i in range(n)))


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n, elements (k, s) = r^k s^s."""
    elems = [(k, s) for s in (0, 1) for k in range(n)]

    def mul(a, b):
        k1, s1 = a
        k2, s2 = b
        return ((k1 + (-k2 if s1 else k2)) % n, s1 ^ s2)

    return FiniteGroup.from_elements(elems, mul)


@dataclass(frozen=True)
class DegreeMultiset:
    group_order: int
    degrees: tuple[int, ...]     # sorted ascending

    def __post_init__(self):
        if sum(d * d for d in self.degrees) != self.group_order:
            raise ArithmeticError("sum of squared degrees differs from the group order")
        if any(self.group_order % d for d in self.degrees):
            raise ArithmeticError("a degree does not divide the group order")

    def as_counter(self) -> dict[int, int]:
        return dict(sorted(Counter(self.degrees).items()))


def _pick_prime(order: int, exponent: int) -> int:
    p = exponent + 1
    while p <= order or not is_prime(p):
        p += exponent
    return p


def _class_matrices(G: FiniteGroup, classes: list[tuple[int, ...]]) -> list[list[list[int]]]:
    """M_i[j][k] = #{(x, y) in C_i x C_j : x y = z_k} for a fixed z_k in C_k."""
    where = {}
    for k, c in enumerate(classes):
        for x in c:
            where[x] = k
    r = len(classes)
    mats = []
    for ci in classes:
        m = [[0] * r for _ in range(r)]
        for j, cj in enumerate(classes):
            counts = Counter(where[G.table[x][y]] for x in ci for y in cj)
            for k, cnt in counts.items():
                m[j][k] = cnt // len(classes[k])
        mats.append(m)
    return mats


def _nullspace_mod(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    mat = [[x % p for x in row] for row in rows]
    pivots, r = [], 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][col], p - 2, p)
        mat[r] = [x * inv % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(mat[:r], pivots):
            v[pc] = -row[f] % p
        basis.append(v)
    return basis


def _restrict(m: list[list[int]], basis: list[list[int]], p: int) -> list[list[int]]:
    """Matrix of v -> M v on span(basis) (assumed invariant), in that basis."""
    k, n = len(basis), len(basis[0])
    images = [[sum(m[i][j] * b[j] for j in range(n)) % p for i in range(n)] for b in basis]
    # solve sum_c coeff[c] basis[c] = image via elimination on [basis^T | images^T]
    aug = [[basis[c][i] for c in range(k)] + [img[i] for img in images] for i in range(n)]
    red = _rref_mod(aug, k, p)
    return [[red[r][k + col] for col in range(k)] for r in range(k)]


def _rref_mod(mat: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    mat = [row[:] for row in mat]
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] % p), None)
        if piv is None:
            raise ArithmeticError("basis is not independent")
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][col], p - 2, p)
        mat[r] = [x * inv % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] % p:
                f = mat[i][col]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        r += 1
    return mat[:ncols]


def _eigenvalues_mod(a: list[list[int]], p: int) -> list[int]:
    """Roots in F_p of the characteristic polynomial, by exhaustive search."""
    k = len(a)
    # Faddeev-LeVerrier mod p (p > k so the divisions are fine)
    coeffs = [1]
    m = [[0] * k for _ in range(k)]
    ident = [[int(i == j) for j in range(k)] for i in range(k)]
    for step in range(1, k + 1):
        c_prev = coeffs[-1]
        m = [[(sum(a[i][t] * m[t][j] for t in range(k)) + c_prev * ident[i][j]) % p
              for j in range(k)] for i in range(k)]
        am = [[sum(a[i][t] * m[t][j] for t in range(k)) % p for j in range(k)] for i in range(k)]
        tr = sum(am[i][i] for i in range(k)) % p
        coeffs.append(-tr * pow(step, p - 2, p) % p)
    roots = []
    for x in range(p):
        acc = 0
        for c in coeffs:
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


def character_degrees(G: FiniteGroup) -> DegreeMultiset:
    if G.order > MAX_ORDER:
        raise GroupTooLargeError(f"|H| = {G.order} exceeds the cap {MAX_ORDER}")
    key = G.fingerprint()
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None:
        return hit
    result = _character_degrees(G)
    with _cache_lock:
        _cache[key] = result
    return result


def _character_degrees(G: FiniteGroup) -> DegreeMultiset:
    n = G.order
    classes = G.conjugacy_classes()
    r = len(classes)
    if G.is_abelian():
        return DegreeMultiset(n, (1,) * n)
    p = _pick_prime(n, G.exponent())
    mats = _class_matrices(G, classes)
    spaces = [[[int(i == j) for j in range(r)] for i in range(r)]]
    for m in mats[1:]:
        if all(len(s) == 1 for s in spaces):
            break
        new = []
        for basis in spaces:
            if len(basis) == 1:
                new.append(basis)
                continue
            a = _restrict(m, basis, p)
            for lam in _eigenvalues_mod(a, p):
                rows = [[(a[i][j] - (lam if i == j else 0)) % p for j in range(len(a))]
                        for i in range(len(a))]
                kernel = _nullspace_mod(rows, len(a), p)
                new.append([[sum(c * b[i] for c, b in zip(vec, basis)) % p for i in range(r)]
                            for vec in kernel])
        spaces = new
    if len(spaces) != r or any(len(s) != 1 for s in spaces):
        raise ArithmeticError("class algebra did not split into one-dimensional eigenspaces")
    inv_class = []
    where = {x: k for k, c in enumerate(classes) for x in c}
    for c in classes:
        inv_class.append(where[G.inverse(c[0])])
    degrees = []
    for (v,) in spaces:
        scale = pow(v[0], p - 2, p)          # omega(identity class) = 1
        omega = [x * scale % p for x in v]
        s = sum(omega[j] * omega[inv_class[j]] * pow(len(classes[j]), p - 2, p) for j in range(r)) % p
        d2 = n * pow(s, p - 2, p) % p
        d = isqrt(d2)
        if d * d != d2:
            raise ArithmeticError("degree square is not a perfect square")
        degrees.append(d)
    return DegreeMultiset(n, tuple(sorted(degrees)))


@dataclass(frozen=True)
class DefectCount:
    counts: tuple[tuple[int, int], ...]     # sorted (d, count), zero counts omitted

    @classmethod
    def from_dict(cls, m: dict[int, int]) -> "DefectCount":
        return cls(tuple(sorted((d, c) for d, c in m.items() if c)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def get(self, d: int) -> int:
        return self.as_dict().get(d, 0)

    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def shifted(self, s: int) -> "DefectCount":
        return DefectCount(tuple((d + s, c) for d, c in self.counts))


def irr_defect_count(G: FiniteGroup, ell: int) -> DefectCount:
    """d -> #{chi : nu_ell(|H|) - nu_ell(chi(1)) = d}."""
    degs = character_degrees(G)
    top = nu_ell(G.order, ell)
    return DefectCount.from_dict(Counter(top - nu_ell(d, ell) for d in degs.degrees))


def degree_constraint_solutions(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Independent oracle: all degree multisets with sum d^2 = |H|, #classes terms,
    each d | |H|, and exactly |H : H'| linear characters."""
    n = G.order
    k = len(G.conjugacy_classes())
    linear = n // G.commutator_subgroup_order()
    divs = [d for d in range(2, isqrt(n) + 1) if n % d == 0]
    rest_sum = n - linear
    rest_count = k - linear
    out = []

    def search(i, remaining, count, acc):
        if count == 0:
            if remaining == 0:
                out.append((1,) * linear + tuple(acc))
            return
        for j in range(i, len(divs)):
            d = divs[j]
            if d * d * count > remaining:
                break
            search(j, remaining - d * d, count - 1, acc + [d])

    search(0, rest_sum, rest_count, [])
    return out
