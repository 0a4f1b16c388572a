"""e-split Levi enumeration: examples, brute-force completeness oracle, soundness, conjugation."""
from __future__ import annotations


import pytest

from esplit.arith import choose_zeta
from esplit.levi import (
    InvariantViolation,
    enumerate_levis,
    integer_torus_valuation,
    levi_defect,
    minimal_levis,
    torus_defect_shift,
    zeta_eigenspace,
)
from esplit.refl import ReflectionCoset, matmul

from cases import ACCEPTANCE_COSETS, EXTRA_COSETS, apply_vector, brute_force_levis, coset, poset

ALL = ACCEPTANCE_COSETS + EXTRA_COSETS


@pytest.mark.parametrize("label,t,tw,ell,q", ALL[:3] + [ALL[5]], ids=["A1", "A2", "B2", "A2e1"])
def test_completeness_oracle(label, t, tw, ell, q):
    p = poset(t, tw, ell, q)
    assert {L.key for L in p.nodes} == brute_force_levis(coset(t, tw), choose_zeta(q, ell))


@pytest.mark.parametrize("label,t,tw,ell,q", ALL, ids=[c[0] for c in ALL])
def test_soundness(label, t, tw, ell, q):
    """Each node carries a Phi-torus (a, V') with a|V' = zeta, P = C_W(V'), a normalising P."""
    p = poset(t, tw, ell, q)
    c, zeta = p.coset, p.zeta
    for L in p.nodes:
        U = L.torus.subspace
        assert U.rank == 0 or U <= zeta_eigenspace(c, L.torus.element, zeta)
        assert set(L.parabolic) == set(_stab(c, U))
        assert L.torus.element in L.coset
        assert set(L.coset) == {c.mul(x, L.torus.element) for x in L.parabolic}
        a = c.coset_matrix(L.torus.element)
        for x in L.parabolic:
            conj = c.index[matmul(matmul(a, c.elements[x]), _inv_matrix(c, L.torus.element))]
            assert conj in L.parabolic


def _stab(c, U):
    return tuple(x for x in range(c.order) if all(apply_vector(c.elements[x], v) == list(v) for v in U.basis))


def _inv_matrix(c, w):
    # (w phi)^-1 = phi^-1 w^-1
    return matmul(c.phi_inv, c.elements[c.inv(w)])


@pytest.mark.parametrize("label,t,tw,ell,q", ALL, ids=[c[0] for c in ALL])
def test_inclusion_is_subcoset_inclusion(label, t, tw, ell, q):
    """L <= K iff P_L <= P_K and the coset P_L w_L phi lies in P_K w_K phi."""
    p = poset(t, tw, ell, q)
    for i, L in enumerate(p.nodes):
        for j, K in enumerate(p.nodes):
            expected = i != j and set(L.parabolic) <= set(K.parabolic) and L.rep in K.coset
            assert p.less[i][j] == expected


@pytest.mark.parametrize("label,t,tw,ell,q", ALL, ids=[c[0] for c in ALL])
def test_action_is_conjugation_and_transitive_on_minimal(label, t, tw, ell, q):
    p = poset(t, tw, ell, q)
    c = p.coset
    for u in range(c.order):
        for i, L in enumerate(p.nodes):
            K = p.nodes[p.conjugate(u, i)]
            assert set(K.parabolic) == {c.conj(u, x) for x in L.parabolic}
    report = minimal_levis(p)
    assert report.transitive


@pytest.mark.parametrize("t,tw,ell,q,n_nodes", [
    ("A1", "id", 3, 2, 2), ("A2", "id", 7, 2, 3), ("B2", "id", 5, 2, 3), ("G2", "id", 7, 2, 3),
    ("A2", "graph", 7, 2, 1), ("A2", "id", 7, 8, 5), ("A3", "id", 5, 2, 7),
])
def test_node_counts(t, tw, ell, q, n_nodes):
    assert len(poset(t, tw, ell, q)) == n_nodes


def test_a1_example():
    p = poset("A1", "id", 3, 2)
    T = p.minimal[0]
    assert p.nodes[T].is_toric and p.minimal == [T]
    c = p.coset
    assert c.elements[p.nodes[T].rep] == ((-1,),)
    assert torus_defect_shift(p, T) == 1
    assert levi_defect(p, p.top) == 1


def test_a2_example():
    p = poset("A2", "id", 7, 2)
    c = p.coset
    mins = p.minimal
    assert len(mins) == 2 and all(p.nodes[m].is_toric for m in mins)
    reps = {p.nodes[m].rep for m in mins}
    assert all(c.mul(c.mul(r, r), r) == c.identity and r != c.identity for r in reps)
    assert [len(o) for o in p.orbits] == [2, 1]
    for m in mins:
        assert torus_defect_shift(p, m) == 1
        assert integer_torus_valuation(p, m) == 1


def test_conjugation_examples():
    p = poset("A2", "id", 7, 2)
    c = p.coset
    t0, t1 = p.minimal
    assert p.conjugate(c.identity, t0) == t0
    s = c.reflections[0]
    assert p.conjugate(s, t0) == t1
    # a transposition inverts the 3-cycle carrying the torus
    assert c.inv(p.nodes[t0].rep) == p.nodes[t1].rep
    # elements of P normalising the coset fix the node
    top = p.top
    assert all(p.conjugate(u, top) == top for u in range(c.order))


def test_zeta_eigenspace_examples():
    c = coset("A1")
    z = choose_zeta(2, 3)
    minus = c.index[((-1,),)]
    assert zeta_eigenspace(c, minus, z).rank == 1
    assert zeta_eigenspace(c, c.identity, z).rank == 0
    assert zeta_eigenspace(c, c.identity, choose_zeta(4, 3)).rank == 1


def test_no_eigenvalue_gives_single_node():
    # trivial rank-1 coset, zeta = -1: id has no -1 eigenvector, only G itself survives
    p = enumerate_levis(ReflectionCoset.trivial(1), choose_zeta(2, 3))
    assert len(p) == 1 and p.minimal == [p.top]
    assert minimal_levis(p).nodes == [p.top]


@pytest.mark.parametrize("label,t,tw,ell,q", ALL, ids=[c[0] for c in ALL])
def test_toric_defect_cross_check(label, t, tw, ell, q):
    p = poset(t, tw, ell, q)
    for i, L in enumerate(p.nodes):
        if L.is_toric:
            assert levi_defect(p, i) == integer_torus_valuation(p, i)


def test_e1_minimal_is_maximal_torus():
    """For e = 1 the minimal split Levis are the maximal split tori (rank r)."""
    p = poset("A2", "id", 7, 8)
    assert p.zeta.e == 1
    for m in p.minimal:
        assert p.nodes[m].is_toric and p.nodes[m].torus.rank == 2


def test_workers_give_identical_posets():
    c, z = coset("B2"), choose_zeta(2, 5)
    a = enumerate_levis(c, z, workers=1)
    b = enumerate_levis(c, z, workers=2)
    assert [L.key for L in a.nodes] == [L.key for L in b.nodes]


def test_invariant_violation_is_runtime_error():
    assert issubclass(InvariantViolation, RuntimeError)
