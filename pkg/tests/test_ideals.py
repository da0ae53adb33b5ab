import numpy as np
import pytest

from pbzlat.congruences import principal_congruence
from pbzlat.errors import NotALatticeIdeal, PreconditionAOL2, PreconditionError, PreconditionSDM
from pbzlat.ideals import (
    binary_discriminator_check,
    d_term_membership,
    d_terms,
    is_congruence,
    is_lattice_ideal,
    is_p_ideal,
    is_weak_de_morgan,
    lattice_ideals,
    p_ideal_symmetry_check,
    p_ideals,
    principal_ideal,
    reduced_iff_sk,
    rho,
    sdm_ideal_report,
    u_ideal_term_check,
    ursini_ideals,
)


def ideal(A, *labels):
    return tuple(sorted(A.element(s) for s in labels))


def test_lattice_ideals(alg):
    assert lattice_ideals(alg("D5")) == [(0,), (0, 1), (0, 1, 2), (0, 1, 2, 3), (0, 1, 2, 3, 4)]
    assert lattice_ideals(alg("BOOL4")) == [(0,), (0, 1), (0, 2), (0, 1, 2, 3)]
    M = alg("M3B")
    assert lattice_ideals(M) == sorted([(0,), ideal(M, "0", "a"), ideal(M, "0", "a'"), ideal(M, "0", "b"),
                                        tuple(range(5))], key=lambda t: (len(t), t))
    assert is_lattice_ideal(M, ideal(M, "0", "a")) and not is_lattice_ideal(M, ideal(M, "0", "a", "b"))


def test_p_ideals(alg):
    D5 = alg("D5")
    ok, w = is_p_ideal(D5, principal_ideal(D5, "b"))
    # first failure: a = a in I and b = a give ◇a ⋒ ◇a = 1
    assert not ok and w == (D5.element("a"), D5.element("a"))
    b, one = D5.element("b"), D5.top
    assert D5.meet[D5.diamond[one], D5.join[D5.tilde[one], D5.diamond[b]]] == one
    assert p_ideals(D5) == [(0,), tuple(range(5))]
    MO2 = alg("MO2")
    ok, w = is_p_ideal(MO2, principal_ideal(MO2, "a"))
    assert not ok
    assert [MO2.label(v) for v in w] == ["a", "b"]
    for name in ("D4", "H16", "M3B", "O6", "COGOTTI7"):
        assert is_p_ideal(alg(name), (0,))[0], name
    with pytest.raises(NotALatticeIdeal):
        is_p_ideal(MO2, (0, 1, 3))


def test_ursini_records(alg):
    D4 = alg("D4")
    recs = ursini_ideals(D4)
    assert [r.elements for r in recs] == [(0,), (0, 1, 2, 3)]
    assert recs[0].delta.is_identity()
    assert recs[0].epsilon == principal_congruence(D4, "a", "b")
    assert recs[1].delta.is_total() and recs[1].epsilon.is_total()
    d3 = ursini_ideals(alg("D3"))
    assert d3[0].delta.is_identity() and d3[0].epsilon.is_identity()
    b4 = ursini_ideals(alg("BOOL4"))
    assert len(b4) == 4 and all(r.delta == r.epsilon for r in b4)


def test_rho_examples(alg):
    D4 = alg("D4")
    r = rho(D4, (0,))
    assert np.array_equal(r.matrix, principal_congruence(D4, "a", "b").matrix)
    C = alg("COGOTTI7")
    rc = rho(C, (0,))
    assert (C.element("a"), C.element("c")) in rc
    for name in ("D4", "MO2", "COGOTTI7", "H16"):
        A = alg(name)
        assert all((x, x) in rho(A, (0,)) for x in range(A.size))
    with pytest.raises(PreconditionError):
        rho(alg("D5"), (0, 1, 2))


def test_seven_element_aol_modal_equivalence_not_a_congruence(alg):
    C = alg("COGOTTI7")
    a, b, c = C.element("a"), C.element("b"), C.element("c")
    rel = rho(C, (0,))
    # ◇(a ^ b) = ◇0 = 0 but ◇(c ^ b) = ◇b = 1
    assert C.diamond[C.meet[a, b]] == 0 and C.diamond[C.meet[c, b]] == C.top
    assert (int(C.meet[a, b]), int(C.meet[c, b])) not in rel
    ok, w = is_congruence(C, rel)
    assert not ok and w == ("meet", (a, b), a)
    ok, w = is_weak_de_morgan(C, (0,))
    assert not ok and w == (a, b, b)


def test_weak_de_morgan_positive(alg):
    D4 = alg("D4")
    assert is_weak_de_morgan(D4, (0,))[0]
    assert is_congruence(D4, rho(D4, (0,)))[0]
    for name in ("COGOTTI7", "MO2", "D5"):
        A = alg(name)
        L = tuple(range(A.size))
        assert is_weak_de_morgan(A, L)[0]
        assert rho(A, L).matrix.all()


def test_sdm_ideal_report(alg):
    rep = sdm_ideal_report(alg("D4"))
    assert rep and rep.p_ideals == rep.ursini_ideals == [(0,), (0, 1, 2, 3)]
    assert sdm_ideal_report(alg("MO2"))
    b4 = sdm_ideal_report(alg("BOOL4"))
    assert b4 and len(b4.p_ideals) == 4
    with pytest.raises(PreconditionSDM):
        sdm_ideal_report(alg("M3B"))


def test_d_terms(alg):
    D4 = alg("D4")
    a, b = D4.element("a"), D4.element("b")
    assert [int(v) for v in d_terms(D4, a, b)] == [0, 0, 0, 0]
    assert d_term_membership(D4, (0,), a, b)
    assert not d_term_membership(D4, (0,), a, D4.top)
    # ([]a)~ ⋒ []1 = 1 ^ (0 v 1) = 1
    assert int(d_terms(D4, a, D4.top)[2]) == D4.top
    for x in range(D4.size):
        assert d_term_membership(D4, (0,), x, x)
    with pytest.raises(PreconditionSDM):
        d_term_membership(alg("M3B"), (0,), 0, 1)


def test_reduced_iff_sk(alg):
    assert reduced_iff_sk(alg("D3")).reduced and reduced_iff_sk(alg("D3")).sk
    d4 = reduced_iff_sk(alg("D4"))
    assert d4.consistent and not d4.reduced and not d4.sk
    mo2 = reduced_iff_sk(alg("MO2"))
    assert mo2.consistent and mo2.reduced


def test_binary_discriminator(alg):
    for name in ("D2", "D3", "D4", "D5", "COGOTTI7"):
        assert binary_discriminator_check(alg(name)), name
    assert not binary_discriminator_check(alg("MO2"))
    from pbzlat.algebra import validate
    assert binary_discriminator_check(validate([[1]], [0], [0]))


def test_u_term_check(alg):
    D5 = alg("D5")
    assert u_ideal_term_check(D5, (0,))
    rep = u_ideal_term_check(D5, principal_ideal(D5, "b"))
    assert rep.agree and not (rep.closed_under_u or rep.detachment or rep.ursini)
    assert u_ideal_term_check(D5, tuple(range(5)))
    with pytest.raises(PreconditionAOL2):
        u_ideal_term_check(alg("MO2"), (0,))


def test_diamond_closure_of_p_ideals(alg):
    for name in ("D4", "D3xD2", "BOOL8", "H16"):
        A = alg(name)
        for I in p_ideals(A):
            assert p_ideal_symmetry_check(A, I) == (True, None), (name, I)
