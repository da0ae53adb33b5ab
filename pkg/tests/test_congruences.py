import numpy as np
import pytest

from pbzlat.algebra import forget_tilde
from pbzlat.catalog import build
from pbzlat.classify import classify
from pbzlat.congruences import (
    Congruence,
    all_congruences,
    congruences_by_partition,
    factor_pairs,
    is_compatible,
    is_pseudo_identical,
    permute_at_zero,
    principal_congruence,
    quotient,
    set_partitions,
    structural_predicates,
)
from pbzlat.enumeration import enumerate_algebras
from pbzlat.errors import PreconditionError, SizeLimit


def blocks(A, theta):
    return [[A.label(x) for x in b] for b in theta.blocks]


def test_principal_examples(alg):
    D3, D4 = alg("D3"), alg("D4")
    assert principal_congruence(D3, "a", "1").is_total()
    assert blocks(D4, principal_congruence(D4, "a", "b")) == [["0"], ["a", "b"], ["1"]]
    assert principal_congruence(D4, "a", "1").is_total()
    for name in ("D4", "MO2", "H16"):
        A = alg(name)
        for x in range(A.size):
            assert principal_congruence(A, x, x).is_identity()


def test_all_congruences_examples(alg):
    assert [c.num_blocks for c in all_congruences(alg("D3"))] == [3, 1]
    con = all_congruences(alg("D4"))
    assert [blocks(alg("D4"), c) for c in con] == [
        [["0"], ["a"], ["b"], ["1"]], [["0"], ["a", "b"], ["1"]], [["0", "a", "b", "1"]]]
    d2 = all_congruences(alg("D2"))
    assert len(d2) == 2 and d2.identity != d2.total


def test_con_lattice_tables(alg):
    con = all_congruences(alg("BOOL4"))
    assert len(con) == 4
    for i, c in enumerate(con):
        for j, d in enumerate(con):
            assert con[con.meet[i, j]] == c.meet(d)
            assert con[con.join[i, j]] == c.join(d)


def test_every_congruence_compatible(alg):
    for name in ("H16", "O6", "D3xD3"):
        A = alg(name)
        for c in all_congruences(A):
            assert is_compatible(A, c) is None


def test_incompatible_witness(alg):
    D4 = alg("D4")
    theta = Congruence.from_blocks([[0, 1], [2], [3]], 4)
    w = is_compatible(D4, theta)
    assert w is not None


def test_oracle_agreement_small():
    for A in enumerate_algebras(5, "BZL"):
        assert all_congruences(A).congruences == congruences_by_partition(A), A.name
        B = forget_tilde(A)
        assert all_congruences(B, "bi").congruences == congruences_by_partition(B, "bi"), A.name


def test_bell_numbers():
    assert [sum(1 for _ in set_partitions(n)) for n in range(1, 7)] == [1, 2, 5, 15, 52, 203]


def test_signature_requires_tilde(alg):
    with pytest.raises(PreconditionError):
        all_congruences(forget_tilde(alg("D4")), "bzl")
    # dropping the tilde lets {0,a},{b,1} through; the tilde sends a to 0 and b to 0
    # but 0 to 1, which is what kills it in the full signature
    bi = all_congruences(forget_tilde(alg("D4")), "bi")
    assert [c.to_list() for c in bi] == [[[0], [1], [2], [3]], [[0], [1, 2], [3]], [[0, 1], [2, 3]], [[0, 1, 2, 3]]]


def test_size_cap(alg):
    with pytest.raises(SizeLimit):
        all_congruences(alg("H16"), max_size=10)


def test_quotients(alg):
    D4 = alg("D4")
    theta = principal_congruence(D4, "a", "b")
    Q = quotient(D4, theta)
    assert Q.labels == ("0", "{a,b}", "1")
    assert Q.same_tables(alg("D3"))
    for name in ("D4", "MO2", "D3xD2"):
        A = alg(name)
        assert quotient(A, Congruence.identity(A.size)).same_tables(A)
        assert quotient(A, Congruence.total(A.size)).size == 1


def test_quotient_identities_persist(alg):
    for name in ("D5", "D3xD2", "H16"):
        A = alg(name)
        rep = classify(A)
        for c in all_congruences(A):
            if c.is_total():
                continue
            rq = classify(quotient(A, c))
            for ident, ok in rep.identities.items():
                if ok:
                    assert rq[ident], (name, c, ident)


def test_factor_pairs(alg):
    d3 = factor_pairs(alg("D3"))
    assert [(a.is_identity(), b.is_total()) for a, b in d3] == [(True, True), (False, False)]
    P = alg("D3xD2")
    pairs = factor_pairs(P)
    kernels = (Congruence.from_blocks([[0, 1], [2, 3], [4, 5]], 6),
               Congruence.from_blocks([[0, 2, 4], [1, 3, 5]], 6))
    assert kernels in [(a, b) for a, b in pairs]
    assert len(factor_pairs(alg("D4"))) == 2


def test_structural_predicates(alg):
    D4 = alg("D4")
    p = structural_predicates(D4)
    assert p.subdirectly_irreducible and not p.reduced and not p.simple
    assert blocks(D4, p.monolith) == [["0"], ["a", "b"], ["1"]]
    assert p.zero_epsilon == p.monolith
    assert is_pseudo_identical(D4, p.zero_epsilon)
    d3 = structural_predicates(alg("D3"))
    assert d3.simple and d3.reduced
    b4 = structural_predicates(alg("BOOL4"))
    assert b4.reduced and not b4.directly_indecomposable
    assert not structural_predicates(alg("D3xD2")).directly_indecomposable


def test_permutability_at_zero(alg):
    for name in ("D4", "D3xD2", "BOOL8", "O6", "H16"):
        assert permute_at_zero(alg(name)) is None, name


def test_congruence_repr_and_order():
    c = Congruence.from_blocks([[0], [1, 2], [3]], 4)
    assert repr(c) == "Congruence({0},{1,2},{3})"
    assert Congruence.identity(4) <= c <= Congruence.total(4)
    assert np.array_equal(c.compose(c), c.matrix)
