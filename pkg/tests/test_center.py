import numpy as np
import pytest

from pbzlat.algebra import direct_product
from pbzlat.catalog import names
from pbzlat.center import (
    all_triples_foulis_holland,
    central_tilde_laws_check,
    center_boolean_algebra,
    center_invariant_failures,
    central_conditions,
    commutation_report,
    decompose,
    foulis_holland_check,
    interval_algebras,
    is_central_C1C4,
)
from pbzlat.classify import classify
from pbzlat.errors import PreconditionAOL2, PreconditionCommute


def labels(A, xs):
    return [A.label(x) for x in xs]


def test_commutation_examples(alg):
    d3 = commutation_report(alg("D3"))
    assert d3.c_p == d3.c_pbz == d3.c_factor == d3.c_conditions == [0, 2]
    mo2 = commutation_report(alg("MO2"))
    assert mo2.c_factor == mo2.c_p == [0, 5]
    P = alg("D3xD2")
    rp = commutation_report(P)
    assert rp.c_factor == rp.s_k
    assert labels(P, rp.c_factor) == ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]


def test_report_containments(alg):
    for name in names():
        A = alg(name)
        if not classify(A)["PBZSTAR"]:
            continue
        assert center_invariant_failures(A) == [], name


def test_c1_c4(alg):
    for name in ("D4", "MO2", "H16"):
        A = alg(name)
        assert is_central_C1C4(A, 0) and is_central_C1C4(A, A.top)
    cond = central_conditions(alg("D3"), "a")
    assert not cond["C1"]
    P = alg("D3xD2")
    assert is_central_C1C4(P, "(1,0)")


def test_centre_boolean(alg):
    assert center_boolean_algebra(alg("D3")).size == 2
    C = center_boolean_algebra(alg("D3xD2"))
    assert C.size == 4 and classify(C)["OML"]
    assert center_boolean_algebra(alg("D2xD2xD2")).size == 8


def test_intervals(alg):
    P = alg("D3xD2")
    L1, L2 = interval_algebras(P, "(0,1)")
    assert labels(P, L1.elements) == ["(0,0)", "(a,0)", "(1,0)"]
    assert labels(P, L2.elements) == ["(0,0)", "(0,1)"]
    assert L1.algebra.same_tables(alg("D3")) and L2.algebra.same_tables(alg("D2"))
    L1, L2 = interval_algebras(P, 0)
    assert L1.algebra.same_tables(P) and L2.algebra.size == 1
    L1, L2 = interval_algebras(P, P.top)
    assert L1.algebra.size == 1 and L2.algebra.same_tables(P)
    with pytest.raises(PreconditionAOL2):
        interval_algebras(alg("MO2"), 1)


def test_interval_factors_are_pbz_aol2(alg):
    for name in ("D3xD3", "D4xD2"):
        A = alg(name)
        for a in range(A.size):
            for part in interval_algebras(A, a):
                rep = classify(part.algebra)
                assert rep["PBZSTAR"] and rep["AOL2"], (name, a)


def test_decompose(alg):
    P = alg("D3xD2")
    d = decompose(P, "(0,1)")
    assert d.verified and d.product.size == 6
    doc = d.to_dict()
    assert doc["verified"] is True and len(doc["phi"]) == 6
    D5 = alg("D5")
    for a in range(1, 5):
        d = decompose(D5, a)
        assert d.first.algebra.size == 1 and d.phi == tuple(range(5))
    Q = alg("D3xD3")
    assert decompose(Q, "(0,1)").verified
    with pytest.raises(PreconditionAOL2):
        decompose(alg("H16"), 1)


def test_decompose_every_element(alg):
    for name in ("D3xD3", "D2xD2xD3", "COGOTTI7", "D4xD2"):
        A = alg(name)
        for a in range(A.size):
            assert decompose(A, a).verified


def test_foulis_holland(alg):
    B = alg("BOOL4")
    for t in [(1, 2, 3), (1, 1, 2), (0, 2, 1)]:
        assert foulis_holland_check(B, *t)
    MO2 = alg("MO2")
    assert foulis_holland_check(MO2, "a", "a'", "1")
    with pytest.raises(PreconditionCommute):
        foulis_holland_check(MO2, "a", "b", "1")
    assert all_triples_foulis_holland(MO2) is None
    assert all_triples_foulis_holland(alg("BOOL8")) is None


def test_laws_around_central_tilde(alg):
    for name in ("D4", "MO2", "H16", "M3B", "D3xD2", "BOOL8"):
        assert central_tilde_laws_check(alg(name)) is None, name


def test_tilde_closure_on_sharp(alg):
    for name in ("H16", "D3xD2", "M3B"):
        A = alg(name)
        r = commutation_report(A)
        pbz = set(r.c_pbz)
        for e in r.s_k:
            assert (e in pbz) == (int(A.tilde[e]) in pbz)


def test_c_sdm_within_c_l(alg):
    r = commutation_report(alg("H16"))
    assert not np.any(r.c_sdm & ~r.c_l)
