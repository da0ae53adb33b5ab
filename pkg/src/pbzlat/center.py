"""Commuting elements, the centre, and interval decompositions of V(AOL) members.

The centre is computed three ways: through complementary factor
congruences Cg(e,0), Cg(e,1) (the ground truth), through the four equational
conditions C1-C4, and through the PBZ*-commutation relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

import numpy as np

from .algebra import FiniteAlgebra, direct_product, forget_tilde, is_orthomodular, is_pbz_star, kleene_sharp, subalgebra, validate
from .congruences import is_factor_pair, principal_congruence
from .errors import IsoCheckFailed, NotBoolean, PreconditionAOL2, PreconditionCommute, PreconditionError
from .terms import CATALOG, check_identity


def commutes(A: FiniteAlgebra) -> np.ndarray:
    """C[a, b]: (a ^ b) v (a' ^ b) = b."""
    idx = np.arange(A.size)
    a, b = idx[:, None], idx[None, :]
    return A.join[A.meet[a, b], A.meet[A.prime[a], b]] == b


def commutes_sdm(A: FiniteAlgebra) -> np.ndarray:
    """C_L restricted to pairs with (a^b)~ = a~ v b~ and (a'^b)~ = []a v b~."""
    idx = np.arange(A.size)
    a, b = idx[:, None], idx[None, :]
    T = A.tilde
    first = T[A.meet[a, b]] == A.join[T[a], T[b]]
    second = T[A.meet[A.prime[a], b]] == A.join[A.box[a], T[b]]
    return commutes(A) & first & second


def factor_central(A: FiniteAlgebra, e) -> bool:
    """Cg(e,0) and Cg(e,1) are complementary factor congruences."""
    e = A.element(e)
    return is_factor_pair(principal_congruence(A, e, 0), principal_congruence(A, e, A.top))


def central_conditions(A: FiniteAlgebra, e) -> dict:
    """Truth of C1..C4 for ``e``, each quantified over all a, b."""
    e = A.element(e)
    M, J, P, T = A.meet, A.join, A.prime, A.tilde
    ep = P[e]
    idx = np.arange(A.size)
    a, b = idx[:, None], idx[None, :]
    c1 = np.all(J[M[e, idx], M[ep, idx]] == idx)
    c2 = np.all(M[J[a, b], e] == J[M[a, e], M[b, e]])
    c3 = np.all(M[J[a, b], ep] == J[M[a, ep], M[b, ep]])
    # ((e v b) ^ (e' v a))~ = (e v b~) ^ (e' v a~)
    c4 = np.all(T[M[J[e, b], J[ep, a]]] == M[J[e, T[b]], J[ep, T[a]]])
    return {"C1": bool(c1), "C2": bool(c2), "C3": bool(c3), "C4": bool(c4)}


def is_central_C1C4(A: FiniteAlgebra, e) -> bool:
    return all(central_conditions(A, e).values())


@dataclass(frozen=True)
class CommutationReport:
    c_l: np.ndarray
    c_sdm: np.ndarray
    c_p: list
    c_pbz: list
    c_factor: list
    c_conditions: list
    s_k: list

    def pairs(self, which: str = "c_l") -> list:
        return [(int(a), int(b)) for a, b in np.argwhere(getattr(self, which))]

    def mismatches(self) -> list:
        """Names of the containments and equalities that fail."""
        out = []
        if np.any(self.c_sdm & ~self.c_l):
            out.append("C_SDM within C_L")
        if not set(self.c_pbz) <= set(self.c_p):
            out.append("C_pbz within C_p")
        if not set(self.c_p) <= set(self.s_k):
            out.append("C_p within S_K")
        if self.c_pbz != self.c_factor:
            out.append("C_pbz = factor centre")
        if self.c_conditions != self.c_factor:
            out.append("C1-C4 = factor centre")
        return out

    def to_dict(self) -> dict:
        return {
            "C_L": self.pairs("c_l"),
            "C_SDM": self.pairs("c_sdm"),
            "C_p": self.c_p,
            "C_pbz": self.c_pbz,
            "C_factor": self.c_factor,
            "C1_C4": self.c_conditions,
            "S_K": self.s_k,
        }


def commutation_report(A: FiniteAlgebra) -> CommutationReport:
    A._need_tilde()
    cl = commutes(A)
    cs = commutes_sdm(A)
    return CommutationReport(
        c_l=cl,
        c_sdm=cs,
        c_p=[int(a) for a in np.flatnonzero(cl.all(axis=1))],
        c_pbz=[int(a) for a in np.flatnonzero(cs.all(axis=1))],
        c_factor=[e for e in range(A.size) if factor_central(A, e)],
        c_conditions=[e for e in range(A.size) if is_central_C1C4(A, e)],
        s_k=[int(a) for a in np.flatnonzero(kleene_sharp(A))],
    )


def _is_distributive(meet, join, elems) -> bool:
    e = np.asarray(elems)
    a, b, c = e[:, None, None], e[None, :, None], e[None, None, :]
    return bool(np.all(meet[a, join[b, c]] == join[meet[a, b], meet[a, c]]))


def center_boolean_algebra(A: FiniteAlgebra, report: Optional[CommutationReport] = None) -> FiniteAlgebra:
    """The centre as a subalgebra of the lattice reduct; must be a Boolean algebra."""
    report = report or commutation_report(A)
    C = subalgebra(forget_tilde(A), report.c_factor, name=f"centre of {A.name}")
    if not _is_distributive(C.meet, C.join, range(C.size)):
        raise NotBoolean(f"centre of {A.name} is not distributive")
    if not np.all(kleene_sharp(C)):
        raise NotBoolean(f"centre of {A.name} is not complemented by '")
    return C


def _require_aol2(A: FiniteAlgebra):
    if not A.has_tilde or not is_pbz_star(A) or not check_identity(A, CATALOG["AOL2"]).holds:
        raise PreconditionAOL2(f"{A.name} is not a PBZ*-lattice satisfying AOL2")


@dataclass(frozen=True)
class IntervalAlgebra:
    parent: FiniteAlgebra
    bound: int
    elements: tuple  # parent indices, in the order used by ``algebra``
    algebra: FiniteAlgebra

    def index(self, x) -> int:
        return self.elements.index(int(x))


def interval_algebra(A: FiniteAlgebra, e: int, name: str = "") -> IntervalAlgebra:
    """[0, e] with b' := b' ^ e and b~ := b~ ^ e."""
    e = A.element(e)
    below = [int(x) for x in np.flatnonzero(A.leq[:, e])]
    order = [x for x in below if x != e] + [e]
    pos = {x: i for i, x in enumerate(order)}
    sel = np.array(order)
    leq = A.leq[np.ix_(sel, sel)]
    prime = [pos[int(A.meet[A.prime[x], e])] for x in order]
    tilde = [pos[int(A.meet[A.tilde[x], e])] for x in order]
    labels = [A.label(x) for x in order]
    alg = validate(leq, prime, tilde, name=name or f"[0,{A.label(e)}]", labels=labels)
    return IntervalAlgebra(A, e, tuple(order), alg)


def interval_algebras(A: FiniteAlgebra, a):
    """(L1 on [0, a~], L2 on [0, ◇a]); both must again be PBZ* satisfying AOL2."""
    _require_aol2(A)
    a = A.element(a)
    L1 = interval_algebra(A, int(A.tilde[a]), name=f"{A.name}[0,{A.label(a)}~]")
    L2 = interval_algebra(A, int(A.diamond[a]), name=f"{A.name}[0,◇{A.label(a)}]")
    for L in (L1, L2):
        if L.algebra.size > 1:
            _require_aol2(L.algebra)
    return L1, L2


@dataclass(frozen=True)
class Decomposition:
    algebra: FiniteAlgebra
    element: int
    first: IntervalAlgebra
    second: IntervalAlgebra
    product: FiniteAlgebra
    phi: tuple  # phi[b] = index of (b ^ a~, b ^ ◇a) in ``product``
    verified: bool

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "element": self.element,
            "first_interval": list(self.first.elements),
            "second_interval": list(self.second.elements),
            "phi": list(self.phi),
            "verified": self.verified,
        }


def decompose(A: FiniteAlgebra, a) -> Decomposition:
    """Split A along a as [0,a~] x [0,◇a] and verify b |-> (b ^ a~, b ^ ◇a) is an isomorphism."""
    a = A.element(a)
    L1, L2 = interval_algebras(A, a)
    X, Y = L1.algebra, L2.algebra
    m = Y.size
    ta, da = int(A.tilde[a]), int(A.diamond[a])
    phi = np.array([L1.index(A.meet[b, ta]) * m + L2.index(A.meet[b, da]) for b in range(A.size)])
    prod = direct_product(X, Y, name=f"{X.name}x{Y.name}")
    meet, join, prime, tilde = prod.meet, prod.join, prod.prime, prod.tilde
    problems = []
    if len(set(phi.tolist())) != A.size or X.size * m != A.size:
        problems.append("not a bijection")
    if phi[0] != 0 or phi[A.top] != X.size * m - 1:
        problems.append("constants")
    if not np.array_equal(phi[A.meet], meet[phi[:, None], phi[None, :]]):
        problems.append("meet")
    if not np.array_equal(phi[A.join], join[phi[:, None], phi[None, :]]):
        problems.append("join")
    if not np.array_equal(phi[A.prime], prime[phi]):
        problems.append("prime")
    if not np.array_equal(phi[A.tilde], tilde[phi]):
        problems.append("tilde")
    if problems:
        raise IsoCheckFailed(f"{A.name}, a={A.label(a)}: phi fails on {', '.join(problems)}")
    return Decomposition(A, a, L1, L2, prod, tuple(int(v) for v in phi), True)


def _sublattice(A: FiniteAlgebra, gens) -> list:
    elems = {int(g) for g in gens}
    while True:
        e = np.array(sorted(elems))
        new = set(A.meet[np.ix_(e, e)].ravel().tolist()) | set(A.join[np.ix_(e, e)].ravel().tolist())
        if new <= elems:
            return sorted(elems)
        elems |= new


def foulis_holland_check(A: FiniteAlgebra, a, b, c) -> bool:
    """The sublattice generated by sharp a, b, c with a commuting with b and c is distributive."""
    a, b, c = A.element(a), A.element(b), A.element(c)
    sk = np.flatnonzero(kleene_sharp(A))
    if not all(x in sk for x in (a, b, c)):
        raise PreconditionError("a, b, c must be Kleene-sharp")
    try:
        S = subalgebra(forget_tilde(A), sk)
    except ValueError as exc:
        raise PreconditionError(f"sharp elements of {A.name} are not a subuniverse") from exc
    if not is_orthomodular(S):
        raise PreconditionError(f"sharp elements of {A.name} do not form an orthomodular lattice")
    C = commutes(A)
    if not (C[a, b] and C[a, c]):
        bad = b if not C[a, b] else c
        raise PreconditionCommute(f"{A.label(a)} does not commute with {A.label(bad)}")
    return _is_distributive(A.meet, A.join, _sublattice(A, (a, b, c)))


def central_tilde_laws_check(A: FiniteAlgebra):
    """First failure (law, a, b, c) of the distributivity laws around a~ for a~ in C_p, or None."""
    cp = set(commutation_report(A).c_p)
    M, J, T, D = A.meet, A.join, A.tilde, A.diamond
    idx = np.arange(A.size)
    b, c = idx[:, None], idx[None, :]
    for a in range(A.size):
        t = int(T[a])
        if t not in cp:
            continue
        d = int(D[a])
        laws = {
            "join absorbs ◇a": (J[t, b], J[t, M[d, b]]),
            "meet absorbs ◇a": (M[t, b], M[t, J[d, b]]),
            "join modular ◇a": (J[b, M[c, d]], M[J[J[b, c], t], J[b, d]]),
            "meet modular ◇a": (M[b, J[c, d]], J[M[M[b, c], t], M[b, d]]),
            "meet inner": (M[t, J[b, c]], M[t, J[b, M[t, c]]]),
            "join inner": (J[t, M[b, c]], J[t, M[b, J[t, c]]]),
            "join distributes over a~": (J[b, M[c, t]], M[J[b, c], J[b, t]]),
            "meet distributes over a~": (M[b, J[c, t]], J[M[b, c], M[b, t]]),
            "a~ meet distributes": (M[t, J[b, c]], J[M[t, b], M[t, c]]),
            "a~ join distributes": (J[t, M[b, c]], M[J[t, b], J[t, c]]),
        }
        for name, (lhs, rhs) in laws.items():
            lhs = np.broadcast_to(lhs, (A.size, A.size))
            rhs = np.broadcast_to(rhs, (A.size, A.size))
            hit = np.argwhere(lhs != rhs)
            if len(hit):
                return name, a, int(hit[0][0]), int(hit[0][1])
    return None


def center_invariant_failures(A: FiniteAlgebra, report: Optional[CommutationReport] = None) -> list:
    """Names of centre properties of PBZ*-lattices that fail on A."""
    report = report or commutation_report(A)
    out = list(report.mismatches())
    pbz = set(report.c_pbz)
    cp = set(report.c_p)
    for e in report.s_k:
        if (e in pbz) != (int(A.tilde[e]) in pbz) or (e in cp) != (int(A.tilde[e]) in cp):
            out.append(f"tilde closure of C_pbz at {e}")
            break
    if check_identity(A, CATALOG["WSDM"]).holds and report.c_pbz != report.c_p:
        out.append("WSDM gives C_pbz = C_p")
    if check_identity(A, CATALOG["AOL2"]).holds and report.c_p != report.s_k:
        out.append("AOL2 gives C_p = S_K")
    size = len(report.c_factor)
    if size & (size - 1):
        out.append("centre size is a power of two")
    return out


def all_triples_foulis_holland(A: FiniteAlgebra):
    """First sharp triple violating the distributivity conclusion, or None."""
    sk = [int(v) for v in np.flatnonzero(kleene_sharp(A))]
    C = commutes(A)
    for a, b, c in product(sk, repeat=3):
        if C[a, b] and C[a, c] and not foulis_holland_check(A, a, b, c):
            return a, b, c
    return None
