"""Lattice ideals, p-ideals, 0-classes of congruences and modal equivalence modulo an ideal.

Ideals are sorted tuples of element indices. The sharp meet
``s ⋒ t = s ^ (s~ v t)`` is only ever applied to diamond or box images,
which are sharp in a PBZ*-lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import FiniteAlgebra, is_pbz_star
from .congruences import ConLattice, Congruence, all_congruences, structural_predicates
from .errors import (
    CharacterizationMismatch,
    NotALatticeIdeal,
    PreconditionAOL2,
    PreconditionError,
    PreconditionSDM,
    SizeLimit,
)
from .terms import CATALOG, Meet, Var, box, check_identity, check_quasi_identity, diamond

IDEAL_MAX_SIZE = 20


def _mask(A: FiniteAlgebra, ideal) -> np.ndarray:
    m = np.zeros(A.size, dtype=bool)
    m[list(ideal)] = True
    return m


def _as_tuple(mask) -> tuple:
    return tuple(int(v) for v in np.flatnonzero(mask))


def is_lattice_ideal(A: FiniteAlgebra, ideal) -> bool:
    m = _mask(A, ideal)
    if not m[0]:
        return False
    down = bool(np.all(m[np.nonzero(A.leq[:, m])[0]]))
    joins = A.join[np.ix_(m, m)]
    return down and bool(m[joins].all())


def principal_ideal(A: FiniteAlgebra, a) -> tuple:
    return _as_tuple(A.leq[:, A.element(a)])


def lattice_ideals(A: FiniteAlgebra, max_size: int = IDEAL_MAX_SIZE) -> list:
    """Every lattice ideal of A, sorted by size then contents.

    In a finite lattice each ideal is the principal downset of its join, so
    there are exactly |A| of them.
    """
    if A.size > max_size:
        raise SizeLimit(f"{A.name} has {A.size} elements; ideal cap is {max_size}")
    return sorted({principal_ideal(A, a) for a in range(A.size)}, key=lambda t: (len(t), t))


def _require_ideal(A, ideal):
    if not is_lattice_ideal(A, ideal):
        raise NotALatticeIdeal(f"{sorted(ideal)} is not a lattice ideal of {A.name}")


def sharp_meet(A: FiniteAlgebra, s, t):
    """s ⋒ t = s ^ (s~ v t); works elementwise on index arrays."""
    return A.meet[s, A.join[A.tilde[s], t]]


def is_p_ideal(A: FiniteAlgebra, ideal):
    """(holds, witness): closure under a |-> ◇b ⋒ ◇a for every b; witness is (a, b)."""
    _require_ideal(A, ideal)
    m = _mask(A, ideal)
    D = A.diamond
    a = np.flatnonzero(m)
    vals = sharp_meet(A, D[None, :], D[a][:, None])  # vals[i, b] = ◇b ⋒ ◇a_i
    bad = np.argwhere(~m[vals])
    if len(bad):
        i, b = bad[0]
        return False, (int(a[i]), int(b))
    return True, None


def d_terms(A: FiniteAlgebra, a, b):
    """The four witnesses of modal equivalence: (◇a)~⋒◇b, (◇b)~⋒◇a, ([]a)~⋒[]b, ([]b)~⋒[]a."""
    D, B, T = A.diamond, A.box, A.tilde
    return (
        sharp_meet(A, T[D[a]], D[b]),
        sharp_meet(A, T[D[b]], D[a]),
        sharp_meet(A, T[B[a]], B[b]),
        sharp_meet(A, T[B[b]], B[a]),
    )


@dataclass(frozen=True)
class ModalPairRelation:
    pairs: frozenset
    ideal: tuple
    size: int

    @property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self.size, self.size), dtype=bool)
        for a, b in self.pairs:
            m[a, b] = True
        return m

    def __contains__(self, pair):
        return tuple(pair) in self.pairs

    def sorted_pairs(self) -> list:
        return sorted(self.pairs)

    def as_congruence(self) -> Optional[Congruence]:
        """The relation as a partition, if it is an equivalence."""
        m = self.matrix
        labels = [int(np.argmax(m[x])) for x in range(self.size)]
        c = Congruence.from_labels(labels)
        return c if np.array_equal(c.matrix, m) else None


def rho_matrix(A: FiniteAlgebra, ideal) -> np.ndarray:
    """Membership of all four d-terms, evaluated for every pair at once."""
    m = _mask(A, ideal)
    idx = np.arange(A.size)
    a, b = idx[:, None], idx[None, :]
    out = np.ones((A.size, A.size), dtype=bool)
    for d in d_terms(A, a, b):
        out &= m[d]
    return out


def rho(A: FiniteAlgebra, ideal) -> ModalPairRelation:
    """I-modal equivalence, cross-checked against its two alternative descriptions."""
    A._need_tilde()
    ok, _ = is_p_ideal(A, ideal)
    if not ok:
        raise PreconditionError(f"{sorted(ideal)} is not a p-ideal of {A.name}")
    m = _mask(A, ideal)
    direct = rho_matrix(A, ideal)

    D, B, T = A.diamond, A.box, A.tilde
    J, M = A.join, A.meet
    idx = np.arange(A.size)
    a, b = idx[:, None], idx[None, :]
    # (◇a v ◇b) ^ (a~ v b~) and (([]a)~ v ([]b)~) ^ ([]a v []b) both in I
    first = m[M[J[D[a], D[b]], J[T[a], T[b]]]] & m[M[J[T[B[a]], T[B[b]]], J[B[a], B[b]]]]
    # some s, t in I absorb the difference of the diamonds and of the boxes
    s = np.flatnonzero(m)
    diamond_ok = np.any(J[D[a][..., None], s] == J[D[b][..., None], s], axis=-1)
    box_ok = np.any(J[B[a][..., None], s] == J[B[b][..., None], s], axis=-1)
    second = diamond_ok & box_ok
    for name, other in (("sum form", first), ("absorption form", second)):
        diff = np.argwhere(direct != other)
        if len(diff):
            x, y = diff[0]
            raise CharacterizationMismatch(
                f"{A.name}: modal equivalence and its {name} disagree at ({int(x)},{int(y)}) for I={sorted(ideal)}")
    pairs = frozenset((int(x), int(y)) for x, y in np.argwhere(direct))
    return ModalPairRelation(pairs, tuple(sorted(int(v) for v in ideal)), A.size)


def is_congruence(A: FiniteAlgebra, rel, signature: str = "bzl"):
    """(holds, witness) for a relation given as a ModalPairRelation, pair set or boolean matrix.

    Witness is ``("reflexive", x)``, ``("symmetric", x, y)``,
    ``("transitive", x, y, z)`` or ``(op, (x, y), u)`` where x~y but
    f(x,u) and f(y,u) are unrelated (u is None for unary operations).
    """
    if isinstance(rel, ModalPairRelation):
        R = rel.matrix
    elif isinstance(rel, np.ndarray):
        R = rel.astype(bool)
    else:
        R = np.zeros((A.size, A.size), dtype=bool)
        for x, y in rel:
            R[x, y] = True
    diag = np.flatnonzero(~np.diag(R))
    if len(diag):
        return False, ("reflexive", int(diag[0]))
    hit = np.argwhere(R & ~R.T)
    if len(hit):
        return False, ("symmetric", int(hit[0][0]), int(hit[0][1]))
    hit = np.argwhere(R[:, :, None] & R[None, :, :] & ~R[:, None, :])
    if len(hit):
        return False, ("transitive",) + tuple(int(v) for v in hit[0])
    ops = [("meet", A.meet), ("join", A.join)]
    for name, f in ops:
        bad = R[:, :, None] & ~R[f[:, None, :], f[None, :, :]]
        hit = np.argwhere(bad)
        if len(hit):
            x, y, u = (int(v) for v in hit[0])
            return False, (name, (x, y), u)
    unary = [("prime", A.prime)]
    if signature == "bzl":
        unary.append(("tilde", A.tilde))
    for name, f in unary:
        hit = np.argwhere(R & ~R[f[:, None], f[None, :]])
        if len(hit):
            x, y = (int(v) for v in hit[0])
            return False, (name, (x, y), None)
    return True, None


def is_weak_de_morgan(A: FiniteAlgebra, ideal):
    """(holds, witness (a, b, c)): for (a,b) in rho(I), ◇(a^c)~ ⋒ ◇(b^c) lies in I."""
    R = rho(A, ideal).matrix
    m = _mask(A, ideal)
    D = A.diamond
    ac = A.meet[:, None, :]  # ac[a, 0, c] = a ^ c
    bc = A.meet[None, :, :]
    vals = sharp_meet(A, A.tilde[D[ac]], D[bc])
    bad = R[:, :, None] & ~m[vals]
    hit = np.argwhere(bad)
    if len(hit):
        return False, tuple(int(v) for v in hit[0])
    return True, None


@dataclass
class IdealRecord:
    elements: tuple
    lattice_ideal: bool = True
    p_ideal: Optional[bool] = None
    ursini: bool = False
    weak_de_morgan: Optional[bool] = None
    delta: Optional[Congruence] = field(default=None, repr=False)
    epsilon: Optional[Congruence] = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "lattice_ideal": self.lattice_ideal,
            "p_ideal": self.p_ideal,
            "ursini": self.ursini,
            "weak_de_morgan": self.weak_de_morgan,
            "delta": None if self.delta is None else self.delta.to_list(),
            "epsilon": None if self.epsilon is None else self.epsilon.to_list(),
        }


def ursini_ideals(A: FiniteAlgebra, con: Optional[ConLattice] = None, signature: str = "bzl") -> list:
    """0-classes of congruences, each with the least and greatest congruence having it."""
    con = con or all_congruences(A, signature)
    classes = sorted({c.zero_class() for c in con}, key=lambda t: (len(t), t))
    out = []
    for ideal in classes:
        group = con.with_zero_class(ideal)
        lo, hi = group[0], group[0]
        for c in group[1:]:
            lo, hi = lo.meet(c), hi.join(c)
        lo, hi = Congruence(lo.classes, A), Congruence(hi.classes, A)
        if lo.zero_class() != ideal or hi.zero_class() != ideal:
            raise CharacterizationMismatch(f"{A.name}: bounds of the 0-class {ideal} move the 0-class")
        rec = IdealRecord(ideal, lattice_ideal=is_lattice_ideal(A, ideal), ursini=True, delta=lo, epsilon=hi)
        if A.has_tilde and rec.lattice_ideal:
            rec.p_ideal = is_p_ideal(A, ideal)[0]
            if rec.p_ideal:
                rec.weak_de_morgan = is_weak_de_morgan(A, ideal)[0]
        out.append(rec)
    return out


def p_ideals(A: FiniteAlgebra) -> list:
    return [I for I in lattice_ideals(A) if is_p_ideal(A, I)[0]]


def _require_sdm(A: FiniteAlgebra):
    if not A.has_tilde or not check_identity(A, CATALOG["SDM"]).holds:
        raise PreconditionSDM(f"{A.name} does not satisfy the strong De Morgan law")


@dataclass(frozen=True)
class SDMIdealReport:
    p_ideals: list
    ursini_ideals: list
    same_ideals: bool
    rho_is_epsilon: dict  # ideal -> bool

    def __bool__(self):
        return self.same_ideals and all(self.rho_is_epsilon.values())


def sdm_ideal_report(A: FiniteAlgebra, con: Optional[ConLattice] = None) -> SDMIdealReport:
    _require_sdm(A)
    con = con or all_congruences(A)
    ps = p_ideals(A)
    urs = ursini_ideals(A, con)
    rho_eps = {}
    for rec in urs:
        if is_p_ideal(A, rec.elements)[0]:
            rho_eps[rec.elements] = bool(np.array_equal(rho(A, rec.elements).matrix, rec.epsilon.matrix))
        else:
            rho_eps[rec.elements] = False
    return SDMIdealReport(ps, [r.elements for r in urs], set(ps) == {r.elements for r in urs}, rho_eps)


def p_ideals_equal_ursini(A: FiniteAlgebra, con: Optional[ConLattice] = None) -> bool:
    """On SDM members: p-ideals are exactly the 0-classes, and rho(I) is I^ε for each."""
    return bool(sdm_ideal_report(A, con))


def d_term_membership(A: FiniteAlgebra, ideal, a, b, con: Optional[ConLattice] = None) -> bool:
    """All four d-terms of (a, b) land in I; raises if that disagrees with (a,b) in I^ε."""
    _require_sdm(A)
    a, b = A.element(a), A.element(b)
    m = _mask(A, ideal)
    inside = all(bool(m[d]) for d in d_terms(A, a, b))
    con = con or all_congruences(A)
    group = con.with_zero_class(ideal)
    if not group:
        raise PreconditionError(f"{sorted(ideal)} is not the 0-class of a congruence of {A.name}")
    eps = group[0]
    for c in group[1:]:
        eps = eps.join(c)
    if inside != eps.related(a, b):
        raise CharacterizationMismatch(f"{A.name}: d-terms and I^ε disagree on ({a},{b})")
    return inside


_x, _y = Var(0), Var(1)
MODAL_QUASI_PREMISES = [
    (box(_x), Meet(box(_x), box(_y))),
    (diamond(_x), Meet(diamond(_x), diamond(_y))),
]
MODAL_QUASI_CONCLUSION = (_x, Meet(_x, _y))


@dataclass(frozen=True)
class ReducedReport:
    modal_equivalence_trivial: bool
    quasi_identity: bool
    sk: bool
    reduced: bool

    @property
    def consistent(self) -> bool:
        return len({self.modal_equivalence_trivial, self.quasi_identity, self.sk, self.reduced}) == 1

    def __bool__(self):
        return self.consistent


def reduced_iff_sk(A: FiniteAlgebra, con: Optional[ConLattice] = None) -> ReducedReport:
    """Compare four descriptions of reducedness on an SDM member."""
    _require_sdm(A)
    r0 = rho(A, (0,)).matrix
    return ReducedReport(
        modal_equivalence_trivial=bool(np.array_equal(r0, np.eye(A.size, dtype=bool))),
        quasi_identity=check_quasi_identity(A, MODAL_QUASI_PREMISES, MODAL_QUASI_CONCLUSION).holds,
        sk=check_identity(A, CATALOG["SK"]).holds,
        reduced=structural_predicates(A, con).reduced,
    )


def binary_discriminator_check(A: FiniteAlgebra) -> bool:
    """x ^ y~ returns x when y = 0 and 0 otherwise."""
    A._need_tilde()
    b0 = A.meet[:, A.tilde]  # b0[a, c] = a ^ c~
    expected = np.zeros_like(b0)
    expected[:, 0] = np.arange(A.size)
    return bool(np.array_equal(b0, expected))


@dataclass(frozen=True)
class UTermReport:
    closed_under_u: bool
    detachment: bool
    ursini: bool

    @property
    def agree(self) -> bool:
        return self.closed_under_u == self.detachment == self.ursini

    def __bool__(self):
        return self.closed_under_u and self.detachment and self.ursini


def _require_aol2(A: FiniteAlgebra):
    if not A.has_tilde or not is_pbz_star(A) or not check_identity(A, CATALOG["AOL2"]).holds:
        raise PreconditionAOL2(f"{A.name} is not a PBZ*-lattice satisfying AOL2")


def u_ideal_term_check(A: FiniteAlgebra, ideal, con: Optional[ConLattice] = None) -> UTermReport:
    """Three descriptions of ideals in V(AOL) members, evaluated independently."""
    _require_aol2(A)
    _require_ideal(A, ideal)
    m = _mask(A, ideal)
    D = A.diamond
    s = np.flatnonzero(m)
    yz = A.join[np.ix_(s, s)]
    u = A.meet[:, D[yz]]  # u[x, i, j] = x ^ ◇(s_i v s_j)
    closed = bool(m[u].all())
    # b in I and a ^ b~ in I imply a in I
    hits = m[A.meet[:, A.tilde[s]]]  # hits[a, i]: a ^ s_i~ in I
    detach = bool(np.all(m | ~hits.any(axis=1)))
    con = con or all_congruences(A)
    ursini = bool(con.with_zero_class(tuple(sorted(int(v) for v in ideal))))
    return UTermReport(closed, detach, ursini)


def p_ideal_symmetry_check(A: FiniteAlgebra, ideal):
    """(holds, witness) for: a in I gives ◇a in I, and ◇a ⋒ ◇b in I iff ◇b ⋒ ◇a in I."""
    m = _mask(A, ideal)
    D = A.diamond
    bad = np.flatnonzero(m & ~m[D])
    if len(bad):
        return False, ("diamond", int(bad[0]))
    fwd = m[sharp_meet(A, D[:, None], D[None, :])]
    hit = np.argwhere(fwd != fwd.T)
    if len(hit):
        return False, ("swap", int(hit[0][0]), int(hit[0][1]))
    return True, None

