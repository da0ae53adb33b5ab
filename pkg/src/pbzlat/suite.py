"""Run every structural theorem over the catalog and all small enumerated algebras.

Each theorem is a predicate on a class of algebras plus a check returning
``None`` on success or a short counterexample description. Failures are data:
the report records counts and the first counterexample per theorem.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from . import catalog
from .algebra import (
    FiniteAlgebra,
    forget_tilde,
    is_bz_star,
    is_orthomodular,
    is_paraorthomodular,
    kleene_sharp,
    sharp_sets,
    subalgebra,
)
from .center import (
    all_triples_foulis_holland,
    central_tilde_laws_check,
    center_boolean_algebra,
    center_invariant_failures,
    commutation_report,
    decompose,
)
from .classify import classify
from .congruences import (
    all_congruences,
    congruences_by_partition,
    factor_pairs,
    is_pseudo_identical,
    permute_at_zero,
    quotient,
    structural_predicates,
)
from .enumeration import (
    enumerate_algebras,
    enumerate_expansions,
    enumerate_lattices,
    oracle_expansion_count,
    oracle_lattice_classes,
)
from .errors import PBZError, SizeLimit
from .ideals import (
    binary_discriminator_check,
    d_term_membership,
    is_congruence,
    is_weak_de_morgan,
    lattice_ideals,
    p_ideal_symmetry_check,
    p_ideals,
    reduced_iff_sk,
    rho,
    sdm_ideal_report,
    u_ideal_term_check,
    ursini_ideals,
)
from .terms import CATALOG as IDENTITIES
from .terms import ZERO, Meet, Prime, Tilde, Var, check_identity, check_quasi_identity, parse_identity

SUITE_MAX_SIZE = 8
DECOMPOSITION_MAX_SIZE = 9
ORACLE_MAX_SIZE = 6

# extra products that exercise the decomposition of non-indecomposable members
PRODUCTS = ("D2xD2", "D3xD2", "D4xD2", "D3xD3")


class Subject:
    """An algebra with lazily computed facts shared between theorems."""

    def __init__(self, A: FiniteAlgebra, origin: str):
        self.A = A
        self.origin = origin

    @cached_property
    def report(self):
        return classify(self.A)

    @cached_property
    def con(self):
        return all_congruences(self.A)

    @cached_property
    def structure(self):
        return structural_predicates(self.A, self.con)

    @cached_property
    def centre(self):
        return commutation_report(self.A)

    def holds(self, name: str) -> bool:
        return bool(self.report[name])

    @property
    def pbz(self) -> bool:
        return self.holds("PBZSTAR")

    @property
    def in_v_aol(self) -> bool:
        return self.pbz and self.holds("AOL2")

    @property
    def sdm(self) -> bool:
        return self.A.has_tilde and self.holds("SDM")


def _identity_failure(A, ident) -> Optional[str]:
    res = check_identity(A, ident)
    if res.holds:
        return None
    return f"{ident.name} fails at {res.witness.assignment}"


def _identities(source: dict) -> list:
    return [parse_identity(text, name) for name, text in source.items()]


BZ_BASICS = _identities({
    "triple tilde": "x~~~ = x~",
    "tilde below prime": "x~ <= x'",
    "tilde of join": "(x v y)~ = (x~ ^ y~)",
    "tilde of meet bound": "(x~ v y~) <= (x ^ y)~",
    "box dual": "x''~' = x~~",
    "box of meet": "(x ^ y)'~ = (x'~ ^ y'~)",
    "diamond of join": "(x v y)~~ = (x~~ v y~~)",
    "diamond of meet": "(x ^ y)~~ <= (x~~ ^ y~~)",
})
_x = Var(0)

AOL_DISTRIBUTIVITY = _identities({
    "meet over tilde": "(x ^ (y v z~)) = ((x ^ y) v (x ^ z~))",
    "join over tilde": "(x v (y ^ z~)) = ((x v y) ^ (x v z~))",
    "tilde meet distributes": "(x~ ^ (y v z)) = ((x~ ^ y) v (x~ ^ z))",
    "tilde join distributes": "(x~ v (y ^ z)) = ((x~ v y) ^ (x~ v z))",
})

AOL23_CONSEQUENCES = _identities({
    "meet bound": "(x ^ y) <= ((x ^ z~) v (y ^ z~~))",
    "diamond cover": "((x ^ y~~)~ v y~~) = 1",
    "diamond below": "x~~ <= (y ^ x~)~",
})


def _check_basics(s: Subject):
    for ident in BZ_BASICS:
        fail = _identity_failure(s.A, ident)
        if fail:
            return fail
    premise = (Prime(_x), Meet(Prime(_x), _x))
    res = check_quasi_identity(s.A, [premise], (Tilde(_x), ZERO))
    if not res.holds:
        return f"x' <= x but x~ != 0 at {res.witness.assignment}"
    return None


def _check_aol_arithmetic(s: Subject):
    for ident in AOL_DISTRIBUTIVITY + AOL23_CONSEQUENCES:
        fail = _identity_failure(s.A, ident)
        if fail:
            return fail
    return None


def _check_para(s: Subject):
    para = is_paraorthomodular(s.A)
    dia = check_identity(s.A, IDENTITIES["DIAMOND_OM"]).holds
    if para != dia:
        return f"paraorthomodular={para} but diamond-orthomodular={dia}"
    return None


def _check_sharp(s: Subject):
    s_k, s_d, s_b = sharp_sets(s.A)
    if not (s_k == s_d == s_b):
        return f"S_K={s_k} S_◇={s_d} S_B={s_b}"
    return None


def _check_centre(s: Subject):
    fails = center_invariant_failures(s.A, s.centre)
    if fails:
        return "; ".join(fails)
    C = center_boolean_algebra(s.A, s.centre)
    pairs = factor_pairs(s.A, s.con)
    if len(pairs) != C.size:
        return f"{len(pairs)} factor pairs but centre has {C.size} elements"
    return None


def _check_sharp_commutation(s: Subject):
    """Alternative descriptions of C_p, the laws around a~ in C_p, and sharp triples."""
    A, r = s.A, s.centre
    idx = np.arange(A.size)
    M, J, T = A.meet, A.join, A.tilde
    via_meet = [a for a in r.s_k if np.all(J[M[a, idx], M[T[a], idx]] == idx)]
    via_join = [a for a in r.s_k if np.all(M[J[a, idx], J[T[a], idx]] == idx)]
    if not (r.c_p == via_meet == via_join):
        return f"C_p={r.c_p} but tilde forms give {via_meet}, {via_join}"
    bad = central_tilde_laws_check(A)
    if bad:
        return f"law '{bad[0]}' fails at a={bad[1]}, b={bad[2]}, c={bad[3]}"
    if is_orthomodular(_sharp_part(A)):
        bad = all_triples_foulis_holland(A)
        if bad:
            return f"sharp triple {bad} generates a non-distributive sublattice"
    return None


def _sharp_part(A):
    return subalgebra(forget_tilde(A), np.flatnonzero(kleene_sharp(A)))


def _check_decomposition(s: Subject):
    for a in range(s.A.size):
        try:
            decompose(s.A, a)
        except PBZError as exc:
            return f"a={a}: {exc}"
    return None


def _check_aol2_basis(s: Subject):
    if not s.holds("AOL2"):
        return None
    for name in ("AOL1", "AOL3", "WSDM"):
        if not s.holds(name):
            return f"AOL2 holds but {name} fails"
    return None


def _check_sdm_ideals(s: Subject):
    rep = sdm_ideal_report(s.A, s.con)
    if not rep.same_ideals:
        return f"p-ideals {rep.p_ideals} != 0-classes {rep.ursini_ideals}"
    bad = [I for I, ok in rep.rho_is_epsilon.items() if not ok]
    if bad:
        return f"rho(I) != I^ε for I={bad[0]}"
    for rec in ursini_ideals(s.A, s.con):
        for a in range(s.A.size):
            for b in range(s.A.size):
                d_term_membership(s.A, rec.elements, a, b, s.con)
    return None


def _check_reduced(s: Subject):
    rep = reduced_iff_sk(s.A, s.con)
    if not rep.consistent:
        return str(rep)
    return None


def _check_p_ideals(s: Subject):
    """Every p-ideal: diamond closure, modal equivalence is an equivalence
    preserving ' and ~, and it is a congruence exactly for weak De Morgan ideals."""
    for I in p_ideals(s.A):
        ok, w = p_ideal_symmetry_check(s.A, I)
        if not ok:
            return f"I={I}: {w}"
        rel = rho(s.A, I)
        R = rel.matrix
        if rel.as_congruence() is None:
            return f"I={I}: modal equivalence is not an equivalence"
        for name, f in (("prime", s.A.prime), ("tilde", s.A.tilde)):
            if np.any(R & ~R[f[:, None], f[None, :]]):
                return f"I={I}: modal equivalence does not preserve {name}"
        cong = is_congruence(s.A, rel)[0]
        wdm = is_weak_de_morgan(s.A, I)[0]
        if cong != wdm:
            return f"I={I}: congruence={cong} but weak De Morgan={wdm}"
    return None


def _check_indecomposable(s: Subject):
    di = s.structure.directly_indecomposable
    if s.holds("AOL") and not di:
        return "antiortholattice is directly decomposable"
    if di and s.in_v_aol and not s.holds("AOL"):
        return "directly indecomposable member of V(AOL) is not an antiortholattice"
    if di and s.holds("J2") and s.holds("WSDM") and not (s.holds("OML") or s.holds("AOL")):
        return "directly indecomposable J2+WSDM algebra is neither orthomodular nor an antiortholattice"
    return None


def _check_discriminator(s: Subject):
    return None if binary_discriminator_check(s.A) else "x ^ y~ is not the 0-binary discriminator"


def _check_u_term(s: Subject):
    for I in lattice_ideals(s.A):
        rep = u_ideal_term_check(s.A, I, s.con)
        if not rep.agree:
            return f"I={I}: {rep}"
    return None


def _check_zero_permutability(s: Subject):
    bad = permute_at_zero(s.A, s.con)
    return None if bad is None else f"0-classes of {bad[0]} o {bad[1]} differ"


def _check_quotients(s: Subject):
    holding = [IDENTITIES[k] for k, v in s.report.identities.items() if v]
    for theta in s.con:
        if theta.is_total():
            continue
        Q = quotient(s.A, theta)
        for ident in holding:
            if not check_identity(Q, ident).holds:
                return f"A/{theta} fails {ident.name}"
    return None


def _check_con_oracle(s: Subject):
    if s.A.size > ORACLE_MAX_SIZE:
        return None
    for A, sig in ((s.A, "bzl"), (forget_tilde(s.A), "bi")):
        fast = all_congruences(A, sig).congruences
        slow = congruences_by_partition(A, sig)
        if fast != slow:
            return f"signature {sig}: closure gives {len(fast)} congruences, partitions give {len(slow)}"
    return None


def _check_catalog(s: Subject):
    entry = catalog.CATALOG.get(s.A.name)
    if entry is None:
        return None
    bad = entry.check(s.A)
    return None if not bad else f"expected/found {bad}"


def _check_witnesses(s: Subject):
    """Modal equivalence witnesses on COGOTTI7 and D4."""
    A = s.A
    if A.name == "COGOTTI7":
        a, b, c = A.element("a"), A.element("b"), A.element("c")
        rel = rho(A, (0,))
        if (a, c) not in rel:
            return "(a, c) not modally equivalent"
        if (int(A.meet[a, b]), int(A.meet[c, b])) in rel:
            return "modal equivalence respects the meet with b"
        if is_congruence(A, rel)[0] or is_weak_de_morgan(A, (0,))[0]:
            return "{0} is weak De Morgan"
    if A.name == "D4":
        eps = s.structure.zero_epsilon
        if eps.is_identity() or s.structure.reduced:
            return "D4 is reduced"
        if not is_pseudo_identical(A, eps):
            return "{0}^ε is not pseudo-identical"
        if not s.holds("SDM") or s.holds("SK"):
            return "D4 should satisfy SDM and fail SK"
    return None


@dataclass(frozen=True)
class Theorem:
    name: str
    summary: str
    applies: Callable[[Subject], bool]
    check: Callable[[Subject], Optional[str]]


THEOREMS = [
    Theorem("catalog", "catalog algebras reproduce their recorded classification",
            lambda s: s.origin == "catalog", _check_catalog),
    Theorem("paraorthomodular-diamond", "on BZ*: paraorthomodular iff diamond-orthomodular",
            lambda s: s.A.has_tilde and is_bz_star(s.A), _check_para),
    Theorem("sharp-collapse", "on PBZ*: Kleene-, diamond- and Brouwer-sharp elements coincide",
            lambda s: s.pbz, _check_sharp),
    Theorem("centre", "on PBZ*: C_pbz = C1-C4 centre = factor centre, a Boolean algebra",
            lambda s: s.pbz, _check_centre),
    Theorem("sharp-commutation", "on PBZ*: tilde forms of C_p, laws around a~ in C_p, sharp triples",
            lambda s: s.pbz, _check_sharp_commutation),
    Theorem("interval-decomposition", "on V(AOL) up to 9 elements: b -> (b ^ a~, b ^ ◇a) is an isomorphism",
            lambda s: s.in_v_aol and s.A.size <= DECOMPOSITION_MAX_SIZE, _check_decomposition),
    Theorem("aol2-basis", "on PBZ*: AOL2 implies AOL1, AOL3 and WSDM",
            lambda s: s.pbz, _check_aol2_basis),
    Theorem("sdm-ideals", "on SDM: p-ideals = 0-classes, rho(I) = I^ε, d-terms decide I^ε",
            lambda s: s.pbz and s.sdm, _check_sdm_ideals),
    Theorem("reduced-sk", "on SDM: trivial modal equivalence, the modal quasi-identity, SK and reducedness agree",
            lambda s: s.pbz and s.sdm, _check_reduced),
    Theorem("modal-witnesses", "COGOTTI7 and D4 witnesses for modal equivalence",
            lambda s: s.origin == "catalog" and s.A.name in ("COGOTTI7", "D4"), _check_witnesses),
    Theorem("p-ideals", "on PBZ*: p-ideal closure, modal equivalence, weak De Morgan iff congruence",
            lambda s: s.pbz, _check_p_ideals),
    Theorem("indecomposables", "AOLs are indecomposable; indecomposable J2+WSDM is OML or AOL",
            lambda s: s.pbz, _check_indecomposable),
    Theorem("bz-arithmetic", "on BZ-lattices: basic laws of ~, [] and ◇",
            lambda s: s.A.has_tilde, _check_basics),
    Theorem("aol-arithmetic", "on PBZ* with AOL2 and AOL3: distributivity around ~ and its consequences",
            lambda s: s.pbz and s.holds("AOL2") and s.holds("AOL3"), _check_aol_arithmetic),
    Theorem("binary-discriminator", "on AOLs: x ^ y~ is the 0-binary discriminator",
            lambda s: s.holds("AOL"), _check_discriminator),
    Theorem("u-term-ideals", "on V(AOL): closure under x ^ ◇(y v z), detachment and 0-class agree",
            lambda s: s.in_v_aol, _check_u_term),
    Theorem("zero-permutability", "on BZ-lattices: congruences permute at 0",
            lambda s: s.A.has_tilde, _check_zero_permutability),
    Theorem("quotient-identities", "quotients keep every catalog identity of the algebra",
            lambda s: s.A.has_tilde, _check_quotients),
    Theorem("congruence-oracle", "Con(A) by closure equals Con(A) by partition search",
            lambda s: s.A.has_tilde and s.A.size <= ORACLE_MAX_SIZE, _check_con_oracle),
]


@dataclass
class TheoremResult:
    name: str
    summary: str
    checked: int = 0
    failed: int = 0
    first_counterexample: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, subject_name: str, outcome: Optional[str]):
        self.checked += 1
        if outcome is not None:
            self.failed += 1
            if self.first_counterexample is None:
                self.first_counterexample = f"{subject_name}: {outcome}"


@dataclass
class SuiteReport:
    max_n: int
    catalog_only: bool
    algebras: int
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def __getitem__(self, name) -> TheoremResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "catalog_only": self.catalog_only,
            "algebras": self.algebras,
            "ok": self.ok,
            "results": [
                {"name": r.name, "summary": r.summary, "checked": r.checked, "failed": r.failed,
                 "first_counterexample": r.first_counterexample}
                for r in self.results
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        width = max(len(r.name) for r in self.results)
        lines = [f"{len(self.results)} theorems over {self.algebras} algebras (max size {self.max_n})"]
        for r in self.results:
            mark = "PASS" if r.ok else "FAIL"
            lines.append(f"{mark}  {r.name:<{width}}  {r.checked:>4} checked  {r.failed:>3} failed")
            if not r.ok:
                lines.append(f"      first counterexample: {r.first_counterexample}")
        return "\n".join(lines)


def subjects(max_n: int, catalog_only: bool = False) -> list:
    out = [Subject(catalog.build(name), "catalog") for name in catalog.names()]
    out += [Subject(catalog.build(name), "product") for name in PRODUCTS]
    if not catalog_only:
        out += [Subject(A, "enumerated") for A in enumerate_algebras(max_n, "BZL")]
    return out


def enumeration_oracle(max_n: int) -> TheoremResult:
    """Lattice and expansion counts against the labelled brute-force oracle."""
    res = TheoremResult("enumeration-oracle", "isomorphism classes agree with labelled brute force")
    for n in range(1, min(max_n, ORACLE_MAX_SIZE) + 1):
        lats = list(enumerate_lattices(n))
        classes = oracle_lattice_classes(n)
        res.record(f"n={n} lattices", None if len(lats) == len(classes) else f"{len(lats)} vs {len(classes)}")
        for cls in ("BI", "BZL", "PBZSTAR"):
            fast = sum(sum(1 for _ in enumerate_expansions(L, cls)) for L in lats)
            slow = sum(oracle_expansion_count(L.leq, cls) for L in lats)
            res.record(f"n={n} {cls}", None if fast == slow else f"{fast} vs {slow}")
    return res


def verify_theorem_suite(max_n: int = 6, catalog_only: bool = False, theorems=None) -> SuiteReport:
    """Check every registered theorem; ``theorems`` optionally restricts by name."""
    if max_n > SUITE_MAX_SIZE:
        raise SizeLimit(f"suite is limited to {SUITE_MAX_SIZE} elements")
    chosen = [t for t in THEOREMS if theorems is None or t.name in theorems]
    subs = subjects(max_n, catalog_only)
    report = SuiteReport(max_n, catalog_only, len(subs))
    for t in chosen:
        res = TheoremResult(t.name, t.summary)
        for s in subs:
            if not t.applies(s):
                continue
            try:
                outcome = t.check(s)
            except PBZError as exc:
                outcome = f"{type(exc).__name__}: {exc}"
            res.record(s.A.name, outcome)
        report.results.append(res)
    if not catalog_only and (theorems is None or "enumeration-oracle" in theorems):
        report.results.append(enumeration_oracle(max_n))
    return report
