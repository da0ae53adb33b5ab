"""Finite algebras of type (2,2,1,1,0,0) stored as validated operation tables.

The universe is always ``0..n-1`` with ``0`` the bottom and ``n-1`` the top.
Every table is a read-only numpy integer array, so algebras can be shared
freely between checks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import (
    BZAxiomViolation,
    CharacterizationMismatch,
    InvolutionViolation,
    NotALattice,
    NotAPartialOrder,
    PreconditionError,
    SizeLimit,
    ValidationError,
)

MAX_SIZE = 64


def _frozen(arr):
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def _first(mask):
    """Lexicographically least index tuple where ``mask`` is true, else None."""
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    name: str
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    prime: np.ndarray
    tilde: Optional[np.ndarray]
    layers: Mapping[str, bool] = field(default_factory=dict)
    labels: Optional[tuple] = None

    @property
    def size(self) -> int:
        return len(self.prime)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.size - 1

    @property
    def has_tilde(self) -> bool:
        return self.tilde is not None

    @property
    def elements(self):
        return range(self.size)

    @cached_property
    def box(self) -> np.ndarray:
        """``x'~`` for every element."""
        self._need_tilde()
        return _frozen(self.tilde[self.prime])

    @cached_property
    def diamond(self) -> np.ndarray:
        """``x~~`` for every element."""
        self._need_tilde()
        return _frozen(self.tilde[self.tilde])

    def _need_tilde(self):
        if self.tilde is None:
            raise PreconditionError(f"{self.name}: algebra has no Brouwer complement")

    def label(self, x) -> str:
        if self.labels is not None:
            return self.labels[int(x)]
        return str(int(x))

    def element(self, ref) -> int:
        """Resolve an element given by index or by label."""
        if isinstance(ref, (int, np.integer)):
            if not 0 <= int(ref) < self.size:
                raise KeyError(ref)
            return int(ref)
        if self.labels is not None and ref in self.labels:
            return self.labels.index(ref)
        if isinstance(ref, str) and ref.lstrip("-").isdigit():
            return self.element(int(ref))
        raise KeyError(ref)

    def same_tables(self, other: "FiniteAlgebra") -> bool:
        if self.size != other.size or self.has_tilde != other.has_tilde:
            return False
        same = np.array_equal(self.leq, other.leq) and np.array_equal(self.prime, other.prime)
        if self.has_tilde:
            same = same and np.array_equal(self.tilde, other.tilde)
        return same

    def leq_pairs(self):
        return [(int(a), int(b)) for a, b in np.argwhere(self.leq)]

    def __repr__(self):
        kind = "BZ" if self.has_tilde else "BI"
        return f"FiniteAlgebra({self.name!r}, n={self.size}, {kind})"


def _lattice_tables(leq):
    n = len(leq)
    # lower[a, b, x]: x is a lower bound of a and b
    lower = leq.T[:, None, :] & leq.T[None, :, :]
    upper = leq[:, None, :] & leq[None, :, :]
    # x in lower => x <= m, for every candidate m
    glb = lower & np.all(~lower[:, :, :, None] | leq[None, None, :, :], axis=2)
    lub = upper & np.all(~upper[:, :, :, None] | leq.T[None, None, :, :], axis=2)
    no_meet, no_join = ~glb.any(axis=2), ~lub.any(axis=2)
    w = _first(no_meet | no_join)
    if w is not None:
        a, b = w
        kind = "meet" if no_meet[a, b] else "join"
        raise NotALattice(f"elements {a} and {b} have no {kind}", (a, b))
    meet = glb.argmax(axis=2).astype(np.int64)
    join = lub.argmax(axis=2).astype(np.int64)
    assert meet.shape == (n, n)
    return meet, join


def _as_table(values, n, what, exc):
    arr = np.asarray(values)
    if arr.shape != (n,) or not np.issubdtype(arr.dtype, np.integer):
        raise exc(f"{what} must be a length-{n} integer table", None)
    bad = _first((arr < 0) | (arr >= n))
    if bad is not None:
        raise exc(f"{what}({bad[0]}) = {arr[bad[0]]} is outside 0..{n - 1}", bad)
    return arr.astype(np.int64)


def validate(leq, prime, tilde=None, name: str = "", labels: Optional[Sequence[str]] = None) -> FiniteAlgebra:
    """Check the axiom layers and build an immutable algebra.

    Raises the first failing layer: partial order, lattice, involution, then
    the Brouwer-complement axioms (collected per axiom). The pseudo-Kleene
    condition is recorded in ``layers`` and only enforced when ``tilde`` is
    given, since a BZ-lattice must have a pseudo-Kleene reduct.
    """
    leq = np.asarray(leq)
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
        raise NotAPartialOrder("leq must be a square matrix")
    n = leq.shape[0]
    if n == 0:
        raise ValidationError("algebras are nonempty")
    if n > MAX_SIZE:
        raise SizeLimit(f"size {n} exceeds the core cap of {MAX_SIZE}")
    if not np.isin(leq, (0, 1)).all():
        raise NotAPartialOrder("leq entries must be 0/1")
    leq = leq.astype(bool)

    w = _first(~np.diag(leq))
    if w is not None:
        raise NotAPartialOrder(f"leq is not reflexive at {w[0]}", w)
    w = _first(leq & leq.T & ~np.eye(n, dtype=bool))
    if w is not None:
        raise NotAPartialOrder(f"leq is not antisymmetric at {w}", w)
    w = _first(leq[:, :, None] & leq[None, :, :] & ~leq[:, None, :])
    if w is not None:
        raise NotAPartialOrder(f"leq is not transitive at {w}", w)
    w = _first(~leq[0])
    if w is not None:
        raise NotALattice(f"0 is not below {w[0]}", (0, w[0]))
    w = _first(~leq[:, n - 1])
    if w is not None:
        raise NotALattice(f"{w[0]} is not below the top {n - 1}", (w[0], n - 1))
    meet, join = _lattice_tables(leq)

    prime = _as_table(prime, n, "prime", InvolutionViolation)
    w = _first(prime[prime] != np.arange(n))
    if w is not None:
        raise InvolutionViolation(f"prime is not an involution at {w[0]}", w)
    w = _first(leq & ~leq[prime[None, :], prime[:, None]])
    if w is not None:
        raise InvolutionViolation(f"prime does not reverse order at {w}", w)

    kleene = meet[np.arange(n), prime]
    dual = join[np.arange(n), prime]
    pka_fail = _first(~leq[kleene[:, None], dual[None, :]])
    layers = {"lattice": True, "involution": True, "pka": pka_fail is None, "bz": False}

    if tilde is not None:
        tilde = _as_table(tilde, n, "tilde", lambda m, w: BZAxiomViolation({"range": w}))
        violations = {}
        if pka_fail is not None:
            violations["pka"] = pka_fail
        checks = {
            "1": meet[np.arange(n), tilde] != 0,
            "2": ~leq[np.arange(n), tilde[tilde]],
            "3": leq & ~leq[tilde[None, :], tilde[:, None]],
            "4": prime[tilde] != tilde[tilde],
        }
        for axiom, mask in checks.items():
            w = _first(mask)
            if w is not None:
                violations[axiom] = w
        if violations:
            raise BZAxiomViolation(violations)
        layers["bz"] = True
        tilde = _frozen(tilde)

    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n or len(set(labels)) != n:
            raise ValidationError("labels must be n distinct strings")

    return FiniteAlgebra(
        name=name,
        leq=_frozen(leq),
        meet=_frozen(meet),
        join=_frozen(join),
        prime=_frozen(prime),
        tilde=tilde,
        layers=layers,
        labels=labels,
    )


# -- predicates ---------------------------------------------------------------

def kleene_sharp(A: FiniteAlgebra) -> np.ndarray:
    idx = np.arange(A.size)
    return A.meet[idx, A.prime] == 0


def is_pka(A: FiniteAlgebra) -> bool:
    return bool(A.layers["pka"])


def is_ortholattice(A: FiniteAlgebra) -> bool:
    return bool(kleene_sharp(A).all())


def is_orthomodular(A: FiniteAlgebra) -> bool:
    if not is_ortholattice(A):
        return False
    a, b = np.nonzero(A.leq)
    return bool(np.all(A.join[A.meet[b, A.prime[a]], a] == b))


def is_paraorthomodular(A: FiniteAlgebra) -> bool:
    a, b = np.nonzero(A.leq)
    premise = A.meet[A.prime[a], b] == 0
    return bool(np.all(~premise | (a == b)))


def satisfies_star(A: FiniteAlgebra) -> bool:
    """(a ^ a')~ <= a~ v []a for every a."""
    idx = np.arange(A.size)
    lhs = A.tilde[A.meet[idx, A.prime]]
    rhs = A.join[A.tilde, A.box]
    return bool(A.leq[lhs, rhs].all())


def has_trivial_tilde(A: FiniteAlgebra) -> bool:
    expected = np.zeros(A.size, dtype=np.int64)
    expected[0] = A.top
    return bool(np.array_equal(A.tilde, expected))


def is_bz_star(A: FiniteAlgebra) -> bool:
    return A.has_tilde and satisfies_star(A)


def is_pbz_star(A: FiniteAlgebra) -> bool:
    return is_bz_star(A) and is_paraorthomodular(A)


def is_antiortholattice(A: FiniteAlgebra) -> bool:
    return is_pbz_star(A) and has_trivial_tilde(A)


def sharp_sets(A: FiniteAlgebra):
    """Kleene-sharp, diamond-sharp and Brouwer-sharp elements, as sorted lists."""
    A._need_tilde()
    idx = np.arange(A.size)
    s_k = np.nonzero(kleene_sharp(A))[0]
    s_d = np.nonzero(A.diamond == idx)[0]
    s_b = np.nonzero(A.join[idx, A.tilde] == A.top)[0]
    images = np.unique(A.tilde)
    if not np.array_equal(images, s_d):
        raise CharacterizationMismatch(f"{A.name}: diamond-sharp set differs from the image of ~")
    return [int(v) for v in s_k], [int(v) for v in s_d], [int(v) for v in s_b]


# -- constructions ------------------------------------------------------------

def forget_tilde(A: FiniteAlgebra) -> FiniteAlgebra:
    return validate(A.leq, A.prime, None, name=A.name, labels=A.labels)


def adjoin_trivial_brouwer(A: FiniteAlgebra, name: Optional[str] = None) -> FiniteAlgebra:
    if not is_pka(A):
        raise PreconditionError(f"{A.name}: the trivial Brouwer complement needs a pseudo-Kleene reduct")
    tilde = np.zeros(A.size, dtype=np.int64)
    tilde[0] = A.top
    return validate(A.leq, A.prime, tilde, name=name or A.name, labels=A.labels)


def direct_product(A: FiniteAlgebra, B: FiniteAlgebra, name: Optional[str] = None) -> FiniteAlgebra:
    n, m = A.size, B.size
    leq = (A.leq[:, None, :, None] & B.leq[None, :, None, :]).reshape(n * m, n * m)
    prime = (A.prime[:, None] * m + B.prime[None, :]).reshape(-1)
    tilde = None
    if A.has_tilde and B.has_tilde:
        tilde = (A.tilde[:, None] * m + B.tilde[None, :]).reshape(-1)
    labels = [f"({A.label(i)},{B.label(j)})" for i in range(n) for j in range(m)]
    return validate(leq, prime, tilde, name=name or f"{A.name}x{B.name}", labels=labels)


def relabel(A: FiniteAlgebra, perm, name: Optional[str] = None) -> FiniteAlgebra:
    """Move element ``i`` to position ``perm[i]``; ``perm`` must fix 0 and top."""
    perm = np.asarray(perm, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(A.size)):
        raise ValueError("perm must be a permutation of the universe")
    if perm[0] != 0 or perm[A.top] != A.top:
        raise ValueError("perm must fix bottom and top")
    inv = np.argsort(perm)
    leq = A.leq[np.ix_(inv, inv)]
    prime = perm[A.prime[inv]]
    tilde = None if A.tilde is None else perm[A.tilde[inv]]
    labels = None if A.labels is None else [A.labels[i] for i in inv]
    return validate(leq, prime, tilde, name=name or A.name, labels=labels)


def subalgebra(A: FiniteAlgebra, elements, name: Optional[str] = None) -> FiniteAlgebra:
    """Restrict A to a subuniverse closed under all operations."""
    elems = sorted({int(e) for e in elements})
    if 0 not in elems or A.top not in elems:
        raise ValueError("a subuniverse contains both constants")
    sel = np.array(elems)
    closed = np.isin(A.meet[np.ix_(sel, sel)], sel).all() and np.isin(A.join[np.ix_(sel, sel)], sel).all()
    closed = closed and np.isin(A.prime[sel], sel).all()
    if A.has_tilde:
        closed = closed and np.isin(A.tilde[sel], sel).all()
    if not closed:
        raise ValueError(f"{elems} is not closed under the operations of {A.name}")
    # keep top last
    sel_order = [e for e in elems if e != A.top] + [A.top]
    pos = {e: i for i, e in enumerate(sel_order)}
    so = np.array(sel_order)
    leq = A.leq[np.ix_(so, so)]
    prime = [pos[int(A.prime[e])] for e in so]
    tilde = None if not A.has_tilde else [pos[int(A.tilde[e])] for e in so]
    labels = [A.label(e) for e in so]
    return validate(leq, prime, tilde, name=name or f"{A.name}|sub", labels=labels)


# -- JSON documents -----------------------------------------------------------

def to_dict(A: FiniteAlgebra) -> dict:
    doc = {
        "name": A.name,
        "size": A.size,
        "leq": A.leq.astype(int).tolist(),
        "prime": A.prime.tolist(),
        "tilde": None if A.tilde is None else A.tilde.tolist(),
    }
    if A.labels is not None:
        doc["labels"] = list(A.labels)
    return doc


def from_dict(doc: Mapping) -> FiniteAlgebra:
    for key in ("name", "size", "leq", "prime"):
        if key not in doc:
            raise ValidationError(f"algebra document lacks {key!r}")
    leq = doc["leq"]
    if len(leq) != doc["size"]:
        raise ValidationError(f"size is {doc['size']} but leq has {len(leq)} rows")
    return validate(leq, doc["prime"], doc.get("tilde"), name=doc["name"], labels=doc.get("labels"))


def dumps(A: FiniteAlgebra) -> str:
    return json.dumps(to_dict(A), indent=None, separators=(",", ":"))


def load(path) -> FiniteAlgebra:
    with open(path) as fh:
        return from_dict(json.load(fh))


def save(A: FiniteAlgebra, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_dict(A), fh)
        fh.write("\n")
