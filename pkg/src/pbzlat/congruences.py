"""Congruences of finite algebras: principal congruences, Con(A), quotients, factor pairs.

A congruence is stored as a partition of ``0..n-1`` whose blocks are sorted
internally and listed by least element. The operations it must respect are
chosen by ``signature``: ``"bzl"`` uses meet, join, ' and ~, while ``"bi"``
drops ~ and works on the bounded involution lattice reduct.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Optional

import numpy as np

from .algebra import FiniteAlgebra, validate
from .errors import PreconditionError, SizeLimit

CON_MAX_SIZE = 24
SIGNATURES = ("bzl", "bi")


def operations(A: FiniteAlgebra, signature: str = "bzl"):
    """(unary tables, binary tables) that a congruence must be compatible with."""
    if signature not in SIGNATURES:
        raise ValueError(f"signature must be one of {SIGNATURES}, not {signature!r}")
    if signature == "bzl":
        if not A.has_tilde:
            raise PreconditionError(f"{A.name} has no Brouwer complement; use signature 'bi'")
        return [A.prime, A.tilde], [A.meet, A.join]
    return [A.prime], [A.meet, A.join]


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def labels(self):
        return [self.find(i) for i in range(len(self.parent))]


def _canonical(labels) -> tuple:
    """Relabel a block assignment so block ids follow least elements."""
    seen = {}
    return tuple(seen.setdefault(v, len(seen)) for v in labels)


@dataclass(frozen=True)
class Congruence:
    classes: tuple  # classes[i] is the block number of element i, blocks numbered by least element
    algebra: Optional[FiniteAlgebra] = field(default=None, compare=False, hash=False, repr=False)

    @classmethod
    def from_labels(cls, labels, algebra=None) -> "Congruence":
        return cls(_canonical(labels), algebra)

    @classmethod
    def from_blocks(cls, blocks, n: int, algebra=None) -> "Congruence":
        labels = [-1] * n
        for k, block in enumerate(blocks):
            for x in block:
                labels[x] = k
        if -1 in labels:
            raise ValueError("blocks do not cover the universe")
        return cls.from_labels(labels, algebra)

    @classmethod
    def identity(cls, n: int, algebra=None) -> "Congruence":
        return cls(tuple(range(n)), algebra)

    @classmethod
    def total(cls, n: int, algebra=None) -> "Congruence":
        return cls((0,) * n, algebra)

    @property
    def size(self) -> int:
        return len(self.classes)

    @cached_property
    def blocks(self) -> tuple:
        out = [[] for _ in range(max(self.classes) + 1 if self.classes else 0)]
        for x, k in enumerate(self.classes):
            out[k].append(x)
        return tuple(tuple(b) for b in out)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @cached_property
    def matrix(self) -> np.ndarray:
        c = np.asarray(self.classes)
        return c[:, None] == c[None, :]

    def related(self, x, y) -> bool:
        return self.classes[x] == self.classes[y]

    def block_of(self, x) -> tuple:
        return self.blocks[self.classes[x]]

    def zero_class(self) -> tuple:
        return self.block_of(0)

    def is_identity(self) -> bool:
        return self.num_blocks == self.size

    def is_total(self) -> bool:
        return self.num_blocks <= 1

    def __le__(self, other: "Congruence") -> bool:
        return bool(np.all(~self.matrix | other.matrix))

    def meet(self, other: "Congruence") -> "Congruence":
        return Congruence.from_labels(list(zip(self.classes, other.classes)), self.algebra)

    def join(self, other: "Congruence") -> "Congruence":
        uf = _UnionFind(self.size)
        for part in (self, other):
            for block in part.blocks:
                for x in block[1:]:
                    uf.union(block[0], x)
        return Congruence.from_labels(uf.labels(), self.algebra)

    def compose(self, other: "Congruence") -> np.ndarray:
        """Relation matrix of self o other: x R z iff x self y and y other z for some y."""
        return (self.matrix.astype(np.int64) @ other.matrix.astype(np.int64)) > 0

    def to_list(self) -> list:
        return [list(b) for b in self.blocks]

    def __repr__(self):
        inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"Congruence({inner})"


def is_compatible(A: FiniteAlgebra, theta: Congruence, signature: str = "bzl"):
    """Witness ``(op, x, y, u)`` of an incompatibility, or None.

    ``x`` and ``y`` are related but ``f(x,u)`` and ``f(y,u)`` are not; ``u`` is
    None for unary operations.
    """
    unary, binary = operations(A, signature)
    c = np.asarray(theta.classes)
    rel = theta.matrix
    names_u = ["prime", "tilde"]
    names_b = ["meet", "join"]
    for name, f in zip(names_b, binary):
        # f(x,u) ~ f(y,u) for x ~ y, every u (commutative, so one side suffices)
        cls = c[f]  # cls[x, u]
        bad = rel[:, :, None] & (cls[:, None, :] != cls[None, :, :])
        hit = np.argwhere(bad)
        if len(hit):
            x, y, u = (int(v) for v in hit[0])
            return (name, x, y, u)
    for name, f in zip(names_u, unary):
        bad = rel & (c[f][:, None] != c[f][None, :])
        hit = np.argwhere(bad)
        if len(hit):
            x, y = (int(v) for v in hit[0])
            return (name, x, y, None)
    return None


def principal_congruence(A: FiniteAlgebra, a, b, signature: str = "bzl") -> Congruence:
    """Cg(a, b): the least congruence identifying ``a`` and ``b``.

    Worklist closure: whenever two classes merge, the images of the merged pair
    under every unary operation and every translation u -> f(., u) are queued.
    """
    a, b = A.element(a), A.element(b)
    unary, binary = operations(A, signature)
    uf = _UnionFind(A.size)
    work = [(a, b)]
    while work:
        x, y = work.pop()
        if not uf.union(x, y):
            continue
        for f in unary:
            work.append((int(f[x]), int(f[y])))
        for f in binary:
            rx, ry = f[x], f[y]
            for u in np.flatnonzero(rx != ry):
                work.append((int(rx[u]), int(ry[u])))
    return Congruence.from_labels(uf.labels(), A)


@dataclass
class ConLattice:
    algebra: FiniteAlgebra
    congruences: list  # sorted: identity first, total last
    signature: str = "bzl"

    def __post_init__(self):
        index = {c: i for i, c in enumerate(self.congruences)}
        k = len(self.congruences)
        self.meet = np.zeros((k, k), dtype=np.int64)
        self.join = np.zeros((k, k), dtype=np.int64)
        for i, c in enumerate(self.congruences):
            for j, d in enumerate(self.congruences):
                self.meet[i, j] = index[c.meet(d)]
                self.join[i, j] = index[c.join(d)]
        self.index = index
        self.bottom = index[Congruence.identity(self.algebra.size)]
        self.top = index[Congruence.total(self.algebra.size)]

    def __len__(self):
        return len(self.congruences)

    def __iter__(self):
        return iter(self.congruences)

    def __getitem__(self, i):
        return self.congruences[i]

    @property
    def identity(self) -> Congruence:
        return self.congruences[self.bottom]

    @property
    def total(self) -> Congruence:
        return self.congruences[self.top]

    def with_zero_class(self, ideal) -> list:
        ideal = tuple(sorted(ideal))
        return [c for c in self.congruences if c.zero_class() == ideal]


def _sort_key(c: Congruence):
    return (-c.num_blocks, c.blocks)


def all_congruences(A: FiniteAlgebra, signature: str = "bzl", max_size: int = CON_MAX_SIZE) -> ConLattice:
    """Con(A) as the join-closure of the principal congruences together with the identity."""
    if A.size > max_size:
        raise SizeLimit(f"{A.name} has {A.size} elements; congruence cap is {max_size}")
    n = A.size
    principal = {principal_congruence(A, a, b, signature) for a in range(n) for b in range(a + 1, n)}
    found = {Congruence.identity(n, A)} | principal
    frontier = list(principal)
    gens = list(principal)
    while frontier:
        fresh = []
        for c in frontier:
            for g in gens:
                j = c.join(g)
                if j not in found:
                    found.add(j)
                    fresh.append(j)
        frontier = fresh
    for c in found:
        if is_compatible(A, c, signature) is not None:
            raise AssertionError(f"closure produced an incompatible partition {c}")
    cons = sorted((Congruence(c.classes, A) for c in found), key=_sort_key)
    return ConLattice(A, cons, signature)


def set_partitions(n: int):
    """Every partition of ``0..n-1`` as a restricted growth string."""
    if n == 0:
        yield ()
        return

    def grow(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for k in range(top + 2):
            prefix.append(k)
            yield from grow(prefix, max(top, k))
            prefix.pop()

    yield from grow([0], 0)


def congruences_by_partition(A: FiniteAlgebra, signature: str = "bzl", max_size: int = 8) -> list:
    """Reference oracle: test every partition of the universe for compatibility."""
    if A.size > max_size:
        raise SizeLimit(f"partition oracle limited to {max_size} elements")
    out = [Congruence(p, A) for p in set_partitions(A.size) if is_compatible(A, Congruence(p), signature) is None]
    return sorted(out, key=_sort_key)


def quotient(A: FiniteAlgebra, theta: Congruence, signature: str = "bzl") -> FiniteAlgebra:
    """A/theta with blocks ordered by least element, except that the top block comes last."""
    blocks = list(theta.blocks)
    top_block = theta.block_of(A.top)
    order = [b for b in blocks if b != top_block] + [top_block]
    pos = {b: i for i, b in enumerate(order)}
    reps = [b[0] for b in order]
    of = lambda x: pos[theta.block_of(int(x))]  # noqa: E731
    k = len(order)
    leq = np.zeros((k, k), dtype=bool)
    for i, r in enumerate(reps):
        for j, s in enumerate(reps):
            leq[i, j] = of(A.join[r, s]) == j
    prime = [of(A.prime[r]) for r in reps]
    tilde = None
    if signature == "bzl" and A.has_tilde:
        tilde = [of(A.tilde[r]) for r in reps]
    labels = [A.label(b[0]) if len(b) == 1 else "{" + ",".join(A.label(x) for x in b) + "}" for b in order]
    return validate(leq, prime, tilde, name=f"{A.name}/theta", labels=labels)


def factor_pairs(A: FiniteAlgebra, con: Optional[ConLattice] = None, signature: str = "bzl") -> list:
    """All (theta, phi) with theta ^ phi = identity and theta o phi = phi o theta = total."""
    con = con or all_congruences(A, signature)
    out = []
    for th, ph in product(con.congruences, repeat=2):
        if not th.meet(ph).is_identity():
            continue
        if th.compose(ph).all() and ph.compose(th).all():
            out.append((th, ph))
    return out


def is_factor_pair(theta: Congruence, phi: Congruence) -> bool:
    return theta.meet(phi).is_identity() and bool(theta.compose(phi).all()) and bool(phi.compose(theta).all())


def is_pseudo_identical(A: FiniteAlgebra, theta: Congruence) -> bool:
    return theta.zero_class() == (0,) and theta.block_of(A.top) == (A.top,)


def permute_at_zero(A: FiniteAlgebra, con: Optional[ConLattice] = None, signature: str = "bzl"):
    """First pair (theta, phi) whose two composites have different 0-classes, or None."""
    con = con or all_congruences(A, signature)
    for th, ph in product(con.congruences, repeat=2):
        if not np.array_equal(th.compose(ph)[0], ph.compose(th)[0]):
            return th, ph
    return None


@dataclass(frozen=True)
class StructuralPredicates:
    directly_indecomposable: bool
    subdirectly_irreducible: bool
    simple: bool
    reduced: bool
    monolith: Optional[Congruence] = None
    zero_epsilon: Optional[Congruence] = None  # largest congruence with 0-class {0}

    def to_dict(self) -> dict:
        return {
            "directly_indecomposable": self.directly_indecomposable,
            "subdirectly_irreducible": self.subdirectly_irreducible,
            "simple": self.simple,
            "reduced": self.reduced,
            "monolith": None if self.monolith is None else self.monolith.to_list(),
            "zero_epsilon": None if self.zero_epsilon is None else self.zero_epsilon.to_list(),
        }


def structural_predicates(A: FiniteAlgebra, con: Optional[ConLattice] = None,
                          signature: str = "bzl") -> StructuralPredicates:
    con = con or all_congruences(A, signature)
    nontrivial = A.size > 1
    pairs = factor_pairs(A, con, signature)
    di = nontrivial and all(th.is_identity() or th.is_total() for th, _ in pairs)
    proper = [c for c in con.congruences if not c.is_identity()]
    monolith = None
    if nontrivial:
        m = proper[0]
        for c in proper[1:]:
            m = m.meet(c)
        if not m.is_identity():
            monolith = Congruence(m.classes, A)
    simple = nontrivial and len(con) == 2
    zero = con.with_zero_class((0,))
    eps = zero[0]
    for c in zero[1:]:
        eps = eps.join(c)
    eps = Congruence(eps.classes, A)
    return StructuralPredicates(
        directly_indecomposable=di,
        subdirectly_irreducible=monolith is not None,
        simple=simple,
        reduced=eps.is_identity(),
        monolith=monolith,
        zero_epsilon=eps,
    )
