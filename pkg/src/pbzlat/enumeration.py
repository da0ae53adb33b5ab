"""Small bounded lattices and their involution / Brouwer expansions up to isomorphism.

Lattices are grown as naturally labelled posets (each new element's strict
down-set is an order ideal of the elements placed so far), filtered for the
lattice property, and deduplicated by a canonical form: the lexicographically
least flattened order matrix over all relabellings fixing bottom and top.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from .algebra import FiniteAlgebra, _lattice_tables, validate
from .errors import NotALattice, SizeLimit, ValidationError

MAX_LATTICE_SIZE = 8

REDUCT_CLASSES = ("BI", "PKA", "OL", "OML", "PARA")
BZ_CLASSES = ("BZL", "BZSTAR", "PBZSTAR", "AOL")


@dataclass(frozen=True, eq=False)
class BoundedLattice:
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray

    @property
    def size(self):
        return len(self.leq)

    def key(self) -> bytes:
        return np.packbits(self.leq).tobytes()


def make_lattice(leq) -> BoundedLattice:
    leq = np.asarray(leq, dtype=bool)
    meet, join = _lattice_tables(leq)
    for arr in (leq, meet, join):
        arr.setflags(write=False)
    return BoundedLattice(leq, meet, join)


@lru_cache(maxsize=None)
def _inner_perms(n: int) -> np.ndarray:
    """All permutations of 0..n-1 fixing 0 and n-1, as rows."""
    if n <= 2:
        return np.arange(n)[None, :]
    inner = np.array(list(itertools.permutations(range(1, n - 1))), dtype=np.int64)
    rows = len(inner)
    return np.hstack([np.zeros((rows, 1), np.int64), inner, np.full((rows, 1), n - 1)])


def canonical_leq(leq: np.ndarray) -> np.ndarray:
    """Lexicographically least relabelled order matrix (bottom/top fixed)."""
    n = len(leq)
    perms = _inner_perms(n)
    # relabelled[p][i, j] = leq[p[i], p[j]]
    flat = leq[perms[:, :, None], perms[:, None, :]].reshape(len(perms), n * n).astype(np.uint8)
    best = np.lexsort(flat.T[::-1])[0]
    return flat[best].reshape(n, n).astype(bool)


def _natural_posets(m: int):
    """Strict order relations on 0..m-1 with i < j only if i precedes j."""
    def grow(rel, k):
        if k == m:
            yield rel
            return
        # candidate strict down-sets of k: order ideals of rel on 0..k-1
        for mask in range(1 << k):
            down = [i for i in range(k) if mask >> i & 1]
            if all(mask >> j & 1 for i in down for j in range(k) if rel[j][i]):
                new = [row[:] for row in rel]
                for i in down:
                    new[i][k] = True
                yield from grow(new, k + 1)

    yield from grow([[False] * m for _ in range(m)], 0)


def enumerate_lattices(n: int) -> Iterator[BoundedLattice]:
    """Every bounded lattice with exactly ``n`` elements, one per isomorphism class."""
    if n < 1:
        return
    if n > MAX_LATTICE_SIZE:
        raise SizeLimit(f"lattice enumeration is capped at {MAX_LATTICE_SIZE} elements")
    if n <= 2:
        yield make_lattice(np.triu(np.ones((n, n), dtype=bool)))
        return
    m = n - 2
    seen = set()
    for rel in _natural_posets(m):
        leq = np.eye(n, dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        leq[1:n - 1, 1:n - 1] |= np.array(rel, dtype=bool).reshape(m, m)
        try:
            _lattice_tables(leq)
        except NotALattice:
            continue
        canon = canonical_leq(leq)
        key = np.packbits(canon).tobytes()
        if key in seen:
            continue
        seen.add(key)
        yield make_lattice(canon)


def enumerate_lattices_upto(max_n: int, min_n: int = 1) -> Iterator[BoundedLattice]:
    for n in range(min_n, max_n + 1):
        yield from enumerate_lattices(n)


def automorphisms(lat: BoundedLattice) -> np.ndarray:
    perms = _inner_perms(lat.size)
    leq = lat.leq
    ok = (leq[perms[:, :, None], perms[:, None, :]] == leq[None]).all(axis=(1, 2))
    return perms[ok]


def involutions(lat: BoundedLattice) -> list:
    """All order-reversing involutions of the lattice, as tables."""
    n = lat.size
    leq = lat.leq
    found = []
    prime = [-1] * n
    prime[0], prime[n - 1] = n - 1, 0
    if n == 1:
        return [np.zeros(1, dtype=np.int64)]

    def place(i):
        while i < n and prime[i] != -1:
            i += 1
        if i == n:
            p = np.array(prime, dtype=np.int64)
            if not (leq & ~leq[p[None, :], p[:, None]]).any():
                found.append(p)
            return
        for j in range(i, n - 1):
            if prime[j] != -1:
                continue
            prime[i], prime[j] = j, i
            place(i + 1)
            prime[i] = prime[j] = -1

    place(1)
    return found


def brouwer_complements(leq, meet, prime, fixed: Optional[dict] = None) -> Iterator[np.ndarray]:
    """All tables satisfying the four Brouwer-complement axioms.

    Candidates for ``x~`` are restricted to ``{y : x ^ y = 0, y <= x'}``, which
    every Brouwer complement obeys; antitonicity and ``x~' = x~~`` prune the
    search as values are placed.
    """
    leq = np.asarray(leq, dtype=bool)
    n = len(leq)
    fixed = dict(fixed or {})
    domains = []
    for v in range(n):
        dom = [u for u in range(n) if meet[v, u] == 0 and leq[u, prime[v]]]
        if v in fixed:
            dom = [fixed[v]] if fixed[v] in dom else []
        domains.append(dom)
    tilde = [-1] * n

    def consistent(v, u):
        for q in range(v):
            tq = tilde[q]
            if leq[q, v] and not leq[u, tq]:
                return False
            if leq[v, q] and not leq[tq, u]:
                return False
        # x~' = x~~ constrains the image of every placed value
        if u < v and tilde[u] != prime[u]:
            return False
        if u == v and u != prime[u]:
            return False
        for q in range(v):
            if tilde[q] == v and u != prime[v]:
                return False
        return True

    def place(v):
        if v == n:
            yield np.array(tilde, dtype=np.int64)
            return
        for u in domains[v]:
            if consistent(v, u):
                tilde[v] = u
                yield from place(v + 1)
                tilde[v] = -1

    for t in place(0):
        ok = np.all(meet[np.arange(n), t] == 0)
        ok = ok and np.all(leq[np.arange(n), t[t]])
        ok = ok and not (leq & ~leq[t[None, :], t[:, None]]).any()
        ok = ok and np.array_equal(prime[t], t[t])
        if ok:
            yield t


def _class_predicate(cls: str):
    from .classify import class_membership

    return lambda A: class_membership(A, cls)


def _canonical_expansion(autos, prime, tilde):
    best = None
    for g in autos:
        inv = np.argsort(g)
        p = tuple(g[prime[inv]].tolist())
        t = () if tilde is None else tuple(g[tilde[inv]].tolist())
        key = (p, t)
        if best is None or key < best:
            best = key
    return best


def enumerate_expansions(lat: BoundedLattice, cls: str, name_prefix: str = "L") -> Iterator[FiniteAlgebra]:
    """Expansions of ``lat`` in class ``cls``, one per isomorphism class.

    Reduct classes (BI, PKA, OL, OML, PARA) yield algebras without a Brouwer
    complement; BZ classes yield full (prime, tilde) expansions.
    """
    cls = cls.upper()
    if cls not in REDUCT_CLASSES + BZ_CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    keep = _class_predicate(cls)
    autos = automorphisms(lat)
    seen = set()
    count = 0
    for prime in involutions(lat):
        if cls in REDUCT_CLASSES:
            tildes = [None]
        else:
            base = validate(lat.leq, prime)
            if not base.layers["pka"]:
                continue
            tildes = brouwer_complements(lat.leq, lat.meet, prime)
        for tilde in tildes:
            A = validate(lat.leq, prime, tilde, name=f"{name_prefix}#{count}")
            if not keep(A):
                continue
            key = _canonical_expansion(autos, prime, tilde)
            if key in seen:
                continue
            seen.add(key)
            count += 1
            yield A


def enumerate_algebras(max_n: int, cls: str, min_n: int = 2) -> Iterator[FiniteAlgebra]:
    """All algebras of class ``cls`` with ``min_n..max_n`` elements, up to isomorphism."""
    for n in range(min_n, max_n + 1):
        for li, lat in enumerate(enumerate_lattices(n)):
            yield from enumerate_expansions(lat, cls, name_prefix=f"{cls.lower()}{n}.{li}")


# -- brute-force oracles ------------------------------------------------------

def _isomorphic_bruteforce(a_leq, a_ops, b_leq, b_ops) -> bool:
    n = len(a_leq)
    for perm in itertools.permutations(range(n)):
        p = np.array(perm)
        if not np.array_equal(b_leq[p[:, None], p[None, :]], a_leq):
            continue
        if all(np.array_equal(p[fa], fb[p]) for fa, fb in zip(a_ops, b_ops)):
            return True
    return False


def _labelled_lattices(n: int):
    """Every order on 0..n-1 with bottom 0, top n-1 that is a lattice (no pruning)."""
    inner = list(range(1, n - 1))
    pairs = [(i, j) for i in inner for j in inner if i != j]
    for mask in range(1 << len(pairs)):
        leq = np.eye(n, dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        for bit, (i, j) in enumerate(pairs):
            if mask >> bit & 1:
                leq[i, j] = True
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            continue
        if (leq[:, :, None] & leq[None, :, :] & ~leq[:, None, :]).any():
            continue
        try:
            _lattice_tables(leq)
        except NotALattice:
            continue
        yield leq


def oracle_lattice_classes(n: int) -> list:
    """Isomorphism classes of n-element lattices by brute force (for n <= 6)."""
    if n <= 2:
        return [np.triu(np.ones((n, n), dtype=bool))]
    reps = []
    for leq in _labelled_lattices(n):
        if not any(_isomorphic_bruteforce(leq, [], r, []) for r in reps):
            reps.append(leq)
    return reps


def _bz_prefilter(leq, prime, funcs):
    """Rows of ``funcs`` satisfying the four Brouwer axioms, checked in bulk."""
    n = len(leq)
    meet, _ = _lattice_tables(leq)
    rows = np.arange(len(funcs))[:, None]
    tt = funcs[rows, funcs]
    ok = (meet[np.arange(n), funcs] == 0).all(axis=1)
    ok &= leq[np.arange(n), tt].all(axis=1)
    ok &= (prime[funcs] == tt).all(axis=1)
    for a, b in zip(*np.nonzero(leq)):
        ok &= leq[funcs[:, b], funcs[:, a]]
    return funcs[ok]


def oracle_expansion_count(leq, cls: str) -> int:
    """Expansions of one lattice in class ``cls`` up to isomorphism, by brute force.

    Every function ``n -> n`` is tried for the involution and for the Brouwer
    complement, filtered by ``validate`` and the class predicate, and the
    survivors are bucketed by a permutation-by-permutation isomorphism test.
    """
    from .classify import class_membership

    leq = np.asarray(leq, dtype=bool)
    n = len(leq)
    funcs = np.indices((n,) * n).reshape(n, -1).T if n > 1 else np.zeros((1, 1), np.int64)
    # cheap vectorised prefilter: involutive and order-reversing
    invol = (funcs[np.arange(len(funcs))[:, None], funcs] == np.arange(n)).all(axis=1)
    primes = funcs[invol]
    keep = []
    for p in primes:
        if (leq & ~leq[p[None, :], p[:, None]]).any():
            continue
        keep.append(p)
    reps = []
    cls = cls.upper()
    for p in keep:
        if cls in REDUCT_CLASSES:
            tildes = [None]
        else:
            tildes = _bz_prefilter(leq, p, funcs)
        for t in tildes:
            try:
                A = validate(leq, p, t)
            except ValidationError:
                continue
            if not class_membership(A, cls):
                continue
            ops = [A.prime] + ([] if t is None else [A.tilde])
            if not any(_isomorphic_bruteforce(leq, ops, leq, r) for r in reps):
                reps.append(ops)
    return len(reps)
