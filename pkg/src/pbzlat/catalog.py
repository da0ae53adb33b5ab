"""Named algebras and the claims made about each of them.

``build("D3xD2")`` returns the direct product of catalog entries; any factor
may itself be a catalog name.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import FiniteAlgebra, adjoin_trivial_brouwer, direct_product, validate
from .classify import classify
from .enumeration import brouwer_complements
from .errors import UnknownName, ValidationError


def from_covers(labels, covers, prime, tilde=None, name=""):
    """Build an algebra from a cover relation and unary maps given by label.

    ``covers`` is a list of (lower, upper) label pairs; the order is its
    reflexive-transitive closure. ``prime`` and ``tilde`` map labels to labels.
    """
    n = len(labels)
    idx = {s: i for i, s in enumerate(labels)}
    leq = np.eye(n, dtype=bool)
    for lo, hi in covers:
        leq[idx[lo], idx[hi]] = True
    for k in range(n):
        leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
    p = [idx[prime[s]] for s in labels]
    t = None if tilde is None else [idx[tilde[s]] for s in labels]
    return validate(leq, p, t, name=name, labels=labels)


def chain_reduct(n: int, name: str = "") -> FiniteAlgebra:
    """The n-element chain with its unique order-reversing involution."""
    leq = np.triu(np.ones((n, n), dtype=bool))
    labels = ["0"] + [chr(ord("a") + i) for i in range(n - 2)] + (["1"] if n > 1 else [])
    return validate(leq, np.arange(n)[::-1].copy(), name=name or f"C{n}", labels=labels)


def kleene_chain(n: int) -> FiniteAlgebra:
    return adjoin_trivial_brouwer(chain_reduct(n), name=f"D{n}")


def _boolean(k: int) -> FiniteAlgebra:
    A = kleene_chain(2)
    for _ in range(k - 1):
        A = direct_product(A, kleene_chain(2))
    labels = []
    for i in range(A.size):
        bits = format(i, f"0{k}b")
        labels.append("0" if "1" not in bits else "1" if "0" not in bits else bits)
    return validate(A.leq, A.prime, A.tilde, name=f"BOOL{2 ** k}", labels=labels)


def _mo2() -> FiniteAlgebra:
    labels = ["0", "a", "a'", "b", "b'", "1"]
    covers = [("0", s) for s in labels[1:5]] + [(s, "1") for s in labels[1:5]]
    prime = {"0": "1", "1": "0", "a": "a'", "a'": "a", "b": "b'", "b'": "b"}
    return from_covers(labels, covers, prime, prime, name="MO2")


def _o6() -> FiniteAlgebra:
    labels = ["0", "a", "b", "b'", "a'", "1"]
    covers = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")]
    prime = {"0": "1", "1": "0", "a": "a'", "a'": "a", "b": "b'", "b'": "b"}
    return from_covers(labels, covers, prime, prime, name="O6")


def _m3b() -> FiniteAlgebra:
    labels = ["0", "a", "a'", "b", "1"]
    covers = [("0", s) for s in ("a", "a'", "b")] + [(s, "1") for s in ("a", "a'", "b")]
    prime = {"0": "1", "1": "0", "a": "a'", "a'": "a", "b": "b"}
    tilde = {"0": "1", "1": "0", "a": "a'", "a'": "a", "b": "0"}
    return from_covers(labels, covers, prime, tilde, name="M3B")


def _boolean_ordinal_sum() -> FiniteAlgebra:
    # ordinal sum of the four-element Boolean lattice with itself
    labels = ["0", "a", "b", "c", "b'", "a'", "1"]
    covers = [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"),
              ("c", "a'"), ("c", "b'"), ("a'", "1"), ("b'", "1")]
    prime = {"0": "1", "1": "0", "a": "a'", "a'": "a", "b": "b'", "b'": "b", "c": "c"}
    reduct = from_covers(labels, covers, prime, name="COGOTTI7")
    return adjoin_trivial_brouwer(reduct)


H_LABELS = ["0", "d", "e", "f", "g", "a", "b", "c", "b'", "a'", "f'", "e'", "g'", "d'", "1"]
H_COVERS = [
    ("0", "d"), ("0", "e"), ("0", "f"), ("0", "g"),
    ("d", "a"), ("d", "c"), ("e", "b"), ("e", "c"),
    ("f", "b'"), ("f", "c"), ("g", "a'"), ("g", "c"),
    ("a", "g'"), ("b", "f'"), ("c", "d'"), ("c", "e'"), ("c", "f'"), ("c", "g'"),
    ("b'", "e'"), ("a'", "d'"),
    ("d'", "1"), ("e'", "1"), ("f'", "1"), ("g'", "1"),
]
H_PRIME = {"0": "1", "c": "c", **{s: s + "'" for s in "abdefg"}}
H_PRIME.update({v: k for k, v in list(H_PRIME.items())})
# Brouwer complement as labelled in the figure; the rest is forced by the axioms
H_TILDE_PINNED = {"g": "a", "f": "b", "e": "b'", "d": "a'"}


def _h() -> FiniteAlgebra:
    reduct = from_covers(H_LABELS, H_COVERS, H_PRIME, name="H16")
    pos = {s: i for i, s in enumerate(H_LABELS)}
    fixed = {pos[k]: pos[v] for k, v in H_TILDE_PINNED.items()}
    found = list(brouwer_complements(reduct.leq, reduct.meet, reduct.prime, fixed))
    if len(found) != 1:
        raise ValidationError(f"H16: {len(found)} Brouwer completions of the pinned values, expected exactly 1")
    return validate(reduct.leq, reduct.prime, found[0], name="H16", labels=H_LABELS)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    builder: Callable[[], FiniteAlgebra]
    expected: dict  # class label or identity name -> bool
    note: str = ""

    def check(self, A=None) -> dict:
        """Expected claims that the built algebra does not reproduce."""
        report = classify(A if A is not None else self.builder())
        return {k: (v, report[k]) for k, v in self.expected.items() if report[k] != v}


CATALOG = {
    e.name: e
    for e in [
        CatalogEntry("D2", lambda: kleene_chain(2), {"AOL": True, "OML": True}),
        CatalogEntry("D3", lambda: kleene_chain(3),
                     {"AOL": True, "PBZSTAR": True, "OL": False, "OML": False, "SK": True}),
        CatalogEntry("D4", lambda: kleene_chain(4),
                     {"AOL": True, "SDM": True, "AOL2": True, "J2": True, "SK": False}),
        CatalogEntry("D5", lambda: kleene_chain(5), {"AOL": True, "DIST": True, "SDM": True}),
        CatalogEntry("BOOL4", lambda: _boolean(2), {"OML": True, "DIST": True, "AOL": False}),
        CatalogEntry("BOOL8", lambda: _boolean(3), {"OML": True, "DIST": True, "AOL": False}),
        CatalogEntry("MO2", _mo2,
                     {"OML": True, "AOL": False, "SDM": True, "J2": True, "SK": True}),
        CatalogEntry("O6", _o6, {"OL": True, "OML": False}),
        CatalogEntry("M3B", _m3b,
                     {"PBZSTAR": True, "SK": True, "J2": True, "WSDM": False, "SDM": False}),
        CatalogEntry("COGOTTI7", _boolean_ordinal_sum, {"AOL": True, "DIST": True}),
        CatalogEntry("H16", _h,
                     {"PBZSTAR": True, "SK": True, "SDM": True, "J2": False},
                     note="15 elements; the name follows the catalog convention"),
    ]
}


def names():
    return list(CATALOG)


def build(name: str) -> FiniteAlgebra:
    key = name.strip().upper()
    if "X" in key and key not in CATALOG:
        parts = key.split("X")
        if all(parts):
            A = build(parts[0])
            for part in parts[1:]:
                A = direct_product(A, build(part))
            return A
    if key not in CATALOG:
        raise UnknownName(f"unknown algebra {name!r}; known: {', '.join(CATALOG)}")
    return CATALOG[key].builder()
