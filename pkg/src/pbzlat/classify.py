"""Class membership and named-identity satisfaction for a single algebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import algebra as alg
from .algebra import FiniteAlgebra
from .terms import CATALOG, LATTICE_ONLY, check_identity

CLASS_LABELS = ("BI", "PKA", "OL", "OML", "PARA", "BZL", "BZSTAR", "PBZSTAR", "AOL")

# label -> labels it implies
HIERARCHY = {
    "AOL": ("PBZSTAR",),
    "PBZSTAR": ("BZSTAR", "PARA"),
    "BZSTAR": ("BZL",),
    "BZL": ("PKA",),
    "OML": ("OL", "PARA"),
    "OL": ("PKA",),
    "PKA": ("BI",),
}


def class_membership(A: FiniteAlgebra, label: str) -> bool:
    label = label.upper()
    if label == "BI":
        return True
    if label == "PKA":
        return alg.is_pka(A)
    if label == "OL":
        return alg.is_ortholattice(A)
    if label == "OML":
        return alg.is_orthomodular(A)
    if label == "PARA":
        return alg.is_paraorthomodular(A)
    if label == "BZL":
        return A.has_tilde
    if label == "BZSTAR":
        return alg.is_bz_star(A)
    if label == "PBZSTAR":
        return alg.is_pbz_star(A)
    if label == "AOL":
        return alg.is_antiortholattice(A)
    raise ValueError(f"unknown class label {label!r}")


@dataclass(frozen=True)
class ClassificationReport:
    name: str
    classes: dict
    identities: dict
    s_k: Optional[tuple] = None
    s_diamond: Optional[tuple] = None
    s_b: Optional[tuple] = None
    labels: Optional[tuple] = field(default=None, compare=False)

    def __getitem__(self, key):
        key = key.upper()
        if key in self.classes:
            return self.classes[key]
        return self.identities[key]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "classes": dict(self.classes),
            "identities": dict(self.identities),
            "sharp": None if self.s_k is None else {
                "S_K": list(self.s_k),
                "S_diamond": list(self.s_diamond),
                "S_B": list(self.s_b),
            },
        }


def classify(A: FiniteAlgebra) -> ClassificationReport:
    classes = {label: class_membership(A, label) for label in CLASS_LABELS}
    identities = {}
    for name, ident in CATALOG.items():
        if A.has_tilde or name in LATTICE_ONLY:
            identities[name] = check_identity(A, ident).holds
        else:
            identities[name] = None
    sharp = (None, None, None)
    if A.has_tilde:
        sharp = tuple(tuple(s) for s in alg.sharp_sets(A))
    return ClassificationReport(A.name, classes, identities, *sharp, labels=A.labels)


def hierarchy_violations(report: ClassificationReport) -> list:
    """Implications of the class hierarchy that the report breaks (should be empty)."""
    bad = []
    for label, implied in HIERARCHY.items():
        if report.classes[label]:
            bad.extend((label, other) for other in implied if not report.classes[other])
    if report.s_k is not None:
        if not set(report.s_diamond) <= set(report.s_b) <= set(report.s_k):
            bad.append(("S_diamond<=S_B<=S_K", None))
    return bad
