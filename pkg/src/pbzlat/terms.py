"""Terms over (^, v, ', ~, 0, 1), exhaustive identity checking, named identities.

Text syntax::

    term := var | '0' | '1' | '(' term '^' term ')' | '(' term 'v' term ')'
          | term "'" | term '~'
    var  := x | y | z | w

Inequalities ``s <= t`` are normalised to ``s = s ^ t`` so one checker
handles both forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .algebra import FiniteAlgebra
from .errors import TermSyntaxError, UnboundVariable, UnknownName

VARIABLES = "xyzw"


class Term:
    __slots__ = ()

    def __and__(self, other):
        return Meet(self, other)

    def __or__(self, other):
        return Join(self, other)

    def __str__(self):
        return render_term(self)


@dataclass(frozen=True)
class Var(Term):
    index: int


@dataclass(frozen=True)
class Const(Term):
    value: int  # 0 or 1


@dataclass(frozen=True)
class Meet(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Join(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Prime(Term):
    arg: Term


@dataclass(frozen=True)
class Tilde(Term):
    arg: Term


ZERO = Const(0)
ONE = Const(1)
x, y, z, w = (Var(i) for i in range(4))


def box(t: Term) -> Term:
    return Tilde(Prime(t))


def diamond(t: Term) -> Term:
    return Tilde(Tilde(t))


def variables(t: Term) -> set:
    if isinstance(t, Var):
        return {t.index}
    if isinstance(t, Const):
        return set()
    if isinstance(t, (Meet, Join)):
        return variables(t.left) | variables(t.right)
    return variables(t.arg)


def arity(*terms: Term) -> int:
    used = set().union(*(variables(t) for t in terms))
    return max(used) + 1 if used else 0


def var_name(i: int) -> str:
    return VARIABLES[i] if i < len(VARIABLES) else f"x{i}"


# -- evaluation ---------------------------------------------------------------

def eval_term(t: Term, A: FiniteAlgebra, sigma: Union[Mapping, Sequence]) -> int:
    """Value of ``t`` in ``A`` under the assignment ``sigma``.

    ``sigma`` is a sequence indexed by variable, or a mapping keyed by
    variable index or name.
    """
    if isinstance(t, Var):
        try:
            if isinstance(sigma, Mapping):
                val = sigma[t.index] if t.index in sigma else sigma[var_name(t.index)]
            else:
                val = sigma[t.index]
        except (KeyError, IndexError):
            raise UnboundVariable(f"variable {var_name(t.index)} is not assigned") from None
        return A.element(val)
    if isinstance(t, Const):
        return A.top if t.value else 0
    if isinstance(t, Meet):
        return int(A.meet[eval_term(t.left, A, sigma), eval_term(t.right, A, sigma)])
    if isinstance(t, Join):
        return int(A.join[eval_term(t.left, A, sigma), eval_term(t.right, A, sigma)])
    if isinstance(t, Prime):
        return int(A.prime[eval_term(t.arg, A, sigma)])
    if A.tilde is None:
        raise UnboundVariable(f"{A.name} has no Brouwer complement")
    return int(A.tilde[eval_term(t.arg, A, sigma)])


def assignment_grid(n: int, k: int) -> np.ndarray:
    """All ``n**k`` assignments as a ``(k, n**k)`` array in lexicographic order."""
    if k == 0:
        return np.zeros((0, 1), dtype=np.int64)
    return np.indices((n,) * k, dtype=np.int64).reshape(k, -1)


def eval_vectorized(t: Term, A: FiniteAlgebra, grid: np.ndarray) -> np.ndarray:
    """Evaluate ``t`` on every column of ``grid`` at once."""
    if isinstance(t, Var):
        if t.index >= len(grid):
            raise UnboundVariable(f"variable {var_name(t.index)} is not assigned")
        return grid[t.index]
    width = grid.shape[1]
    if isinstance(t, Const):
        return np.full(width, A.top if t.value else 0, dtype=np.int64)
    if isinstance(t, Meet):
        return A.meet[eval_vectorized(t.left, A, grid), eval_vectorized(t.right, A, grid)]
    if isinstance(t, Join):
        return A.join[eval_vectorized(t.left, A, grid), eval_vectorized(t.right, A, grid)]
    if isinstance(t, Prime):
        return A.prime[eval_vectorized(t.arg, A, grid)]
    if A.tilde is None:
        raise UnboundVariable(f"{A.name} has no Brouwer complement")
    return A.tilde[eval_vectorized(t.arg, A, grid)]


# -- identities ---------------------------------------------------------------

@dataclass(frozen=True)
class NamedIdentity:
    name: str
    lhs: Term
    rhs: Term
    upper: Optional[Term] = None  # t when this is the normalised form of lhs <= t

    @property
    def arity(self) -> int:
        return arity(self.lhs, self.rhs)

    def __str__(self):
        return render_identity(self)


def inequality(name: str, s: Term, t: Term) -> NamedIdentity:
    return NamedIdentity(name, s, Meet(s, t), upper=t)


@dataclass(frozen=True)
class Witness:
    assignment: dict
    lhs: int
    rhs: int


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    witness: Optional[Witness] = None

    def __bool__(self):
        return self.holds


def _as_pair(eq):
    if isinstance(eq, NamedIdentity):
        return eq.lhs, eq.rhs
    lhs, rhs = eq
    return lhs, rhs


def check_identity(A: FiniteAlgebra, ident, arity_hint: Optional[int] = None) -> CheckResult:
    """Check ``lhs = rhs`` over all ``|A|**k`` assignments.

    The witness, if any, is the lexicographically least failing assignment.
    """
    if isinstance(ident, str):
        ident = named_identity(ident)
    lhs, rhs = _as_pair(ident)
    k = arity_hint if arity_hint is not None else arity(lhs, rhs)
    grid = assignment_grid(A.size, k)
    left = eval_vectorized(lhs, A, grid)
    right = eval_vectorized(rhs, A, grid)
    bad = np.flatnonzero(left != right)
    if len(bad) == 0:
        return CheckResult(True)
    i = bad[0]
    sigma = {var_name(v): int(grid[v, i]) for v in range(k)}
    return CheckResult(False, Witness(sigma, int(left[i]), int(right[i])))


def check_quasi_identity(A: FiniteAlgebra, premises, conclusion) -> CheckResult:
    """Check ``premises => conclusion``; each premise is an identity or (lhs, rhs)."""
    pairs = [_as_pair(p) for p in premises]
    lhs, rhs = _as_pair(conclusion)
    terms = [t for pair in pairs for t in pair] + [lhs, rhs]
    k = arity(*terms)
    grid = assignment_grid(A.size, k)
    ok = np.ones(grid.shape[1], dtype=bool)
    for s, t in pairs:
        ok &= eval_vectorized(s, A, grid) == eval_vectorized(t, A, grid)
    left = eval_vectorized(lhs, A, grid)
    right = eval_vectorized(rhs, A, grid)
    bad = np.flatnonzero(ok & (left != right))
    if len(bad) == 0:
        return CheckResult(True)
    i = bad[0]
    sigma = {var_name(v): int(grid[v, i]) for v in range(k)}
    return CheckResult(False, Witness(sigma, int(left[i]), int(right[i])))


# -- parsing and rendering ----------------------------------------------------

class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise TermSyntaxError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def term(self):
        ch = self.peek()
        if ch in VARIABLES and ch:
            self.pos += 1
            t = Var(VARIABLES.index(ch))
        elif ch in ("0", "1"):
            self.pos += 1
            t = Const(int(ch))
        elif ch == "(":
            self.pos += 1
            left = self.term()
            op = self.peek()
            if op == ")":
                self.pos += 1
                t = left
            elif op in ("^", "v"):
                self.pos += 1
                right = self.term()
                self.expect(")")
                t = Meet(left, right) if op == "^" else Join(left, right)
            else:
                raise TermSyntaxError(f"expected '^' or 'v', found {op or 'end of input'!r}", self.pos)
        else:
            raise TermSyntaxError(f"unexpected {ch or 'end of input'!r}", self.pos)
        while self.peek() in ("'", "~", "′", "∼") and self.peek():
            ch = self.text[self.pos]
            self.pos += 1
            t = Prime(t) if ch in ("'", "′") else Tilde(t)
        return t


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.peek():
        raise TermSyntaxError(f"trailing input {p.peek()!r}", p.pos)
    return t


_RELATIONS = ("≈", "<=", "≤", "=")


def parse_identity(text: str, name: str = "custom") -> NamedIdentity:
    """Parse ``lhs = rhs`` (also ``≈``) or ``lhs <= rhs`` (also ``≤``)."""
    for rel in _RELATIONS:
        if rel in text:
            i = text.index(rel)
            lhs = parse_term(text[:i])
            try:
                rhs = parse_term(text[i + len(rel):])
            except TermSyntaxError as exc:
                raise TermSyntaxError(str(exc).rsplit(" at position", 1)[0], exc.position + i + len(rel)) from None
            if rel in ("<=", "≤"):
                return inequality(name, lhs, rhs)
            return NamedIdentity(name, lhs, rhs)
    raise TermSyntaxError("expected one of =, ≈, <=, ≤", len(text))


def render_term(t: Term) -> str:
    if isinstance(t, Var):
        return var_name(t.index)
    if isinstance(t, Const):
        return str(t.value)
    if isinstance(t, Meet):
        return f"({render_term(t.left)} ^ {render_term(t.right)})"
    if isinstance(t, Join):
        return f"({render_term(t.left)} v {render_term(t.right)})"
    if isinstance(t, Prime):
        return render_term(t.arg) + "'"
    return render_term(t.arg) + "~"


def render_identity(ident: NamedIdentity) -> str:
    if ident.upper is not None:
        return f"{render_term(ident.lhs)} ≤ {render_term(ident.upper)}"
    return f"{render_term(ident.lhs)} ≈ {render_term(ident.rhs)}"


# -- catalog ------------------------------------------------------------------

_CATALOG_SOURCE = {
    "SDM": "(x ^ y)~ = (x~ v y~)",
    "WSDM": "(x ^ y~)~ = (x~ v y~~)",
    "DIST": "(x ^ (y v z)) = ((x ^ y) v (x ^ z))",
    "J2": "x = ((x ^ (y ^ y')~) v (x ^ (y ^ y')~~))",
    "SK": "(x ^ y~~) <= (x'~ v y)",
    "AOL1": "((x~ v y~) ^ (x~~ v z~)) = ((x~ v y) ^ (x~~ v z))~",
    "AOL2": "x = ((x ^ y~) v (x ^ y~~))",
    "AOL3": "x = ((x v y~) ^ (x v y~~))",
    "STAR": "(x ^ x')~ <= (x~ v x'~)",
    "DIAMOND_OM": "((x~ v (x~~ ^ y~~)) ^ x~~) <= y~~",
    "TILDE_EQ_PRIME": "x~ = x'",
}

CATALOG = {name: parse_identity(src, name) for name, src in _CATALOG_SOURCE.items()}

# identities that make sense without a Brouwer complement
LATTICE_ONLY = frozenset({"DIST"})


def named_identity(name: str) -> NamedIdentity:
    try:
        return CATALOG[name.upper()]
    except KeyError:
        raise UnknownName(f"unknown identity {name!r}; known: {', '.join(CATALOG)}") from None


def identity_from_text(text: str) -> NamedIdentity:
    """A catalog name (any case) or an equation in the text syntax."""
    if text.upper() in CATALOG:
        return CATALOG[text.upper()]
    return parse_identity(text)
