"""Classical propositional semantics over an explicit model universe.

Interpretations are ``frozenset`` objects holding the true atoms.  Over an
alphabet ``(a_0, ..., a_{n-1})`` interpretation number ``k`` makes ``a_i``
true iff bit ``n-1-i`` of ``k`` is set, so sorting by ``k`` reads the
alphabet left to right as a binary number.  That order is the canonical
order of every model list returned by this package.

A *table* is a Python int with one bit per interpretation; bit ``k`` is set
iff interpretation ``k`` satisfies the formula.  Set operations on model
sets are then single big-int operations.
"""

from __future__ import annotations

import functools
from typing import AbstractSet, Iterable, Iterator, Sequence

from . import limits
from .errors import EvaluationError
from .syntax import (
    And, Const, Formula, Iff, Implies, KnowledgeBase, Not, Or, Var, atoms_of, conj,
    merge_atoms,
)

Interpretation = frozenset  # of true atom names


@functools.lru_cache(maxsize=512)
def _column(n: int, bit: int) -> int:
    """Table of the indices in ``range(2**n)`` whose ``bit`` is set."""
    width = 1 << bit
    col = ((1 << width) - 1) << width
    period = width << 1
    total = 1 << n
    while period < total:
        col |= col << period
        period <<= 1
    return col


class Universe:
    """All ``2**n`` interpretations of a fixed alphabet."""

    def __init__(self, alphabet: Sequence[str], cap: str = "models"):
        alphabet = tuple(alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise ValueError(f"duplicate atoms in alphabet {alphabet}")
        limits.check(cap, len(alphabet))
        self.alphabet = alphabet
        self.n = len(alphabet)
        self.size = 1 << self.n
        self.full = (1 << self.size) - 1
        self.position = {a: i for i, a in enumerate(alphabet)}

    def __repr__(self) -> str:
        return f"Universe({' '.join(self.alphabet)})"

    def shift(self, atom: str) -> int:
        """Index offset contributed by making ``atom`` true."""
        return 1 << (self.n - 1 - self.position[atom])

    def column(self, atom: str) -> int:
        try:
            i = self.position[atom]
        except KeyError:
            raise EvaluationError(atom) from None
        return _column(self.n, self.n - 1 - i)

    def table(self, f: Formula) -> int:
        if isinstance(f, Var):
            return self.column(f.name)
        if isinstance(f, Const):
            return self.full if f.value else 0
        if isinstance(f, Not):
            return self.full ^ self.table(f.arg)
        left = self.table(f.left)
        right = self.table(f.right)
        if isinstance(f, And):
            return left & right
        if isinstance(f, Or):
            return left | right
        if isinstance(f, Implies):
            return (self.full ^ left) | right
        if isinstance(f, Iff):
            return self.full ^ (left ^ right)
        raise TypeError(f"not a formula: {f!r}")

    def kb_table(self, formulas: Iterable[Formula]) -> int:
        t = self.full
        for f in formulas:
            t &= self.table(f)
            if not t:
                break
        return t

    def index(self, m: AbstractSet[str]) -> int:
        k = 0
        for a in m:
            if a not in self.position:
                raise EvaluationError(a)
            k |= self.shift(a)
        return k

    def interpretation(self, k: int) -> Interpretation:
        n = self.n
        return frozenset(a for i, a in enumerate(self.alphabet) if (k >> (n - 1 - i)) & 1)

    def indices(self, t: int) -> list[int]:
        """Set bits of ``t`` in ascending order."""
        if not t:
            return []
        bits = bin(t)[:1:-1]
        return [k for k, c in enumerate(bits) if c == "1"]

    def models(self, t: int) -> list[Interpretation]:
        return [self.interpretation(k) for k in self.indices(t)]

    def holds(self, t: int, m: AbstractSet[str]) -> bool:
        return bool((t >> self.index(m)) & 1)

    # Bit-parallel closures. Both treat the indices as atom sets.

    def up_closure(self, t: int, atoms: Iterable[str]) -> int:
        """Indices ``k`` such that some ``j`` in ``t`` equals ``k`` outside
        ``atoms`` and is a subset of ``k`` on ``atoms``."""
        for a in atoms:
            col, sh = self.column(a), self.shift(a)
            t |= (t & ~col & self.full) << sh
        return t

    def project(self, t: int, atoms: Iterable[str]) -> int:
        """Existentially quantify ``atoms`` away (result is invariant on them)."""
        for a in atoms:
            col, sh = self.column(a), self.shift(a)
            t |= ((t & col) >> sh) | ((t & ~col & self.full) << sh)
        return t

    def strictly_above(self, t: int, atoms: Iterable[str]) -> int:
        """Indices ``k`` for which some ``j`` in ``t`` agrees outside ``atoms``
        and is a proper subset of ``k`` on ``atoms``."""
        atoms = tuple(atoms)
        up = self.up_closure(t, atoms)
        out = 0
        for a in atoms:
            col, sh = self.column(a), self.shift(a)
            out |= (up & ~col & self.full) << sh
        return out


def _formulas(kb) -> tuple[Formula, ...]:
    if isinstance(kb, KnowledgeBase):
        return kb.formulas
    if isinstance(kb, Formula):
        return (kb,)
    return tuple(kb)


def kb_atoms(kb) -> tuple[str, ...]:
    if isinstance(kb, KnowledgeBase):
        return kb.atoms
    return merge_atoms(*(atoms_of(f) for f in _formulas(kb)))


def evaluate(f: Formula, m: AbstractSet[str], alphabet: Sequence[str] | None = None) -> bool:
    """Truth value of ``f`` under the interpretation with true atoms ``m``.

    With ``alphabet`` given, any atom of ``f`` or ``m`` outside it raises
    :class:`EvaluationError`; without it, atoms not in ``m`` are false.
    """
    if alphabet is not None:
        known = set(alphabet)
        for a in list(m) + list(atoms_of(f)):
            if a not in known:
                raise EvaluationError(a)
    return _eval(f, m)


def _eval(f: Formula, m: AbstractSet[str]) -> bool:
    if isinstance(f, Var):
        return f.name in m
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not _eval(f.arg, m)
    if isinstance(f, And):
        return _eval(f.left, m) and _eval(f.right, m)
    if isinstance(f, Or):
        return _eval(f.left, m) or _eval(f.right, m)
    if isinstance(f, Implies):
        return (not _eval(f.left, m)) or _eval(f.right, m)
    if isinstance(f, Iff):
        return _eval(f.left, m) == _eval(f.right, m)
    raise TypeError(f"not a formula: {f!r}")


def all_models(kb, alphabet: Sequence[str] | None = None) -> list[Interpretation]:
    """Models of every formula of ``kb`` over ``alphabet`` in canonical order."""
    u = Universe(alphabet if alphabet is not None else kb_atoms(kb))
    return u.models(u.kb_table(_formulas(kb)))


def entails(kb, phi: Formula) -> bool:
    formulas = _formulas(kb)
    u = Universe(merge_atoms(kb_atoms(kb), atoms_of(phi)))
    return u.kb_table(formulas) & ~u.table(phi) & u.full == 0


def is_consistent(kb) -> bool:
    u = Universe(kb_atoms(kb))
    return u.kb_table(_formulas(kb)) != 0


def minimal_models(kb, alphabet: Sequence[str] | None = None) -> list[Interpretation]:
    """Models whose set of true atoms is subset-minimal among all models."""
    u = Universe(alphabet if alphabet is not None else kb_atoms(kb))
    t = u.kb_table(_formulas(kb))
    return u.models(t & ~u.strictly_above(t, u.alphabet))


def conjunction_of_literals(m: AbstractSet[str], alphabet: Sequence[str]) -> Formula:
    """The formula whose only model over ``alphabet`` is ``m``."""
    extra = set(m) - set(alphabet)
    if extra:
        raise EvaluationError(sorted(extra)[0])
    return conj(Var(a) if a in m else Not(Var(a)) for a in alphabet)


def all_interpretations(alphabet: Sequence[str]) -> Iterator[Interpretation]:
    u = Universe(alphabet)
    return (u.interpretation(k) for k in range(u.size))
