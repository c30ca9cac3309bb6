"""Propositional default logic.

An extension is represented by its generating defaults; its theory is the
deductive closure of the background formulas plus their consequents.  The
search decides apply/forbid for each default in list order and prunes a
branch as soon as no completion can satisfy Reiter's fixpoint condition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import AbstractSet, Iterable, Iterator, Sequence

from . import limits
from .errors import PreconditionError
from .prop import Interpretation, Universe
from .syntax import (
    TRUE, Formula, FormulaLike, KnowledgeBase, as_formula, atoms_of, merge_atoms, size,
    to_text,
)


@dataclass(frozen=True)
class DefaultRule:
    """``prerequisite : justifications / consequent``."""

    prerequisite: Formula
    justifications: tuple[Formula, ...]
    consequent: Formula

    def __post_init__(self):
        object.__setattr__(self, "prerequisite", as_formula(self.prerequisite))
        object.__setattr__(self, "justifications", tuple(as_formula(j) for j in self.justifications))
        object.__setattr__(self, "consequent", as_formula(self.consequent))

    @classmethod
    def normal(cls, gamma: FormulaLike, prerequisite: FormulaLike = TRUE) -> DefaultRule:
        gamma = as_formula(gamma)
        return cls(prerequisite, (gamma,), gamma)

    @property
    def is_pfn(self) -> bool:
        """Prerequisite-free normal, i.e. ``:g/g``."""
        return self.prerequisite == TRUE and self.justifications == (self.consequent,)

    @property
    def atoms(self) -> tuple[str, ...]:
        return merge_atoms(
            atoms_of(self.prerequisite), *(atoms_of(j) for j in self.justifications),
            atoms_of(self.consequent),
        )

    def __str__(self) -> str:
        parts = [] if self.prerequisite == TRUE else [to_text(self.prerequisite)]
        parts.append(":")
        if self.justifications:
            parts.append(" , ".join(to_text(j) for j in self.justifications))
        parts += ["/", to_text(self.consequent)]
        return " ".join(parts)


@size.register
def _(d: DefaultRule) -> int:
    return size(d.prerequisite) + sum(size(j) for j in d.justifications) + size(d.consequent) + 1


@dataclass(frozen=True)
class DefaultTheory:
    background: KnowledgeBase
    defaults: tuple[DefaultRule, ...] = ()

    def __post_init__(self):
        bg = self.background
        if not isinstance(bg, KnowledgeBase):
            bg = KnowledgeBase(tuple(bg))
        defaults = tuple(self.defaults)
        atoms = merge_atoms(bg.atoms, *(d.atoms for d in defaults))
        object.__setattr__(self, "background", KnowledgeBase(bg.formulas, atoms))
        object.__setattr__(self, "defaults", defaults)

    @property
    def atoms(self) -> tuple[str, ...]:
        return self.background.atoms


@size.register
def _(dt: DefaultTheory) -> int:
    return size(dt.background) + sum(size(d) for d in dt.defaults) + len(dt.defaults)


@dataclass(frozen=True)
class Extension:
    generating: tuple[int, ...]  # indices into DefaultTheory.defaults
    base: KnowledgeBase


class _Compiled:
    def __init__(self, dt: DefaultTheory, extra_atoms: Iterable[str] = ()):
        self.dt = dt
        self.u = u = Universe(merge_atoms(dt.atoms, extra_atoms))
        self.w = u.kb_table(dt.background.formulas)
        self.pre = [u.table(d.prerequisite) for d in dt.defaults]
        self.just = [[u.table(j) for j in d.justifications] for d in dt.defaults]
        self.cons = [u.table(d.consequent) for d in dt.defaults]
        self.full = u.full

    def closure(self, gd: Iterable[int]) -> int:
        e = self.w
        for i in gd:
            e &= self.cons[i]
        return e

    def entails(self, e: int, t: int) -> bool:
        return e & ~t & self.full == 0

    def applicable(self, e: int, i: int) -> bool:
        return self.entails(e, self.pre[i]) and all(e & j for j in self.just[i])

    def grounded(self, gd: AbstractSet[int]) -> bool:
        pending = set(gd)
        e = self.w
        progress = True
        while pending and progress:
            progress = False
            for i in sorted(pending):
                if self.entails(e, self.pre[i]):
                    e &= self.cons[i]
                    pending.discard(i)
                    progress = True
        return not pending

    def is_extension(self, gd: AbstractSet[int]) -> bool:
        e = self.closure(gd)
        chosen = {i for i in range(len(self.cons)) if self.applicable(e, i)}
        return chosen == set(gd) and self.grounded(gd)

    def search(self) -> Iterator[tuple[int, ...]]:
        n = len(self.cons)
        suffix_cons = [self.full] * (n + 1)
        for i in range(n - 1, -1, -1):
            suffix_cons[i] = suffix_cons[i + 1] & self.cons[i]

        def feasible(i: int, applied: list[int], forbidden: list[int], e: int) -> bool:
            for a in applied:
                if not all(e & j for j in self.just[a]):
                    return False
            e_max = e & suffix_cons[i]
            for a in applied:
                if e_max & ~self.pre[a] & self.full:
                    return False
            must_block = [f for f in forbidden if self.entails(e, self.pre[f])]
            refuted = self.full
            for f in must_block:
                if not self.just[f]:
                    return False
                if all(e_max & j for j in self.just[f]):
                    return False
                blocked_by = 0
                for j in self.just[f]:
                    blocked_by |= self.full ^ j
                refuted &= blocked_by
            if any(self.just[a] for a in applied) and not e & refuted:
                return False
            return True

        def walk(i: int, applied: list[int], forbidden: list[int], e: int) -> Iterator[tuple[int, ...]]:
            if not feasible(i, applied, forbidden, e):
                return
            if i == n:
                if self.is_extension(set(applied)):
                    yield tuple(applied)
                return
            yield from walk(i + 1, applied + [i], forbidden, e & self.cons[i])
            yield from walk(i + 1, applied, forbidden + [i], e)

        return walk(0, [], [], self.w)


def _check_cap(dt: DefaultTheory) -> None:
    limits.check("defaults", len(dt.defaults))


def _extension(dt: DefaultTheory, gd: Sequence[int]) -> Extension:
    formulas = dt.background.formulas + tuple(dt.defaults[i].consequent for i in gd)
    return Extension(tuple(gd), KnowledgeBase(formulas, dt.atoms))


def reiter_check(dt: DefaultTheory, gd: Iterable[int]) -> bool:
    """Do the defaults with indices ``gd`` generate an extension of ``dt``?"""
    gd = set(gd)
    if not gd <= set(range(len(dt.defaults))):
        raise PreconditionError(f"default indices {sorted(gd)} out of range")
    return _Compiled(dt).is_extension(gd)


def _generating_sets(dt: DefaultTheory, extra_atoms: Iterable[str] = ()) -> tuple[_Compiled, list[tuple[int, ...]]]:
    _check_cap(dt)
    compiled = _Compiled(dt, extra_atoms)
    return compiled, sorted(compiled.search())


def extensions(dt: DefaultTheory) -> list[Extension]:
    _, found = _generating_sets(dt)
    return [_extension(dt, gd) for gd in found]


def extensions_naive(dt: DefaultTheory) -> list[Extension]:
    """Reference enumeration over all ``2**|D|`` candidate generating sets."""
    _check_cap(dt)
    compiled = _Compiled(dt)
    n = len(dt.defaults)
    found = [
        gd
        for r in range(n + 1)
        for gd in itertools.combinations(range(n), r)
        if compiled.is_extension(set(gd))
    ]
    return [_extension(dt, gd) for gd in sorted(found)]


def extension_tables(dt: DefaultTheory, extra_atoms: Iterable[str] = ()) -> tuple[Universe, list[int]]:
    """Model tables of all extensions over ``dt.atoms`` plus ``extra_atoms``."""
    compiled, found = _generating_sets(dt, extra_atoms)
    return compiled.u, [compiled.closure(gd) for gd in found]


def credulous_entails(dt: DefaultTheory, q: Formula) -> bool:
    u, tables = extension_tables(dt, atoms_of(q))
    qt = u.table(q)
    return any(e & ~qt & u.full == 0 for e in tables)


def skeptical_entails(dt: DefaultTheory, q: Formula) -> bool:
    """True when every extension entails ``q``; vacuously true with none."""
    u, tables = extension_tables(dt, atoms_of(q))
    qt = u.table(q)
    return all(e & ~qt & u.full == 0 for e in tables)


def model_of_some_extension(m: AbstractSet[str], dt: DefaultTheory) -> bool:
    u, tables = extension_tables(dt)
    k = u.index(m)
    return any((e >> k) & 1 for e in tables)


def models_of_extensions(dt: DefaultTheory, alphabet: Sequence[str] | None = None) -> list[Interpretation]:
    u, tables = extension_tables(dt, alphabet or ())
    if alphabet is not None and set(u.alphabet) != set(alphabet):
        raise PreconditionError("alphabet must cover the theory's atoms")
    union = 0
    for e in tables:
        union |= e
    return u.models(union)
