"""Revision by maximal consistent subsets: SBR and WIDTIO.

``K`` is a multiset.  Subsets are tracked by position, so two syntactically
identical members of ``K`` are distinct, and the new formula ``A`` always
occupies position ``len(K)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet

from . import limits
from .prop import Interpretation, Universe
from .syntax import Formula, KnowledgeBase, as_formula, atoms_of, merge_atoms, size


@dataclass(frozen=True)
class RevisionInstance:
    base: KnowledgeBase
    new_formula: Formula

    def __post_init__(self):
        a = as_formula(self.new_formula)
        base = self.base if isinstance(self.base, KnowledgeBase) else KnowledgeBase(tuple(self.base))
        object.__setattr__(self, "new_formula", a)
        object.__setattr__(self, "base", KnowledgeBase(base.formulas, merge_atoms(base.atoms, atoms_of(a))))

    @property
    def atoms(self) -> tuple[str, ...]:
        return self.base.atoms

    @property
    def members(self) -> tuple[Formula, ...]:
        """``K`` followed by ``A``."""
        return self.base.formulas + (self.new_formula,)


@size.register
def _(r: RevisionInstance) -> int:
    return size(r.base) + size(r.new_formula) + 1


def wka_positions(r: RevisionInstance) -> list[frozenset[int]]:
    """Positions of each maximal consistent subset of ``K + [A]`` containing ``A``."""
    limits.check("revision", len(r.base))
    u = Universe(r.atoms)
    tables = [u.table(f) for f in r.members]
    a_pos = len(r.base)
    start = tables[a_pos]
    if not start:
        return []
    consistent: list[int] = []  # bitmasks over positions of K

    def walk(i: int, chosen: int, t: int) -> None:
        if i == a_pos:
            consistent.append(chosen)
            return
        joined = t & tables[i]
        if joined:
            walk(i + 1, chosen | (1 << i), joined)
        walk(i + 1, chosen, t)

    walk(0, 0, start)
    # the walk emits supersets before their subsets, so one pass keeps the maximal ones
    maximal: list[int] = []
    for s in consistent:
        if not any(s & m == s for m in maximal):
            maximal.append(s)
    return sorted(
        (frozenset([i for i in range(a_pos) if (s >> i) & 1] + [a_pos]) for s in maximal),
        key=sorted,
    )


def _subset(r: RevisionInstance, positions: AbstractSet[int]) -> KnowledgeBase:
    members = r.members
    return KnowledgeBase(tuple(members[i] for i in sorted(positions)), r.atoms)


def wka(r: RevisionInstance) -> list[KnowledgeBase]:
    return [_subset(r, s) for s in wka_positions(r)]


def sbr_entails(r: RevisionInstance, q: Formula) -> bool:
    u = Universe(merge_atoms(r.atoms, atoms_of(q)))
    qt = u.table(q)
    return all(u.kb_table(k.formulas) & ~qt & u.full == 0 for k in wka(r))


def sbr_model_check(m: AbstractSet[str], r: RevisionInstance) -> bool:
    u = Universe(r.atoms)
    return any(u.holds(u.kb_table(k.formulas), m) for k in wka(r))


def sbr_models(r: RevisionInstance) -> list[Interpretation]:
    u = Universe(r.atoms)
    union = 0
    for k in wka(r):
        union |= u.kb_table(k.formulas)
    return u.models(union)


def widtio_base(r: RevisionInstance) -> KnowledgeBase:
    """Members common to every maximal subset; empty when ``A`` is inconsistent."""
    subsets = wka_positions(r)
    if not subsets:
        return KnowledgeBase((), r.atoms)
    common = frozenset.intersection(*subsets)
    return _subset(r, common)


def widtio_entails(r: RevisionInstance, q: Formula) -> bool:
    base = widtio_base(r)
    u = Universe(merge_atoms(base.atoms, atoms_of(q)))
    return u.kb_table(base.formulas) & ~u.table(q) & u.full == 0


def widtio_model_check(m: AbstractSet[str], r: RevisionInstance) -> bool:
    base = widtio_base(r)
    u = Universe(base.atoms)
    return u.holds(u.kb_table(base.formulas), m)


def widtio_models(r: RevisionInstance) -> list[Interpretation]:
    base = widtio_base(r)
    u = Universe(base.atoms)
    return u.models(u.kb_table(base.formulas))
