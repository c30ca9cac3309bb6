"""Minimal-model reasoning: circumscription and the GCWA."""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Iterable

from . import limits
from .prop import Interpretation, Universe
from .syntax import Formula, KnowledgeBase, Not, Var, atoms_of, merge_atoms, size


def _atom_set(atoms: Iterable[str] | str) -> frozenset[str]:
    return frozenset(atoms.split() if isinstance(atoms, str) else atoms)


@dataclass(frozen=True)
class CircKB:
    """``CIRC(theory; minimized; fixed; varying)``.

    Atoms of the alphabet not listed in any of the three groups are fixed.
    """

    theory: KnowledgeBase
    minimized: frozenset[str] = frozenset()
    fixed: frozenset[str] = frozenset()
    varying: frozenset[str] = frozenset()

    def __post_init__(self):
        p, q, z = (_atom_set(x) for x in (self.minimized, self.fixed, self.varying))
        if p & q or p & z or q & z:
            raise ValueError("the atom groups of a circumscription must be pairwise disjoint")
        extra = sorted((p | q | z) - set(self.theory.atoms))
        theory = KnowledgeBase(self.theory.formulas, self.theory.atoms + tuple(extra))
        object.__setattr__(self, "theory", theory)
        object.__setattr__(self, "minimized", p)
        object.__setattr__(self, "fixed", q)
        object.__setattr__(self, "varying", z)

    @property
    def atoms(self) -> tuple[str, ...]:
        return self.theory.atoms

    @property
    def effective_fixed(self) -> frozenset[str]:
        return frozenset(self.atoms) - self.minimized - self.varying

    def _ordered(self, group: AbstractSet[str]) -> tuple[str, ...]:
        return tuple(a for a in self.atoms if a in group)


@size.register
def _(c: CircKB) -> int:
    return size(c.theory) + len(c.minimized) + len(c.fixed) + len(c.varying)


def circ_preferred(m1: AbstractSet[str], m2: AbstractSet[str], c: CircKB) -> bool:
    """``m1`` is strictly preferred to ``m2``: same fixed atoms, fewer minimized ones."""
    q = c.effective_fixed
    p = c.minimized
    return (m1 & q) == (m2 & q) and (m1 & p) < (m2 & p)


def _circ_table(c: CircKB) -> tuple[Universe, int]:
    u = Universe(c.atoms)
    t = u.kb_table(c.theory.formulas)
    # project out the varying atoms, then look for a model strictly below on P
    beaten = u.strictly_above(u.project(t, c._ordered(c.varying)), c._ordered(c.minimized))
    return u, t & ~beaten


def circ_models(c: CircKB) -> list[Interpretation]:
    u, t = _circ_table(c)
    return u.models(t)


def circ_model_check(m: AbstractSet[str], c: CircKB) -> bool:
    u, t = _circ_table(c)
    return u.holds(t, m)


def circ_entails(c: CircKB, phi: Formula) -> bool:
    u = Universe(merge_atoms(c.atoms, atoms_of(phi)))
    # extra query atoms are unconstrained by the theory, hence fixed
    if len(u.alphabet) != len(c.atoms):
        c = CircKB(KnowledgeBase(c.theory.formulas, u.alphabet), c.minimized, c.fixed, c.varying)
    u, t = _circ_table(c)
    return t & ~u.table(phi) & u.full == 0


# ---------------------------------------------------------------------- GCWA


@dataclass(frozen=True)
class GcwaKB:
    theory: KnowledgeBase

    @property
    def atoms(self) -> tuple[str, ...]:
        return self.theory.atoms


@size.register
def _(g: GcwaKB) -> int:
    return size(g.theory)


def _as_gcwa(kb) -> GcwaKB:
    return kb if isinstance(kb, GcwaKB) else GcwaKB(kb)


def non_entailed_positive_clauses(kb: GcwaKB) -> tuple[Universe, int]:
    """Bit ``g`` is set iff the positive clause with atom set ``g`` is not entailed.

    Atom sets use the same bit layout as interpretation indices; ``g = 0``
    is the empty clause, which is not entailed exactly when ``kb`` is
    consistent.  A clause over ``g`` fails to be entailed iff some model
    lies inside the complement of ``g``.
    """
    kb = _as_gcwa(kb)
    limits.check("positive_clauses", len(kb.atoms))
    u = Universe(kb.atoms)
    t = u.kb_table(kb.theory.formulas)
    has_model_below = u.up_closure(t, u.alphabet)
    # reverse bit order: index g <-> complement full_index ^ g
    bits = bin(has_model_below)[2:].zfill(u.size)
    return u, int(bits[::-1], 2)


def gcwa_free_atoms(kb, include_empty_clause: bool = True) -> frozenset[str]:
    """Atoms free for negation.

    ``a`` is free iff for every positive clause ``g`` not entailed by ``kb``,
    ``g | a`` is not entailed either.  With ``include_empty_clause`` the
    empty clause takes part in the quantification; that reading coincides
    with "false in every minimal model".  Excluding it additionally frees
    atoms entailed by a theory whose only model makes every atom true.
    """
    kb = _as_gcwa(kb)
    u, ne = non_entailed_positive_clauses(kb)
    free = set()
    for a in u.alphabet:
        col, sh = u.column(a), u.shift(a)
        # g without a whose clause is not entailed while g+a is
        violations = ne & ~col & ~((ne & col) >> sh) & u.full
        if not include_empty_clause:
            violations &= ~1
        if not violations:
            free.add(a)
    return frozenset(free)


def gcwa_rewrite(kb) -> KnowledgeBase:
    """The theory plus ``~a`` for every free atom, in alphabet order."""
    kb = _as_gcwa(kb)
    free = gcwa_free_atoms(kb)
    return kb.theory.with_formulas(*(Not(Var(a)) for a in kb.atoms if a in free))


def gcwa_models(kb) -> list[Interpretation]:
    kb = _as_gcwa(kb)
    rewritten = gcwa_rewrite(kb)
    u = Universe(kb.atoms)
    return u.models(u.kb_table(rewritten.formulas))


def gcwa_entails(kb, phi: Formula) -> bool:
    kb = _as_gcwa(kb)
    # query atoms join the alphabet, so the closed-world rule applies to them too
    theory = KnowledgeBase(kb.theory.formulas, merge_atoms(kb.atoms, atoms_of(phi)))
    rewritten = gcwa_rewrite(GcwaKB(theory))
    u = Universe(theory.atoms)
    return u.kb_table(rewritten.formulas) & ~u.table(phi) & u.full == 0
