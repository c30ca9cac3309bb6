"""Stable model semantics for general propositional logic programs."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import AbstractSet

from . import limits
from .errors import EvaluationError, PreconditionError
from .prop import Interpretation, evaluate
from .syntax import Formula, Implies, Not, Var, conj, merge_atoms, size


@dataclass(frozen=True)
class ProgramRule:
    """``head :- positive_body, not negative_body``."""

    head: str
    positive_body: tuple[str, ...] = ()
    negative_body: tuple[str, ...] = ()

    def __post_init__(self):
        for a in (self.head, *self.positive_body, *self.negative_body):
            Var(a)
        object.__setattr__(self, "positive_body", tuple(self.positive_body))
        object.__setattr__(self, "negative_body", tuple(self.negative_body))

    @property
    def atoms(self) -> tuple[str, ...]:
        return merge_atoms((self.head,), self.positive_body, self.negative_body)

    def __str__(self) -> str:
        body = list(self.positive_body) + [f"not {a}" for a in self.negative_body]
        return f"{self.head} :- {', '.join(body)}." if body else f"{self.head}."


@dataclass(frozen=True)
class LogicProgram:
    rules: tuple[ProgramRule, ...] = ()
    alphabet: tuple[str, ...] = ()

    def __post_init__(self):
        rules = tuple(self.rules)
        declared = tuple(self.alphabet.split()) if isinstance(self.alphabet, str) else tuple(self.alphabet)
        object.__setattr__(self, "rules", rules)
        object.__setattr__(self, "alphabet", merge_atoms(declared, *(r.atoms for r in rules)))

    @property
    def atoms(self) -> tuple[str, ...]:
        return self.alphabet

    @property
    def is_positive(self) -> bool:
        return all(not r.negative_body for r in self.rules)


@size.register
def _(r: ProgramRule) -> int:
    return 1 + len(r.positive_body) + len(r.negative_body)


@size.register
def _(p: LogicProgram) -> int:
    return sum(size(r) for r in p.rules) + len(p.rules)


def _check_interpretation(m: AbstractSet[str], p: LogicProgram) -> None:
    for a in m:
        if a not in p.alphabet:
            raise EvaluationError(a)


def reduct(p: LogicProgram, m: AbstractSet[str]) -> LogicProgram:
    """Drop rules blocked by ``m``; strip negative bodies from the rest."""
    _check_interpretation(m, p)
    kept = tuple(
        ProgramRule(r.head, r.positive_body)
        for r in p.rules
        if not any(a in m for a in r.negative_body)
    )
    return LogicProgram(kept, p.alphabet)


def least_model(p: LogicProgram) -> Interpretation:
    if not p.is_positive:
        raise PreconditionError("least_model needs a program without negative bodies")
    model: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in p.rules:
            if r.head not in model and all(a in model for a in r.positive_body):
                model.add(r.head)
                changed = True
    return frozenset(model)


def is_stable(m: AbstractSet[str], p: LogicProgram) -> bool:
    return least_model(reduct(p, m)) == frozenset(m)


class _Masks:
    """Rules as bit masks over the canonical interpretation index."""

    def __init__(self, p: LogicProgram):
        n = len(p.alphabet)
        self.n = n
        self.bit = {a: 1 << (n - 1 - i) for i, a in enumerate(p.alphabet)}
        self.rules = [
            (
                self.bit[r.head],
                sum(self.bit[a] for a in set(r.positive_body)),
                sum(self.bit[a] for a in set(r.negative_body)),
            )
            for r in p.rules
        ]

    def stable(self, k: int) -> bool:
        active = [(h, pos) for h, pos, neg in self.rules if not neg & k]
        lm = 0
        changed = True
        while changed:
            changed = False
            for h, pos in active:
                if not lm & h and pos & lm == pos:
                    lm |= h
                    changed = True
        return lm == k


def choice_pairs(p: LogicProgram) -> list[tuple[str, str]]:
    """Even loops ``x :- not y.  y :- not x.`` whose atoms head no other rule.

    Every stable model makes exactly one atom of such a pair true.
    """
    heads: dict[str, list[ProgramRule]] = {}
    for r in p.rules:
        heads.setdefault(r.head, []).append(r)
    pairs = []
    seen: set[str] = set()
    for x, rules in heads.items():
        if x in seen or len(rules) != 1:
            continue
        r = rules[0]
        if r.positive_body or len(r.negative_body) != 1:
            continue
        y = r.negative_body[0]
        if y == x or len(heads.get(y, ())) != 1:
            continue
        back = heads[y][0]
        if back.positive_body or back.negative_body != (x,):
            continue
        pairs.append((x, y))
        seen.update((x, y))
    return pairs


@functools.lru_cache(maxsize=64)
def _stable_indices(p: LogicProgram, prune: bool) -> tuple[int, ...]:
    limits.check("stable", len(p.alphabet))
    masks = _Masks(p)
    if not prune:
        return tuple(k for k in range(1 << masks.n) if masks.stable(k))
    pairs = choice_pairs(p)
    paired = {a for pair in pairs for a in pair}
    free_bits = [masks.bit[a] for a in p.alphabet if a not in paired]
    pair_options = [(masks.bit[x], masks.bit[y]) for x, y in pairs]
    found = []
    for choice in itertools.product(*pair_options):
        base = sum(choice)
        for flags in itertools.product((0, 1), repeat=len(free_bits)):
            k = base + sum(b for b, f in zip(free_bits, flags) if f)
            if masks.stable(k):
                found.append(k)
    return tuple(sorted(found))


def _interpretation(p: LogicProgram, k: int) -> Interpretation:
    n = len(p.alphabet)
    return frozenset(a for i, a in enumerate(p.alphabet) if (k >> (n - 1 - i)) & 1)


def stable_models(p: LogicProgram, prune: bool = True) -> list[Interpretation]:
    """All stable models in canonical order.

    With ``prune`` the candidates are restricted by :func:`choice_pairs`;
    ``prune=False`` checks all ``2**n`` interpretations.
    """
    return [_interpretation(p, k) for k in _stable_indices(p, prune)]


def sm_entails(p: LogicProgram, q: Formula) -> bool:
    """Every stable model satisfies ``q`` (vacuously true when none exists).

    Atoms of ``q`` outside the program's alphabet head no rule, so they are
    false in every stable model.
    """
    return all(evaluate(q, m) for m in stable_models(p))


def clausal_reading(p: LogicProgram) -> list[Formula]:
    """Each rule as the classical implication ``body & ~neg -> head``."""
    return [
        Implies(
            conj([*(Var(a) for a in r.positive_body), *(Not(Var(a)) for a in r.negative_body)]),
            Var(r.head),
        )
        for r in p.rules
    ]


__all__ = [
    "LogicProgram", "ProgramRule", "choice_pairs", "clausal_reading", "is_stable",
    "least_model", "reduct", "sm_entails", "stable_models",
]
