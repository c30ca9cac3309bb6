"""Seeded instance pools shared by the acceptance battery and the tests."""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Sequence

from .circumscription import GcwaKB
from .default_logic import DefaultRule, DefaultTheory
from .oracles import QbfEA
from .preservation import random_formula
from .reductions import clause_universe
from .revision import RevisionInstance
from .stable import LogicProgram, ProgramRule
from .syntax import TRUE, Formula, KnowledgeBase, Not, Or, Var, parse_formula

LUNCH = ("sandwich", "salad", "water", "coke")


def lunch_formula() -> Formula:
    return parse_formula("(sandwich | salad) & (~sandwich | ~salad) & (water | coke) & (~water | ~coke)")


def lunch_short_formula() -> Formula:
    return parse_formula("(sandwich | salad) & (water | coke)")


LUNCH_MODELS = frozenset({
    frozenset({"sandwich", "water"}), frozenset({"sandwich", "coke"}),
    frozenset({"salad", "water"}), frozenset({"salad", "coke"}),
})


def _atoms(n: int) -> tuple[str, ...]:
    return ("p", "q", "r", "s", "t")[:n] if n <= 5 else tuple(f"v{i}" for i in range(1, n + 1))


def _literals(a: str) -> tuple[Formula, Formula]:
    return Var(a), Not(Var(a))


def short_clauses(atoms: Sequence[str]) -> list[Formula]:
    """Unit clauses, then two-literal clauses over distinct atoms."""
    lits = _literals
    out = [lit for a in atoms for lit in lits(a)]
    for a, b in itertools.combinations(atoms, 2):
        out += [Or(x, y) for x in lits(a) for y in lits(b)]
    return out


def gcwa_pool(atoms: Sequence[str] = ("p", "q", "r")) -> Iterator[GcwaKB]:
    """Every set of clauses of length at most two over ``atoms``."""
    clauses = short_clauses(atoms)
    for mask in range(1 << len(clauses)):
        yield GcwaKB(KnowledgeBase(tuple(c for i, c in enumerate(clauses) if (mask >> i) & 1), tuple(atoms)))


def random_kb(rng: random.Random, max_atoms: int = 3, max_formulas: int = 3, max_size: int = 7) -> KnowledgeBase:
    atoms = _atoms(rng.randint(1, max_atoms))
    formulas = tuple(random_formula(rng, atoms, max_size) for _ in range(rng.randint(1, max_formulas)))
    return KnowledgeBase(formulas, atoms)


def random_revision(rng: random.Random, max_formulas: int = 4, max_atoms: int = 3) -> RevisionInstance:
    atoms = _atoms(rng.randint(1, max_atoms))
    base = tuple(random_formula(rng, atoms, 5) for _ in range(rng.randint(0, max_formulas - 1)))
    return RevisionInstance(KnowledgeBase(base, atoms), random_formula(rng, atoms, 5))


def random_program(rng: random.Random, max_atoms: int = 12) -> LogicProgram:
    """Random rules, often with even negative loops so pruning has work to do."""
    atoms = _atoms(rng.randint(1, max_atoms))
    rules = []
    free = list(atoms)
    rng.shuffle(free)
    while len(free) >= 2 and rng.random() < 0.6:
        x, y = free.pop(), free.pop()
        rules += [ProgramRule(x, (), (y,)), ProgramRule(y, (), (x,))]
    for _ in range(rng.randint(0, len(atoms) + 2)):
        head = rng.choice(free or list(atoms))
        pos = tuple(rng.sample(atoms, rng.randint(0, min(2, len(atoms)))))
        neg = tuple(rng.sample(atoms, rng.randint(0, min(2, len(atoms)))))
        rules.append(ProgramRule(head, pos, neg))
    return LogicProgram(tuple(rules), atoms)


def random_default_theory(rng: random.Random, max_defaults: int = 10, max_atoms: int = 3) -> DefaultTheory:
    atoms = _atoms(rng.randint(1, max_atoms))
    background = tuple(random_formula(rng, atoms, 5) for _ in range(rng.randint(0, 1)))
    defaults = []
    for _ in range(rng.randint(0, max_defaults)):
        pre = TRUE if rng.random() < 0.5 else random_formula(rng, atoms, 3)
        cons = random_formula(rng, atoms, 4)
        kind = rng.random()
        if kind < 0.4:
            just: tuple[Formula, ...] = (cons,)
        elif kind < 0.8:
            just = tuple(random_formula(rng, atoms, 3) for _ in range(rng.randint(1, 2)))
        else:
            just = ()
        defaults.append(DefaultRule(pre, just, cons))
    return DefaultTheory(KnowledgeBase(background, atoms), tuple(defaults))


GAMMA_POOL = tuple(parse_formula(s) for s in ("p", "~p", "q", "p | q", "p & ~q", "p -> q"))


def pfn_pool() -> Iterator[DefaultTheory]:
    """PFN theories with at most two defaults drawn from :data:`GAMMA_POOL`."""
    backgrounds = (KnowledgeBase((), ("p", "q")), KnowledgeBase((parse_formula("p | q"),), ("p", "q")))
    for w in backgrounds:
        for k in range(3):
            for gammas in itertools.product(GAMMA_POOL, repeat=k):
                yield DefaultTheory(w, tuple(DefaultRule.normal(g) for g in gammas))


QBF_SPLITS = ((0, 3), (1, 2), (2, 1), (3, 0))


def qbf_pool(seed: int = 0, random_per_split: int = 12) -> list[QbfEA]:
    """Three-variable instances for every quantifier split: empty matrix,
    full clause universe and random subsets."""
    rng = random.Random(seed)
    out = []
    for nx, ny in QBF_SPLITS:
        x = tuple(f"x{i}" for i in range(1, nx + 1))
        y = tuple(f"y{i}" for i in range(1, ny + 1))
        gamma = clause_universe(x + y)
        subsets = [(), tuple(gamma)]
        subsets += [tuple(rng.sample(gamma, rng.randint(1, len(gamma) - 1))) for _ in range(random_per_split)]
        out += [QbfEA(x, y, f) for f in subsets]
    return out
