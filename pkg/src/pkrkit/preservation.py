"""Mechanised model- and theorem-preservation checks between formalisms."""

from __future__ import annotations

import enum
import functools
import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Any, AbstractSet, Iterable, Sequence

from . import circumscription as circ
from . import default_logic as dl
from . import prop
from . import revision as rv
from . import stable as sm
from .circuit import BooleanCircuit, eval_circuit
from .errors import PreconditionError
from .prop import Interpretation, Universe
from .syntax import And, Formula, Iff, Implies, KnowledgeBase, Not, Or, Var, disj, size, to_text

MAX_COUNTEREXAMPLES = 10


class Semantics(str, enum.Enum):
    PL = "pl"
    CIRC = "circ"
    GCWA = "gcwa"
    DEFAULT_SOME_EXT = "default"
    STABLE = "sm"
    SBR = "sbr"
    WIDTIO = "widtio"


_PAYLOAD = {
    Semantics.PL: KnowledgeBase,
    Semantics.CIRC: circ.CircKB,
    Semantics.GCWA: circ.GcwaKB,
    Semantics.DEFAULT_SOME_EXT: dl.DefaultTheory,
    Semantics.STABLE: sm.LogicProgram,
    Semantics.SBR: rv.RevisionInstance,
    Semantics.WIDTIO: rv.RevisionInstance,
}


@dataclass(frozen=True)
class SemanticsTag:
    """A knowledge base together with the semantics used to read it.

    Default theories are read through "model of some extension" for model
    checking and skeptically for inference.
    """

    kind: Semantics
    payload: Any

    def __post_init__(self):
        kind = Semantics(self.kind)
        payload = self.payload
        if kind is Semantics.GCWA and isinstance(payload, KnowledgeBase):
            payload = circ.GcwaKB(payload)
        if not isinstance(payload, _PAYLOAD[kind]):
            raise PreconditionError(f"{kind.name} expects a {_PAYLOAD[kind].__name__}, got {type(payload).__name__}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "payload", payload)

    @property
    def atoms(self) -> tuple[str, ...]:
        p = self.payload
        return p.alphabet if isinstance(p, sm.LogicProgram) else p.atoms

    def size(self) -> int:
        return size(self.payload)

    @functools.cached_property
    def _models(self) -> tuple[Universe, int]:
        k, p = self.kind, self.payload
        u = Universe(self.atoms)
        if k is Semantics.PL:
            return u, u.kb_table(p.formulas)
        if k is Semantics.CIRC:
            return circ._circ_table(p)
        if k is Semantics.GCWA:
            return u, u.kb_table(circ.gcwa_rewrite(p).formulas)
        if k is Semantics.DEFAULT_SOME_EXT:
            u, tables = dl.extension_tables(p)
            return u, functools.reduce(int.__or__, tables, 0)
        if k is Semantics.STABLE:
            return u, sum(1 << u.index(m) for m in sm.stable_models(p))
        if k is Semantics.SBR:
            return u, functools.reduce(int.__or__, (u.kb_table(s.formulas) for s in rv.wka(p)), 0)
        return u, u.kb_table(rv.widtio_base(p).formulas)

    def satisfied_by(self, m: AbstractSet[str]) -> bool:
        u, t = self._models
        return u.holds(t, m)

    def models(self) -> list[Interpretation]:
        u, t = self._models
        return u.models(t)

    def entails(self, phi: Formula) -> bool:
        k, p = self.kind, self.payload
        if k is Semantics.PL:
            return prop.entails(p, phi)
        if k is Semantics.CIRC:
            return circ.circ_entails(p, phi)
        if k is Semantics.GCWA:
            return circ.gcwa_entails(p, phi)
        if k is Semantics.DEFAULT_SOME_EXT:
            return dl.skeptical_entails(p, phi)
        if k is Semantics.STABLE:
            return sm.sm_entails(p, phi)
        if k is Semantics.SBR:
            return rv.sbr_entails(p, phi)
        return rv.widtio_entails(p, phi)


@dataclass(frozen=True)
class Counterexample:
    item: Interpretation | Formula
    left: bool
    right: bool


@dataclass(frozen=True)
class PreservationReport:
    mode: str
    universe_size: int
    total_mismatches: int
    counterexamples: tuple[Counterexample, ...] = ()
    alphabet: tuple[str, ...] = field(default=(), compare=False)

    @property
    def passed(self) -> bool:
        return self.total_mismatches == 0

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def _item_text(self, item) -> str:
        if isinstance(item, Formula):
            return to_text(item)
        return "{" + ", ".join(a for a in self.alphabet if a in item) + "}"

    def to_text(self) -> str:
        lines = [
            f"mode: {self.mode}",
            f"verdict: {self.verdict}",
            f"checked: {self.universe_size}",
            f"mismatches: {self.total_mismatches}",
        ]
        for cx in self.counterexamples:
            lines.append(f"  {self._item_text(cx.item)}: left={cx.left} right={cx.right}")
        return "\n".join(lines) + "\n"

    def to_records(self) -> str:
        """One JSON object per line: a summary followed by each counterexample."""
        out = [json.dumps({
            "mode": self.mode, "verdict": self.verdict, "checked": self.universe_size,
            "mismatches": self.total_mismatches,
        }, sort_keys=True)]
        for cx in self.counterexamples:
            item = to_text(cx.item) if isinstance(cx.item, Formula) else [a for a in self.alphabet if a in cx.item]
            out.append(json.dumps({"item": item, "left": cx.left, "right": cx.right}, sort_keys=True))
        return "\n".join(out) + "\n"


def _report(mode: str, rows: Iterable[tuple[Any, bool, bool]], alphabet: Sequence[str]) -> PreservationReport:
    checked = 0
    bad: list[Counterexample] = []
    total = 0
    for item, left, right in rows:
        checked += 1
        if left != right:
            total += 1
            if len(bad) < MAX_COUNTEREXAMPLES:
                bad.append(Counterexample(item, left, right))
    return PreservationReport(mode, checked, total, tuple(bad), tuple(alphabet))


def _check_inputs(kb1: SemanticsTag, c: BooleanCircuit) -> None:
    if set(kb1.atoms) != set(c.inputs):
        raise PreconditionError(
            f"circuit inputs {list(c.inputs)} differ from the source alphabet {list(kb1.atoms)}"
        )


def check_model_preservation(kb1: SemanticsTag, kb2: SemanticsTag, c: BooleanCircuit) -> PreservationReport:
    """``M |= kb1`` iff ``c(M) |= kb2`` for every interpretation over the circuit inputs."""
    _check_inputs(kb1, c)
    rows = (
        (m, kb1.satisfied_by(m), kb2.satisfied_by(eval_circuit(c, m)))
        for m in prop.all_interpretations(c.inputs)
    )
    return _report("model", rows, c.inputs)


# ---------------------------------------------------------- query universes


def clauses_up_to(atoms: Sequence[str], length: int) -> list[Formula]:
    """Non-tautological clauses over distinct atoms, shortest first."""
    out = []
    for k in range(1, length + 1):
        for vs in itertools.combinations(atoms, k):
            for signs in itertools.product((False, True), repeat=k):
                out.append(disj(Var(a) if s else Not(Var(a)) for a, s in zip(vs, signs)))
    return out


_BINARY = (And, Or, Implies, Iff)


def random_formula(rng: random.Random, atoms: Sequence[str], max_size: int) -> Formula:
    """A random formula with at most ``max_size`` nodes."""
    if max_size < 1:
        raise PreconditionError("max_size must be positive")
    if max_size == 1 or rng.random() < 0.25:
        return Var(rng.choice(atoms))
    if max_size == 2 or rng.random() < 0.2:
        return Not(random_formula(rng, atoms, max_size - 1))
    left_budget = rng.randint(1, max_size - 2)
    left = random_formula(rng, atoms, left_budget)
    right = random_formula(rng, atoms, max_size - 1 - size(left))
    return rng.choice(_BINARY)(left, right)


def query_universe(atoms: Sequence[str], bound: int, clause_length: int = 2,
                   random_count: int = 50, seed: int = 0) -> list[Formula]:
    """Clauses up to ``clause_length`` plus seeded random formulas, all of size at most ``bound``."""
    rng = random.Random(seed)
    candidates = clauses_up_to(atoms, clause_length)
    if atoms:
        candidates += [random_formula(rng, atoms, bound) for _ in range(random_count)]
    return [f for f in dict.fromkeys(candidates) if size(f) <= bound]


def check_theorem_preservation(kb1: SemanticsTag, kb2: SemanticsTag, c: BooleanCircuit,
                               clause_length: int = 2, random_count: int = 50,
                               seed: int = 0) -> PreservationReport:
    """``kb1 |- phi`` iff ``kb2 |- g(phi)`` over a finite query universe.

    ``g`` is the identity for identity circuits and atom renaming for
    circuits whose outputs are input wires; anything else raises
    :class:`~pkrkit.errors.CircuitError`.
    """
    _check_inputs(kb1, c)
    if not c.is_identity:
        c.substitution()  # rejects non-renaming circuits before any work
    universe = query_universe(kb1.atoms, kb1.size(), clause_length, random_count, seed)
    rows = ((phi, kb1.entails(phi), kb2.entails(c.rewrite(phi))) for phi in universe)
    return _report("theorem", rows, kb1.atoms)
