"""Constructive translations between formalisms.

Each translation is a plain function returning the target knowledge base;
translations that produce extra objects alongside the target return a
:class:`ReductionOutput`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .circuit import BooleanCircuit, CircuitBuilder, input_ref
from .circumscription import CircKB, GcwaKB, gcwa_rewrite
from .default_logic import DefaultRule, DefaultTheory
from .errors import PreconditionError
from .oracles import DirectedGraph, QbfEA
from .prop import Interpretation
from .revision import RevisionInstance, widtio_base
from .stable import LogicProgram, ProgramRule
from .syntax import (
    TRUE, Clause, Formula, Iff, Implies, KnowledgeBase, Not, Var, conj, disj, negate, size,
)


@dataclass(frozen=True)
class ReductionOutput:
    target: Any
    query: Formula | None = None
    model: Interpretation | None = None
    circuit: BooleanCircuit | None = None


def _fresh(names: Iterable[str], taken: Iterable[str]) -> None:
    clash = sorted(set(names) & set(taken))
    if clash:
        raise PreconditionError(f"input uses reserved atom names {clash}")


# ------------------------------------------------------------- clause universe


def clause_universe(variables: Sequence[str]) -> list[Clause]:
    """All three-literal clauses over distinct variables.

    Triples follow the order of ``variables`` lexicographically; within a
    triple the sign patterns count in binary from all-negative to
    all-positive with the first variable most significant.
    """
    variables = tuple(variables)
    if len(variables) < 3:
        raise PreconditionError("the clause universe needs at least three variables")
    if len(set(variables)) != len(variables):
        raise PreconditionError("variables must be distinct")
    return [
        Clause(tuple(zip(triple, signs)))
        for triple in itertools.combinations(variables, 3)
        for signs in itertools.product((False, True), repeat=3)
    ]


def pad(existential: Sequence[str], universal: Sequence[str],
        clauses: Iterable[Iterable[tuple[str, bool]]], prefix: str = "pad") -> QbfEA:
    """Bring every clause up to three distinct variables.

    A clause short of ``d`` variables is replaced by its ``2**d`` extensions
    with fresh universal variables ``pad1 .. padd`` in every sign
    combination.  Their conjunction is equivalent to the original clause for
    each value of the fresh variables, so validity is unchanged.  Repeated
    literals are merged and tautologies dropped.
    """
    existential, universal = tuple(existential), tuple(universal)
    cleaned = []
    for c in clauses:
        lits = tuple(dict.fromkeys(tuple(lit) for lit in c))
        if any((a, not p) in lits for a, p in lits):
            continue
        cleaned.append(lits)
    deficit = max((3 - len(c) for c in cleaned), default=0)
    fresh = tuple(f"{prefix}{i}" for i in range(1, deficit + 1))
    _fresh(fresh, existential + universal)
    padded = []
    for lits in cleaned:
        d = 3 - len(lits)
        if d <= 0:
            padded.append(lits)
            continue
        for signs in itertools.product((False, True), repeat=d):
            padded.append(lits + tuple(zip(fresh[:d], signs)))
    return QbfEA(existential, universal + fresh, tuple(padded))


# -------------------------------------------------------------------- kernel


def _pair_atom(letter: str, i: int, j: int, n: int) -> str:
    return f"{letter}{i}_{j}" if n >= 10 else f"{letter}{i}{j}"


def kernel_program(n: int) -> LogicProgram:
    """``a_j :- not a_i, r_ij``, ``s_ij :- not r_ij``, ``r_ij :- not s_ij`` for all ``i, j``."""
    if n < 1:
        raise PreconditionError("kernel_program needs n >= 1")
    pairs = list(itertools.product(range(1, n + 1), repeat=2))
    alphabet = [f"a{i}" for i in range(1, n + 1)]
    rules = []
    for i, j in pairs:
        r, s = _pair_atom("r", i, j, n), _pair_atom("s", i, j, n)
        alphabet += [r, s]
        rules += [
            ProgramRule(f"a{j}", (r,), (f"a{i}",)),
            ProgramRule(s, (), (r,)),
            ProgramRule(r, (), (s,)),
        ]
    return LogicProgram(tuple(rules), tuple(alphabet))


def kernel_query(g: DirectedGraph) -> Formula:
    """Disjunction of ``~r_ij`` over edges, then ``r_ij`` over non-edges."""
    pairs = list(itertools.product(g.vertices, repeat=2))
    negatives = [Not(Var(_pair_atom("r", i, j, g.n))) for i, j in pairs if (i, j) in g.edges]
    positives = [Var(_pair_atom("r", i, j, g.n)) for i, j in pairs if (i, j) not in g.edges]
    return disj(negatives + positives)


# --------------------------------------------------------- default <-> circ


def etherington(dt: DefaultTheory, prefix: str = "a") -> ReductionOutput:
    """PFN default theory to circumscription plus the model-mapping circuit.

    Default ``:g/g`` number ``i`` gets a fresh atom ``a<i>`` defined as
    ``~g``; minimising the fresh atoms with every original letter varying
    prefers models that satisfy as many justifications as possible.  The
    circuit keeps the original letters and computes each fresh atom.
    """
    for i, d in enumerate(dt.defaults):
        if not d.is_pfn:
            raise PreconditionError(f"default {i} ({d}) is not prerequisite-free normal")
    z = dt.atoms
    fresh = tuple(f"{prefix}{i}" for i in range(1, len(dt.defaults) + 1))
    _fresh(fresh, z)
    negated = [negate(d.consequent) for d in dt.defaults]
    theory = KnowledgeBase(
        dt.background.formulas + tuple(Iff(Var(a), g) for a, g in zip(fresh, negated)),
        z + fresh,
    )
    target = CircKB(theory, minimized=frozenset(fresh), fixed=frozenset(), varying=frozenset(z))
    b = CircuitBuilder(z)
    for a in z:
        b.output(a, input_ref(a))
    for a, g in zip(fresh, negated):
        b.output(a, b.compile(g))
    return ReductionOutput(target, circuit=b.build())


def circ_to_default(t: KnowledgeBase) -> DefaultTheory:
    """``t`` as background with a default ``:~x/~x`` per atom."""
    return DefaultTheory(t, tuple(DefaultRule.normal(Not(Var(x))) for x in t.atoms))


# ---------------------------------------------------------------------- QBF


def _qbf_frame(q: QbfEA) -> tuple[list[Clause], list[str], set[int]]:
    variables = q.variables
    gamma = clause_universe(variables)
    c = [f"c{i}" for i in range(1, len(gamma) + 1)]
    _fresh(c + ["w"], variables)
    index = {clause: i for i, clause in enumerate(gamma)}
    selected = set()
    for clause in q.matrix:
        if clause not in index:
            raise PreconditionError(f"matrix clause {clause} is outside the clause universe")
        selected.add(index[clause])
    return gamma, c, selected


def _choice_defaults(atoms: Iterable[str]) -> list[DefaultRule]:
    out = []
    for a in atoms:
        out += [DefaultRule.normal(Var(a)), DefaultRule.normal(Not(Var(a)))]
    return out


def _guards(gamma: list[Clause], c: list[str]) -> Formula:
    return conj(Implies(Var(ci), g.to_formula()) for ci, g in zip(c, gamma))


def qbf_to_skeptical_mc(q: QbfEA) -> tuple[DefaultTheory, Interpretation]:
    """``q`` is valid iff the interpretation is a model of some extension."""
    gamma, c, selected = _qbf_frame(q)
    w = Var("w")
    defaults = _choice_defaults(c)
    for x in q.existential:
        for lit in (Var(x), Not(Var(x))):
            guarded = Implies(w, lit)
            defaults.append(DefaultRule(TRUE, (w & guarded,), guarded))
    defaults.append(DefaultRule(TRUE, (w & _guards(gamma, c),), w))
    alphabet = tuple(c) + ("w",) + q.variables
    theory = DefaultTheory(KnowledgeBase((), alphabet), tuple(defaults))
    model = frozenset(c[i] for i in selected)
    return theory, model


def qbf_to_credulous_inf(q: QbfEA) -> tuple[DefaultTheory, Formula]:
    """``q`` is valid iff some extension entails the returned query."""
    gamma, c, selected = _qbf_frame(q)
    defaults = _choice_defaults(c) + _choice_defaults(q.existential)
    defaults.append(DefaultRule(Not(_guards(gamma, c)), (), Var("w")))
    alphabet = tuple(c) + ("w",) + q.variables
    theory = DefaultTheory(KnowledgeBase((), alphabet), tuple(defaults))
    literals = [Var(ci) if i in selected else Not(Var(ci)) for i, ci in enumerate(c)]
    return theory, conj(literals + [Var("w")])


# --------------------------------------------------------------- to plain PL


def widtio_to_pl(r: RevisionInstance) -> KnowledgeBase:
    return widtio_base(r)


def gcwa_to_pl(kb: GcwaKB) -> KnowledgeBase:
    return gcwa_rewrite(kb)


# --------------------------------------------------------------- size sweep


@dataclass(frozen=True)
class SizeRow:
    param: int
    input_size: int
    output_size: int
    atoms: int
    items: int  # entries in the output's main collection


def _sweep_qbf(n: int, credulous: bool) -> tuple[int, DefaultTheory]:
    half = n // 2
    q = QbfEA(tuple(f"x{i}" for i in range(1, half + 1)),
              tuple(f"y{i}" for i in range(1, n - half + 1)), ())
    q = QbfEA(q.existential, q.universal, tuple(clause_universe(q.variables)))
    dt = (qbf_to_credulous_inf if credulous else qbf_to_skeptical_mc)(q)[0]
    return size(q.matrix), dt


def _size_row(name: str, n: int) -> SizeRow:
    if name == "kernel":
        p = kernel_program(n)
        return SizeRow(n, n, size(p), len(p.alphabet), len(p.rules))
    if name == "clause-universe":
        gamma = clause_universe([f"x{i}" for i in range(1, n + 1)])
        return SizeRow(n, n, size(tuple(gamma)), n, len(gamma))
    if name in ("qbf-skeptical", "qbf-credulous"):
        in_size, dt = _sweep_qbf(n, name == "qbf-credulous")
        return SizeRow(n, in_size, size(dt), len(dt.atoms), len(dt.defaults))
    if name == "circ-to-default":
        t = KnowledgeBase((disj(Var(f"x{i}") for i in range(1, n + 1)),))
        dt = circ_to_default(t)
        return SizeRow(n, size(t), size(dt), len(dt.atoms), len(dt.defaults))
    raise PreconditionError(f"no size sweep for reduction {name!r}")


SWEEPS = ("kernel", "clause-universe", "qbf-skeptical", "qbf-credulous", "circ-to-default")


def reduction_size_report(name: str, params: Iterable[int]) -> list[SizeRow]:
    """Input and output sizes of a reduction over a range of its parameter."""
    return [_size_row(name, n) for n in params]


def expected_clause_count(n: int) -> int:
    return 8 * math.comb(n, 3)
