"""Brute-force ground truth: graph kernels and ∃∀ QBF validity.

These are deliberately naive so that they can arbitrate the reductions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from . import limits
from .errors import PreconditionError
from .prop import Interpretation, Universe
from .syntax import Clause, Var


@dataclass(frozen=True)
class DirectedGraph:
    """Vertices ``1..n``; edges are ordered pairs and may be self-loops."""

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError("a graph needs at least one vertex")
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        for i, j in edges:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise PreconditionError(f"edge ({i}, {j}) leaves the vertex range 1..{self.n}")
        object.__setattr__(self, "edges", edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @classmethod
    def all_graphs(cls, n: int) -> Iterable[DirectedGraph]:
        """Every digraph on ``n`` labelled vertices, self-loops included."""
        pairs = list(itertools.product(range(1, n + 1), repeat=2))
        for bits in range(1 << len(pairs)):
            yield cls(n, frozenset(p for k, p in enumerate(pairs) if (bits >> k) & 1))


def is_kernel(g: DirectedGraph, k: frozenset[int]) -> bool:
    h = set(g.vertices) - k
    covers = all(i in h or j in h for i, j in g.edges)
    attacked = all(any((i, j) in g.edges for i in k) for j in h)
    return covers and attacked


def has_kernel(g: DirectedGraph) -> tuple[bool, frozenset[int] | None]:
    """Search kernels by size, then lexicographically; return the first found."""
    limits.check("oracle", g.n)
    for size in range(g.n + 1):
        for k in itertools.combinations(g.vertices, size):
            if is_kernel(g, frozenset(k)):
                return True, frozenset(k)
    return False, None


# ---------------------------------------------------------------------- QBF


def canonical_clause(literals: Iterable[tuple[str, bool]], order: dict[str, int]) -> Clause:
    return Clause(tuple(sorted(set(literals), key=lambda lit: (order[lit[0]], lit[1]))))


@dataclass(frozen=True)
class QbfEA:
    """``exists X forall Y . ~F`` with ``F`` a set of three-literal clauses.

    Clauses are stored canonically: literals sorted by variable position in
    ``X + Y``, the matrix deduplicated and sorted in clause-universe order.
    """

    existential: tuple[str, ...]
    universal: tuple[str, ...]
    matrix: tuple[Clause, ...] = ()

    def __post_init__(self):
        x = tuple(self.existential.split()) if isinstance(self.existential, str) else tuple(self.existential)
        y = tuple(self.universal.split()) if isinstance(self.universal, str) else tuple(self.universal)
        for a in x + y:
            Var(a)
        if len(set(x + y)) != len(x) + len(y):
            raise PreconditionError("quantified variables must be distinct")
        order = {a: i for i, a in enumerate(x + y)}
        clauses = set()
        for c in self.matrix:
            lits = c.literals if isinstance(c, Clause) else tuple(c)
            for a, _ in lits:
                if a not in order:
                    raise PreconditionError(f"clause {Clause(tuple(lits))} uses unquantified variable {a!r}")
            if len(lits) != 3 or len({a for a, _ in lits}) != 3:
                raise PreconditionError(
                    f"clause {Clause(tuple(lits))} is not over three distinct variables; pad short clauses first"
                )
            clauses.add(canonical_clause(lits, order))
        matrix = tuple(sorted(clauses, key=lambda c: ([order[a] for a, _ in c.literals], [p for _, p in c.literals])))
        object.__setattr__(self, "existential", x)
        object.__setattr__(self, "universal", y)
        object.__setattr__(self, "matrix", matrix)

    @property
    def variables(self) -> tuple[str, ...]:
        return self.existential + self.universal


def _negated_matrix_table(q: QbfEA) -> tuple[Universe, int]:
    limits.check("oracle", len(q.variables))
    u = Universe(q.variables, cap="oracle")
    f = u.kb_table(c.to_formula() for c in q.matrix)
    return u, u.full ^ f


def qbf_witness(q: QbfEA) -> Interpretation | None:
    """The first ``X`` assignment (canonical order) under which ``~F`` holds for all ``Y``."""
    u, not_f = _negated_matrix_table(q)
    ny = len(q.universal)
    block = (1 << (1 << ny)) - 1
    xs = Universe(q.existential, cap="oracle")
    # X atoms come first in the alphabet, so each X assignment owns a contiguous block
    for kx in range(1 << len(q.existential)):
        if (not_f >> (kx << ny)) & block == block:
            return xs.interpretation(kx)
    return None


def qbf_valid(q: QbfEA) -> bool:
    return qbf_witness(q) is not None


def valid_at(q: QbfEA, x_true: Iterable[str]) -> bool:
    """Does ``~F`` hold for every ``Y`` once ``X`` is fixed to ``x_true``?"""
    u, not_f = _negated_matrix_table(q)
    ny = len(q.universal)
    block = (1 << (1 << ny)) - 1
    kx = Universe(q.existential, cap="oracle").index(frozenset(x_true))
    return (not_f >> (kx << ny)) & block == block

