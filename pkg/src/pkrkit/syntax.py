"""Propositional formulas, knowledge bases and the text grammar.

Grammar (loosest binding last)::

    ~  &  |  ->  <->

``->`` associates to the right, the other binary connectives to the left.
Atoms match ``[a-z][a-zA-Z0-9_]*``; ``true`` and ``false`` are constants.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .errors import ParseError

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")
RESERVED = frozenset({"true", "false"})

Alphabet = tuple  # ordered tuple of atom names; order fixes enumeration order


class Formula:
    __slots__ = ()

    def __invert__(self) -> Formula:
        return Not(self)

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __rshift__(self, other: Formula) -> Formula:
        return Implies(self, other)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True, slots=True)
class Var(Formula):
    name: str

    def __post_init__(self):
        if not ATOM_RE.match(self.name) or self.name in RESERVED:
            raise ValueError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True, slots=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


TRUE = Const(True)
FALSE = Const(False)

FormulaLike = Union[Formula, str]


def as_formula(f: FormulaLike) -> Formula:
    return parse_formula(f) if isinstance(f, str) else f


def conj(formulas: Iterable[Formula]) -> Formula:
    """Left-folded conjunction; the empty conjunction is ``true``."""
    out = None
    for f in formulas:
        out = f if out is None else And(out, f)
    return TRUE if out is None else out


def disj(formulas: Iterable[Formula]) -> Formula:
    out = None
    for f in formulas:
        out = f if out is None else Or(out, f)
    return FALSE if out is None else out


def negate(f: Formula) -> Formula:
    """Negation that cancels an outermost ``~`` instead of stacking one."""
    return f.arg if isinstance(f, Not) else Not(f)


def atoms_of(f: Formula) -> tuple[str, ...]:
    """Atoms of ``f`` in left-to-right first-occurrence order."""
    seen: dict[str, None] = {}
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            seen.setdefault(node.name)
        elif isinstance(node, Not):
            stack.append(node.arg)
        elif not isinstance(node, Const):
            stack.append(node.right)
            stack.append(node.left)
    return tuple(seen)


def merge_atoms(*groups: Iterable[str]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for group in groups:
        for a in group:
            seen.setdefault(a)
    return tuple(seen)


def substitute(f: Formula, mapping: dict[str, str]) -> Formula:
    """Rename atoms of ``f``; atoms missing from ``mapping`` are kept."""
    if isinstance(f, Var):
        return Var(mapping.get(f.name, f.name))
    if isinstance(f, Const):
        return f
    if isinstance(f, Not):
        return Not(substitute(f.arg, mapping))
    return type(f)(substitute(f.left, mapping), substitute(f.right, mapping))


# ---------------------------------------------------------------- collections


@dataclass(frozen=True)
class KnowledgeBase:
    """A finite multiset of formulas over a declared alphabet.

    ``atoms`` is normalised on construction: declared atoms first, then any
    atom used by a formula but not declared, in first-use order.
    """

    formulas: tuple[Formula, ...] = ()
    atoms: Alphabet = ()

    def __post_init__(self):
        formulas = tuple(as_formula(f) for f in self.formulas)
        declared = tuple(self.atoms.split()) if isinstance(self.atoms, str) else tuple(self.atoms)
        if len(set(declared)) != len(declared):
            raise ValueError(f"duplicate atoms in alphabet {declared}")
        for a in declared:
            Var(a)  # validates the name
        object.__setattr__(self, "formulas", formulas)
        object.__setattr__(self, "atoms", merge_atoms(declared, *(atoms_of(f) for f in formulas)))

    @classmethod
    def of(cls, *formulas: FormulaLike, atoms: Iterable[str] | str = ()) -> KnowledgeBase:
        return cls(tuple(as_formula(f) for f in formulas), atoms)

    def __iter__(self) -> Iterator[Formula]:
        return iter(self.formulas)

    def __len__(self) -> int:
        return len(self.formulas)

    def with_formulas(self, *extra: Formula) -> KnowledgeBase:
        return KnowledgeBase(self.formulas + tuple(extra), self.atoms)


@dataclass(frozen=True, order=True)
class Clause:
    """Disjunction of literals; ``(atom, True)`` is a positive literal."""

    literals: tuple[tuple[str, bool], ...]

    @property
    def is_positive(self) -> bool:
        return all(pol for _, pol in self.literals)

    @property
    def variables(self) -> tuple[str, ...]:
        return merge_atoms(a for a, _ in self.literals)

    def to_formula(self) -> Formula:
        return disj(Var(a) if pol else Not(Var(a)) for a, pol in self.literals)

    def __str__(self) -> str:
        return " ".join(a if pol else f"-{a}" for a, pol in self.literals)


# -------------------------------------------------------------------- sizing


@functools.singledispatch
def size(x) -> int:
    """Node count of a syntactic object.

    Formulas count AST nodes; collections count the sum of their members'
    sizes plus the number of members.
    """
    if isinstance(x, (tuple, list, frozenset, set)):
        return sum(size(m) for m in x) + len(x)
    raise TypeError(f"size is undefined for {type(x).__name__}")


@size.register
def _(x: Formula) -> int:
    count = 0
    stack = [x]
    while stack:
        node = stack.pop()
        count += 1
        if isinstance(node, Not):
            stack.append(node.arg)
        elif isinstance(node, (And, Or, Implies, Iff)):
            stack.append(node.left)
            stack.append(node.right)
    return count


@size.register
def _(x: str) -> int:
    return 1  # a bare atom name


@size.register
def _(x: KnowledgeBase) -> int:
    return sum(size(f) for f in x.formulas) + len(x.formulas)


@size.register
def _(x: Clause) -> int:
    return size(x.to_formula())


# ------------------------------------------------------------------- printer

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5, Var: 6, Const: 6}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def to_text(f: Formula) -> str:
    """Render with the fewest parentheses that re-parse to the same tree."""

    def wrap(node: Formula, min_prec: int) -> str:
        text = render(node)
        return f"({text})" if _PREC[type(node)] < min_prec else text

    def render(node: Formula) -> str:
        if isinstance(node, Var):
            return node.name
        if isinstance(node, Const):
            return "true" if node.value else "false"
        if isinstance(node, Not):
            return "~" + wrap(node.arg, 5)
        p = _PREC[type(node)]
        if isinstance(node, Implies):
            left, right = wrap(node.left, p + 1), wrap(node.right, p)
        else:
            left, right = wrap(node.left, p), wrap(node.right, p + 1)
        return f"{left} {_SYMBOL[type(node)]} {right}"

    return render(f)


# -------------------------------------------------------------------- parser

_TOKEN_RE = re.compile(r"\s*(?:(<->|->|[~&|()])|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str, line: int, offset: int) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace remains
            break
        op, name, bad = m.groups()
        col = m.start(m.lastindex) + 1
        if bad is not None:
            raise ParseError(f"unexpected character {bad!r}", line, col + offset)
        if name is not None:
            if name not in RESERVED and not ATOM_RE.match(name):
                raise ParseError(f"invalid atom name {name!r}", line, col + offset)
            tokens.append(("name", name, col))
        else:
            tokens.append(("op", op, col))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, line: int, column_offset: int):
        self.tokens = _tokenize(text, line, column_offset)
        self.i = 0
        self.line = line
        self.offset = column_offset

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.tokens[self.i][2] + self.offset)

    def peek(self) -> str:
        kind, value, _ = self.tokens[self.i]
        return value if kind == "op" else kind

    def take(self, expected: str) -> None:
        if self.peek() != expected:
            found = self.tokens[self.i][1] or "end of input"
            raise self.error(f"expected {expected!r}, found {found!r}")
        self.i += 1

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek() != "end":
            raise self.error(f"unexpected {self.tokens[self.i][1]!r}")
        return f

    def iff(self) -> Formula:
        f = self.implies()
        while self.peek() == "<->":
            self.i += 1
            f = Iff(f, self.implies())
        return f

    def implies(self) -> Formula:
        f = self.disjunction()
        if self.peek() == "->":
            self.i += 1
            return Implies(f, self.implies())
        return f

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek() == "|":
            self.i += 1
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, value, _ = self.tokens[self.i]
        if kind == "op" and value == "~":
            self.i += 1
            return Not(self.unary())
        if kind == "op" and value == "(":
            self.i += 1
            f = self.iff()
            self.take(")")
            return f
        if kind == "name":
            self.i += 1
            if value == "true":
                return TRUE
            if value == "false":
                return FALSE
            return Var(value)
        raise self.error("expected a formula" if kind == "end" else f"unexpected {value!r}")


def parse_formula(text: str, line: int = 1, column_offset: int = 0) -> Formula:
    """Parse one formula; errors carry ``line`` and the column in the source line."""
    return _Parser(text, line, column_offset).parse()


def split_atoms(text: str, line: int = 1, column_offset: int = 0) -> tuple[str, ...]:
    atoms = []
    for m in re.finditer(r"\S+", text):
        name = m.group()
        if not ATOM_RE.match(name) or name in RESERVED:
            raise ParseError(f"invalid atom name {name!r}", line, m.start() + 1 + column_offset)
        atoms.append(name)
    return tuple(atoms)


def literal_formula(atom: str, polarity: bool) -> Formula:
    return Var(atom) if polarity else Not(Var(atom))


def make_clause(literals: Sequence[tuple[str, bool]]) -> Clause:
    return Clause(tuple(literals))


__all__ = [
    "Alphabet", "And", "Clause", "Const", "FALSE", "Formula", "FormulaLike", "Iff",
    "Implies", "KnowledgeBase", "Not", "Or", "TRUE", "Var", "as_formula", "atoms_of",
    "conj", "disj", "literal_formula", "make_clause", "merge_atoms", "negate",
    "parse_formula", "size", "split_atoms", "substitute", "to_text",
]
