"""Text formats, one per formalism.

Every writer emits the full alphabet so that ``parse(write(x)) == x``.
Parse errors report the line and column of the offending token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .circuit import BooleanCircuit, Gate
from .circumscription import CircKB, GcwaKB
from .default_logic import DefaultRule, DefaultTheory
from .errors import CircuitError, ParseError, PreconditionError
from .oracles import DirectedGraph, QbfEA
from .revision import RevisionInstance
from .stable import LogicProgram, ProgramRule
from .syntax import ATOM_RE, RESERVED, TRUE, Formula, KnowledgeBase, parse_formula, split_atoms, to_text

_HEADER_RE = re.compile(r"\s*([A-Za-z]+):")


@dataclass(frozen=True)
class _Line:
    number: int
    offset: int  # columns stripped from the left of ``text``
    text: str


def _lines(source: str, comment: str = "#") -> Iterator[_Line]:
    for number, raw in enumerate(source.splitlines(), start=1):
        body = raw.split(comment, 1)[0]
        stripped = body.lstrip()
        if stripped.strip():
            yield _Line(number, len(body) - len(stripped), stripped.rstrip())


def _header(line: _Line, keys: tuple[str, ...]) -> tuple[str, _Line] | None:
    m = _HEADER_RE.match(line.text)
    if not m or m.group(1) not in keys:
        return None
    rest = line.text[m.end():]
    lead = len(rest) - len(rest.lstrip())
    return m.group(1), _Line(line.number, line.offset + m.end() + lead, rest.strip())


def _formula(line: _Line):
    return parse_formula(line.text, line.number, line.offset)


def _atoms(line: _Line) -> tuple[str, ...]:
    return split_atoms(line.text, line.number, line.offset)


def _wrap(fn: Callable, line: _Line, *args):
    """Turn a domain error raised while building an object into a ParseError."""
    try:
        return fn(*args)
    except (PreconditionError, CircuitError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e), line.number, line.offset + 1) from None


def _end(source: str) -> _Line:
    return _Line(max(1, len(source.splitlines())), 0, "")


# ------------------------------------------------------------ plain KB files


def parse_kb(source: str) -> KnowledgeBase:
    atoms: tuple[str, ...] = ()
    formulas = []
    for line in _lines(source):
        h = _header(line, ("atoms",))
        if h:
            atoms += _atoms(h[1])
        else:
            formulas.append(_formula(line))
    return _wrap(KnowledgeBase, _end(source), tuple(formulas), atoms)


def write_kb(kb: KnowledgeBase) -> str:
    return "".join([f"atoms: {' '.join(kb.atoms)}\n"] + [f"{to_text(f)}\n" for f in kb.formulas])


def parse_gcwa(source: str) -> GcwaKB:
    return GcwaKB(parse_kb(source))


def write_gcwa(kb: GcwaKB) -> str:
    return write_kb(kb.theory)


# ---------------------------------------------------------- circumscription


def parse_circ(source: str) -> CircKB:
    groups: dict[str, tuple[str, ...]] = {"atoms": (), "minimize": (), "fixed": (), "vary": ()}
    formulas = []
    for line in _lines(source):
        h = _header(line, tuple(groups))
        if h:
            groups[h[0]] += _atoms(h[1])
        else:
            formulas.append(_formula(line))
    end = _end(source)
    theory = _wrap(KnowledgeBase, end, tuple(formulas), groups["atoms"])
    return _wrap(CircKB, end, theory, groups["minimize"], groups["fixed"], groups["vary"])


def write_circ(c: CircKB) -> str:
    head = [
        f"atoms: {' '.join(c.atoms)}",
        f"minimize: {' '.join(c._ordered(c.minimized))}",
        f"fixed: {' '.join(c._ordered(c.fixed))}",
        f"vary: {' '.join(c._ordered(c.varying))}",
    ]
    return "".join(f"{s.rstrip()}\n" for s in head) + "".join(f"{to_text(f)}\n" for f in c.theory.formulas)


# ------------------------------------------------------------ default logic


def _default_rule(line: _Line) -> DefaultRule:
    text = line.text
    colon = text.find(":")
    slash = text.rfind("/")
    if colon < 0 or slash < colon:
        raise ParseError("expected 'prerequisite : justifications / consequent'", line.number, line.offset + 1)

    def part(start: int, stop: int):
        chunk = text[start:stop]
        lead = len(chunk) - len(chunk.lstrip())
        return _Line(line.number, line.offset + start + lead, chunk.strip())

    pre = part(0, colon)
    prerequisite = _formula(pre) if pre.text else None
    justifications = []
    start = colon + 1
    middle = text[start:slash]
    if middle.strip():
        for piece in middle.split(","):
            j = part(start, start + len(piece))
            if not j.text:
                raise ParseError("empty justification", j.number, j.offset + 1)
            justifications.append(_formula(j))
            start += len(piece) + 1
    cons = part(slash + 1, len(text))
    if not cons.text:
        raise ParseError("missing consequent", line.number, line.offset + len(text) + 1)
    consequent = _formula(cons)
    return DefaultRule(prerequisite or TRUE, tuple(justifications), consequent)


def parse_default(source: str) -> DefaultTheory:
    atoms: tuple[str, ...] = ()
    section = None
    background, defaults = [], []
    for line in _lines(source):
        h = _header(line, ("atoms", "W", "D"))
        if h and h[0] == "atoms":
            atoms += _atoms(h[1])
            continue
        if h:
            section = h[0]
            if h[1].text:
                raise ParseError(f"section {section}: starts a block; put entries on the following lines",
                                 line.number, h[1].offset + 1)
            continue
        if section == "W":
            background.append(_formula(line))
        elif section == "D":
            defaults.append(_default_rule(line))
        else:
            raise ParseError("expected a 'W:' or 'D:' section header", line.number, line.offset + 1)
    kb = _wrap(KnowledgeBase, _end(source), tuple(background), atoms)
    return DefaultTheory(kb, tuple(defaults))


def write_default(dt: DefaultTheory) -> str:
    out = [f"atoms: {' '.join(dt.atoms)}", "W:"]
    out += [to_text(f) for f in dt.background.formulas]
    out.append("D:")
    out += [str(d) for d in dt.defaults]
    return "".join(f"{s}\n" for s in out)


# ------------------------------------------------------------ logic programs

_RULE_RE = re.compile(r"(?P<head>[^:.]+?)\s*(?::-\s*(?P<body>.*?))?\s*\.\Z")


def _program_rule(line: _Line) -> ProgramRule:
    m = _RULE_RE.match(line.text)
    if not m:
        raise ParseError("expected 'head :- body.' ending with a period", line.number, line.offset + 1)

    def atom(name: str, column: int) -> str:
        if not ATOM_RE.match(name) or name in RESERVED:
            raise ParseError(f"invalid atom name {name!r}", line.number, line.offset + column + 1)
        return name

    head = atom(m.group("head"), 0)
    pos, neg = [], []
    body = m.group("body")
    if body is not None:
        start = m.start("body")
        for piece in body.split(","):
            lit = piece.strip()
            column = start + len(piece) - len(piece.lstrip())
            if lit.startswith("not ") or lit.startswith("not\t"):
                name = lit[3:].strip()
                neg.append(atom(name, column + len(lit) - len(name)))
            else:
                pos.append(atom(lit, column))
            start += len(piece) + 1
    return ProgramRule(head, tuple(pos), tuple(neg))


def parse_program(source: str) -> LogicProgram:
    atoms: tuple[str, ...] = ()
    rules = []
    for line in _lines(source, comment="%"):
        h = _header(line, ("atoms",))
        if h:
            atoms += _atoms(h[1])
        else:
            rules.append(_program_rule(line))
    return _wrap(LogicProgram, _end(source), tuple(rules), atoms)


def write_program(p: LogicProgram) -> str:
    return f"atoms: {' '.join(p.alphabet)}\n" + "".join(f"{r}\n" for r in p.rules)


# ----------------------------------------------------------------- revision


def parse_revision(source: str) -> RevisionInstance:
    atoms: tuple[str, ...] = ()
    section = None
    base, new = [], []
    for line in _lines(source):
        h = _header(line, ("atoms", "K", "A"))
        if h and h[0] == "atoms":
            atoms += _atoms(h[1])
        elif h:
            section = h[0]
            if h[1].text:
                (base if section == "K" else new).append(_formula(h[1]))
        elif section == "K":
            base.append(_formula(line))
        elif section == "A":
            new.append(_formula(line))
        else:
            raise ParseError("expected a 'K:' or 'A:' section header", line.number, line.offset + 1)
    if len(new) != 1:
        raise ParseError(f"the A: section needs exactly one formula, found {len(new)}", _end(source).number, 1)
    kb = _wrap(KnowledgeBase, _end(source), tuple(base), atoms)
    return RevisionInstance(kb, new[0])


def write_revision(r: RevisionInstance) -> str:
    out = [f"atoms: {' '.join(r.atoms)}", "K:"]
    out += [to_text(f) for f in r.base.formulas]
    out += ["A:", to_text(r.new_formula)]
    return "".join(f"{s}\n" for s in out)


# --------------------------------------------------------------------- QBF


def _literals(line: _Line) -> tuple[tuple[str, bool], ...]:
    lits = []
    for m in re.finditer(r"\S+", line.text):
        token = m.group()
        positive = not token.startswith("-")
        name = token if positive else token[1:]
        if not ATOM_RE.match(name) or name in RESERVED:
            raise ParseError(f"invalid literal {token!r}", line.number, line.offset + m.start() + 1)
        lits.append((name, positive))
    return tuple(lits)


def _qbf_lines(source: str) -> tuple[tuple[str, ...], tuple[str, ...], list[tuple[_Line, tuple]]]:
    x: tuple[str, ...] = ()
    y: tuple[str, ...] = ()
    clauses = []
    for line in _lines(source):
        h = _header(line, ("exists", "forall"))
        if h and h[0] == "exists":
            x += _atoms(h[1])
        elif h:
            y += _atoms(h[1])
        else:
            clauses.append((line, _literals(line)))
    return x, y, clauses


def parse_qbf_raw(source: str) -> tuple[tuple[str, ...], tuple[str, ...], list[tuple[tuple[str, bool], ...]]]:
    """Quantifier prefix and clauses without the three-variable check."""
    x, y, clauses = _qbf_lines(source)
    return x, y, [lits for _, lits in clauses]


def parse_qbf(source: str, pad: bool = False) -> QbfEA:
    """Parse a QBF file; with ``pad`` short clauses are padded with fresh universals."""
    from .reductions import pad as pad_clauses

    x, y, clauses = _qbf_lines(source)
    if pad:
        return _wrap(pad_clauses, _end(source), x, y, [lits for _, lits in clauses])
    for line, lits in clauses:
        # validate clause by clause so errors point at the right line
        _wrap(QbfEA, line, x, y, (lits,))
    return QbfEA(x, y, tuple(lits for _, lits in clauses))


def write_qbf(q: QbfEA) -> str:
    out = [f"exists: {' '.join(q.existential)}".rstrip(), f"forall: {' '.join(q.universal)}".rstrip()]
    out += [str(c) for c in q.matrix]
    return "".join(f"{s}\n" for s in out)


# ------------------------------------------------------------------- graphs


def parse_graph(source: str) -> DirectedGraph:
    lines = list(_lines(source))
    if not lines:
        raise ParseError("empty graph file: expected the vertex count", 1, 1)
    first = lines[0]
    if not first.text.isdigit():
        raise ParseError("expected the vertex count", first.number, first.offset + 1)
    n = int(first.text)
    edges = []
    for line in lines[1:]:
        parts = line.text.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError("expected an edge 'i j'", line.number, line.offset + 1)
        i, j = map(int, parts)
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"edge ({i}, {j}) leaves the vertex range 1..{n}", line.number, line.offset + 1)
        edges.append((i, j))
    return _wrap(DirectedGraph, first, n, frozenset(edges))


def write_graph(g: DirectedGraph) -> str:
    return f"{g.n}\n" + "".join(f"{i} {j}\n" for i, j in sorted(g.edges))


# ----------------------------------------------------------------- circuits

_GATE_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*=\s*([A-Z]+)\s*(.*)\Z")


def parse_circuit(source: str) -> BooleanCircuit:
    inputs: tuple[str, ...] = ()
    outputs: list[tuple[str, str]] = []
    gates = []
    for line in _lines(source):
        h = _header(line, ("inputs", "outputs"))
        if h and h[0] == "inputs":
            inputs += _atoms(h[1])
        elif h:
            for m in re.finditer(r"\S+", h[1].text):
                target, eq, ref = m.group().partition("=")
                if not eq or not target or not ref:
                    raise ParseError(f"expected 'target=ref', got {m.group()!r}",
                                     line.number, h[1].offset + m.start() + 1)
                outputs.append((target, ref))
        else:
            m = _GATE_RE.match(line.text)
            if not m:
                raise ParseError("expected 'id = OP operands'", line.number, line.offset + 1)
            gates.append(Gate(m.group(1), m.group(2), tuple(m.group(3).split())))
    return _wrap(BooleanCircuit, _end(source), inputs, tuple(gates), tuple(outputs))


def write_circuit(c: BooleanCircuit) -> str:
    out = [f"inputs: {' '.join(c.inputs)}".rstrip(), f"outputs: {' '.join(f'{t}={r}' for t, r in c.outputs)}".rstrip()]
    out += [str(g) for g in c.gates]
    return "".join(f"{s}\n" for s in out)


# ------------------------------------------------------- queries and models


def parse_query(source: str) -> Formula:
    """A single formula; blank and comment lines are ignored."""
    lines = list(_lines(source))
    if len(lines) != 1:
        raise ParseError(f"expected exactly one formula line, found {len(lines)}", _end(source).number, 1)
    return _formula(lines[0])


def write_query(f: Formula) -> str:
    return f"{to_text(f)}\n"


def parse_model(source: str) -> frozenset[str]:
    """An interpretation given as its true atoms, whitespace separated."""
    atoms: tuple[str, ...] = ()
    for line in _lines(source):
        atoms += _atoms(line)
    return frozenset(atoms)


def write_model(m: frozenset[str], alphabet: Sequence[str] = ()) -> str:
    order = {a: i for i, a in enumerate(alphabet)}
    return " ".join(sorted(m, key=lambda a: (order.get(a, len(order)), a))) + "\n"


PARSERS = {
    "pl": parse_kb, "gcwa": parse_gcwa, "circ": parse_circ, "default": parse_default,
    "default-credulous": parse_default, "sm": parse_program, "sbr": parse_revision,
    "widtio": parse_revision, "qbf": parse_qbf, "graph": parse_graph, "circuit": parse_circuit,
    "query": parse_query, "model": parse_model,
}

WRITERS = {
    KnowledgeBase: write_kb, GcwaKB: write_gcwa, CircKB: write_circ, DefaultTheory: write_default,
    LogicProgram: write_program, RevisionInstance: write_revision, QbfEA: write_qbf,
    DirectedGraph: write_graph, BooleanCircuit: write_circuit,
}


def write(obj) -> str:
    if isinstance(obj, Formula):
        return write_query(obj)
    if isinstance(obj, frozenset):
        return write_model(obj)
    try:
        return WRITERS[type(obj)](obj)
    except KeyError:
        raise TypeError(f"no text format for {type(obj).__name__}") from None
