"""Boolean circuits mapping interpretations of one alphabet to another.

References inside a circuit are either ``in(atom)`` for a source atom or the
id of an earlier gate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import AbstractSet, Iterable, Mapping

from .errors import CircuitError, EvaluationError
from .prop import Interpretation
from .syntax import And, Const, Formula, Iff, Implies, Not, Or, Var, substitute

OPS = {"AND": (2, None), "OR": (2, None), "NOT": (1, 1), "CONST": (1, 1)}
_INPUT_RE = re.compile(r"in\(([a-z][a-zA-Z0-9_]*)\)\Z")


def input_ref(atom: str) -> str:
    return f"in({atom})"


def input_of(ref: str) -> str | None:
    m = _INPUT_RE.match(ref)
    return m.group(1) if m else None


@dataclass(frozen=True)
class Gate:
    id: str
    op: str
    operands: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.id} = {self.op} {' '.join(self.operands)}"


@dataclass(frozen=True)
class BooleanCircuit:
    inputs: tuple[str, ...]
    gates: tuple[Gate, ...]
    outputs: tuple[tuple[str, str], ...]  # (target atom, reference)

    def __post_init__(self):
        inputs = tuple(self.inputs)
        gates = tuple(self.gates)
        outputs = tuple((t, r) for t, r in (self.outputs.items() if isinstance(self.outputs, Mapping) else self.outputs))
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "outputs", outputs)
        if len(set(inputs)) != len(inputs):
            raise CircuitError("duplicate circuit inputs")
        defined: set[str] = set()

        def resolve(ref: str, where: str) -> None:
            atom = input_of(ref)
            if atom is not None:
                if atom not in inputs:
                    raise CircuitError(f"{where}: undeclared input {atom!r}")
            elif ref not in defined:
                raise CircuitError(f"{where}: reference {ref!r} is not an earlier gate")

        for g in gates:
            if g.op not in OPS:
                raise CircuitError(f"gate {g.id}: unknown operation {g.op!r}")
            if g.id in defined or input_of(g.id) is not None:
                raise CircuitError(f"gate {g.id}: id already in use")
            low, high = OPS[g.op]
            if len(g.operands) < low or (high is not None and len(g.operands) > high):
                raise CircuitError(f"gate {g.id}: wrong number of operands for {g.op}")
            if g.op == "CONST":
                if g.operands[0] not in ("true", "false"):
                    raise CircuitError(f"gate {g.id}: CONST takes true or false")
            else:
                for r in g.operands:
                    resolve(r, f"gate {g.id}")
            defined.add(g.id)
        targets = [t for t, _ in outputs]
        if len(set(targets)) != len(targets):
            raise CircuitError("duplicate circuit outputs")
        for t, r in outputs:
            Var(t)
            resolve(r, f"output {t}")

    @property
    def target_alphabet(self) -> tuple[str, ...]:
        return tuple(t for t, _ in self.outputs)

    @property
    def is_identity(self) -> bool:
        return self.outputs == tuple((a, input_ref(a)) for a in self.inputs)

    def substitution(self) -> dict[str, str]:
        """Source atom to target atom, for circuits whose outputs are plain input wires.

        Every input must feed exactly one output.
        """
        mapping: dict[str, str] = {}
        for t, r in self.outputs:
            atom = input_of(r)
            if atom is None:
                raise CircuitError(f"output {t} is computed by a gate; only renaming circuits rewrite formulas")
            if atom in mapping:
                raise CircuitError(f"input {atom} feeds several outputs; the renaming is ambiguous")
            mapping[atom] = t
        missing = [a for a in self.inputs if a not in mapping]
        if missing:
            raise CircuitError(f"inputs {missing} reach no output; the renaming is partial")
        return mapping

    def rewrite(self, f: Formula) -> Formula:
        """``g(f)``: the formula with every source atom replaced by its target."""
        if self.is_identity:
            return f
        return substitute(f, self.substitution())


def identity(alphabet: Iterable[str]) -> BooleanCircuit:
    alphabet = tuple(alphabet)
    return BooleanCircuit(alphabet, (), tuple((a, input_ref(a)) for a in alphabet))


def eval_circuit(c: BooleanCircuit, m: AbstractSet[str]) -> Interpretation:
    for a in m:
        if a not in c.inputs:
            raise EvaluationError(a)
    values: dict[str, bool] = {input_ref(a): a in m for a in c.inputs}
    for g in c.gates:
        if g.op == "CONST":
            values[g.id] = g.operands[0] == "true"
        elif g.op == "NOT":
            values[g.id] = not values[g.operands[0]]
        elif g.op == "AND":
            values[g.id] = all(values[r] for r in g.operands)
        else:
            values[g.id] = any(values[r] for r in g.operands)
    return frozenset(t for t, r in c.outputs if values[r])


class CircuitBuilder:
    """Incrementally compile formulas into gates over fixed inputs."""

    def __init__(self, inputs: Iterable[str]):
        self.inputs = tuple(inputs)
        self.gates: list[Gate] = []
        self.outputs: list[tuple[str, str]] = []

    def gate(self, op: str, *operands: str) -> str:
        gid = f"g{len(self.gates) + 1}"
        self.gates.append(Gate(gid, op, operands))
        return gid

    def compile(self, f: Formula) -> str:
        if isinstance(f, Var):
            if f.name not in self.inputs:
                raise EvaluationError(f.name)
            return input_ref(f.name)
        if isinstance(f, Const):
            return self.gate("CONST", "true" if f.value else "false")
        if isinstance(f, Not):
            return self.gate("NOT", self.compile(f.arg))
        left, right = self.compile(f.left), self.compile(f.right)
        if isinstance(f, And):
            return self.gate("AND", left, right)
        if isinstance(f, Or):
            return self.gate("OR", left, right)
        if isinstance(f, Implies):
            return self.gate("OR", self.gate("NOT", left), right)
        if isinstance(f, Iff):
            both = self.gate("AND", left, right)
            neither = self.gate("AND", self.gate("NOT", left), self.gate("NOT", right))
            return self.gate("OR", both, neither)
        raise TypeError(f"not a formula: {f!r}")

    def output(self, target: str, ref: str) -> None:
        self.outputs.append((target, ref))

    def build(self) -> BooleanCircuit:
        return BooleanCircuit(self.inputs, tuple(self.gates), tuple(self.outputs))


def compile_formula(f: Formula, inputs: Iterable[str], target: str) -> BooleanCircuit:
    """A single-output circuit whose ``target`` is true exactly on models of ``f``."""
    b = CircuitBuilder(inputs)
    b.output(target, b.compile(f))
    return b.build()


def negate_output(c: BooleanCircuit, target: str) -> BooleanCircuit:
    """Copy of ``c`` with the ``target`` output inverted."""
    gates = list(c.gates)
    gid = f"g{len(gates) + 1}"
    while any(g.id == gid for g in gates):
        gid += "_"
    outputs = []
    for t, r in c.outputs:
        if t == target:
            gates.append(Gate(gid, "NOT", (r,)))
            r = gid
        outputs.append((t, r))
    if target not in c.target_alphabet:
        raise CircuitError(f"no output named {target!r}")
    return BooleanCircuit(c.inputs, tuple(gates), tuple(outputs))
