"""The acceptance battery: ten end-to-end criteria with their time budgets.

Each criterion returns a :class:`CriterionResult`; a criterion passes when
its check finds zero mismatches and it finishes within its budget.  The
battery is run by ``pkrkit selftest`` and by the test suite.
"""

from __future__ import annotations

import contextlib
import io
import math
import random
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

from . import cli, formats, pools
from .circuit import identity, negate_output
from .circumscription import CircKB, gcwa_free_atoms, gcwa_models, gcwa_rewrite
from .default_logic import credulous_entails, extensions, extensions_naive, model_of_some_extension
from .oracles import DirectedGraph, has_kernel, qbf_valid
from .preservation import Semantics, SemanticsTag, check_model_preservation, check_theorem_preservation
from .prop import all_interpretations, all_models, conjunction_of_literals, minimal_models
from .reductions import (
    circ_to_default, clause_universe, etherington, kernel_program, kernel_query, qbf_to_credulous_inf,
    qbf_to_skeptical_mc,
)
from .revision import (
    RevisionInstance, sbr_entails, sbr_model_check, widtio_base, widtio_entails, widtio_model_check, wka,
)
from .stable import sm_entails, stable_models
from .syntax import FALSE, TRUE, KnowledgeBase, Not, parse_formula


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    mismatches: int
    checked: int
    seconds: float
    budget: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.mismatches == 0 and self.seconds <= self.budget

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"; {self.detail}" if self.detail else ""
        return (f"[{status}] criterion {self.number}: {self.title} "
                f"({self.checked} checked, {self.mismatches} mismatches, "
                f"{self.seconds:.2f}s of {self.budget:.0f}s{extra})")

    def record(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "checked": self.checked, "mismatches": self.mismatches, "budget": self.budget}


@dataclass
class _Tally:
    checked: int = 0
    mismatches: int = 0

    def expect(self, ok: bool) -> None:
        self.checked += 1
        if not ok:
            self.mismatches += 1


def _timed(number: int, title: str, budget: float, body: Callable[[_Tally], str | None]) -> CriterionResult:
    tally = _Tally()
    start = time.perf_counter()
    detail = body(tally) or ""
    return CriterionResult(number, title, tally.mismatches, tally.checked, time.perf_counter() - start, budget, detail)


# ---------------------------------------------------------------- criteria


def lunch_goldens(t: _Tally, seed: int = 0) -> None:
    f = pools.lunch_formula()
    t.expect(frozenset(all_models(KnowledgeBase((f,), pools.LUNCH))) == pools.LUNCH_MODELS)
    t.expect(len(all_models(KnowledgeBase((f,), pools.LUNCH))) == 4)
    short = KnowledgeBase((pools.lunch_short_formula(),), pools.LUNCH)
    t.expect(frozenset(minimal_models(short)) == pools.LUNCH_MODELS)


def kernel_equivalence(t: _Tally, seed: int = 0) -> None:
    program = kernel_program(3)
    for g in DirectedGraph.all_graphs(3):
        t.expect(has_kernel(g)[0] == (not sm_entails(program, kernel_query(g))))


def size_formulas(t: _Tally, seed: int = 0) -> None:
    for n in range(1, 7):
        p = kernel_program(n)
        t.expect(len(p.alphabet) == 2 * n * n + n)
        t.expect(len(p.rules) == 3 * n * n)
    for n in range(3, 7):
        t.expect(len(clause_universe([f"x{i}" for i in range(1, n + 1)])) == 8 * math.comb(n, 3))


def qbf_equivalences(t: _Tally, seed: int = 0) -> str:
    valid = 0
    for q in pools.qbf_pool(seed):
        expected = qbf_valid(q)
        valid += expected
        dt, m = qbf_to_skeptical_mc(q)
        t.expect(model_of_some_extension(m, dt) == expected)
        dt, query = qbf_to_credulous_inf(q)
        t.expect(credulous_entails(dt, query) == expected)
    return f"{valid} of {t.checked // 2} instances valid"


def etherington_preservation(t: _Tally, seed: int = 0) -> str:
    controls = 0
    for dt in pools.pfn_pool():
        out = etherington(dt)
        left = SemanticsTag(Semantics.DEFAULT_SOME_EXT, dt)
        right = SemanticsTag(Semantics.CIRC, out.target)
        t.expect(check_model_preservation(left, right, out.circuit).passed)
        if dt.defaults:
            broken = negate_output(out.circuit, out.circuit.target_alphabet[len(dt.atoms)])
            report = check_model_preservation(left, right, broken)
            t.expect(not report.passed and bool(report.counterexamples))
            controls += 1
    return f"{controls} negative controls"


def circ_default_equivalence(t: _Tally, seed: int = 0) -> str:
    rng = random.Random(seed)
    queries = 0
    for k in range(30):
        theory = pools.random_kb(rng)
        left = SemanticsTag(Semantics.CIRC, CircKB(theory, minimized=frozenset(theory.atoms)))
        right = SemanticsTag(Semantics.DEFAULT_SOME_EXT, circ_to_default(theory))
        report = check_theorem_preservation(left, right, identity(theory.atoms), random_count=20, seed=seed + k)
        queries += report.universe_size
        t.expect(report.passed)
    return f"{queries} queries"


def gcwa_coherence(t: _Tally, seed: int = 0) -> str:
    literal_divergences = 0
    for kb in pools.gcwa_pool():
        free = gcwa_free_atoms(kb)
        minimal = minimal_models(kb.theory)
        characterised = frozenset(a for a in kb.atoms if all(a not in m for m in minimal))
        t.expect(free == characterised)
        t.expect(all_models(gcwa_rewrite(kb)) == gcwa_models(kb))
        literal_divergences += gcwa_free_atoms(kb, include_empty_clause=False) != characterised
    return f"reading without the empty clause diverges on {literal_divergences} KBs"


def revision_checks(t: _Tally, seed: int = 0) -> None:
    a, b = parse_formula("a"), parse_formula("b")
    r = RevisionInstance(KnowledgeBase.of("a", "~a | b", "~b"), a)
    subsets = {frozenset(k.formulas[:-1]) for k in wka(r)}
    t.expect(subsets == {frozenset({a, parse_formula("~a | b")}), frozenset({a, parse_formula("~b")})})
    t.expect(sbr_entails(r, a) and not sbr_entails(r, b))
    t.expect(sbr_model_check({"a", "b"}, r) and not sbr_model_check(set(), r))
    t.expect(set(widtio_base(r).formulas) == {a})
    t.expect(widtio_entails(r, a) and not widtio_entails(r, Not(b)))
    t.expect(widtio_model_check({"a"}, r) and not widtio_model_check(set(), r))
    bad = RevisionInstance(KnowledgeBase.of("p"), parse_formula("p & ~p"))
    t.expect(wka(bad) == [] and sbr_entails(bad, FALSE) and not widtio_entails(bad, FALSE))
    t.expect(widtio_entails(r, TRUE))
    rng = random.Random(seed)
    for _ in range(20):
        inst = pools.random_revision(rng)
        for m in all_interpretations(inst.atoms):
            form = conjunction_of_literals(m, inst.atoms)
            t.expect(sbr_model_check(m, inst) == (not sbr_entails(inst, Not(form))))


def oracle_self_consistency(t: _Tally, seed: int = 0) -> None:
    rng = random.Random(seed)
    for _ in range(200):
        p = pools.random_program(rng)
        t.expect(stable_models(p) == stable_models(p, prune=False))
    for _ in range(100):
        dt = pools.random_default_theory(rng)
        t.expect(extensions(dt) == extensions_naive(dt))


def translate_pool(seed: int = 0) -> list[tuple[str, object]]:
    """(reduction, parsed input) pairs exercised by the round-trip check."""
    rng = random.Random(seed)
    pool: list[tuple[str, object]] = []
    pool += [("etherington", dt) for dt in list(pools.pfn_pool())[::7]]
    pool += [("circ-to-default", pools.random_kb(rng)) for _ in range(5)]
    pool += [("gcwa-to-pl", kb) for kb in list(pools.gcwa_pool(("p", "q")))[::37]]
    pool += [("widtio-to-pl", pools.random_revision(rng)) for _ in range(5)]
    qbfs = pools.qbf_pool(seed, random_per_split=1)
    pool += [("qbf-skeptical", q) for q in qbfs] + [("qbf-credulous", q) for q in qbfs]
    pool += [("kernel", g) for g in list(DirectedGraph.all_graphs(2))[::3]]
    return pool


def _run_cli(argv: list[str]) -> tuple[int, str]:
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = cli.main(argv)
    return code, out.getvalue()


def cli_round_trip(t: _Tally, seed: int = 0) -> str:
    files = 0
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp)
        for k, (name, source) in enumerate(translate_pool(seed)):
            src = root / f"in{k}.txt"
            src.write_text(formats.write(source))
            outdir = root / f"out{k}"
            code, _ = _run_cli(["translate", name, str(src), "--out", str(outdir)])
            t.expect(code == cli.EXIT_TRUE)
            for filename, kind, obj in cli.translate(name, source):
                files += 1
                t.expect(formats.PARSERS[kind]((outdir / filename).read_text()) == obj)

        theory = root / "t.pl"
        theory.write_text("atoms: p q r\np | q\nq -> r\n")
        circ = root / "t.circ"
        circ.write_text("minimize: p q r\np | q\nq -> r\n")
        runs = [
            ["verify", "--left", f"circ:{circ}", "--right", f"pl:{theory}", "--mode", "theorem",
             "--seed", str(seed), "--format", "records"],
            ["verify", "--left", f"circ:{circ}", "--right", f"pl:{theory}", "--mode", "theorem",
             "--seed", str(seed + 1)],
            ["sweep", "kernel", "--param", "n=1..4"],
        ]
        for argv in runs:
            first, second = _run_cli(argv), _run_cli(argv)
            t.expect(first == second)
    return f"{files} files re-parsed"


CRITERIA: tuple[tuple[int, str, float, Callable], ...] = (
    (1, "lunch example goldens", 1, lunch_goldens),
    (2, "kernel equivalence on all 512 three-vertex digraphs", 600, kernel_equivalence),
    (3, "kernel program and clause universe sizes", 1, size_formulas),
    (4, "QBF reductions agree with the oracle", 600, qbf_equivalences),
    (5, "Etherington model preservation and negative control", 60, etherington_preservation),
    (6, "circumscription equals skeptical PFN default logic", 300, circ_default_equivalence),
    (7, "GCWA definition matches the minimal-model reading", 300, gcwa_coherence),
    (8, "belief revision goldens and SBR duality", 60, revision_checks),
    (9, "pruned search equals naive enumeration", 600, oracle_self_consistency),
    (10, "CLI round trip and determinism", 60, cli_round_trip),
)


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    for n, title, budget, body in CRITERIA:
        if n == number:
            return _timed(n, title, budget, lambda t: body(t, seed))
    raise KeyError(number)


def run_battery(only: Iterable[int] | None = None, seed: int = 0) -> list[CriterionResult]:
    wanted = set(only) if only is not None else {n for n, *_ in CRITERIA}
    return [run_criterion(n, seed) for n, *_ in CRITERIA if n in wanted]
