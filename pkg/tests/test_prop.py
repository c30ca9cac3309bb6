import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pkrkit import limits
from pkrkit.errors import CapacityError, EvaluationError
from pkrkit.pools import LUNCH, LUNCH_MODELS, lunch_formula, lunch_short_formula
from pkrkit.prop import (
    Universe, all_interpretations, all_models, conjunction_of_literals, entails, evaluate, is_consistent,
    minimal_models,
)
from pkrkit.syntax import FALSE, TRUE, KnowledgeBase, Not, Var

from strategies import formulas, knowledge_bases


def brute_models(kb):
    """Reference enumeration through the recursive evaluator."""
    out = []
    for bits in itertools.product((False, True), repeat=len(kb.atoms)):
        m = frozenset(a for a, b in zip(kb.atoms, bits) if b)
        if all(evaluate(phi, m) for phi in kb):
            out.append(m)
    return out


class TestEvaluate:
    def test_lunch(self):
        assert evaluate(lunch_formula(), {"sandwich", "water"})
        assert not evaluate(lunch_formula(), {"sandwich", "salad", "water"})

    def test_constant(self):
        assert evaluate(TRUE, set())
        assert not evaluate(FALSE, set())

    def test_sample_qbf_matrix_under_x1(self, f):
        matrix = f("(x1 | y2) & (~x1 | ~x2 | ~y1) & (~y1 | ~x2 | ~y2) & (~x1 | ~x2)")
        assert evaluate(matrix, {"x1"})
        assert not evaluate(matrix, {"x1", "x2"})

    def test_unknown_atom(self, f):
        with pytest.raises(EvaluationError) as info:
            evaluate(f("p & q"), {"p"}, alphabet=("p",))
        assert info.value.atom == "q"

    def test_unknown_atom_in_model(self, f):
        with pytest.raises(EvaluationError):
            evaluate(f("p"), {"z"}, alphabet=("p",))


class TestModels:
    def test_lunch_models(self):
        models = all_models(KnowledgeBase((lunch_formula(),), LUNCH))
        assert frozenset(models) == LUNCH_MODELS
        assert len(models) == 4

    def test_contradiction(self):
        assert all_models(KnowledgeBase((FALSE,), ("p",))) == []

    def test_canonical_order(self, kb):
        assert all_models(kb("p | q")) == [frozenset({"q"}), frozenset({"p"}), frozenset({"p", "q"})]

    def test_explicit_alphabet(self, f):
        assert all_models([f("p")], alphabet=("p", "q")) == [frozenset({"p"}), frozenset({"p", "q"})]

    @given(knowledge_bases())
    def test_matches_brute_force(self, k):
        assert all_models(k) == brute_models(k)

    def test_capacity(self):
        with limits.override(models=3):
            with pytest.raises(CapacityError) as info:
                all_models(KnowledgeBase((), ("p", "q", "r", "s")))
        assert info.value.cap == "models"
        assert info.value.requested == 4


class TestEntailment:
    def test_examples(self, kb, f):
        assert entails(kb("monday"), f("~~monday"))
        assert entails(KnowledgeBase(), f("p | ~p"))
        assert not entails(kb("p | q"), f("p"))

    def test_query_atoms_outside_kb(self, kb, f):
        assert not entails(kb("p"), f("q"))
        assert entails(kb("p"), f("p | q"))

    @given(knowledge_bases(), formulas(("p", "q", "r", "s"), 6))
    def test_refutation(self, k, phi):
        extended = KnowledgeBase(k.formulas + (Not(phi),), k.atoms)
        assert entails(k, phi) == (all_models(extended) == [])

    def test_consistency(self, kb):
        assert not is_consistent(kb("p", "~p"))
        assert is_consistent(KnowledgeBase((lunch_formula(),)))
        assert not is_consistent(kb("a", "~a | b", "~b"))


class TestMinimalModels:
    def test_lunch_short_form(self):
        short = KnowledgeBase((lunch_short_formula(),), LUNCH)
        assert frozenset(minimal_models(short)) == LUNCH_MODELS

    def test_examples(self, kb):
        assert minimal_models(KnowledgeBase((TRUE,), ("p",))) == [frozenset()]
        assert minimal_models(kb("p | q")) == [frozenset({"q"}), frozenset({"p"})]

    @given(knowledge_bases())
    def test_antichain_of_models(self, k):
        mins = minimal_models(k)
        models = brute_models(k)
        assert set(mins) <= set(models)
        assert not any(a < b for a in mins for b in mins)
        # every model sits above some minimal one
        assert all(any(m0 <= m for m0 in mins) for m in models)


class TestConjunctionOfLiterals:
    def test_examples(self, f):
        assert conjunction_of_literals(frozenset(), ("p",)) == Not(Var("p"))
        assert conjunction_of_literals({"p"}, ("p", "q")) == f("p & ~q")

    @given(st.integers(min_value=1, max_value=4))
    def test_characterises_exactly_one_model(self, n):
        atoms = ("p", "q", "r", "s")[:n]
        for m in all_interpretations(atoms):
            form = conjunction_of_literals(m, atoms)
            assert all_models([form], alphabet=atoms) == [m]

    def test_rejects_foreign_atoms(self):
        with pytest.raises(EvaluationError):
            conjunction_of_literals({"z"}, ("p",))


class TestUniverse:
    def test_index_round_trip(self):
        u = Universe(("a", "b", "c"))
        for k in range(u.size):
            assert u.index(u.interpretation(k)) == k
        assert u.interpretation(0b100) == frozenset({"a"})

    def test_project(self):
        u = Universe(("a", "b"))
        t = u.table(Var("a") & Var("b"))
        assert u.models(u.project(t, ["b"])) == [frozenset({"a"}), frozenset({"a", "b"})]

    def test_strictly_above(self):
        u = Universe(("a", "b"))
        t = 1 << u.index(set())
        above = u.strictly_above(t, ["a", "b"])
        assert sorted(u.models(above), key=len) == [frozenset({"b"}), frozenset({"a"}), frozenset({"a", "b"})]

    def test_determinism(self, kb):
        k = kb("p | q", "q -> r")
        assert all_models(k) == all_models(k)
        assert minimal_models(k) == minimal_models(k)
